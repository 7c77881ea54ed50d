"""JSON formats for graphs, lists, colourings, gadgets and certificates.

Graph      {"vertices": [int], "edges": [[int, int]], "terminals": [int, int]}  (terminals optional)
Lists      {"lists": {"<vertex>": [int]}}
Colouring  {"m": int, "colours": {"<vertex>": [int]}}
Gadget     graph fields + {"lists": ..., "X": [int], "Y": [int],
           "pairing": [{"S": [int], "T": [int], "path": [int]}],
           "params": {"k", "m", "e", "q", "l", "p"}, "blocks": {"A1": [int], ...}}

Output is deterministic: vertices, edges and colours are sorted, and maps are
written in increasing vertex order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .adversary import GadgetBundle
from .sp_core import RealizedGraph


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":")) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _vmap(mapping: Mapping) -> dict:
    return {str(v): sorted(mapping[v]) for v in sorted(mapping)}


def _read_vmap(data: Mapping) -> dict:
    try:
        return {int(v): frozenset(int(c) for c in cs) for v, cs in data.items()}
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad vertex map: {exc}") from exc


def graph_to_json(g: RealizedGraph) -> dict:
    out = {"vertices": sorted(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}
    if g.terminals is not None:
        out["terminals"] = list(g.terminals)
    return out


def graph_from_json(data: Mapping) -> RealizedGraph:
    try:
        vertices = frozenset(int(v) for v in data["vertices"])
        edges = frozenset((int(u), int(v)) for u, v in data["edges"])
        terminals = data.get("terminals")
        terminals = None if terminals is None else (int(terminals[0]), int(terminals[1]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad graph JSON: {exc!r}") from exc
    return RealizedGraph(vertices, edges, terminals)


def lists_to_json(lists: Mapping) -> dict:
    return {"lists": _vmap(lists)}


def lists_from_json(data: Mapping) -> dict:
    if "lists" not in data:
        raise FormatError("lists JSON needs a 'lists' object")
    return _read_vmap(data["lists"])


def colouring_to_json(phi: Mapping, m: int) -> dict:
    return {"m": m, "colours": _vmap(phi)}


def colouring_from_json(data: Mapping) -> tuple[dict, int]:
    if "m" not in data or "colours" not in data:
        raise FormatError("colouring JSON needs 'm' and 'colours'")
    return _read_vmap(data["colours"]), int(data["m"])


def gadget_to_json(bundle: GadgetBundle) -> dict:
    out = graph_to_json(bundle.graph)
    out["lists"] = _vmap(bundle.lists)
    out["X"] = sorted(bundle.X)
    out["Y"] = sorted(bundle.Y)
    out["pairing"] = [{"S": sorted(S), "T": sorted(T), "path": list(p)} for S, T, p in bundle.pairing]
    out["params"] = dict(bundle.params)
    out["blocks"] = {name: sorted(bundle.blocks[name]) for name in bundle.blocks}
    return out


def gadget_from_json(data: Mapping) -> GadgetBundle:
    graph = graph_from_json(data)
    try:
        pairing = tuple(
            (frozenset(item["S"]), frozenset(item["T"]), tuple(int(v) for v in item["path"]))
            for item in data["pairing"]
        )
        return GadgetBundle(
            graph=graph,
            lists=_read_vmap(data["lists"]),
            X=frozenset(data["X"]),
            Y=frozenset(data["Y"]),
            pairing=pairing,
            params={k: int(v) for k, v in data["params"].items()},
            blocks={name: frozenset(cs) for name, cs in data.get("blocks", {}).items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad gadget JSON: {exc!r}") from exc
