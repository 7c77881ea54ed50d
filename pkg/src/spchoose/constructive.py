"""Upper-bound colouring: T-sets on paths, pinned-path extension and the recursive SP colourer.

Slack is carried as the integer ``e`` (the number of colours by which an interior
list exceeds ``2m``). The admissibility threshold at path position ``j`` is
``tau(j) = max(0, m - (j // 2) * e)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Mapping, Optional, Sequence

from .colours import ValidityReport, Violation, smallest, validate_list_sizes
from .sp_core import (
    Chain,
    RealizedGraph,
    find_removable_chain,
    girth,
)


class PreconditionError(ValueError):
    """Inputs fall outside an operation's contract; ``report`` names the offending vertices."""

    def __init__(self, message: str, report: Optional[ValidityReport] = None):
        super().__init__(message if report is None or report.ok else f"{message}\n{report}")
        self.report = report if report is not None else ValidityReport()


class OutsideClassError(PreconditionError):
    """No removable chain exists in a cyclic component, so the graph is not in the class."""


def tau(j: int, m: int, e: int) -> int:
    return max(0, m - (j // 2) * e)


def _invariant(cond: bool, message: str) -> None:
    # failures here mean a bug, not bad input
    if not cond:
        raise AssertionError(message)


def _truncated(lists: Sequence, m: int, e: int) -> list[frozenset]:
    return [frozenset(lists[0])] + [smallest(s, 2 * m + e) for s in lists[1:]]


@dataclass(frozen=True)
class TSetCertificate:
    path: tuple
    m: int
    e: int
    tsets: tuple
    lists: tuple  # the truncated lists the sets were drawn from

    def violations(self) -> list[str]:
        out = []
        if self.tsets[0] != self.lists[0]:
            out.append("T_0 differs from the first list")
        for j, t in enumerate(self.tsets):
            want = self.m if j % 2 == 0 else self.m + self.e
            if len(t) != want:
                out.append(f"|T_{j}| = {len(t)}, expected {want}")
            if not t <= self.lists[j]:
                out.append(f"T_{j} is not inside its list")
            if j and t & self.tsets[j - 1]:
                out.append(f"T_{j} meets T_{j - 1}")
        return out


def build_t_sets(path_lists: Sequence, m: int, e: int, path: Optional[Sequence] = None) -> TSetCertificate:
    if e < 1 or m < 1:
        raise PreconditionError(f"need m >= 1 and e >= 1, got m={m}, e={e}")
    if len(path_lists[0]) != m:
        raise PreconditionError(f"first list must have exactly m={m} colours")
    for i, s in enumerate(path_lists[1:], start=1):
        if len(s) < 2 * m + e:
            raise PreconditionError(f"list {i} has {len(s)} colours, needs {2 * m + e}")
    lists = _truncated(path_lists, m, e)
    tsets = [lists[0]]
    for j in range(1, len(lists)):
        size = m + e if j % 2 else m
        tsets.append(smallest(lists[j] - tsets[j - 1], size))
    path = tuple(range(len(lists))) if path is None else tuple(path)
    return TSetCertificate(path, m, e, tuple(tsets), tuple(lists))


def extend_to_target(path: Sequence, lists: Mapping, m: int, e: int, cert: TSetCertificate, target) -> dict:
    """Colour ``path`` so that its last vertex gets exactly ``target``.

    Walks backwards, keeping at least ``tau(i)`` colours of ``T_i`` at each vertex.
    """
    target = frozenset(target)
    l = len(path) - 1
    if len(target) != m:
        raise PreconditionError(f"target has {len(target)} colours, expected {m}")
    if not target <= frozenset(lists[path[l]]):
        raise PreconditionError("target is not inside the last list")
    if len(target & cert.tsets[l]) < tau(l, m, e):
        raise PreconditionError(
            f"target meets T_{l} in {len(target & cert.tsets[l])} colours, needs {tau(l, m, e)}"
        )
    phi = {path[l]: target}
    current = target
    for i in range(l - 1, -1, -1):
        need = tau(i, m, e)
        rich_pool = cert.tsets[i] - current
        _invariant(len(rich_pool) >= need, f"T_{i} has too few colours left")
        rich = smallest(rich_pool, need)
        pad_pool = cert.lists[i] - current - rich
        _invariant(len(pad_pool) >= m - need, f"list {i} has too few colours left")
        current = rich | smallest(pad_pool, m - need)
        phi[path[i]] = current
    return phi


def colour_path_pinned(path: Sequence, lists: Mapping, m: int, e: int, M1, M2) -> dict:
    """m-fold colouring of a path whose end vertices are pinned to ``M1`` and ``M2``."""
    M1, M2 = frozenset(M1), frozenset(M2)
    l = len(path) - 1
    if l < 2:
        raise PreconditionError("pinned path needs length >= 2")
    if len(M1) != m or len(M2) != m:
        raise PreconditionError("pinned end sets must have exactly m colours")
    if (l // 2) * e < m:
        raise PreconditionError(f"floor(l/2)*e = {(l // 2) * e} < m = {m}")
    for v in path[1:-1]:
        if len(lists[v]) < 2 * m + e:
            raise PreconditionError(f"vertex {v} list has {len(lists[v])} colours, needs {2 * m + e}")
    inner = {v: smallest(lists[v], 2 * m + e) for v in path[1:-1]}
    if l % 2:
        # pin the second-last vertex off M2 and reduce to the even case
        last_inner = path[-2]
        B = smallest(inner[last_inner] - M2, m)
        phi = _pinned_even(path[:-1], {**inner, last_inner: B}, m, e, M1, B)
    else:
        phi = _pinned_even(path, inner, m, e, M1, M2)
    phi[path[0]] = M1
    phi[path[-1]] = M2
    return phi


def _pinned_even(path, inner, m, e, M1, M2) -> dict:
    l = len(path) - 1
    front = path[:-1]
    cert = build_t_sets([M1] + [inner[v] for v in front[1:]], m, e, front)
    need = tau(l - 1, m, e)
    last = l - 1
    rich_pool = cert.tsets[last] - M2
    _invariant(len(rich_pool) >= need, "T_{l-1} minus M2 is too small")
    rich = smallest(rich_pool, need)
    B = rich | smallest(cert.lists[last] - M2 - rich, m - need)
    phi = extend_to_target(front, {**inner, path[0]: M1, front[-1]: cert.lists[last]}, m, e, cert, B)
    phi[path[-1]] = M2
    return phi


def colour_path_greedy(path: Sequence, lists: Mapping, m: int) -> dict:
    """Walk the path, giving each vertex the m smallest colours its predecessor left free."""
    for v in path:
        if len(lists[v]) < 2 * m:
            raise PreconditionError(f"vertex {v} list has {len(lists[v])} colours, needs {2 * m}")
    phi: dict = {}
    prev = frozenset()
    for v in path:
        prev = smallest(frozenset(lists[v]) - prev, m)
        phi[v] = prev
    return phi


# ---------------------------------------------------------------------------
# recursive colourer


def parameters_for(k: int, m: int) -> dict:
    """q, chain length l, integer slack e and the list size for girth class ``k``."""
    if k < 3:
        raise PreconditionError(f"k must be >= 3, got {k}")
    q = (k + 1) // 4
    l = (k + 1) // 2
    e = -(-m // q)
    size = ceil(Fraction(2 * q + 1, q) * m)
    # q*e >= m makes every chain of length l colourable with pinned ends
    assert size == 2 * m + e and (l // 2) * e >= m
    return {"q": q, "l": l, "e": e, "list_size": size}


@dataclass(frozen=True)
class Removal:
    kind: str  # "path" | "leaf" | "chain"
    vertices: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}


def _components(adj: dict) -> list[list]:
    seen: set = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(comp)
    return out


def _path_sequence(adj: dict, comp: list) -> Optional[list]:
    if len(comp) == 1:
        return comp
    edges = sum(len(adj[v]) for v in comp) // 2
    if edges != len(comp) - 1 or any(len(adj[v]) > 2 for v in comp):
        return None
    start = min(v for v in comp if len(adj[v]) == 1)
    order, prev = [start], None
    while len(order) < len(comp):
        nxt = min(w for w in adj[order[-1]] if w != prev)
        prev = order[-1]
        order.append(nxt)
    return order


def _remove(adj: dict, vs) -> None:
    for v in vs:
        for w in adj.pop(v):
            if w in adj:
                adj[w].discard(v)


def decompose(g: RealizedGraph, l: int) -> list[Removal]:
    """Removal sequence: path components, pendant vertices and degree-2 chains of length ``l``."""
    adj = {v: set(ns) for v, ns in g.adjacency.items()}
    terminals = set(g.terminals or ())
    events: list[Removal] = []
    while adj:
        progress = False
        for comp in _components(adj):
            order = _path_sequence(adj, comp)
            if order is not None:
                events.append(Removal("path", tuple(order)))
                _remove(adj, order)
                progress = True
        leaves = sorted(v for v in adj if len(adj[v]) <= 1)
        while leaves:
            v = leaves.pop(0)
            if v not in adj or len(adj[v]) > 1:
                continue
            nbrs = sorted(adj[v])
            events.append(Removal("leaf", (v, *nbrs)))
            _remove(adj, [v])
            progress = True
            leaves.extend(w for w in nbrs if w in adj and len(adj[w]) <= 1)
        if progress:
            continue
        current = RealizedGraph(frozenset(adj), frozenset((u, w) for u in adj for w in adj[u] if u < w))
        chain = find_removable_chain(current, l, excluded=terminals & set(adj))
        if chain is None:
            # terminal exclusion only matters for the induction; any degree-2 chain is safe
            chain = find_removable_chain(current, l, excluded=())
        if chain is None:
            raise OutsideClassError(
                f"no chain of length {l} with degree-2 interior; graph is not series-parallel of the stated girth"
            )
        events.append(Removal("chain", chain.vertices))
        _remove(adj, chain.interior)
    return events


def colour_sp(g: RealizedGraph, lists: Mapping, m: int, k: int, trace: Optional[list] = None) -> dict:
    """m-fold colouring of a series-parallel graph of girth >= k from lists of size ceil((2 + 1/q) m).

    Removes chains until only forests remain, colours those greedily, then
    re-inserts the chains in reverse order with :func:`colour_path_pinned`.
    If ``trace`` is a list, the removal sequence is appended to it.
    """
    if m < 1:
        raise PreconditionError("m must be >= 1")
    params = parameters_for(k, m)
    gv = girth(g)
    if not gv >= k:
        raise PreconditionError(f"girth {gv.g} is below k = {k}")
    need = required_list_size(g, m, k)
    report = validate_list_sizes(g, lists, need)
    if not report.ok:
        raise PreconditionError(f"lists must have at least {need} colours", report)
    events = decompose(g, params["l"])
    if trace is not None:
        trace.extend(events)
    phi: dict = {}
    for ev in reversed(events):
        if ev.kind == "path":
            phi.update(colour_path_greedy(ev.vertices, lists, m))
        elif ev.kind == "leaf":
            v, *nbr = ev.vertices
            taken = phi[nbr[0]] if nbr else frozenset()
            phi[v] = smallest(frozenset(lists[v]) - taken, m)
        else:
            chain = Chain(ev.vertices)
            ends = chain.vertices[0], chain.vertices[-1]
            part = colour_path_pinned(chain.vertices, lists, m, params["e"], phi[ends[0]], phi[ends[1]])
            for v in chain.interior:
                phi[v] = part[v]
    return phi


def required_list_size(g: RealizedGraph, m: int, k: int) -> int:
    """ceil((2 + 1/q) m), or just 2m when every component is a path."""
    if all(_path_sequence(g.adjacency, comp) is not None for comp in g.components()):
        return 2 * m
    return parameters_for(k, m)["list_size"]


def precondition_report(g: RealizedGraph, lists: Mapping, m: int, k: int) -> ValidityReport:
    """Gate check used by the CLI: girth and list-size problems as violations."""
    report = validate_list_sizes(g, lists, required_list_size(g, m, k))
    gv = girth(g)
    if not gv >= k:
        report.violations.insert(0, Violation("girth", (), f"girth {gv.g} < k = {k}"))
    return report
