"""Lower-bound constructions: uncolourable pinned paths and the parallel bundle of them."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .colours import enumerate_m_subsets, fresh_colours
from .constructive import PreconditionError
from .sp_core import EDGE, RealizedGraph, parallel_power, realize, series_power


@dataclass(frozen=True)
class BadPathSpec:
    l: int
    m: int
    e: int
    M1: frozenset
    M2: frozenset
    blocks: dict  # "A1", "B2", "Z1", ... -> frozenset

    @property
    def q(self) -> int:
        return self.l // 2


def block_names(l: int) -> list[str]:
    """Names of the fresh blocks a bad path of length ``l`` uses, in allocation order."""
    q = l // 2
    top_a = 2 * q - 1 if l % 2 else 2 * q - 3
    names = []
    for idx in range(1, 2 * q):
        if idx % 2:
            if idx <= top_a:
                names.append(f"A{idx}")
            names.append(f"Z{idx}")
        else:
            names.append(f"B{idx}")
    return names


def allocate_blocks(l: int, m: int, e: int, used) -> dict:
    used = set(used)
    blocks = {}
    for name in block_names(l):
        size = e if name[0] == "Z" else m
        blocks[name] = fresh_colours(size, used)
        used |= blocks[name]
    return blocks


def _check_params(l: int, m: int, e: int) -> int:
    q = l // 2
    if l < 2:
        raise PreconditionError(f"path length must be >= 2, got {l}")
    if e < 1:
        raise PreconditionError(f"e must be >= 1, got {e}")
    if q * e >= m:
        raise PreconditionError(f"q*e = {q * e} >= m = {m}: lists of this slack are always colourable")
    return q


def bad_path_list(l: int, m: int, e: int, M1, M2, used=frozenset(), blocks: Optional[dict] = None):
    """Lists on the path ``0..l`` pinned to ``M1``/``M2`` that admit no m-fold colouring.

    Returns ``(lists, spec)`` where ``lists`` is indexed by path position.
    Requires ``(l // 2) * e < m``; see :func:`bad_path_layout` for the ungated layout.
    """
    _check_params(l, m, e)
    return bad_path_layout(l, m, e, M1, M2, used, blocks)


def bad_path_layout(l: int, m: int, e: int, M1, M2, used=frozenset(), blocks: Optional[dict] = None):
    """The block layout of :func:`bad_path_list` without the ``q*e < m`` gate.

    The prefix bound on ``B`` blocks holds for any slack; only the final
    contradiction needs ``q*e < m``.
    """
    M1, M2 = frozenset(M1), frozenset(M2)
    q = l // 2
    if l < 2 or e < 1:
        raise PreconditionError(f"need l >= 2 and e >= 1, got l={l}, e={e}")
    if len(M1) != m or len(M2) != m:
        raise PreconditionError("pinned end sets must have exactly m colours")
    if l == 2 and M1 & M2:
        raise PreconditionError("for l = 2 the pinned end sets must be disjoint")
    if blocks is None:
        blocks = allocate_blocks(l, m, e, set(used) | M1 | M2)
    elif set(blocks) != set(block_names(l)):
        raise PreconditionError("block layout does not match the path length")

    def A(r):
        return blocks[f"A{r}"]

    def B(s):
        return blocks[f"B{s}"]

    def Z(t):
        return blocks[f"Z{t}"]

    L: dict = {0: M1, l: M2}
    if l == 2:
        L[1] = M1 | M2 | Z(1)
    else:
        L[1] = M1 | A(1) | Z(1)
        odd_top = q - 1 if l % 2 else q - 2
        for i in range(1, odd_top + 1):
            L[2 * i + 1] = B(2 * i) | A(2 * i + 1) | Z(2 * i + 1)
        for j in range(1, q):
            L[2 * j] = B(2 * j) | A(2 * j - 1) | Z(2 * j - 1)
        if l % 2 == 0:
            L[2 * q - 1] = M2 | B(2 * q - 2) | Z(2 * q - 1)
        else:
            L[2 * q] = M2 | A(2 * q - 1) | Z(2 * q - 1)
    lists = [L[i] for i in range(l + 1)]
    for i in range(1, l):
        assert len(lists[i]) == 2 * m + e, (i, lists[i])
    return lists, BadPathSpec(l, m, e, M1, M2, dict(blocks))


@dataclass(frozen=True)
class GadgetBundle:
    graph: RealizedGraph
    lists: dict
    X: frozenset
    Y: frozenset
    pairing: tuple  # ((S, T, path_vertices), ...) in lexicographic (S, T) order
    params: dict
    blocks: dict

    def pairing_problems(self) -> list[str]:
        """Empty when the pairing is a bijection from terminal pairs onto the bundle's paths."""
        out = []
        m = self.params["m"]
        expected = [(S, T) for S in enumerate_m_subsets(self.X, m) for T in enumerate_m_subsets(self.Y, m)]
        got = [(S, T) for S, T, _ in self.pairing]
        if got != expected:
            out.append("pairs are not exactly the m-subset pairs of X and Y in lexicographic order")
        x, y = self.graph.terminals
        interiors = [tuple(p[1:-1]) for _, _, p in self.pairing]
        flat = [v for inner in interiors for v in inner]
        if len(set(flat)) != len(flat):
            out.append("two pairs share a path vertex")
        if set(flat) | {x, y} != set(self.graph.vertices):
            out.append("paths do not cover the graph")
        for _, _, p in self.pairing:
            if p[0] != x or p[-1] != y:
                out.append(f"path {p} does not run from x to y")
                break
            if any(b not in self.graph.neighbours(a) for a, b in zip(p, p[1:])):
                out.append(f"path {p} is not a path of the graph")
                break
        return out


def build_gadget(k: int, m: int, e: int) -> GadgetBundle:
    """Parallel bundle of C(2m+e, m)^2 bad paths of length ceil(k/2) between terminals x, y."""
    if k < 3:
        raise PreconditionError(f"k must be >= 3, got {k}")
    q = (k + 1) // 4
    l = (k + 1) // 2
    if e < 1 or q * e >= m:
        raise PreconditionError(f"need e >= 1 and q*e < m (q = {q}), got e = {e}, m = {m}")
    size = 2 * m + e
    X = frozenset(range(size))
    Y = frozenset(range(size, 2 * size))
    p = comb(size, m) ** 2
    graph = realize(parallel_power(series_power(EDGE, l), p))
    x, y = graph.terminals
    # realize numbers each branch's interior consecutively after the terminals
    paths = [(x, *range(2 + i * (l - 1), 2 + (i + 1) * (l - 1)), y) for i in range(p)]
    blocks = allocate_blocks(l, m, e, X | Y)
    lists = {x: X, y: Y}
    pairing = []
    pairs = [(S, T) for S in enumerate_m_subsets(X, m) for T in enumerate_m_subsets(Y, m)]
    for (S, T), path in zip(pairs, paths):
        plist, _ = bad_path_list(l, m, e, S, T, blocks=blocks)
        for v, colours in zip(path[1:-1], plist[1:-1]):
            lists[v] = colours
        pairing.append((S, T, path))
    params = {"k": k, "m": m, "e": e, "q": q, "l": l, "p": p}
    return GadgetBundle(graph, lists, X, Y, tuple(pairing), params, blocks)


@dataclass
class Claim1Report:
    j: int
    bound: int
    minimum: Optional[int]  # None when the prefix has no colouring at all
    colourings: int
    vacuous: bool

    @property
    def passed(self) -> bool:
        return self.vacuous or self.minimum >= self.bound


def check_claim1(path_lists: Sequence, m: int, e: int, j: int, block=None) -> Claim1Report:
    """Check that every colouring of the prefix ``0..2j-2`` keeps >= m-(j-1)e colours of ``B_{2j-2}``.

    Enumerates all end states reachable by a colouring of the prefix (with
    multiplicities), which covers every prefix colouring. ``block`` defaults
    to the list difference ``L(v_{2j-2}) - L(v_{2j-3})``, which is ``B_{2j-2}``
    for lists built by :func:`bad_path_list`.
    """
    l = len(path_lists) - 1
    q = l // 2
    if not 2 <= j <= q:
        raise PreconditionError(f"j must be in 2..{q}, got {j}")
    end = 2 * j - 2
    if block is None:
        block = frozenset(path_lists[end]) - frozenset(path_lists[end - 1])
    block = frozenset(block)
    states = {frozenset(path_lists[0]): 1} if len(path_lists[0]) == m else {}
    for i in range(1, end + 1):
        options = enumerate_m_subsets(path_lists[i], m)
        nxt: dict = {}
        for prev, count in states.items():
            for cand in options:
                if not cand & prev:
                    nxt[cand] = nxt.get(cand, 0) + count
        states = nxt
    bound = m - (j - 1) * e
    if not states:
        return Claim1Report(j, bound, None, 0, True)
    return Claim1Report(j, bound, min(len(s & block) for s in states), sum(states.values()), False)
