"""Exact solvers used to certify colourability and uncolourability.

Both solvers encode colour sets as integer bitmasks, so disjointness is ``a & b == 0``.
"""

from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence, Union

from .colours import check_colouring
from .constructive import PreconditionError


@dataclass(frozen=True)
class Colouring:
    phi: dict


@dataclass(frozen=True)
class NoColouring:
    pass


@dataclass(frozen=True)
class BudgetExceeded:
    nodes_explored: int


SolveOutcome = Union[Colouring, NoColouring, BudgetExceeded]


def _mask(colours) -> int:
    out = 0
    for c in colours:
        out |= 1 << c
    return out


def _unmask(mask: int) -> frozenset:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return frozenset(out)


def _subset_masks(colours, m: int) -> list[int]:
    """m-subsets as masks, in lexicographic order of the sorted colour tuples."""
    return [_mask(c) for c in combinations(sorted(colours), m)]


def solve_path_pinned_dp(path: Sequence, lists: Mapping, m: int, S, T) -> SolveOutcome:
    """Decide whether the path has an m-fold colouring with its ends pinned to ``S`` and ``T``.

    Forward pass keeps the set of reachable m-subsets at each vertex; a witness is
    rebuilt backwards, taking the lexicographically smallest admissible subset.
    """
    S, T = frozenset(S), frozenset(T)
    first, last = path[0], path[-1]
    if len(S) != m or len(T) != m:
        raise PreconditionError("pinned end sets must have exactly m colours")
    if not S <= frozenset(lists[first]) or not T <= frozenset(lists[last]):
        raise PreconditionError("pinned end sets must lie inside the end lists")
    if len(path) == 1:
        return Colouring({first: S}) if S == T else NoColouring()
    start, goal = _mask(S), _mask(T)
    options = [[start]] + [_subset_masks(lists[v], m) for v in path[1:-1]] + [[goal]]
    reachable = [{start}]
    for opts in options[1:]:
        prev = reachable[-1]
        layer = {c for c in opts if any(not c & p for p in prev)}
        if not layer:
            return NoColouring()
        reachable.append(layer)
    chosen = [goal]
    for i in range(len(path) - 2, -1, -1):
        nxt = chosen[-1]
        pick = next(c for c in options[i] if c in reachable[i] and not c & nxt)
        chosen.append(pick)
    chosen.reverse()
    return Colouring({v: _unmask(c) for v, c in zip(path, chosen)})


def generic_order(g) -> list:
    """Breadth-first from the highest-degree vertex of each component, ties by id."""
    seen: set = set()
    order = []
    remaining = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    for root in remaining:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(g.neighbours(v), key=lambda u: (-g.degree(u), u)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def solve_generic(g, lists: Mapping, m: int, budget: int = 10**6) -> SolveOutcome:
    """Backtracking over vertices; each node of the search tree counts against ``budget``."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    order = generic_order(g)
    position = {v: i for i, v in enumerate(order)}
    earlier = [[position[w] for w in g.neighbours(v) if position[w] < i] for i, v in enumerate(order)]
    options = [_subset_masks(lists.get(v, ()), m) for v in order]
    chosen = [0] * len(order)
    nodes = 0

    def search(i: int) -> Optional[bool]:
        nonlocal nodes
        if i == len(order):
            return True
        blocked = 0
        for w in earlier[i]:
            blocked |= chosen[w]
        for c in options[i]:
            if c & blocked:
                continue
            nodes += 1
            if nodes > budget:
                return None
            chosen[i] = c
            found = search(i + 1)
            if found is None or found:
                return found
        return False

    import sys

    limit = sys.getrecursionlimit()
    if len(order) + 100 > limit:
        sys.setrecursionlimit(len(order) + 100)
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    if found is None:
        return BudgetExceeded(nodes)
    if not found:
        return NoColouring()
    phi = {v: _unmask(c) for v, c in zip(order, chosen)}
    assert check_colouring(g, lists, phi, m).ok
    return Colouring(phi)


# ---------------------------------------------------------------------------
# gadget certification

IMPLICATION = (
    "Any m-fold colouring of the whole bundle restricts to some pair (S, T) on the terminals; "
    "the path designated for (S, T) would then carry a colouring pinned to S and T. "
    "Every designated path has none, so the bundle has no m-fold colouring from its lists."
)


@dataclass
class GadgetCertificate:
    pairs_checked: int
    all_uncolourable: bool
    defects: list = field(default_factory=list)
    runtime_ms: int = 0
    structure_problems: list = field(default_factory=list)
    implication: str = IMPLICATION

    @property
    def verified(self) -> bool:
        return self.all_uncolourable and not self.structure_problems

    def to_json(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "all_uncolourable": self.all_uncolourable,
            "defects": [
                {
                    "S": sorted(d["S"]),
                    "T": sorted(d["T"]),
                    "witness": {str(v): sorted(c) for v, c in sorted(d["witness"].items())},
                }
                for d in self.defects
            ],
            "runtime_ms": self.runtime_ms,
            "structure_problems": list(self.structure_problems),
            "implication": self.implication,
        }


def _check_pair(args):
    path, lists, m, S, T = args
    return solve_path_pinned_dp(path, lists, m, S, T)


def verify_gadget(bundle, workers: int = 1) -> GadgetCertificate:
    """Run the pinned-path DP on every (S, T) pair's designated path."""
    started = time.perf_counter()
    problems = bundle.pairing_problems()
    if problems:
        return GadgetCertificate(0, False, [], 0, problems)
    m = bundle.params["m"]
    jobs = [
        (path, {v: bundle.lists[v] for v in path[1:-1]} | {path[0]: S, path[-1]: T}, m, S, T)
        for S, T, path in bundle.pairing
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_check_pair, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        outcomes = [_check_pair(job) for job in jobs]
    defects = []
    for (S, T, _), outcome in zip(bundle.pairing, outcomes):
        if isinstance(outcome, Colouring):
            defects.append({"S": S, "T": T, "witness": outcome.phi})
    runtime = int((time.perf_counter() - started) * 1000)
    return GadgetCertificate(len(jobs), not defects, defects, runtime)
