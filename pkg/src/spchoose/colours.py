"""Colour sets, list assignments and m-fold colourings."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

ColourSet = frozenset


def colour_set(colours: Iterable[int]) -> frozenset:
    return frozenset(colours)


def enumerate_m_subsets(s: Iterable[int], m: int) -> list[frozenset]:
    """All m-subsets of ``s`` in lexicographic order of their sorted tuples."""
    items = sorted(s)
    if m < 0 or m > len(items):
        raise ValueError(f"cannot choose {m} colours from a set of {len(items)}")
    return [frozenset(c) for c in combinations(items, m)]


def fresh_colours(count: int, used: Iterable[int]) -> frozenset:
    """The ``count`` smallest non-negative integers not in ``used``."""
    if count < 0:
        raise ValueError("count must be non-negative")
    used = set(used)
    out = []
    c = 0
    while len(out) < count:
        if c not in used:
            out.append(c)
        c += 1
    return frozenset(out)


def smallest(colours: Iterable[int], count: int) -> frozenset:
    items = sorted(colours)
    if len(items) < count:
        raise ValueError(f"need {count} colours, only {len(items)} available")
    return frozenset(items[:count])


@dataclass(frozen=True)
class Violation:
    kind: str  # "size" | "list" | "clash" | "list-size" | "domain"
    vertices: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} {self.vertices}: {self.detail}"


@dataclass
class ValidityReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def vertices(self) -> set:
        return {v for viol in self.violations for v in viol.vertices}

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def check_colouring(g, lists: Mapping, phi: Mapping, m: int) -> ValidityReport:
    """Report every fold, list-membership and adjacency violation of a (partial) colouring."""
    report = ValidityReport()
    for v in sorted(phi):
        colours = phi[v]
        if v not in g.vertices:
            report.violations.append(Violation("domain", (v,), "not a vertex of the graph"))
            continue
        if len(colours) != m:
            report.violations.append(Violation("size", (v,), f"{len(colours)} colours, expected {m}"))
        outside = set(colours) - set(lists.get(v, ()))
        if outside:
            report.violations.append(Violation("list", (v,), f"colours {sorted(outside)} not in list"))
    for u, v in g.sorted_edges():
        if u in phi and v in phi:
            shared = set(phi[u]) & set(phi[v])
            if shared:
                report.violations.append(Violation("clash", (u, v), f"share colours {sorted(shared)}"))
    return report


def validate_list_sizes(g, lists: Mapping, required) -> ValidityReport:
    """Vertices whose list is shorter than ``required`` (an int or a per-vertex map)."""
    report = ValidityReport()
    for v in sorted(g.vertices):
        bound = required if isinstance(required, int) else required.get(v, 0)
        have = len(lists.get(v, ()))
        if have < bound:
            report.violations.append(Violation("list-size", (v,), f"list has {have} colours, needs {bound}"))
    return report
