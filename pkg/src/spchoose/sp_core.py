"""Two-terminal series-parallel graphs: terms, a small DSL, realization, girth, chains."""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union


class SPError(ValueError):
    """Raised for malformed terms and graphs that cannot be built."""


class MultiEdgeError(SPError):
    pass


class SPSyntaxError(SPError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Edge:
    def __str__(self) -> str:
        return "e"


@dataclass(frozen=True)
class Series:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise SPError("Series needs at least two children")
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class Parallel:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise SPError("Parallel needs at least two children")
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self) -> str:
        return format_term(self)


SPTerm = Union[Edge, Series, Parallel]
EDGE = Edge()


def format_term(term: SPTerm) -> str:
    """Canonical printer; ``parse_sp_expression(format_term(t)) == t``."""
    if isinstance(term, Edge):
        return "e"
    tag = "S" if isinstance(term, Series) else "P"
    return f"{tag}({','.join(format_term(c) for c in term.children)})"


def leaf_count(term: SPTerm) -> int:
    if isinstance(term, Edge):
        return 1
    return sum(leaf_count(c) for c in term.children)


def has_terminal_edge(term: SPTerm) -> bool:
    """True if the realization has an edge joining its two terminals."""
    if isinstance(term, Edge):
        return True
    if isinstance(term, Series):
        return False
    return any(has_terminal_edge(c) for c in term.children)


def makes_multi_edge(term: SPTerm) -> bool:
    """True if realizing ``term`` would produce a parallel edge anywhere."""
    if isinstance(term, Edge):
        return False
    if any(makes_multi_edge(c) for c in term.children):
        return True
    if isinstance(term, Parallel):
        return sum(has_terminal_edge(c) for c in term.children) >= 2
    return False


# ---------------------------------------------------------------------------
# DSL

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None:  # trailing whitespace
                break
            if match.group(1) is not None:
                self.tokens.append((match.group(1), match.start(1)))
            elif match.group(2) is not None:
                self.tokens.append((match.group(2), match.start(2)))
            pos = match.end()
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def position(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            found = self.peek()
            raise SPSyntaxError(
                f"expected {tok!r}, found {'end of input' if found is None else repr(found)}",
                self.position(),
            )
        self.i += 1

    def term(self) -> SPTerm:
        tok = self.peek()
        if tok == "e":
            self.i += 1
            result: SPTerm = EDGE
        elif tok in ("S", "P"):
            self.i += 1
            self.expect("(")
            children = [self.term()]
            while self.peek() == ",":
                self.i += 1
                children.append(self.term())
            if len(children) < 2:
                raise SPSyntaxError(f"{tok}(...) needs at least two terms", self.position())
            self.expect(")")
            result = Series(tuple(children)) if tok == "S" else Parallel(tuple(children))
        else:
            found = "end of input" if tok is None else repr(tok)
            raise SPSyntaxError(f"expected a term, found {found}", self.position())
        while self.peek() in ("^", "|"):
            op = self.peek()
            self.i += 1
            at = self.position()
            count = self.peek()
            if count is None or not count.isdigit():
                raise SPSyntaxError(f"expected an integer after {op!r}", at)
            self.i += 1
            n = int(count)
            if n < 1:
                raise SPSyntaxError("power must be at least 1", at)
            result = series_power(result, n) if op == "^" else parallel_power(result, n)
        return result


def parse_sp_expression(text: str) -> SPTerm:
    """Parse ``e``, ``S(t,...)``, ``P(t,...)``, ``t^n`` (series power) and ``t|n`` (parallel power)."""
    parser = _Parser(text)
    term = parser.term()
    if parser.peek() is not None:
        raise SPSyntaxError(f"unexpected {parser.peek()!r}", parser.position())
    return term


# ---------------------------------------------------------------------------
# term operators


def series_power(term: SPTerm, n: int) -> SPTerm:
    if n < 1:
        raise SPError(f"series power needs n >= 1, got {n}")
    return term if n == 1 else Series((term,) * n)


def parallel_power(term: SPTerm, n: int) -> SPTerm:
    if n < 1:
        raise SPError(f"parallel power needs n >= 1, got {n}")
    return term if n == 1 else Parallel((term,) * n)


def series_stretch(term: SPTerm, s: int) -> SPTerm:
    """Subdivide every edge into a path of ``s`` edges (all cycle lengths scale by ``s``)."""
    if s < 1:
        raise SPError(f"stretch factor must be >= 1, got {s}")
    if s == 1:
        return term
    if isinstance(term, Edge):
        return series_power(EDGE, s)
    return type(term)(tuple(series_stretch(c, s) for c in term.children))


def random_sp_term(leaf_count: int, seed: int) -> SPTerm:
    """Random term with ``leaf_count`` edge leaves built by binary series/parallel merges.

    A parallel merge that would create a multi-edge is resampled as a series merge.
    """
    if leaf_count < 1:
        raise SPError("leaf_count must be >= 1")
    rng = random.Random(seed)
    pool: list[SPTerm] = [EDGE] * leaf_count
    while len(pool) > 1:
        a = pool.pop(rng.randrange(len(pool)))
        b = pool.pop(rng.randrange(len(pool)))
        merged: SPTerm = Parallel((a, b))
        if rng.random() < 0.5 or (has_terminal_edge(a) and has_terminal_edge(b)):
            merged = Series((a, b))
        pool.append(merged)
    return pool[0]


# ---------------------------------------------------------------------------
# graphs


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class RealizedGraph:
    vertices: frozenset
    edges: frozenset
    terminals: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        normed = set()
        for u, v in self.edges:
            if u == v:
                raise SPError(f"self-loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise SPError(f"edge ({u}, {v}) references a missing vertex")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))
        if self.terminals is not None:
            x, y = self.terminals
            if x == y or x not in self.vertices or y not in self.vertices:
                raise SPError(f"bad terminals {self.terminals}")
            object.__setattr__(self, "terminals", (x, y))

    @cached_property
    def adjacency(self) -> dict:
        adj: dict = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbours(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def subgraph(self, keep: Iterable[int]) -> "RealizedGraph":
        keep = frozenset(keep)
        edges = frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        terms = self.terminals
        if terms is not None and not (terms[0] in keep and terms[1] in keep):
            terms = None
        return RealizedGraph(keep, edges, terms)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen: set = set()
        comps = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps


def realize(term: SPTerm) -> RealizedGraph:
    """Build the graph of ``term``; terminals get ids 0 and 1, other ids follow left to right."""
    edges: set = set()
    counter = [2]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def build(t: SPTerm, x: int, y: int) -> None:
        if isinstance(t, Edge):
            e = _norm(x, y)
            if e in edges:
                raise MultiEdgeError(f"parallel composition creates a multi-edge between {x} and {y}")
            edges.add(e)
        elif isinstance(t, Series):
            ends = [x] + [fresh() for _ in range(len(t.children) - 1)] + [y]
            for child, a, b in zip(t.children, ends, ends[1:]):
                build(child, a, b)
        else:
            for child in t.children:
                build(child, x, y)

    build(term, 0, 1)
    return RealizedGraph(frozenset(range(counter[0])), frozenset(edges), (0, 1))


def _relabel_onto(g1: RealizedGraph, g2: RealizedGraph, fixed: dict) -> dict:
    mapping = dict(fixed)
    nxt = max(g1.vertices) + 1
    for v in sorted(g2.vertices):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    return mapping


def _require_terminals(*graphs: RealizedGraph) -> None:
    for g in graphs:
        if g.terminals is None:
            raise SPError("composition needs graphs with terminals")


def series_compose(g1: RealizedGraph, g2: RealizedGraph) -> RealizedGraph:
    """Identify the right terminal of ``g1`` with the left terminal of ``g2``."""
    _require_terminals(g1, g2)
    x1, y1 = g1.terminals
    x2, y2 = g2.terminals
    mapping = _relabel_onto(g1, g2, {x2: y1})
    vertices = g1.vertices | {mapping[v] for v in g2.vertices}
    edges = g1.edges | {_norm(mapping[u], mapping[v]) for u, v in g2.edges}
    return RealizedGraph(vertices, edges, (x1, mapping[y2]))


def parallel_compose(g1: RealizedGraph, g2: RealizedGraph) -> RealizedGraph:
    """Identify left terminals together and right terminals together."""
    _require_terminals(g1, g2)
    x1, y1 = g1.terminals
    x2, y2 = g2.terminals
    mapping = _relabel_onto(g1, g2, {x2: x1, y2: y1})
    extra = {_norm(mapping[u], mapping[v]) for u, v in g2.edges}
    if extra & g1.edges:
        raise MultiEdgeError(f"parallel composition creates a multi-edge between {x1} and {y1}")
    vertices = g1.vertices | {mapping[v] for v in g2.vertices}
    return RealizedGraph(vertices, g1.edges | extra, (x1, y1))


# ---------------------------------------------------------------------------
# girth


@dataclass(frozen=True)
class Finite:
    g: int

    def __ge__(self, k: int) -> bool:  # type: ignore[override]
        return self.g >= k


@dataclass(frozen=True)
class Acyclic:
    def __ge__(self, k: int) -> bool:  # type: ignore[override]
        return True


GirthValue = Union[Finite, Acyclic]


def girth(g: RealizedGraph) -> GirthValue:
    """Exact girth.

    BFS from each vertex of the 2-core, highest degree first; a processed root is
    deleted, since every remaining shortest cycle avoids it. Search depth is cut
    once it cannot beat the best cycle found so far.
    """
    adj = {v: set(ns) for v, ns in g.adjacency.items()}
    # 2-core: vertices of degree <= 1 lie on no cycle
    stack = [v for v, ns in adj.items() if len(ns) <= 1]
    while stack:
        v = stack.pop()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1:
                stack.append(w)
    best = None
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))
    for root in order:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = du + dist[w] + 1
                    if best is None or length < best:
                        best = length
        for w in adj.pop(root):
            adj[w].discard(root)
        if best == 3:
            break
    return Acyclic() if best is None else Finite(best)


# ---------------------------------------------------------------------------
# chains and paths


@dataclass(frozen=True)
class Chain:
    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def interior(self) -> tuple:
        return self.vertices[1:-1]


def is_path(g: RealizedGraph) -> bool:
    n = len(g.vertices)
    if n == 0:
        return False
    if len(g.edges) != n - 1 or len(g.components()) != 1:
        return False
    if n <= 2:
        return True
    return sum(1 for v in g.vertices if g.degree(v) == 1) == 2


def path_order(g: RealizedGraph) -> list[int]:
    """Vertices of a path graph from its smaller end to the other."""
    if len(g.vertices) == 1:
        return list(g.vertices)
    start = min(v for v in g.vertices if g.degree(v) == 1)
    order = [start]
    prev = None
    while True:
        nxt = [w for w in g.neighbours(order[-1]) if w != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def chain_violations(g: RealizedGraph, chain: Chain, excluded: Iterable[int] = ()) -> list[str]:
    """Ways in which ``chain`` fails the chain invariants in ``g`` (empty if it is fine)."""
    problems = []
    vs = chain.vertices
    excluded = set(excluded)
    if len(set(vs)) != len(vs):
        problems.append("repeated vertex")
    for a, b in zip(vs, vs[1:]):
        if b not in g.neighbours(a):
            problems.append(f"{a}-{b} is not an edge")
    for v in chain.interior:
        if g.degree(v) != 2:
            problems.append(f"interior vertex {v} has degree {g.degree(v)}")
        if v in excluded:
            problems.append(f"interior vertex {v} is a terminal")
    return problems


def find_removable_chain(
    g: RealizedGraph, l: int, excluded: Optional[Iterable[int]] = None
) -> Optional[Chain]:
    """A chain of ``l`` edges whose interior vertices have degree 2 and are not excluded.

    ``excluded`` defaults to the graph's terminals. Maximal runs of admissible
    degree-2 vertices are scanned; among the candidates (one per run and
    direction) the lexicographically smallest vertex tuple is returned.
    """
    if l < 2:
        raise SPError("chain length must be >= 2")
    if excluded is None:
        excluded = g.terminals or ()
    excluded = set(excluded)
    inner = {v for v in g.vertices if g.degree(v) == 2 and v not in excluded}
    seen: set = set()
    candidates = []

    def walk(prev: int, cur: int) -> tuple[list, int]:
        side = []
        while cur in inner and cur != side_origin[0]:
            side.append(cur)
            prev, cur = cur, next(w for w in g.neighbours(cur) if w != prev)
        return side, cur

    side_origin = [None]
    for start in sorted(inner):
        if start in seen:
            continue
        side_origin[0] = start
        n1, n2 = sorted(g.neighbours(start))
        side, end = walk(start, n1)
        if end == start:
            cycle = [start] + side
            seen.update(cycle)
            n = len(cycle)
            if n <= l:
                continue
            for i in range(n):
                for step in (1, -1):
                    candidates.append(tuple(cycle[(i + step * t) % n] for t in range(l + 1)))
            continue
        side2, end2 = walk(start, n2)
        run = side[::-1] + [start] + side2
        seen.update(run)
        full = (end,) + tuple(run) + (end2,)
        for seq in (full, full[::-1]):
            for offset in range(len(seq) - l):
                window = seq[offset : offset + l + 1]
                if len(set(window)) == len(window):
                    candidates.append(window)
    if not candidates:
        return None
    return Chain(min(candidates))


def delete_vertices(g: RealizedGraph, removed: Iterable[int]) -> RealizedGraph:
    removed = set(removed)
    return g.subgraph(v for v in g.vertices if v not in removed)
