"""Acceptance checks for both directions of the bound, runnable from pytest or the CLI."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from .adversary import bad_path_layout, bad_path_list, build_gadget, check_claim1
from .bounds import bound_row
from .colours import check_colouring, enumerate_m_subsets
from .constructive import (
    PreconditionError,
    build_t_sets,
    colour_path_pinned,
    colour_sp,
    extend_to_target,
    parameters_for,
    tau,
)
from .instances import random_lists, random_sp_of_girth
from .oracle import BudgetExceeded, Colouring, NoColouring, solve_generic, solve_path_pinned_dp, verify_gadget
from .sp_core import RealizedGraph, girth


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def path_graph(n_edges: int) -> RealizedGraph:
    return RealizedGraph(
        frozenset(range(n_edges + 1)), frozenset((i, i + 1) for i in range(n_edges)),
        (0, n_edges) if n_edges else None,
    )


def corrupt_bundle(bundle, pair_index: int = 0):
    """Enlarge the last Z block on one designated path to m colours, which makes it colourable."""
    m = bundle.params["m"]
    S, T, path = bundle.pairing[pair_index]
    v = path[-2]
    used = set().union(*bundle.lists.values())
    extra = [c for c in range(max(used) + 1, max(used) + 1 + m)]
    lists = dict(bundle.lists)
    lists[v] = lists[v] | frozenset(extra)
    return replace(bundle, lists=lists)


# ---------------------------------------------------------------------------


GADGETS_QUICK = [(3, 2, 1, 5.0), (4, 2, 1, 5.0), (5, 2, 1, 5.0), (6, 2, 1, 5.0)]
GADGETS_FULL = GADGETS_QUICK + [(7, 3, 1, 60.0), (8, 3, 1, 60.0)]


def lower_bound(profile: str = "full", mutate: Optional[Callable] = None) -> tuple[bool, str]:
    parts = []
    ok = True
    for k, m, e, limit in GADGETS_FULL if profile == "full" else GADGETS_QUICK:
        started = time.perf_counter()
        bundle = build_gadget(k, m, e)
        if mutate is not None:
            bundle = mutate(bundle)
        cert = verify_gadget(bundle)
        elapsed = time.perf_counter() - started
        uncolourable = cert.pairs_checked - len(cert.defects)
        expected = bundle.params["p"]
        g_ok = girth(bundle.graph) >= k
        good = cert.verified and cert.pairs_checked == expected and elapsed < limit and g_ok
        ok &= good
        parts.append(f"({k},{m},{e}) {uncolourable}/{expected} uncolourable in {elapsed:.2f}s")
    return ok, "; ".join(parts)


def upper_bound(n_graphs: int = 200) -> tuple[bool, str]:
    failures = []
    runs = 0
    for k, m in product(range(3, 9), (1, 2, 3)):
        size = parameters_for(k, m)["list_size"]
        for i in range(n_graphs):
            seed = 1000 * k + 100 * m + i
            _, g = random_sp_of_girth(k, seed)
            lists = random_lists(g.vertices, size, 6 * m, seed)
            runs += 1
            try:
                phi = colour_sp(g, lists, m, k)
            except PreconditionError as exc:
                failures.append(f"k={k} m={m} seed={seed}: {exc}")
                continue
            if len(phi) != len(g.vertices) or not check_colouring(g, lists, phi, m).ok:
                failures.append(f"k={k} m={m} seed={seed}: invalid colouring")
    return not failures, f"{runs - len(failures)}/{runs} coloured validly" + (
        f"; first failure {failures[0]}" if failures else ""
    )


def t_set_exhaustive(families: int = 20) -> tuple[bool, str]:
    checked = failures = 0
    for l, m, e in product(range(1, 6), (1, 2), (1, 2)):
        for fam in range(families):
            rng = random.Random(f"tsets-{l}-{m}-{e}-{fam}")
            universe = range(3 * m + e + 2)
            lists = [frozenset(rng.sample(universe, m))] + [
                frozenset(rng.sample(universe, 2 * m + e)) for _ in range(l)
            ]
            cert = build_t_sets(lists, m, e)
            if cert.violations():
                failures += 1
                continue
            for j in range(l + 1):
                prefix = list(range(j + 1))
                sub = build_t_sets(lists[: j + 1], m, e)
                by_vertex = dict(enumerate(lists[: j + 1]))
                for B in enumerate_m_subsets(lists[j], m):
                    if len(B & sub.tsets[j]) < tau(j, m, e):
                        continue
                    checked += 1
                    phi = extend_to_target(prefix, by_vertex, m, e, sub, B)
                    if phi[j] != B or not check_colouring(path_graph(j), by_vertex, phi, m).ok:
                        failures += 1
    return failures == 0, f"{checked} admissible targets extended, {failures} failures"


def duality(families: int = 20) -> tuple[bool, str]:
    l, m, e = 4, 2, 1
    ends = frozenset(range(5)), frozenset(range(5, 10))
    pinned_ok = total = 0
    for fam in range(families):
        rng = random.Random(7919 * fam + 1)
        inner = {v: frozenset(rng.sample(range(12), 2 * m + e)) for v in range(1, l)}
        for M1 in enumerate_m_subsets(ends[0], m):
            for M2 in enumerate_m_subsets(ends[1], m):
                total += 1
                lists = {0: M1, l: M2, **inner}
                phi = colour_path_pinned(list(range(l + 1)), lists, m, e, M1, M2)
                valid = check_colouring(path_graph(l), lists, phi, m).ok
                oracle = solve_path_pinned_dp(list(range(l + 1)), lists, m, M1, M2)
                pinned_ok += valid and isinstance(oracle, Colouring)
    bad, spec = bad_path_list(4, 3, 1, {0, 1, 2}, {3, 4, 5})
    lists = dict(enumerate(bad))
    verdict = solve_path_pinned_dp(list(range(5)), lists, 3, spec.M1, spec.M2)
    try:
        bad_path_list(4, 2, 1, {0, 1}, {2, 3})
        gated = False
    except PreconditionError:
        gated = True
    ok = pinned_ok == total and isinstance(verdict, NoColouring) and gated
    return ok, (
        f"pinned (4,2,1): {pinned_ok}/{total} coloured and oracle-confirmed; "
        f"bad path (4,3,1): {type(verdict).__name__}; q*e >= m gate {'enforced' if gated else 'MISSING'}"
    )


def prefix_bound() -> tuple[bool, str]:
    parts = []
    ok = True
    for l, m, e in ((4, 3, 1), (6, 3, 1)):
        for M1, M2 in (({0, 1, 2}, {3, 4, 5}), ({0, 1, 2}, {0, 1, 2}), ({0, 1, 2}, {2, 3, 4})):
            lists, spec = bad_path_layout(l, m, e, M1, M2)
            for j in range(2, l // 2 + 1):
                rep = check_claim1(lists, m, e, j, block=spec.blocks[f"B{2 * j - 2}"])
                ok &= rep.passed and not rep.vacuous
                parts.append(f"l={l} j={j} min={rep.minimum}>={rep.bound} over {rep.colourings}")
    return ok, "; ".join(dict.fromkeys(parts))


def oracle_agreement(n: int = 500, seed: int = 2024) -> tuple[bool, str]:
    rng = random.Random(seed)
    agree = coloured = 0
    for _ in range(n):
        l = rng.randint(1, 5)
        m = rng.randint(1, 3)
        universe = range(2 * m + rng.randint(1, 3))
        lists = {}
        for v in range(l + 1):
            size = m if v in (0, l) else rng.randint(m, min(len(universe), 2 * m + 2))
            lists[v] = frozenset(rng.sample(universe, size))
        path = list(range(l + 1))
        dp = solve_path_pinned_dp(path, lists, m, lists[0], lists[l])
        gen = solve_generic(path_graph(l), lists, m, budget=10**7)
        same = isinstance(dp, Colouring) == isinstance(gen, Colouring) and not isinstance(gen, BudgetExceeded)
        if isinstance(dp, Colouring):
            same &= check_colouring(path_graph(l), lists, dp.phi, m).ok
            coloured += 1
        agree += same
    return agree == n, f"{agree}/{n} agree ({coloured} colourable, {n - coloured} not)"


def bound_table() -> tuple[bool, str]:
    rows = [bound_row(k) for k in range(3, 15)]
    ok = all(r.q == (r.k + 1) // 4 and r.bound == 2 + Fraction(1, r.q) and r.k in r.girth_class for r in rows)
    return ok, ", ".join(f"k={r.k}:{r.bound}" for r in rows)


CRITERIA = [
    ("1 lower bound: gadgets certified uncolourable", lambda profile, mutate: lower_bound(profile, mutate)),
    ("2 upper bound: colour_sp on random SP graphs", lambda profile, mutate: upper_bound()),
    ("3 T-set extension, exhaustive", lambda profile, mutate: t_set_exhaustive()),
    ("4 pinned-path / bad-path duality at threshold", lambda profile, mutate: duality()),
    ("5 prefix bound on bad paths", lambda profile, mutate: prefix_bound()),
    ("6 oracle cross-validation", lambda profile, mutate: oracle_agreement()),
    ("7 bound table k=3..14", lambda profile, mutate: bound_table()),
]
TIME_LIMITS = {1: None, 2: 120.0, 3: 60.0, 5: 60.0}


def run_criterion(index: int, profile: str = "full", mutate: Optional[Callable] = None) -> CriterionResult:
    name, fn = CRITERIA[index - 1]
    started = time.perf_counter()
    ok, detail = fn(profile, mutate)
    elapsed = time.perf_counter() - started
    limit = TIME_LIMITS.get(index)
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; over the {limit:.0f}s limit"
    return CriterionResult(name, ok, detail, elapsed)


def run_suite(profile: str = "quick", mutate: Optional[Callable] = None, echo: Callable = print) -> list:
    results = []
    for i in range(1, len(CRITERIA) + 1):
        res = run_criterion(i, profile, mutate)
        echo(res.line())
        results.append(res)
    return results
