import json
import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_colourings, path_graph
from spchoose.adversary import bad_path_list, build_gadget
from spchoose.colours import check_colouring
from spchoose.constructive import PreconditionError
from spchoose.oracle import (
    BudgetExceeded,
    Colouring,
    NoColouring,
    generic_order,
    solve_generic,
    solve_path_pinned_dp,
    verify_gadget,
)
from spchoose.sp_core import RealizedGraph, realize, parse_sp_expression
from spchoose.suite import corrupt_bundle

TRIANGLE = RealizedGraph(frozenset(range(3)), frozenset({(0, 1), (1, 2), (0, 2)}))
C4 = RealizedGraph(frozenset(range(4)), frozenset((i, (i + 1) % 4) for i in range(4)))


# --- path DP -----------------------------------------------------------------------


def test_dp_l2_picks_smallest():
    out = solve_path_pinned_dp([0, 1, 2], {0: {0}, 1: {0, 1, 2}, 2: {0}}, 1, {0}, {0})
    assert isinstance(out, Colouring) and out.phi[1] == {1}


@pytest.mark.parametrize("l, m, e, M1, M2", [(2, 2, 1, {0, 1}, {2, 3}), (4, 3, 1, {0, 1, 2}, {3, 4, 5})])
def test_dp_bad_paths(l, m, e, M1, M2):
    lists, spec = bad_path_list(l, m, e, M1, M2)
    out = solve_path_pinned_dp(list(range(l + 1)), dict(enumerate(lists)), m, M1, M2)
    assert isinstance(out, NoColouring)


def test_dp_preconditions():
    with pytest.raises(PreconditionError):
        solve_path_pinned_dp([0, 1, 2], {0: {0}, 1: {0, 1, 2}, 2: {0}}, 1, {5}, {0})
    with pytest.raises(PreconditionError):
        solve_path_pinned_dp([0, 1, 2], {0: {0, 1}, 1: {0, 1, 2}, 2: {0}}, 1, {0, 1}, {0})


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 2), st.integers(0, 10**6))
def test_dp_matches_full_enumeration(l, m, seed):
    rng = random.Random(seed)
    lists = [frozenset(rng.sample(range(2 * m + 3), m))]
    lists += [frozenset(rng.sample(range(2 * m + 3), rng.randint(m, 2 * m + 1))) for _ in range(l - 1)]
    lists += [frozenset(rng.sample(range(2 * m + 3), m))]
    by_vertex = dict(enumerate(lists))
    out = solve_path_pinned_dp(list(range(l + 1)), by_vertex, m, lists[0], lists[-1])
    exists = next(brute_force_colourings(path_graph(l), by_vertex, m), None) is not None
    assert isinstance(out, Colouring) == exists
    if exists:
        assert check_colouring(path_graph(l), by_vertex, out.phi, m).ok
        assert out.phi[0] == lists[0] and out.phi[l] == lists[-1]


# --- generic backtracker ------------------------------------------------------------


def test_generic_examples(c5):
    assert isinstance(solve_generic(TRIANGLE, {v: {1, 2} for v in range(3)}, 1), NoColouring)
    assert isinstance(solve_generic(c5, {v: {1, 2} for v in c5.vertices}, 1), NoColouring)
    out = solve_generic(C4, {v: {1, 2} for v in range(4)}, 1)
    assert isinstance(out, Colouring)
    assert out.phi[0] == out.phi[2] != out.phi[1] == out.phi[3]


def test_generic_budget():
    g = path_graph(6)
    lists = {v: set(range(4)) for v in g.vertices}
    out = solve_generic(g, lists, 1, budget=3)
    assert out == BudgetExceeded(4)
    assert isinstance(solve_generic(g, lists, 1, budget=7), Colouring)
    assert solve_generic(g, lists, 1, budget=3) == out
    with pytest.raises(ValueError):
        solve_generic(g, lists, 1, budget=0)


def test_generic_order_bfs_from_max_degree():
    g = realize(parse_sp_expression("P(e^2,e^3)"))
    order = generic_order(g)
    assert sorted(order) == sorted(g.vertices)
    # both terminals have degree 2 like the rest, so the tie goes to the lowest id
    assert order[0] == 0 and set(order[1:3]) == g.neighbours(0)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.integers(1, 2), st.integers(0, 10**6))
def test_generic_matches_brute_force_on_small_graphs(n, m, seed):
    rng = random.Random(seed)
    edges = frozenset(e for e in combinations(range(n), 2) if rng.random() < 0.5)
    g = RealizedGraph(frozenset(range(n)), edges)
    lists = {v: frozenset(rng.sample(range(2 * m + 2), rng.randint(m, 2 * m + 1))) for v in range(n)}
    out = solve_generic(g, lists, m)
    exists = next(brute_force_colourings(g, lists, m), None) is not None
    assert isinstance(out, Colouring) == exists


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3), st.integers(0, 10**6))
def test_oracles_agree_on_paths(l, m, seed):
    rng = random.Random(seed)
    universe = range(3 * m + 2)
    size = min(2 * m + 1, len(universe))
    lists = [frozenset(rng.sample(universe, m))]
    lists += [frozenset(rng.sample(universe, size)) for _ in range(l - 1)]
    lists += [frozenset(rng.sample(universe, m))]
    assert all(comb(len(s), m) <= 1000 for s in lists)
    dp = solve_path_pinned_dp(list(range(l + 1)), dict(enumerate(lists)), m, lists[0], lists[-1])
    gen = solve_generic(path_graph(l), dict(enumerate(lists)), m)
    assert isinstance(dp, Colouring) == isinstance(gen, Colouring)


# --- gadget certification ----------------------------------------------------------


def test_verify_gadget_k3():
    cert = verify_gadget(build_gadget(3, 2, 1))
    assert cert.verified and cert.pairs_checked == 100 and cert.defects == []


def test_verify_gadget_k7_parallel():
    cert = verify_gadget(build_gadget(7, 3, 1), workers=2)
    assert cert.verified and cert.pairs_checked == 1225


def test_corrupted_gadget_reports_witness():
    bundle = corrupt_bundle(build_gadget(3, 2, 1))
    cert = verify_gadget(bundle)
    assert not cert.verified and len(cert.defects) == 1
    defect = cert.defects[0]
    S, T, path = bundle.pairing[0]
    assert (defect["S"], defect["T"]) == (S, T)
    lists = {v: bundle.lists[v] for v in path} | {path[0]: S, path[-1]: T}
    sub = RealizedGraph(frozenset(path), frozenset(zip(path, path[1:])))
    assert check_colouring(sub, lists, defect["witness"], 2).ok


def test_certificate_json_shape():
    cert = verify_gadget(corrupt_bundle(build_gadget(3, 2, 1)))
    data = json.loads(json.dumps(cert.to_json()))
    assert set(data) >= {"pairs_checked", "all_uncolourable", "defects", "runtime_ms"}
    assert data["pairs_checked"] == 100 and data["all_uncolourable"] is False
    assert set(data["defects"][0]) == {"S", "T", "witness"}
    assert "restricts" in data["implication"]


def test_malformed_pairing_is_structural_defect():
    bundle = build_gadget(3, 2, 1)
    broken = type(bundle)(**{**bundle.__dict__, "pairing": bundle.pairing[:-1]})
    cert = verify_gadget(broken)
    assert not cert.verified and cert.structure_problems
