from math import ceil

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_girth, path_graph, to_nx
from spchoose.sp_core import (
    EDGE,
    Acyclic,
    Chain,
    Finite,
    MultiEdgeError,
    Parallel,
    RealizedGraph,
    Series,
    SPError,
    SPSyntaxError,
    chain_violations,
    find_removable_chain,
    format_term,
    girth,
    is_path,
    makes_multi_edge,
    parallel_compose,
    parallel_power,
    parse_sp_expression,
    random_sp_term,
    realize,
    series_compose,
    series_power,
    series_stretch,
)

K2 = realize(EDGE)


def theta(a: int, b: int):
    return Parallel((series_power(EDGE, a), series_power(EDGE, b)))


# --- parsing -----------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("e", EDGE),
        ("S(e,e)", Series((EDGE, EDGE))),
        ("P(e^2,e^3)", Parallel((Series((EDGE, EDGE)), Series((EDGE, EDGE, EDGE))))),
        (" P ( e ^ 2 , e^3 ) ", Parallel((Series((EDGE, EDGE)), Series((EDGE, EDGE, EDGE))))),
        ("e^1", EDGE),
        ("S(e,e)|3", Parallel((Series((EDGE, EDGE)),) * 3)),
        ("e^2|2", Parallel((Series((EDGE, EDGE)),) * 2)),
    ],
)
def test_parse(text, expected):
    assert parse_sp_expression(text) == expected


@pytest.mark.parametrize(
    "text, position",
    [("", 0), ("x", 0), ("S(e)", 3), ("P(e,e", 5), ("e^", 2), ("e^0", 2), ("e e", 2), ("S(e,,e)", 4)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(SPSyntaxError) as info:
        parse_sp_expression(text)
    assert info.value.position == position


# --- realization and composition --------------------------------------------


def test_realize_edge():
    g = realize(EDGE)
    assert g.vertices == {0, 1} and g.edges == {(0, 1)} and g.terminals == (0, 1)


def test_realize_series_is_path():
    g = realize(Series((EDGE, EDGE)))
    assert len(g.vertices) == 3 and is_path(g)
    assert g.degree(g.terminals[0]) == g.degree(g.terminals[1]) == 1


def test_realize_parallel_four_cycle_with_opposite_terminals():
    g = realize(parse_sp_expression("P(e^2,e^2)"))
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(4))
    x, y = g.terminals
    assert y not in g.neighbours(x)


def test_realize_rejects_multi_edges():
    for text in ("P(e,e)", "P(P(e,e^2),e)", "S(e,P(e,e))"):
        term = parse_sp_expression(text)
        assert makes_multi_edge(term)
        with pytest.raises(MultiEdgeError):
            realize(term)


def test_realize_is_deterministic():
    term = random_sp_term(12, 3)
    assert realize(term) == realize(term)


def test_series_compose():
    g = series_compose(K2, K2)
    assert is_path(g) and len(g.edges) == 2
    assert g.terminals[0] != g.terminals[1]


def test_parallel_compose_theta():
    p2 = realize(series_power(EDGE, 2))
    p3 = realize(series_power(EDGE, 3))
    g = parallel_compose(p2, p3)
    assert len(g.vertices) == 5 and girth(g) == Finite(5)


def test_parallel_compose_multi_edge():
    with pytest.raises(MultiEdgeError):
        parallel_compose(K2, K2)


def test_compose_matches_realize():
    t1, t2 = parse_sp_expression("P(e^2,e^3)"), parse_sp_expression("S(e,P(e^2,e))")
    for op, term_op in ((series_compose, Series), (parallel_compose, Parallel)):
        g = op(realize(t1), realize(t2))
        assert nx.is_isomorphic(to_nx(g), to_nx(realize(term_op((t1, t2)))))


def test_compose_needs_terminals():
    bare = RealizedGraph(frozenset({0, 1}), frozenset({(0, 1)}))
    with pytest.raises(SPError):
        series_compose(bare, K2)


# --- powers and stretch ------------------------------------------------------


def test_series_power_path():
    g = realize(series_power(EDGE, 3))
    assert is_path(g) and len(g.edges) == 3


def test_parallel_power_girth_four():
    g = realize(parallel_power(Series((EDGE, EDGE)), 3))
    assert girth(g) == Finite(4) and len(g.vertices) == 5


def test_power_identity_and_errors():
    t = parse_sp_expression("P(e^2,e^3)")
    assert series_power(t, 1) is t and parallel_power(t, 1) is t
    with pytest.raises(SPError):
        series_power(t, 0)
    with pytest.raises(SPError):
        parallel_power(t, 0)


def test_stretch_examples():
    c4 = parse_sp_expression("P(e^2,e^2)")
    assert girth(realize(series_stretch(c4, 2))) == Finite(8)
    assert series_stretch(c4, 1) == c4
    stretched = series_stretch(theta(2, 3), 3)
    assert nx.is_isomorphic(to_nx(realize(stretched)), to_nx(realize(theta(6, 9))))
    assert girth(realize(stretched)) == Finite(15) == Finite(brute_force_girth(realize(stretched)))
    with pytest.raises(SPError):
        series_stretch(c4, 0)


# --- girth -------------------------------------------------------------------


def test_girth_examples():
    assert girth(realize(parse_sp_expression("P(e^2,e^2)"))) == Finite(4)
    assert girth(K2) == Acyclic()
    assert girth(realize(theta(2, 3))) == Finite(5)
    tri = RealizedGraph(frozenset(range(3)), frozenset({(0, 1), (1, 2), (0, 2)}))
    assert girth(tri) == Finite(3)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 25), st.integers(0, 10**6), st.integers(1, 3))
def test_girth_matches_networkx(leaves, seed, stretch):
    g = realize(series_stretch(random_sp_term(leaves, seed), stretch))
    expected = brute_force_girth(g)
    assert girth(g) == (Acyclic() if expected is None else Finite(expected))


def test_girth_on_non_sp_graphs():
    for h in (nx.petersen_graph(), nx.complete_graph(5), nx.heawood_graph(), nx.balanced_tree(2, 4)):
        g = RealizedGraph(frozenset(h.nodes), frozenset(h.edges))
        expected = brute_force_girth(g)
        assert girth(g) == (Acyclic() if expected is None else Finite(expected))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 20), st.integers(0, 10**6), st.sampled_from([1, 2, 3]))
def test_stretch_scales_girth(leaves, seed, s):
    t = random_sp_term(leaves, seed)
    base = girth(realize(t))
    scaled = girth(realize(series_stretch(t, s)))
    if isinstance(base, Acyclic):
        assert isinstance(scaled, Acyclic)
    else:
        assert scaled == Finite(s * base.g)


# --- paths and chains --------------------------------------------------------


def test_is_path():
    assert is_path(K2)
    assert not is_path(realize(parse_sp_expression("P(e^2,e^2)")))
    star = RealizedGraph(frozenset(range(4)), frozenset({(0, 1), (0, 2), (0, 3)}))
    assert not is_path(star)
    assert is_path(RealizedGraph(frozenset({7}), frozenset()))
    assert not is_path(RealizedGraph(frozenset({1, 2}), frozenset()))


def all_chains(g: RealizedGraph, l: int, excluded) -> list[tuple]:
    """Every chain of ``l`` edges, found by extending walks edge by edge."""
    admissible = {v for v in g.vertices if g.degree(v) == 2 and v not in excluded}
    out = []

    def extend(walk):
        if len(walk) == l + 1:
            out.append(tuple(walk))
            return
        if len(walk) > 1 and walk[-1] not in admissible:
            return
        for w in g.neighbours(walk[-1]):
            if w not in walk:
                extend(walk + [w])

    for v in g.vertices:
        extend([v])
    return out


def test_chain_on_six_cycle():
    c6 = realize(parse_sp_expression("P(e^3,e^3)"))
    chain = find_removable_chain(c6, 3, excluded=())
    assert chain.length == 3 and not chain_violations(c6, chain)


def test_chain_absent_when_interior_is_terminal():
    p = RealizedGraph(frozenset({0, 1, 2}), frozenset({(0, 1), (1, 2)}), (1, 2))
    assert find_removable_chain(p, 2) is None
    assert find_removable_chain(realize(series_power(EDGE, 2)), 3) is None


def test_chain_in_theta_uses_short_branch():
    g = realize(theta(2, 3))
    chain = find_removable_chain(g, 2)
    candidates = all_chains(g, 2, g.terminals)
    assert chain.vertices == min(candidates)
    # the only interior vertex available to a 2-chain in the length-2 branch is its middle
    short_middle = next(v for v in g.vertices if g.neighbours(v) == {0, 1})
    assert short_middle in chain.vertices


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 20), st.integers(0, 10**6), st.integers(2, 5), st.booleans())
def test_chain_search_matches_brute_force(leaves, seed, l, use_terminals):
    g = realize(series_stretch(random_sp_term(leaves, seed), 2))
    excluded = g.terminals if use_terminals else ()
    found = find_removable_chain(g, l, excluded=excluded)
    candidates = all_chains(g, l, excluded)
    if not candidates:
        assert found is None
    else:
        assert found.vertices == min(candidates)
        assert chain_violations(g, found, excluded) == []


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 25), st.integers(0, 10**6), st.integers(3, 12))
def test_high_girth_guarantees_a_chain(leaves, seed, k):
    t = random_sp_term(leaves, seed)
    gv = girth(realize(t))
    if isinstance(gv, Acyclic):
        return
    g = realize(series_stretch(t, ceil(k / gv.g)))
    assert girth(g) >= k
    chain = find_removable_chain(g, ceil(k / 2))
    assert chain is not None
    assert chain_violations(g, chain, g.terminals) == []


def test_chain_violations_reports_problems():
    g = realize(parse_sp_expression("P(e^2,e^3)"))
    problems = chain_violations(g, Chain((1, 0, 2)), g.terminals)
    assert any("terminal" in p for p in problems)
    assert chain_violations(path_graph(3), Chain((0, 1, 2, 0)), ()) != []
    assert chain_violations(path_graph(3), Chain((0, 2, 3)), ()) != []


# --- random terms and round trips ---------------------------------------------


def test_random_term_small_cases():
    assert random_sp_term(1, 5) == EDGE
    for seed in range(20):
        assert random_sp_term(2, seed) == Series((EDGE, EDGE))


def test_random_term_deterministic():
    assert random_sp_term(5, 42) == random_sp_term(5, 42)
    realize(random_sp_term(5, 42))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 30), st.integers(0, 10**6))
def test_round_trip(leaves, seed):
    t = random_sp_term(leaves, seed)
    back = parse_sp_expression(format_term(t))
    assert back == t
    assert realize(back) == realize(t)
