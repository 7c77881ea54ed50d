from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spchoose import io
from spchoose.adversary import build_gadget
from spchoose.colours import check_colouring
from spchoose.constructive import colour_sp
from spchoose.sp_core import parse_sp_expression, random_sp_term, realize

GOLDEN = Path(__file__).parent / "golden"


def theta():
    return realize(parse_sp_expression("P(e^2,e^3)"))


def test_graph_golden():
    assert io.dumps(io.graph_to_json(theta())) == (GOLDEN / "theta23_graph.json").read_text()


def test_lists_and_colouring_golden():
    g = theta()
    lists = {v: {0, 1, 2} for v in g.vertices}
    assert io.dumps(io.lists_to_json(lists)) == (GOLDEN / "theta23_lists.json").read_text()
    phi = colour_sp(g, lists, 1, 5)
    assert io.dumps(io.colouring_to_json(phi, 1)) == (GOLDEN / "theta23_colouring.json").read_text()


def test_golden_colouring_is_valid():
    g = io.graph_from_json(io.read_json(GOLDEN / "theta23_graph.json"))
    lists = io.lists_from_json(io.read_json(GOLDEN / "theta23_lists.json"))
    phi, m = io.colouring_from_json(io.read_json(GOLDEN / "theta23_colouring.json"))
    assert check_colouring(g, lists, phi, m).ok and set(phi) == g.vertices


def test_gadget_golden_and_round_trip():
    bundle = build_gadget(3, 2, 1)
    text = io.dumps(io.gadget_to_json(bundle))
    assert text == (GOLDEN / "gadget_3_2_1.json").read_text()
    back = io.gadget_from_json(io.read_json(GOLDEN / "gadget_3_2_1.json"))
    assert back.graph == bundle.graph and back.lists == bundle.lists
    assert back.pairing == bundle.pairing and back.params == bundle.params and back.blocks == bundle.blocks


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 20), st.integers(0, 10**6))
def test_graph_round_trip(leaves, seed):
    g = realize(random_sp_term(leaves, seed))
    assert io.graph_from_json(io.graph_to_json(g)) == g


def test_graph_without_terminals():
    data = {"vertices": [0, 1], "edges": [[1, 0]]}
    g = io.graph_from_json(data)
    assert g.terminals is None and io.graph_to_json(g) == {"vertices": [0, 1], "edges": [[0, 1]]}


@pytest.mark.parametrize(
    "reader, data",
    [
        (io.graph_from_json, {"edges": []}),
        (io.graph_from_json, {"vertices": ["a"], "edges": []}),
        (io.lists_from_json, {"colours": {}}),
        (io.lists_from_json, {"lists": {"x": [1]}}),
        (io.colouring_from_json, {"colours": {}}),
        (io.gadget_from_json, {"vertices": [], "edges": []}),
    ],
)
def test_malformed_json_raises_format_error(reader, data):
    with pytest.raises(io.FormatError):
        reader(data)


def test_read_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices": [0,\n 1,, 2]}')
    with pytest.raises(io.FormatError, match="line 2"):
        io.read_json(p)
