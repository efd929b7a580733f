import json
import random

import pytest

from costzdd.extint import NEG_INF, POS_INF
from costzdd.forest import ONE, ZERO, Forest
from costzdd.frontier import grid_graph
from costzdd.graphio import (
    ParseError,
    RunReport,
    parse_graph,
    read_zdd,
    report_line,
    write_graph,
    write_report,
    write_zdd,
)

from helpers import random_family


# ----------------------------------------------------------------------
# graph documents


def test_parse_minimal_document():
    g, terminals = parse_graph(
        """c tiny example
        p path 3 2

        e 1 2 10
        c mid-file comment
        e 2 3 -4
        """
    )
    assert g.n_vertices == 3
    assert g.edges == [(1, 2, 10), (2, 3, -4)]
    assert terminals is None


def test_parse_terminals():
    _g, terminals = parse_graph("p path 3 1\nt 3 1\ne 1 2 0\n")
    assert terminals == (3, 1)


def test_parse_no_edges():
    g, _t = parse_graph("p path 2 0\n")
    assert g.n_vertices == 2 and g.edges == []


def test_graph_round_trip_is_byte_identical():
    g = grid_graph(2, 1000, 1999, seed=1)
    text = write_graph(g, 1, 9)
    g2, terminals = parse_graph(text)
    assert g2 == g
    assert terminals == (1, 9)
    assert write_graph(g2, *terminals) == text
    bare = write_graph(g)
    g3, none = parse_graph(bare)
    assert g3 == g and none is None
    assert write_graph(g3) == bare


def test_write_graph_terminals_come_together():
    g = grid_graph(1, 0, 0, seed=0)
    with pytest.raises(ValueError):
        write_graph(g, 1, None)
    with pytest.raises(ValueError):
        write_graph(g, None, 4)


@pytest.mark.parametrize(
    "text, pattern",
    [
        ("e 1 2 3\n", r"line 1: edge line before problem"),
        ("t 1 2\np path 2 1\ne 1 2 0\n", r"line 1: terminal line before problem"),
        ("p path 2 1\np path 2 1\ne 1 2 0\n", r"line 2: duplicate problem"),
        ("p route 2 1\ne 1 2 0\n", r"line 1: problem line must be"),
        ("p path 2\n", r"line 1: problem line must be"),
        ("p path 0 0\n", r"line 1: vertex count must be positive"),
        ("p path 2 -1\n", r"line 1: edge count must be nonnegative"),
        ("p path two 1\ne 1 2 0\n", r"line 1: vertex count must be an integer"),
        ("p path 2 1\nq 1 2\ne 1 2 0\n", r"line 2: unknown line type 'q'"),
        ("p path 2 1\ne 1 2\n", r"line 2: edge line must be"),
        ("p path 2 1\ne 1 2 x\n", r"line 2: cost must be an integer"),
        ("p path 2 1\ne 1 3 0\n", r"line 2: vertex 3 outside 1\.\.2"),
        ("p path 2 1\ne 1 1 0\n", r"line 2: self-loop at vertex 1"),
        ("p path 3 2\ne 1 2 0\ne 2 1 5\n", r"line 3: duplicate edge \(2, 1\)"),
        ("p path 2 1\ne 1 2 0\ne 1 2 1\n", r"line 3: duplicate edge"),
        ("p path 3 1\ne 1 2 0\ne 2 3 0\n", r"line 3: more edge lines than the declared 1"),
        ("p path 2 1\ne 1 2 9223372036854775808\n", r"line 2: cost .* 64-bit"),
        ("p path 2 1\nt 1 2\nt 2 1\ne 1 2 0\n", r"line 3: duplicate terminal"),
        ("p path 2 1\nt 1 1\ne 1 2 0\n", r"line 2: source equals target"),
        ("p path 2 1\nt 0 2\ne 1 2 0\n", r"line 2: terminal 0 outside"),
        ("p path 2 1\nt 1\ne 1 2 0\n", r"line 2: terminal line must be"),
    ],
)
def test_parse_graph_errors(text, pattern):
    with pytest.raises(ParseError, match=pattern):
        parse_graph(text)


def test_parse_graph_document_level_errors():
    with pytest.raises(ParseError, match=r"missing problem line"):
        parse_graph("c nothing here\n")
    with pytest.raises(ParseError, match=r"expected 2 edge lines, found 1"):
        parse_graph("p path 3 2\ne 1 2 0\n")


# ----------------------------------------------------------------------
# diagram documents


def test_zdd_round_trip_random_families():
    rng = random.Random(31)
    for _ in range(30):
        n = rng.randint(0, 7)
        members = random_family(rng, n)
        fo = Forest(n)
        f = fo.from_sets(members)
        text = write_zdd(fo, f)
        assert text.splitlines()[0] == f"zdd {n} {fo.node_count(f)} " + text.split()[3]
        fresh = Forest(n)
        g = read_zdd(fresh, text)
        assert set(fresh.enumerate_sets(g, 10_000)) == members
        assert write_zdd(fresh, g) == text


def test_zdd_terminal_roots():
    fo = Forest(3)
    assert write_zdd(fo, ZERO) == "zdd 3 0 0\n"
    assert write_zdd(fo, ONE) == "zdd 3 0 1\n"
    assert read_zdd(Forest(3), "zdd 3 0 0\n") == ZERO
    assert read_zdd(Forest(3), "zdd 3 0 1\n") == ONE


def test_zdd_writer_is_order_independent():
    # two forests that built the same family along different routes emit
    # identical bytes
    a = Forest(4)
    left = a.from_sets([(1, 2), (3,), (2, 4)])
    b = Forest(4)
    b.from_itemset((4,))  # unrelated warm-up node, shifts raw ids
    right = b.from_sets([(2, 4), (1, 2), (3,)])
    assert write_zdd(a, left) == write_zdd(b, right)


def test_read_zdd_rebuilds_through_make_node():
    fo = Forest(2)
    root = read_zdd(fo, "zdd 2 2 3\n2 2 0 1\n3 1 2 2\n")
    assert set(fo.enumerate_sets(root, 10)) == {(2,), (1, 2)}
    # a hi = 0 line collapses on load; the family survives either way
    squashed = read_zdd(Forest(2), "zdd 2 1 2\n2 1 1 0\n")
    assert squashed == ONE


@pytest.mark.parametrize(
    "text, pattern",
    [
        ("", r"empty diagram"),
        ("zdd 2 0\n", r"line 1: header"),
        ("bdd 2 0 1\n", r"line 1: header"),
        ("zdd x 0 1\n", r"line 1: item count"),
        ("zdd 3 0 1\n", r"line 1: diagram has 3 items, forest has 2"),
        ("zdd 2 1 2\n2 1 0\n", r"line 2: node line"),
        ("zdd 2 1 2\n1 1 0 1\n", r"line 2: node id 1 collides"),
        ("zdd 2 2 3\n2 2 0 1\n2 1 2 2\n", r"line 3: node id 2 defined twice"),
        ("zdd 2 1 2\n2 1 3 1\n", r"line 2: lo child 3 not defined"),
        ("zdd 2 1 2\n2 1 0 9\n", r"line 2: hi child 9 not defined"),
        ("zdd 2 1 2\n2 9 0 1\n", r"line 2: item index 9 outside"),
        ("zdd 2 2 3\n2 1 0 1\n3 2 0 2\n", r"line 3: ordering violation"),
        ("zdd 2 2 2\n2 1 0 1\n", r"header declares 2 nodes, found 1"),
        ("zdd 2 1 4\n2 1 0 1\n", r"root id 4 never defined"),
    ],
)
def test_read_zdd_errors(text, pattern):
    with pytest.raises(ParseError, match=pattern):
        read_zdd(Forest(2), text)


# ----------------------------------------------------------------------
# report rows


def test_report_line_shape():
    row = RunReport(
        bound=12868,
        ratio=1.10004,
        solutions=2**64,
        zdd_size=48,
        calls=1234,
        time_ms=1.23456,
        method="interval",
        accept_worst=12868,
        reject_best=12870,
    )
    line = report_line(row)
    assert json.loads(line) == {
        "bound": 12868,
        "ratio": 1.1,
        "solutions": "18446744073709551616",
        "zdd_size": 48,
        "calls": 1234,
        "time_ms": 1.235,
        "method": "interval",
        "accept_worst": 12868,
        "reject_best": 12870,
    }
    # fixed key order, counts quoted
    assert line.startswith('{"bound": 12868, "ratio": 1.1, "solutions": "')


def test_report_line_infinities_and_nulls():
    row = RunReport(
        bound=NEG_INF,
        ratio=None,
        solutions=0,
        zdd_size=0,
        calls=7,
        time_ms=0.0,
        method="naive",
        reject_best=POS_INF,
    )
    got = json.loads(report_line(row))
    assert got["bound"] == "-inf"
    assert got["ratio"] is None
    assert got["accept_worst"] is None
    assert got["reject_best"] == "+inf"


def test_write_report():
    assert write_report([]) == ""
    rows = [
        RunReport(b, None, 1, 1, 1, 0.5, "interval") for b in (1, 2)
    ]
    text = write_report(rows)
    assert text.count("\n") == 2
    assert [json.loads(line)["bound"] for line in text.splitlines()] == [1, 2]
