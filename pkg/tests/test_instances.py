"""File parsers and the two synthetic graph families."""

import itertools

import pytest

from profitcover.errors import DomainError, ParseError
from profitcover.graph import is_connected
from profitcover.instances import (
    detect_format,
    gen_erdos_renyi_connected,
    gen_regular,
    load_graph,
    load_graph_named,
)

from conftest import complete_graph

KARATE = "data/instances/karate.edges"


def test_karate_sizes():
    g = load_graph(KARATE)
    assert (g.n, g.m) == (34, 78)


def test_edge_list_basic(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("# a comment\n1 2\n2 3  # trailing comment\n\n3 1\n")
    g, names = load_graph_named(f)
    assert (g.n, g.m) == (3, 3)
    assert names == ("1", "2", "3")


def test_edge_list_self_loop_dropped(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("1 1\n1 2\n")
    with pytest.warns(UserWarning, match="dropped 1"):
        g = load_graph(f)
    assert (g.n, g.m) == (2, 1)


def test_edge_list_duplicate_dropped(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("1 2\n2 1\n")
    with pytest.warns(UserWarning):
        g = load_graph(f)
    assert g.m == 1


def test_edge_list_malformed_line_number(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("1 2\nonly_one_token\n")
    with pytest.raises(ParseError) as exc:
        load_graph(f)
    assert exc.value.line == 2


def test_edge_list_string_labels(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("alice bob\nbob carol\n")
    g, names = load_graph_named(f)
    assert names == ("alice", "bob", "carol")
    assert g.edges == ((0, 1), (1, 2))


def test_empty_file_is_domain_error(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("# nothing\n")
    with pytest.raises(DomainError):
        load_graph(f)


def test_missing_file_is_parse_error():
    with pytest.raises(ParseError):
        load_graph("/no/such/file.edges")


def test_dimacs_one_based_shift(tmp_path):
    f = tmp_path / "g.col"
    f.write_text("c comment\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    g = load_graph(f)
    assert g.vertices == (0, 1, 2, 3)
    assert g.edges == ((0, 1), (1, 2), (2, 3))


def test_dimacs_edge_before_header(tmp_path):
    f = tmp_path / "g.col"
    f.write_text("e 1 2\np edge 2 1\n")
    with pytest.raises(ParseError) as exc:
        load_graph(f)
    assert exc.value.line == 1


def test_dimacs_out_of_range(tmp_path):
    f = tmp_path / "g.col"
    f.write_text("p edge 2 1\ne 1 5\n")
    with pytest.raises(ParseError):
        load_graph(f)


def test_matrix_market_symmetric_pattern(tmp_path):
    f = tmp_path / "g.mtx"
    f.write_text(
        "%%MatrixMarket matrix coordinate pattern symmetric\n"
        "% comment\n"
        "3 3 2\n"
        "2 1\n"
        "3 2\n"
    )
    g = load_graph(f)
    assert g.vertices == (0, 1, 2)
    assert g.edges == ((0, 1), (1, 2))


def test_matrix_market_missing_header(tmp_path):
    f = tmp_path / "g.mtx"
    f.write_text("3 3 1\n1 2\n")
    with pytest.raises(ParseError):
        load_graph(f)


def test_detect_format():
    assert detect_format("a/b.mtx") == "matrix_market"
    assert detect_format("x.col") == "dimacs"
    assert detect_format("x.clq") == "dimacs"
    assert detect_format("x.edges") == "edge_list"
    assert detect_format("x.txt") == "edge_list"


def test_format_override(tmp_path):
    f = tmp_path / "weird.txt"
    f.write_text("p edge 2 1\ne 1 2\n")
    g = load_graph(f, fmt="dimacs")
    assert (g.n, g.m) == (2, 1)


# ---------------------------------------------------------------------------
# generators


def test_er_p1_is_complete():
    g = gen_erdos_renyi_connected(4, 1.0, seed=7)
    assert g == complete_graph(4)


def test_er_deterministic():
    a = gen_erdos_renyi_connected(10, 0.3, seed=11)
    b = gen_erdos_renyi_connected(10, 0.3, seed=11)
    assert a == b
    c = gen_erdos_renyi_connected(10, 0.3, seed=12)
    assert a != c  # overwhelmingly likely for distinct seeds


def test_er_connected_sparse():
    g = gen_erdos_renyi_connected(50, 0.1, seed=3)
    assert is_connected(g)
    assert 49 <= g.m <= 50 * 49 // 2


def test_er_rejects_bad_args():
    with pytest.raises(DomainError):
        gen_erdos_renyi_connected(1, 0.5, seed=0)
    with pytest.raises(DomainError):
        gen_erdos_renyi_connected(5, 0.0, seed=0)


def test_regular_k4():
    g = gen_regular(4, 3, seed=0)
    assert g == complete_graph(4)


def test_regular_degrees():
    g = gen_regular(10, 3, seed=5)
    assert all(g.degree(v) == 3 for v in g.vertices)
    assert g.m == 15


def test_regular_deterministic():
    assert gen_regular(12, 3, seed=9) == gen_regular(12, 3, seed=9)


def test_regular_infeasible():
    with pytest.raises(DomainError):
        gen_regular(5, 3, seed=0)  # odd n*d
    with pytest.raises(DomainError):
        gen_regular(4, 4, seed=0)  # d >= n


def test_regular_zero_degree():
    g = gen_regular(6, 0, seed=0)
    assert g.m == 0 and g.n == 6


def test_generated_graphs_are_simple():
    for seed in range(8):
        g = gen_regular(14, 3, seed=seed)
        seen = set()
        for u, v in g.edges:
            assert u != v and (u, v) not in seen
            seen.add((u, v))
    for n, p in itertools.product((6, 12), (0.2, 0.6)):
        g = gen_erdos_renyi_connected(n, p, seed=1)
        assert len(set(g.edges)) == g.m
