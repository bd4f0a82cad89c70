import numpy as np
import pytest

from eden.fixtures import FIXTURE_NAMES, fixture_graph, fixture_matrix
from eden.graph import (
    Graph,
    GraphParseError,
    Permutation,
    apply_permutation,
    cycle_graph,
    erdos_renyi,
    format_edge_list,
    parse_edge_list,
    parse_graph6,
    path_graph,
    random_permutation,
    read_graph6_file,
    serialize_graph6,
    write_graph6_file,
)
from eden.graph import _encode_n

nx = pytest.importorskip("networkx")


# decoded by networkx.from_graph6_bytes and frozen here
GRAPH6_VECTORS = [
    (b"@", 1, []),
    (b"A_", 2, [(0, 1)]),
    (b"Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    (b"C~", 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    (b"D?{", 5, [(0, 4), (1, 4), (2, 4), (3, 4)]),
    (b"Dhc", 5, [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]),
]


@pytest.mark.parametrize("text,n,edges", GRAPH6_VECTORS)
def test_graph6_vectors(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n
    assert sorted(g.edges) == edges
    assert serialize_graph6(g) == text


def test_graph6_path3():
    assert serialize_graph6(path_graph(3)) == b"Bg"


def test_graph6_prefix_and_newline():
    assert parse_graph6(b">>graph6<<Bw\n") == parse_graph6("Bw")


def test_graph6_long_header():
    g = Graph(70, {(0, 69), (3, 4)})
    data = serialize_graph6(g)
    assert data.startswith(b"~?@E")
    assert parse_graph6(data) == g
    # 258047 = 62*4096 + 63*64 + 63 is the largest 4-byte header
    assert _encode_n(258047) == b"~}~~"
    # 258048 = 63 * 4096 needs the 8-byte form
    assert _encode_n(258048) == b"~~???~??"


@pytest.mark.parametrize("seed", range(20))
def test_graph6_matches_networkx(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 80))
    g = erdos_renyi(n, float(rng.uniform(0.05, 0.9)), seed)
    ours = serialize_graph6(g)
    theirs = nx.to_graph6_bytes(_to_nx(g), header=False).strip()
    assert ours == theirs
    back = nx.from_graph6_bytes(ours)
    assert sorted(tuple(sorted(e)) for e in back.edges()) == sorted(g.edges)


def _to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.mark.parametrize(
    "data,offset",
    [
        (b"D?{\x01", 3),  # out of range byte
        (b"D? ", 2),
        (b"D?", 2),  # truncated body
        (b"D?{?", 3),  # body too long
        (b"", 0),
        (b"?", 0),  # zero nodes
        (b"~?", 2),  # truncated long header
        (b">>graph6<<D?", 12),
    ],
)
def test_graph6_errors_report_offset(data, offset):
    with pytest.raises(GraphParseError) as info:
        parse_graph6(data, line=7)
    assert info.value.offset == offset
    assert info.value.line == 7


def test_graph6_rejects_padding_bits():
    # n=2 has one bit, the five padding bits must be zero
    with pytest.raises(GraphParseError, match="padding"):
        parse_graph6(b"Aa")


def test_graph6_file_round_trip(tmp_path):
    graphs = [path_graph(4), cycle_graph(6), Graph(1)]
    path = tmp_path / "g.g6"
    write_graph6_file(path, graphs)
    assert read_graph6_file(path) == graphs


def test_edge_list_parsing():
    g = parse_edge_list("# comment\nn 5\n0 1\n1 2  # trailing\n\n2 0\n")
    assert g.n == 5
    assert g.edges == {(0, 1), (1, 2), (0, 2)}
    assert parse_edge_list("3 1\n").n == 4
    assert parse_edge_list(format_edge_list(g)) == g


@pytest.mark.parametrize(
    "text,line",
    [("0 1\n1 x\n", 2), ("0 0\n", 1), ("n 2\n0 5\n", 2), ("0 1 2\n", 1), ("0 -1\n", 1)],
)
def test_edge_list_errors_carry_line(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, {(0, 3)})
    with pytest.raises(ValueError):
        Graph(3, {(1, 1)})
    assert Graph(3, {(2, 0)}).edges == {(0, 2)}
    assert not Graph(2).adjacency.flags.writeable


def test_permutation_action():
    g = path_graph(3)  # 0-1-2
    p = Permutation((2, 0, 1))
    h = apply_permutation(g, p)
    assert h.edges == {(0, 2), (0, 1)}
    pm = p.matrix()
    assert np.array_equal(h.adjacency, pm.T @ g.adjacency @ pm)
    x = np.arange(3.0)[:, None]
    # node u moves to p[u], so row p[u] of the result holds x[u]
    assert np.array_equal(p.apply_rows(x)[[2, 0, 1]], x)
    assert apply_permutation(h, p.inverse()) == g
    assert p.then(p.inverse()) == Permutation.identity(3)


def test_permutation_composition():
    g = erdos_renyi(9, 0.4, 1)
    p, q = random_permutation(9, 1), random_permutation(9, 2)
    assert apply_permutation(apply_permutation(g, p), q) == apply_permutation(g, p.then(q))


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_random_permutation_uniform():
    # each of the 6 permutations of 3 items should appear about 1/6 of the time
    trials = 6000
    counts = {}
    for s in range(trials):
        key = random_permutation(3, s).mapping
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 6
    expect = trials / 6
    sigma = np.sqrt(trials * (1 / 6) * (5 / 6))
    assert all(abs(c - expect) < 3 * sigma for c in counts.values())


def test_erdos_renyi_edge_count():
    n, p = 20, 0.5
    counts = [len(erdos_renyi(n, p, s).edges) for s in range(200)]
    pairs = n * (n - 1) // 2  # mean 95
    se = np.sqrt(pairs * p * (1 - p) / len(counts))
    assert abs(np.mean(counts) - pairs * p) < 3 * se
    assert erdos_renyi(n, p, 5) == erdos_renyi(n, p, 5)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_matrices_are_simple_graphs(name):
    a = fixture_matrix(name)
    assert np.array_equal(a, a.T)
    assert not np.diag(a).any()
    assert set(np.unique(a)) <= {0, 1}
    assert fixture_graph(name).n == a.shape[0]


def test_fixture_degrees():
    deg = {name: sorted(fixture_graph(name).degrees.tolist()) for name in FIXTURE_NAMES}
    assert deg["decalin"] == [2] * 8 + [3] * 2
    assert deg["bicyclopentyl"] == [2] * 8 + [3] * 2
    assert deg["regular4_10"] == [4] * 10
    assert deg["rook4x4"] == [6] * 16
    assert deg["shrikhande"] == [6] * 16
    assert len(fixture_graph("cospectral10").edges) == 20


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture_matrix("petersen")
