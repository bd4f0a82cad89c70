import pickle

import numpy as np
import pytest
from scipy.sparse.csgraph import shortest_path

from eden.distances import UNREACHABLE, DistanceMatrix, apsp, components, diameter_vector
from eden.fixtures import fixture_graph
from eden.graph import Graph, apply_permutation, complete_graph, cycle_graph, erdos_renyi, path_graph, random_permutation


def test_path3():
    d = apsp(path_graph(3))
    assert d.tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    assert diameter_vector(d).tolist() == [2, 1, 2]


def test_complete3():
    d = apsp(complete_graph(3))
    assert d.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert diameter_vector(d).tolist() == [1, 1, 1]


def test_isolated_nodes():
    d = apsp(Graph(3, {(0, 1)}))
    assert d[0, 2] is UNREACHABLE
    assert d[2, 2] == 0
    assert d.tolist() == [[0, 1, UNREACHABLE], [1, 0, UNREACHABLE], [UNREACHABLE, UNREACHABLE, 0]]
    assert diameter_vector(d).tolist() == [1, 1, 0]
    assert components(d) == [[0, 1], [2]]
    assert np.isinf(d.as_float()[0, 2])


def test_cycle_diameter():
    assert diameter_vector(apsp(cycle_graph(7))).tolist() == [3] * 7
    assert diameter_vector(apsp(cycle_graph(8))).tolist() == [4] * 8


def test_unreachable_is_a_singleton():
    assert pickle.loads(pickle.dumps(UNREACHABLE)) is UNREACHABLE
    assert repr(UNREACHABLE) == "UNREACHABLE"


@pytest.mark.parametrize("seed", range(25))
def test_matches_scipy(seed):
    rng = np.random.default_rng(seed)
    g = erdos_renyi(int(rng.integers(2, 40)), float(rng.choice([0.05, 0.1, 0.3])), seed)
    ref = shortest_path(g.adjacency.astype(float), unweighted=True, directed=False)
    d = apsp(g)
    assert np.array_equal(d.as_float(), ref)
    assert np.array_equal(d.hops, d.hops.T)


@pytest.mark.parametrize("seed", range(10))
def test_permutation_relation(seed):
    g = erdos_renyi(15, 0.15, seed)
    p = random_permutation(15, seed + 100)
    d, dp = apsp(g), apsp(apply_permutation(g, p))
    assert dp == d.permuted(p.mapping)
    pm = p.matrix()
    assert np.array_equal(pm.T @ d.hops @ pm, dp.hops)
    assert np.array_equal(pm.T @ d.reachable.astype(int) @ pm, dp.reachable)


def _bfs_far(g, s):
    seen = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.neighbors[u]:
                if v not in seen:
                    seen[v] = seen[u] + 1
                    nxt.append(v)
        frontier = nxt
    return max(seen.values())


def test_decalin_eccentricities():
    g = fixture_graph("decalin")
    assert diameter_vector(apsp(g)).tolist() == [_bfs_far(g, v) for v in range(g.n)]
    assert diameter_vector(apsp(g)).max() == 5


def test_components_cover_nodes():
    g = erdos_renyi(30, 0.04, 3)
    comps = components(apsp(g))
    assert sorted(v for c in comps for v in c) == list(range(30))
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)


def test_distance_matrix_is_read_only():
    d = apsp(path_graph(4))
    with pytest.raises(ValueError):
        d.hops[0, 0] = 3
    with pytest.raises(ValueError):
        DistanceMatrix(np.zeros((2, 3)), np.ones((2, 3), bool))
