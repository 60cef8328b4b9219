import networkx as nx
import numpy as np
import pytest

from cosetcurv.codes import (
    LinearCode,
    direct_product,
    hadamard,
    hadamard_plus_cube,
    identity_code,
    perfect_3lcc_basic,
    random_code,
    repetition,
)
from cosetcurv.cosetgraph import (
    build_coset_graph,
    covering_radius_bruteforce,
    diameter,
    dump_adjacency,
    local_ball,
    sphere_profile,
)
from cosetcurv.errors import PreconditionError, ResourceLimitError
from cosetcurv.f2 import BitMatrix

from oracles import explicit_coset_graph


def with_zero_column(code):
    a = np.hstack([code.generator.array, np.zeros((code.m, 1), dtype=np.uint8)])
    return LinearCode(BitMatrix(a))


def test_hadamard_2_is_k4():
    T = build_coset_graph(hadamard(2))
    assert T.vertex_count == 4
    assert not T.loop_generators
    for s in range(4):
        nbrs = T.neighbors(s)
        assert set(nbrs) == set(range(4)) - {s}
        assert all(k == 1 for k in nbrs.values())


@pytest.mark.parametrize("n", range(1, 9))
def test_identity_is_hypercube(n):
    T = build_coset_graph(identity_code(n))
    G = explicit_coset_graph(identity_code(n))
    assert nx.is_isomorphic(nx.Graph(G), nx.hypercube_graph(n))
    assert diameter(T) == n


def test_zero_column_gives_loops():
    code = with_zero_column(hadamard(3))
    T = build_coset_graph(code)
    assert T.loop_generators == {7}
    for s in range(T.vertex_count):
        assert T.neighbors(s)[s] == 1
        assert T.degree(s) == code.n == 8


def test_repeated_column_gives_parallel_edges():
    code = LinearCode(BitMatrix.from_rows(["1100", "0011"]))
    T = build_coset_graph(code)
    assert T.multiplicity_classes == [[2, 3], [0, 1]]
    assert sorted(T.neighbors(0).values()) == [2, 2]


def test_diameter_examples():
    for m in (2, 3, 4):
        assert diameter(build_coset_graph(hadamard(m))) == 1
        assert diameter(build_coset_graph(direct_product(hadamard(m), hadamard(m)))) == 2
    assert diameter(build_coset_graph(hadamard_plus_cube(3))) == 1 + 3


def test_sphere_profiles():
    assert sphere_profile(build_coset_graph(hadamard(2))) == (1, 3)
    assert sphere_profile(build_coset_graph(perfect_3lcc_basic())) == (1, 4, 3)
    assert sphere_profile(build_coset_graph(identity_code(3))) == (1, 3, 3, 1)


def test_covering_radius_examples():
    assert covering_radius_bruteforce(repetition(2)) == 1
    assert covering_radius_bruteforce(hadamard(3)) == 1
    for n in (1, 4, 9):
        assert covering_radius_bruteforce(identity_code(n)) == n
    with pytest.raises(ResourceLimitError):
        covering_radius_bruteforce(hadamard(5))


def test_dim_cap():
    with pytest.raises(ResourceLimitError):
        build_coset_graph(identity_code(6), dim_cap=5)


def _random_codes(count, max_n=12, max_m=8, salt=0):
    out = []
    for s in range(count):
        m = 1 + (s * 7 + salt) % max_m
        n = 1 + (s * 5 + salt) % max_n
        out.append(random_code(m, n, 1000 * salt + s))
    return out


@pytest.mark.parametrize("code", _random_codes(25, max_n=12, max_m=10, salt=1), ids=str)
def test_graph_invariants(code):
    T = build_coset_graph(code)
    assert T.vertex_count == 2**code.dim
    assert all(T.degree(s) == code.n for s in range(0, T.vertex_count, max(1, T.vertex_count // 7)))
    assert diameter(T) == covering_radius_bruteforce(code)
    # explicit multigraph over raw syndromes agrees on size and diameter
    G = explicit_coset_graph(code)
    assert G.number_of_nodes() == T.vertex_count
    assert nx.eccentricity(nx.Graph(G), 0) == diameter(T)
    assert sum(sphere_profile(T)) == T.vertex_count


@pytest.mark.parametrize("code", _random_codes(20, max_n=10, max_m=8, salt=2), ids=str)
def test_vertex_transitive_profiles(code):
    T = build_coset_graph(code)
    G = nx.Graph(explicit_coset_graph(code))
    origin = sphere_profile(T)
    for v in G.nodes:
        prof = np.bincount(list(nx.single_source_shortest_path_length(G, v).values()))
        assert tuple(prof) == origin
    for s in range(T.vertex_count):
        assert sphere_profile(T, s) == origin


def test_local_ball_basics():
    code = hadamard(3)
    ball = local_ball(code, 2)
    assert ball.distance(0, 0) == 0
    for g in ball.labels:
        assert ball.distance(0, g) == 1
    with pytest.raises(PreconditionError):
        local_ball(code, 5)
    small = local_ball(identity_code(5), 2)
    assert small.distance(0, 0b11111) is None


@pytest.mark.parametrize("code", _random_codes(50, max_n=12, max_m=10, salt=3), ids=str)
def test_local_ball_matches_full_bfs(code):
    T = build_coset_graph(code)
    radius = 3
    ball = local_ball(code, radius)
    dist = T.origin_distances
    for v in range(T.vertex_count):
        d = int(dist[v])
        assert ball.distance(0, v) == (d if d <= radius else None)
    # a non-origin pair
    a = T.vertex_count - 1
    ref = T.distances_from(a)
    for v in range(T.vertex_count):
        d = int(ref[v])
        assert ball.distance(a, v) == (d if d <= radius else None)


def test_dump_adjacency():
    text = dump_adjacency(build_coset_graph(with_zero_column(hadamard(2))))
    assert text.splitlines()[0] == "00: 01x1 10x1 11x1 | loops 1"
