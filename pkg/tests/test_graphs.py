from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quons.graphs import (PLATONIC, GraphError, NonLocalEmbeddingError, PlanarGraph, _platonic_points,
                          _rotation_from_positions, cube_graph, cycle_graph, dipole_graph, dual_graph,
                          ghz_skeleton, is_isomorphic, is_isomorphic_unordered, map_symmetries, max_skeleton,
                          octahedron_graph, parse_graph_spec, platonic, reverse_all_edges,
                          tetrahedron_dual_relabeling, tetrahedron_graph, theta_graph, wheel_graph)
from quons.io import parse_map, serialize_map

FAMILY = [cycle_graph(1), cycle_graph(3), cycle_graph(6), dipole_graph(1), dipole_graph(4), theta_graph(),
          wheel_graph(2), wheel_graph(5), tetrahedron_graph()] + [platonic(n) for n in PLATONIC]


@pytest.mark.parametrize("G,counts", [(cycle_graph(3), (3, 3, 2)), (dipole_graph(4), (2, 4, 4)),
                                      (tetrahedron_graph(), (4, 6, 4)), (cube_graph(), (8, 12, 6)),
                                      (octahedron_graph(), (6, 12, 8)), (platonic("dodecahedron"), (20, 30, 12)),
                                      (platonic("icosahedron"), (12, 30, 20))])
def test_counts_and_genus(G, counts):
    assert G.counts() == counts
    assert G.genus == 0


def test_wheel3_is_tetrahedron():
    assert is_isomorphic(wheel_graph(3), tetrahedron_graph())


@pytest.mark.parametrize("n", range(1, 8))
def test_cycle_dipole_duality(n):
    assert is_isomorphic(dual_graph(cycle_graph(n)), dipole_graph(n))
    assert is_isomorphic_unordered(dual_graph(dipole_graph(n)), cycle_graph(n))


@pytest.mark.parametrize("n", range(2, 8))
def test_wheel_dual_relabeling(n):
    W = wheel_graph(n)
    new_index, reverse = tetrahedron_dual_relabeling(n)
    assert is_isomorphic(dual_graph(W), W.relabel(new_index, reverse))


@pytest.mark.parametrize("G", FAMILY, ids=lambda G: G.name)
def test_double_dual_reverses(G):
    assert is_isomorphic(dual_graph(dual_graph(G)), reverse_all_edges(G))
    assert is_isomorphic(dual_graph(dual_graph(G, "cw"), "cw"), reverse_all_edges(G))
    assert is_isomorphic(dual_graph(G, "cw"), reverse_all_edges(dual_graph(G)))


@pytest.mark.parametrize("G", FAMILY, ids=lambda G: G.name)
def test_reverse_all_edges_involution(G):
    assert is_isomorphic(reverse_all_edges(reverse_all_edges(G)), G)
    assert is_isomorphic_unordered(reverse_all_edges(G), G)


def test_platonic_duals_by_degree():
    def shape(G):
        return sorted(G.degrees()), G.counts()
    for a, b in (("cube", "octahedron"), ("dodecahedron", "icosahedron"), ("tetrahedron", "tetrahedron")):
        D = dual_graph(platonic(a))
        assert is_isomorphic_unordered(D, platonic(b))
        assert shape(D) == shape(platonic(b))


@pytest.mark.parametrize("name", PLATONIC)
def test_dual_matches_geometry(name):
    # dual vertices at face centres; dual edge e runs from the face right of e to the face left of it
    G = platonic(name)
    pts = _platonic_points(name)
    dist = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    dmin = dist[dist > 1e-9].min()
    edges = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts)) if abs(dist[i, j] - dmin) < 1e-9]
    dart_point = {}
    for e, (t, h) in enumerate(edges):
        dart_point[2 * e], dart_point[2 * e + 1] = pts[t], pts[h]
    faces = G.faces()
    centres = np.array([np.mean([dart_point[d] for d in f], axis=0) for f in faces])
    fo = G.face_of()
    dual_edges = [(fo[2 * e], fo[2 * e + 1]) for e in range(G.n_edges)]
    rot = _rotation_from_positions(centres, dual_edges, normals=centres)
    assert is_isomorphic(PlanarGraph.from_rotation(rot), dual_graph(G))


def test_tetrahedron_symmetries():
    assert len(map_symmetries(tetrahedron_graph())) == 24
    assert len(map_symmetries(tetrahedron_graph(), reflections=False)) == 12
    assert len(map_symmetries(cube_graph())) == 48


@pytest.mark.parametrize("g", [1, 2, 3])
def test_positive_genus(g):
    assert ghz_skeleton(2, g).genus == g
    assert max_skeleton(3, g).genus == g
    with pytest.raises(NonLocalEmbeddingError):
        dual_graph(ghz_skeleton(1, g))


def test_bad_rotation_rejected():
    with pytest.raises(GraphError):
        PlanarGraph.from_rotation([[1, 1]])
    with pytest.raises(GraphError):
        PlanarGraph.from_rotation([[1, -2]])


@pytest.mark.parametrize("spec,name", [("tetrahedron", "tetrahedron"), ("wheel:4", "wheel(4)"),
                                       ("cycle:2", "cycle(2)"), ("cube", "cube")])
def test_parse_graph_spec(spec, name):
    assert parse_graph_spec(spec).name == name


@pytest.mark.parametrize("spec", ["wheel", "wheel:x", "moebius", "cube:3"])
def test_parse_graph_spec_errors(spec):
    with pytest.raises(GraphError):
        parse_graph_spec(spec)


@pytest.mark.parametrize("G", FAMILY, ids=lambda G: G.name)
def test_map_file_round_trip(G):
    assert is_isomorphic(parse_map(serialize_map(G)), G)


@given(n=st.integers(2, 9), data=st.data())
@settings(max_examples=50, deadline=None)
def test_relabel_preserves_unordered_map(n, data):
    W = wheel_graph(n)
    perm = data.draw(st.permutations(range(W.n_edges)))
    rev = data.draw(st.sets(st.integers(0, W.n_edges - 1)))
    H = W.relabel(list(perm), rev)
    assert is_isomorphic_unordered(H, W)
    assert H.counts() == W.counts()
    assert is_isomorphic(dual_graph(dual_graph(H)), reverse_all_edges(H))
