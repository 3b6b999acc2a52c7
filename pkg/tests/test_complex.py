import numpy as np
import pytest

from pfcurv import (
    BrokenCycle,
    DuplicateCell,
    NonManifold,
    SimplexId,
    build_complex,
)

# two triangles sharing an edge: the smallest mesh with a boundary
TWO_TRIANGLES = [(0, 1, 2), (1, 2, 3)]


def test_skeleton_counts():
    c = build_complex(2, TWO_TRIANGLES)
    assert c.n_simplices(0) == 4
    assert c.n_simplices(1) == 5
    assert c.n_simplices(2) == 2
    assert c.euler_characteristic() == 1


def test_simplex_tuples_sorted_and_indexed():
    c = build_complex(2, [(2, 1, 0), (3, 2, 1)])
    assert c.simplex_tuples[2] == [(0, 1, 2), (1, 2, 3)]
    for k in range(3):
        for i, t in enumerate(c.simplex_tuples[k]):
            assert c.id_of(t) == SimplexId(k, i)
            assert c.simplex(SimplexId(k, i)) == t


def test_faces_and_cofaces():
    c = build_complex(2, TWO_TRIANGLES)
    tri = c.id_of((0, 1, 2))
    edges = {c.simplex(f) for f in c.faces(tri, 1)}
    assert edges == {(0, 1), (0, 2), (1, 2)}
    shared = c.id_of((1, 2))
    tops = {c.simplex(x) for x in c.cofaces(shared, 2)}
    assert tops == {(0, 1, 2), (1, 2, 3)}
    # vertex cofaces reach every dimension
    assert {c.simplex(x) for x in c.cofaces(c.id_of((1,)), 2)} == set(TWO_TRIANGLES)


def test_facet_opposite_vertex_convention():
    c = build_complex(2, TWO_TRIANGLES)
    tri = c.index[2][(0, 1, 2)]
    verts = c.simplices[2][tri]
    for j in range(3):
        facet = c.simplex_tuples[1][c.facets[2][tri, j]]
        assert verts[j] not in facet


def test_boundary_flags():
    c = build_complex(2, TWO_TRIANGLES)
    assert c.is_boundary[1].sum() == 4  # all edges but the shared one
    assert not c.is_boundary[1][c.index[1][(1, 2)]]
    # boundary propagates down to vertices
    assert c.is_boundary[0].all()


def test_boundary_matrix_squares_to_zero(cell5):
    c = cell5.complex
    for k in range(2, c.dim + 1):
        prod = c.boundary_matrix(k - 1) @ c.boundary_matrix(k)
        assert prod.nnz == 0 or np.abs(prod.toarray()).max() == 0


def test_boundary_matrix_entries():
    c = build_complex(2, TWO_TRIANGLES)
    B2 = c.boundary_matrix(2).toarray()
    assert B2.shape == (5, 2)
    assert set(np.abs(B2[:, 0])) <= {0, 1}
    # each column has alternating signs across its three edges
    col = B2[:, c.index[2][(0, 1, 2)]]
    nz = col[col != 0]
    assert sorted(nz) == [-1, 1, 1]


def test_duplicate_cell_rejected():
    with pytest.raises(DuplicateCell):
        build_complex(2, [(0, 1, 2), (2, 1, 0)])


def test_three_triangles_on_one_edge_rejected():
    with pytest.raises(NonManifold):
        build_complex(2, [(0, 1, 2), (0, 1, 3), (0, 1, 4)])


def test_broken_vertex_star_rejected():
    # two triangle fans meeting only at vertex 0: the hinge star at 0
    # is neither a cycle nor a single chain
    cells = [(0, 1, 2), (0, 3, 4)]
    with pytest.raises(BrokenCycle):
        build_complex(2, cells)


def test_hinges_icosahedron(ico):
    hinges = ico.complex.hinges()
    assert len(hinges) == 12
    for h in hinges:
        assert not h.is_boundary
        assert len(h.star) == 5
        # consecutive star members share a face containing the hinge
        star = [set(ico.complex.simplex(t)) for t in h.star]
        v = ico.complex.simplex(h.simplex)[0]
        for a, b in zip(star, star[1:] + star[:1]):
            assert v in a & b and len(a & b) == 2


def test_hinges_open_chain(grid2):
    c = grid2.complex
    boundary = [h for h in c.hinges() if h.is_boundary]
    assert boundary
    for h in boundary:
        star = [set(c.simplex(t)) for t in h.star]
        # open chain: consecutive triangles share an edge, ends do not wrap
        for a, b in zip(star, star[1:]):
            assert len(a & b) == 2
        if len(star) > 1:
            assert len(star[0] & star[-1]) < 2 or len(star) == 2


def test_orientability():
    c = build_complex(2, TWO_TRIANGLES, require_orientation=True)
    assert c is not None
    # the 5-cell boundary is an orientable closed 3-manifold
    cells = [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 3, 4), (0, 2, 3, 4), (1, 2, 3, 4)]
    build_complex(3, cells, require_orientation=True)


def test_euler_characteristic_closed(ico, cell5):
    assert ico.complex.euler_characteristic() == 2
    assert cell5.complex.euler_characteristic() == 0
