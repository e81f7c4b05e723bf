import numpy as np
import pytest
from hypothesis import given

import oracles
from conftest import images, map_pairs, self_maps
from lefdt import fixtures as F
from lefdt.errors import PreconditionError
from lefdt.homalg import ChainMap, verify_chain_map
from lefdt.image import DigitalMap, compose, fixed_points, identity_map
from lefdt.simplicial import (enumerate_simplices, permutation_sign, simplicial_complex,
                              simplicial_induced_chain_map)


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1


@pytest.mark.parametrize("name,counts", [
    ("Y", (6, 7)), ("point", (1,)), ("C4", (4, 4)), ("Z", (8, 10)), ("C3", (3, 3, 1)),
])
def test_simplex_counts(name, counts):
    assert simplicial_complex(F.get(name)).ranks == counts


def test_c2_square_has_a_tetrahedron():
    img = F.unit_cube(2)
    from lefdt.image import CT, DigitalImage
    cx = enumerate_simplices(DigitalImage(2, img.points, CT(2)))
    assert cx.ranks == (4, 6, 4, 1)
    assert cx.boundary_squares_vanish()


def test_boundary_column_signs():
    cx = simplicial_complex(F.cycle(3))
    # the triangle <x0 x1 x2> has boundary <x1 x2> - <x0 x2> + <x0 x1>
    col = cx.boundary(2)[:, 0]
    edges = cx.cells[1]
    expect = {(1, 2): 1, (0, 2): -1, (0, 1): 1}
    for e, v in expect.items():
        assert col[edges.index(e)] == v


def test_identity_induces_identity():
    Y = F.image_y()
    cm = simplicial_induced_chain_map(identity_map(Y))
    for q, m in enumerate(cm.matrices):
        assert np.array_equal(m, np.eye(cm.source.dim(q), dtype=np.int64))


def test_rotation_traces():
    assert simplicial_induced_chain_map(F.rotation_y()).traces() == (0, -1)
    assert simplicial_induced_chain_map(F.rotation_z()).traces() == (0, 0)


def test_discontinuous_map_rejected():
    Y = F.image_y()
    bad = DigitalMap(Y, Y, (0, 0, 0, 0, 0, 5))
    with pytest.raises(PreconditionError):
        simplicial_induced_chain_map(bad)


def test_corrupted_chain_map_detected():
    cm = simplicial_induced_chain_map(F.rotation_y())
    mats = [m.copy() for m in cm.matrices]
    mats[1][0, 0] += 1
    assert verify_chain_map(cm)
    assert not verify_chain_map(ChainMap(cm.source, cm.target, mats))


@given(images(max_points=10))
def test_cliques_match_brute_force(img):
    cx = simplicial_complex(img)
    brute = oracles.cliques(img)
    assert cx.ranks == tuple(len(level) for level in brute)
    for q, level in enumerate(brute):
        got = {tuple(img.points[v] for v in c) for c in cx.cells[q]}
        assert got == set(level)
    assert cx.boundary_squares_vanish()


@given(self_maps(max_points=12))
def test_induced_map_is_chain_map(f):
    cm = simplicial_induced_chain_map(f, check=False)
    assert verify_chain_map(cm)
    assert all(set(np.unique(m)) <= {-1, 0, 1} for m in cm.matrices)


@given(self_maps(max_points=10))
def test_low_traces_count_fixed_vertices_and_edges(f):
    cm = simplicial_induced_chain_map(f)
    assert cm.traces()[0] == len(fixed_points(f))
    if len(cm.matrices) > 1:
        im = f.images
        signed = 0
        for a, b in cm.source.cells[1]:
            if {im[a], im[b]} == {a, b}:
                signed += 1 if im[a] == a else -1
        assert cm.traces()[1] == signed


@given(map_pairs(max_points=10))
def test_functoriality(pair):
    f, g = pair
    fg = simplicial_induced_chain_map(compose(f, g))
    prod = simplicial_induced_chain_map(f).compose(simplicial_induced_chain_map(g))
    for q in range(len(fg.matrices)):
        assert np.array_equal(fg.matrix(q), prod.matrix(q))
