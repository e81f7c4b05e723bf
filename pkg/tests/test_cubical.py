import itertools
import random

import numpy as np
import pytest
from hypothesis import given

import oracles
from conftest import images, map_pairs, self_maps
from lefdt import fixtures as F
from lefdt.cubical import (ElementaryCube, cube_automorphism_sign, cube_boundary,
                           cubical_complex, cubical_induced_chain_map, face)
from lefdt.enumeration import map_array, random_continuous_map
from lefdt.errors import (DimensionGuardError, DomainError, InternalError,
                          UnsupportedAdjacencyError)
from lefdt.homalg import verify_chain_map
from lefdt.image import CT, DigitalImage, DigitalMap, compose, fixed_points, identity_map


def test_faces():
    sq = ElementaryCube(((0, 1), (0, 1)))
    assert face(sq, 0, "front") == ElementaryCube(((0, 0), (0, 1)))
    assert face(sq, 0, "back") == ElementaryCube(((1, 1), (0, 1)))
    flat = ElementaryCube(((3, 3), (0, 1)))
    assert face(flat, 0, "A") == face(flat, 0, "B")
    with pytest.raises(DomainError):
        face(sq, 2, "A")


def test_boundary_of_an_interval():
    e = ElementaryCube(((2, 3),))
    assert cube_boundary(e) == {ElementaryCube(((3, 3),)): 1, ElementaryCube(((2, 2),)): -1}


@pytest.mark.parametrize("name,counts", [
    ("Z", (8, 10, 3)), ("Y", (6, 7, 2)), ("point", (1,)), ("I3", (8, 12, 6, 1)),
    ("I4", (16, 32, 24, 8, 1)), ("C8", (8, 8)),
])
def test_cube_counts(name, counts):
    assert cubical_complex(F.get(name)).ranks == counts


def test_z_squares():
    labels = cubical_complex(F.image_z()).labels[2]
    assert [c.corner for c in labels] == [(0, 0), (1, 0), (2, 0)]


def test_non_c1_rejected():
    img = DigitalImage(2, F.unit_cube(2).points, CT(2))
    with pytest.raises(UnsupportedAdjacencyError):
        cubical_complex(img)
    with pytest.raises(UnsupportedAdjacencyError):
        cubical_complex(F.cycle(3))


def test_explicit_graph_without_short_cycles_gives_a_graph_complex():
    cx = cubical_complex(F.cycle(5))
    assert cx.ranks == (5, 5)
    assert cx.boundary_squares_vanish()


def test_rotation_matrices():
    cz = cubical_induced_chain_map(F.rotation_z())
    assert cz.traces() == (0, 0, 1)
    cy = cubical_induced_chain_map(F.rotation_y())
    assert cy.traces() == (0, -1, 0)
    assert np.array_equal(cy.matrix(2), np.array([[0, 1], [1, 0]]))


def test_identity_induces_identity():
    cm = cubical_induced_chain_map(identity_map(F.unit_cube(3)))
    for q, m in enumerate(cm.matrices):
        assert np.array_equal(m, np.eye(cm.source.dim(q), dtype=np.int64))


def test_dimension_guard():
    I5 = F.unit_cube(5)
    with pytest.raises(DimensionGuardError):
        cubical_induced_chain_map(identity_map(I5))
    cm = cubical_induced_chain_map(F.antipodal(5), unsafe_high_dimension=True)
    assert verify_chain_map(cm)


def test_square_folding_onto_a_path_goes_to_zero():
    # a continuous map can send the four corners of a square onto three
    # points of an L shape; the column is then zero
    sq = F.unit_cube(2)
    f = DigitalMap.from_mapping(sq, sq, {(0, 0): (0, 0), (0, 1): (1, 0), (1, 0): (1, 0),
                                         (1, 1): (1, 1)})
    cm = cubical_induced_chain_map(f)
    assert not cm.matrix(2).any()


def test_automorphism_sign():
    assert cube_automorphism_sign([0, 1, 2, 3]) == 1
    assert cube_automorphism_sign([0, 2, 1, 3]) == -1      # swap directions
    assert cube_automorphism_sign([1, 0, 3, 2]) == -1      # reverse one direction
    assert cube_automorphism_sign([3, 2, 1, 0]) == 1       # point reflection
    with pytest.raises(InternalError):
        cube_automorphism_sign([0, 3, 1, 2])


@given(images(max_points=10, c1_only=True))
def test_cubes_match_brute_force(img):
    cx = cubical_complex(img)
    brute = oracles.cubes(img)
    assert cx.ranks == tuple(len(level) for level in brute)
    assert cx.boundary_squares_vanish()


@given(self_maps(max_points=12, c1_only=True))
def test_induced_map_is_chain_map(f):
    cm = cubical_induced_chain_map(f, check=False)
    assert verify_chain_map(cm)
    assert all(set(np.unique(m)) <= {-1, 0, 1} for m in cm.matrices)


@given(self_maps(max_points=10, c1_only=True))
def test_low_traces_count_fixed_vertices_and_edges(f):
    cm = cubical_induced_chain_map(f)
    assert cm.traces()[0] == len(fixed_points(f))
    if len(cm.matrices) > 1:
        im = f.images
        signed = sum((1 if im[a] == a else -1) for a, b in cm.source.cells[1]
                     if {im[a], im[b]} == {a, b})
        assert cm.traces()[1] == signed


@given(map_pairs(max_points=10, c1_only=True))
def test_functoriality(pair):
    f, g = pair
    fg = cubical_induced_chain_map(compose(f, g))
    prod = cubical_induced_chain_map(f).compose(cubical_induced_chain_map(g))
    for q in range(len(fg.matrices)):
        assert np.array_equal(fg.matrix(q), prod.matrix(q))


def _subimages(box, max_points):
    for k in range(1, min(max_points, len(box)) + 1):
        for pts in itertools.combinations(box, k):
            yield DigitalImage(len(box[0]), pts)


@pytest.mark.slow
@pytest.mark.parametrize("box", [
    list(itertools.product(range(3), range(2))),
    list(itertools.product((0, 1), repeat=3)),
], ids=["3x2", "I3"])
def test_chain_map_exhaustive_on_small_boxes(box):
    """Every continuous self-map of every subimage of a small box."""
    seen = 0
    for img in _subimages(box, 8):
        cx = cubical_complex(img)
        for row in map_array(img, img):
            cm = cubical_induced_chain_map(DigitalMap(img, img, tuple(row)), source=cx,
                                           target=cx, check=False)
            assert verify_chain_map(cm)
            seen += 1
    assert seen > 0


def test_chain_map_sampled_in_dimension_four():
    rng = random.Random(4)
    box = list(itertools.product((0, 1), repeat=4))
    for _ in range(300):
        img = DigitalImage(4, tuple(rng.sample(box, rng.randint(4, 12))))
        for _ in range(10):
            f = random_continuous_map(img, img, rng)
            assert verify_chain_map(cubical_induced_chain_map(f, check=False))
