"""One pass/fail line per acceptance criterion.

All comparisons are exact integer or set equalities.
"""
import itertools
import random

import numpy as np
import pytest

import oracles
from lefdt import fixtures as F
from lefdt.cubical import cubical_complex
from lefdt.errors import UnsupportedAdjacencyError
from lefdt.enumeration import (count_by_closeness_trace, lefschetz_values, map_array,
                               random_continuous_map)
from lefdt.homalg import homology_traces, verify_chain_map
from lefdt.homotopy import (afp_spectrum, fixed_point_spectrum, has_fpp, homotopy_classes,
                            is_contractible, is_strongly_contractible, lefschetz_spectrum, thin)
from lefdt.image import (CT, DigitalImage, DigitalMap, approx_fixed_points, constant_map,
                         identity_map)
from lefdt.lefschetz import (complex_for, cubical_euler, cubical_lefschetz, induced_chain_map,
                             simplicial_euler, simplicial_lefschetz)
from lefdt.simplicial import simplicial_complex

SMALL = [name for name, img in F.catalog().items() if len(img) <= 8]
PAIR_LIMIT = 3000          # fixtures with at most this many maps get every (f, g) pair
RANDOM_PAIRS = 200_000


def _theories(img):
    """Theories that apply: the cubical one needs c_1 without triangles."""
    out = ["simplicial"]
    try:
        cubical_complex(img)
        out.append("cubical")
    except UnsupportedAdjacencyError:
        pass
    return out


def _small_box_images(max_points=8):
    """Nonempty subimages of the 3x2 box and of I^3 under each c_t.

    Subimages of I^3 with more than 4 points are taken under c_1 only.
    """
    boxes = [(list(itertools.product(range(3), range(2))), 2),
             (list(itertools.product((0, 1), repeat=3)), 3)]
    for box, dim in boxes:
        for k in range(1, min(len(box), max_points) + 1):
            for pts in itertools.combinations(box, k):
                for t in range(1, dim + 1):
                    if dim == 3 and t > 1 and k > 4:
                        continue        # near-complete graphs, ~n^n maps each
                    yield DigitalImage(dim, pts, CT(t))


def _random_images(seed, count, max_points=12):
    rng = random.Random(seed)
    box = list(itertools.product(range(4), range(3)))
    cube = list(itertools.product(range(3), range(2), range(2)))
    for _ in range(count):
        pool, dim = rng.choice([(box, 2), (cube, 3)])
        pts = rng.sample(pool, rng.randint(1, max_points))
        yield DigitalImage(dim, tuple(pts), CT(rng.randint(1, dim)))


def _check_map(f, theory):
    """Chain map, entries in {-1,0,1}, Hopf equality, afp and size bounds."""
    cm = induced_chain_map(f, theory, check=False)
    assert verify_chain_map(cm)
    assert all(set(np.unique(m).tolist()) <= {-1, 0, 1} for m in cm.matrices)
    chain = sum((-1) ** q * t for q, t in enumerate(cm.traces()))
    hom = sum((-1) ** q * t for q, t in enumerate(homology_traces(cm)))
    assert chain == hom
    radius = 1 if theory == "simplicial" else f.domain.dimension
    assert abs(chain) <= len(approx_fixed_points(f, radius)) <= len(f.domain)


def _commutativity(img, theory, rng):
    cx = complex_for(img, theory)
    G = map_array(img, img)
    if len(G) <= PAIR_LIMIT:
        for f in G:
            fg = f[G]                     # f o g for every g
            gf = G[:, f]                  # g o f for every g
            assert np.array_equal(lefschetz_values(fg, cx), lefschetz_values(gf, cx))
    else:
        a = np.array([rng.randrange(len(G)) for _ in range(RANDOM_PAIRS)])
        b = np.array([rng.randrange(len(G)) for _ in range(RANDOM_PAIRS)])
        fg = np.take_along_axis(G[a], G[b], axis=1)
        gf = np.take_along_axis(G[b], G[a], axis=1)
        assert np.array_equal(lefschetz_values(fg, cx), lefschetz_values(gf, cx))


# ---------------------------------------------------------------- criteria


def test_criterion_1_reference_values():
    Y, Z = F.image_y(), F.image_z()
    assert simplicial_euler(Y) == -1 and simplicial_euler(Z) == -2
    assert cubical_euler(Y) == cubical_euler(Z) == 1
    ry = simplicial_lefschetz(F.rotation_y())
    assert ry.value == 1 and ry.homology_traces == (1, 0) and ry.traces == (0, -1)
    assert simplicial_lefschetz(F.rotation_z()).value == 0
    rz = cubical_lefschetz(F.rotation_z())
    assert rz.value == 1 and rz.traces == (0, 0, 1)
    assert simplicial_lefschetz(F.rotation_x()).value == 1
    rx = cubical_lefschetz(F.rotation_x())
    assert rx.value == 1 and rx.traces == (1, 0)
    robot = F.robot()
    assert simplicial_euler(robot) == -2 and cubical_euler(robot) == 0
    for name, img in F.catalog().items():
        c = constant_map(img, img.points[0])
        ident = identity_map(img)
        assert simplicial_lefschetz(c).value == 1
        assert simplicial_lefschetz(ident).value == simplicial_euler(img)
        if "cubical" in _theories(img):
            assert cubical_lefschetz(c).value == 1
            assert cubical_lefschetz(ident).value == cubical_euler(img)


def test_criterion_2_cycles():
    for n in (4, 5, 6, 7, 8):
        C = F.cycle(n)
        maps = map_array(C, C)
        assert len(maps) == count_by_closeness_trace(C) == oracles.closed_walk_count(C)
        L = lefschetz_values(maps, complex_for(C, "simplicial"))
        Lbar = lefschetz_values(maps, complex_for(C, "cubical"))
        assert set(L.tolist()) <= {0, 1, 2}
        if n == 4:
            assert len(maps) == 84
            assert set(Lbar.tolist()) == {1}
        else:
            assert np.array_equal(L, Lbar)
            assert set(L.tolist()) == {0, 1, 2}


def test_criterion_3_antipodal():
    for n in (2, 3):
        f = F.antipodal(n)
        assert approx_fixed_points(f, n) == frozenset(f.domain.points)
        assert all(approx_fixed_points(f, k) == frozenset() for k in range(n))


def test_criterion_4_property_suites():
    rng = random.Random(2024)
    # boundary squares vanish
    for img in itertools.chain(_small_box_images(), _random_images(1, 300),
                               (F.get(n) for n in SMALL)):
        assert simplicial_complex(img).boundary_squares_vanish()
        if img.is_c1:
            assert cubical_complex(img).boundary_squares_vanish()
    # every continuous self-map of every small fixture and small-box subimage
    exhaustive = [F.get(n) for n in SMALL] + list(_small_box_images(max_points=6))
    for img in exhaustive:
        for theory in _theories(img):
            for row in map_array(img, img):
                _check_map(DigitalMap(img, img, tuple(int(v) for v in row)), theory)
    # randomized up to 12 points
    for img in _random_images(2, 150):
        for theory in _theories(img):
            for _ in range(4):
                _check_map(random_continuous_map(img, img, rng), theory)
    # commutativity of both Lefschetz numbers
    for name in SMALL:
        img = F.get(name)
        for theory in _theories(img):
            _commutativity(img, theory, rng)


def test_criterion_5_homotopy_invariance():
    for name in SMALL:
        img = F.get(name)
        n = img.dimension
        if n > 3:
            continue
        cubical = "cubical" in _theories(img)
        for strong in (True, False):
            radius = 1 if strong else n
            for cls in homotopy_classes(img, strong):
                members = cls.members
                L = lefschetz_values(members, complex_for(img, "simplicial"))
                if strong:
                    assert len(set(L.tolist())) == 1
                elif cubical:
                    Lbar = lefschetz_values(members, complex_for(img, "cubical"))
                    assert len(set(Lbar.tolist())) == 1
                dist = img.distance_matrix
                idx = np.arange(len(img))
                counts = {int(np.sum((d >= 0) & (d <= radius)))
                          for d in (dist[idx, r] for r in members)}
                for r in {0, len(members) - 1}:
                    f = DigitalMap(img, img, tuple(int(v) for v in members[r]))
                    assert set(afp_spectrum(f, radius, strong).values) == counts


def test_criterion_6_classification():
    C4 = F.cycle(4)
    assert is_contractible(C4) and not is_strongly_contractible(C4)
    C8 = F.cycle(8)
    classes = homotopy_classes(C8)
    assert len(classes) == 3
    cx = complex_for(C8, "cubical")
    values = [set(lefschetz_values(c.members, cx).tolist()) for c in classes]
    assert all(len(v) == 1 for v in values)
    assert sorted(v.pop() for v in values) == [0, 1, 2]
    for name, img in F.catalog().items():
        if len(img) <= 6:
            assert has_fpp(img) == (len(img) == 1)


def test_criterion_7_spectra():
    assert fixed_point_spectrum(F.interval()).values == (0, 1, 2)
    C4 = F.cycle(4)
    brute = {sum(m[i] == i for i in range(4)) for m in oracles.continuous_maps(C4, C4)}
    assert set(fixed_point_spectrum(C4).values) == brute
    res = lefschetz_spectrum(F.robot(), "cubical", reduce=True)
    assert res.values == (0, 1, 2)
    red = thin(F.robot(), max_cluster=3)
    assert red.verify()
    small = red.image
    assert len(small) == 14 and len(small.components) == 1
    assert all(len(nb) == 2 for nb in small.neighbors)
    for v, w in res.witnesses.items():
        assert cubical_lefschetz(w).value == v


@pytest.mark.xfail(strict=True, reason=(
    "the listed fixed point spectrum {0,1,2,4} of C_4 omits 3: fixing three "
    "points and sending the fourth to the opposite corner is continuous"))
def test_criterion_7_c4_fixed_point_spectrum_as_listed():
    assert set(fixed_point_spectrum(F.cycle(4)).values) == {0, 1, 2, 4}


def test_criterion_8_thinning():
    robot = F.robot()
    res = thin(robot)
    assert res.verify() and res.certificate.kind == "ordinary"
    assert len(res.image) < len(robot)
    assert cubical_euler(res.image) == cubical_euler(robot)
    C4 = F.cycle(4)
    ex = thin(C4, mode="exhaustive")
    assert ex.verify() and len(ex.image) == 1
    greedy = thin(C4)
    assert len(greedy.image) == 4 and greedy.verify()
