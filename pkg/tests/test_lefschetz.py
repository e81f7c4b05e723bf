import numpy as np
import pytest
from hypothesis import given

from conftest import SMALL_FIXTURES, map_pairs, self_maps
from lefdt import fixtures as F
from lefdt.enumeration import lefschetz_values, map_array
from lefdt.errors import DimensionGuardError, PreconditionError, UnsupportedAdjacencyError
from lefdt.image import (CT, DigitalImage, DigitalMap, approx_fixed_points, compose,
                         constant_map, fixed_points, identity_map)
from lefdt.lefschetz import (afp_lower_bound_check, complex_for, cubical_euler,
                             cubical_lefschetz, fixed_cells, lefschetz, simplicial_euler,
                             simplicial_lefschetz)


def test_rotation_values():
    assert simplicial_lefschetz(F.rotation_y()).value == 1
    assert simplicial_lefschetz(F.rotation_z()).value == 0
    assert simplicial_lefschetz(F.rotation_x()).value == 1
    assert cubical_lefschetz(F.rotation_z()).value == 1
    assert cubical_lefschetz(F.rotation_y()).value == 1
    rx = cubical_lefschetz(F.rotation_x())
    assert rx.value == 1 and rx.traces == (1, 0)


@pytest.mark.parametrize("name", ["point", "Y", "Z", "X", "C8", "robot"])
def test_constant_maps(name):
    img = F.get(name)
    c = constant_map(img, img.points[-1])
    assert simplicial_lefschetz(c).value == 1
    assert cubical_lefschetz(c).value == 1


def test_euler_characteristics():
    assert simplicial_euler(F.image_y()) == -1
    assert simplicial_euler(F.image_z()) == -2
    assert cubical_euler(F.image_y()) == cubical_euler(F.image_z()) == 1
    assert simplicial_euler(F.robot()) == -2
    assert cubical_euler(F.robot()) == 0


def test_cubical_euler_has_no_dimension_cap():
    assert cubical_euler(F.unit_cube(6)) == 1


def test_every_c4_map_has_cubical_value_one():
    C4 = F.cycle(4)
    maps = map_array(C4, C4)
    assert set(lefschetz_values(maps, complex_for(C4, "cubical"))) == {1}


def test_fixed_cells():
    Y = F.image_y()
    assert set(fixed_cells(identity_map(Y), "simplicial")) == {
        tuple(Y.points[v] for v in c) for cs in complex_for(Y, "simplicial").cells for c in cs}
    z_cells = fixed_cells(F.rotation_z(), "cubical")
    assert z_cells == (((1, 0), (2, 0), (1, 1), (2, 1)),)
    y_cells = fixed_cells(F.rotation_y(), "simplicial")
    assert y_cells == (((1, 0), (1, 1)),)


def test_report_json():
    rep = cubical_lefschetz(F.rotation_z())
    js = rep.to_json()
    assert js["theory"] == "cubical" and js["value"] == 1 and js["traces"] == [0, 0, 1]
    assert js["afpCount"] == len(approx_fixed_points(F.rotation_z(), 2))
    assert {"theory", "value", "traces", "fixedCells", "afpCount"} <= set(js)


def test_guards():
    Y = F.image_y()
    bad = DigitalMap(Y, Y, (0, 0, 0, 0, 0, 5))
    with pytest.raises(PreconditionError):
        simplicial_lefschetz(bad)
    c2 = DigitalImage(2, Y.points, CT(2))
    with pytest.raises(UnsupportedAdjacencyError):
        cubical_lefschetz(identity_map(c2))
    with pytest.raises(DimensionGuardError):
        cubical_lefschetz(identity_map(F.unit_cube(5)))
    assert cubical_lefschetz(identity_map(F.unit_cube(5)), unsafe_high_dimension=True).value == 1


def test_empty_image_is_zero():
    empty = DigitalImage(2, ())
    f = identity_map(empty)
    assert simplicial_lefschetz(f).value == 0
    assert cubical_lefschetz(f).value == 0
    assert simplicial_euler(empty) == cubical_euler(empty) == 0


def test_afp_bounds_examples():
    Y = F.image_y()
    assert afp_lower_bound_check(constant_map(Y, (0, 0)))
    C8 = F.cycle(8)
    flip = F.cycle_flip(C8)
    rep = simplicial_lefschetz(flip)
    assert rep.value == 2 and len(approx_fixed_points(flip, 1)) >= 2
    assert afp_lower_bound_check(flip)
    rid = simplicial_lefschetz(identity_map(F.robot()))
    assert abs(rid.value) == 2 and rid.afp_count == 40


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_identity_gives_euler(name):
    img = F.get(name)
    assert simplicial_lefschetz(identity_map(img)).value == simplicial_euler(img)
    if name != "C3":
        assert cubical_lefschetz(identity_map(img)).value == cubical_euler(img)


@given(self_maps(max_points=12))
def test_report_invariants(f):
    rep = simplicial_lefschetz(f)
    assert rep.value == sum((-1) ** q * t for q, t in enumerate(rep.traces))
    assert abs(rep.value) <= len(rep.fixed_cells)
    assert abs(rep.value) <= rep.afp_count <= len(f.domain)
    if rep.value != 0:
        assert rep.fixed_cells
        assert fixed_points(f) or len(approx_fixed_points(f, 1)) >= 2


@given(self_maps(max_points=12, c1_only=True))
def test_cubical_report_invariants(f):
    rep = cubical_lefschetz(f)
    n = f.domain.dimension
    assert rep.value == sum((-1) ** q * t for q, t in enumerate(rep.traces))
    assert abs(rep.value) <= rep.afp_count == len(approx_fixed_points(f, n))
    if rep.value != 0:
        assert rep.fixed_cells


@given(map_pairs(max_points=12))
def test_commutativity_random(pair):
    f, g = pair
    assert simplicial_lefschetz(compose(f, g)).value == simplicial_lefschetz(compose(g, f)).value


@given(map_pairs(max_points=12, c1_only=True))
def test_cubical_commutativity_random(pair):
    f, g = pair
    assert cubical_lefschetz(compose(f, g)).value == cubical_lefschetz(compose(g, f)).value


def test_kernel_values_agree_with_reports():
    Z = F.image_z()
    maps = map_array(Z, Z)[::97]
    for theory in ("simplicial", "cubical"):
        vals = lefschetz_values(maps, complex_for(Z, theory))
        ref = [lefschetz(DigitalMap(Z, Z, tuple(r)), theory).value for r in maps]
        assert np.array_equal(vals, ref)
