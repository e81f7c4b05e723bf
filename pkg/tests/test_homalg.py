import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import images, self_maps
from lefdt import fixtures as F
from lefdt.cubical import cubical_complex, cubical_induced_chain_map
from lefdt.errors import PreconditionError
from lefdt.homalg import (ChainMap, alternating_sum, betti_numbers, determinant, dump_matrix,
                          homology, homology_trace, homology_traces, hopf_trace_check,
                          load_matrix, matmul, rank_bareiss, smith_normal_form)
from lefdt.image import constant_map, identity_map
from lefdt.simplicial import simplicial_complex, simplicial_induced_chain_map

int_matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def test_snf_small_cases():
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([[2]]).diagonal == [2]
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.invariant_factors == [2, 4]


def test_snf_of_cycle_boundary():
    D = simplicial_complex(F.cycle(4)).boundary(1)
    snf = smith_normal_form(D)
    assert snf.diagonal == [1, 1, 1, 0]


@given(int_matrices)
def test_snf_round_trip_and_unimodular(M):
    snf = smith_normal_form(M)
    assert matmul(matmul(snf.U, M), snf.V) == snf.S
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    d = snf.invariant_factors
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for i, row in enumerate(snf.S):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0


@given(int_matrices)
def test_snf_independent_of_pivoting_and_matches_minors(M):
    a = smith_normal_form(M, pivot="min").invariant_factors
    b = smith_normal_form(M, pivot="first").invariant_factors
    assert a == b == oracles.invariant_factors(M)


@given(int_matrices)
def test_rank_agrees(M):
    assert smith_normal_form(M).rank == rank_bareiss(M) == oracles.rank(M)


def test_point_homology():
    cx = simplicial_complex(F.point())
    assert homology(cx, 0).betti == 1
    assert homology(cx, 1).betti == 0
    assert homology(cx, 7).betti == 0


def test_cycle_and_y_homology():
    assert homology(simplicial_complex(F.cycle(8)), 1).betti == 1
    assert betti_numbers(cubical_complex(F.image_y())) == (1, 0, 0)


@pytest.mark.parametrize("name", ["Y", "Z", "X", "robot", "I3", "I4", "C5", "C8", "C14"])
def test_no_torsion_on_fixtures(name):
    img = F.get(name)
    for cx in (simplicial_complex(img), cubical_complex(img)):
        assert all(not homology(cx, q).torsion for q in range(len(cx.cells)))


@given(images(max_points=10))
def test_euler_equals_betti_sum(img):
    cx = simplicial_complex(img)
    assert alternating_sum(betti_numbers(cx)) == alternating_sum(cx.ranks)


@given(images(max_points=10, c1_only=True))
def test_cubical_euler_equals_betti_sum(img):
    cx = cubical_complex(img)
    assert alternating_sum(betti_numbers(cx)) == alternating_sum(cx.ranks)


def test_identity_trace_is_betti():
    img = F.image_x()
    cm = simplicial_induced_chain_map(identity_map(img))
    assert homology_traces(cm) == betti_numbers(cm.source)


def test_constant_map_degree_zero_trace():
    img = F.image_z()
    cm = simplicial_induced_chain_map(constant_map(img, img.points[3]))
    assert homology_trace(cm, 0) == 1


def test_flip_on_c8_reverses_the_loop():
    C8 = F.cycle(8)
    cm = simplicial_induced_chain_map(F.cycle_flip(C8))
    assert homology_trace(cm, 1) == -1


def test_homology_trace_needs_chain_map():
    cm = simplicial_induced_chain_map(F.rotation_y())
    mats = [m.copy() for m in cm.matrices]
    mats[0][0, 0] += 2
    with pytest.raises(PreconditionError):
        homology_trace(ChainMap(cm.source, cm.target, mats), 0)


def test_constant_map_on_y_hopf():
    Y = F.image_y()
    cm = simplicial_induced_chain_map(constant_map(Y, (0, 0)))
    assert hopf_trace_check(cm)
    assert alternating_sum(cm.traces()) == 1


def _oracle_traces(cm):
    out = []
    for q in range(len(cm.source.cells)):
        Dq = cm.source.boundary(q).tolist() if q > 0 else None
        Dn = cm.source.boundary(q + 1).tolist()
        out.append(oracles.quotient_trace(cm.matrix(q).tolist(), Dq, Dn, cm.source.dim(q)))
    return tuple(out)


@given(self_maps(max_points=9))
def test_homology_traces_match_quotient_oracle(f):
    cm = simplicial_induced_chain_map(f)
    assert homology_traces(cm) == _oracle_traces(cm)
    assert hopf_trace_check(cm)


@given(self_maps(max_points=9, c1_only=True))
def test_cubical_homology_traces_match_quotient_oracle(f):
    cm = cubical_induced_chain_map(f)
    assert homology_traces(cm) == _oracle_traces(cm)
    assert hopf_trace_check(cm)


def test_matrix_dump_round_trip():
    M = np.array([[1, -2, 0], [3, 4, -5]])
    text = dump_matrix(M)
    assert text == "1 -2 0\n3 4 -5"
    assert load_matrix(text) == M.tolist()


def test_torsion_is_reported():
    from lefdt.homalg import ChainComplex
    cx = ChainComplex("simplicial", None, [[(0,)], [(0, 0)]],
                      [np.zeros((0, 1), dtype=np.int64), np.array([[2]])])
    h0 = homology(cx, 0)
    assert h0.betti == 0 and h0.torsion == (2,)
    assert str(h0) == "Z/2"
