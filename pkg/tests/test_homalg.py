from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from f2depth import homalg
from f2depth.catalog import random_presentation
from f2depth.dickson import dickson_classes
from f2depth.errors import CutoffInsufficient, InconsistentResult
from f2depth.f2poly import parse_polynomial, polynomial_ring
from f2depth.grmodule import (convolve, cyclic_presentation, direct_sum, expand, free_presentation,
                              polynomial_hilbert, quotient_by_elements, sum_presentations, shift_presentation,
                              suspension, trivial_presentation, zero_module)
from oracle import cyclic_tor

R1, R2, R3 = polynomial_ring(1), polynomial_ring(2), polynomial_ring(3)
C22 = "t1^2*t2 + t1*t2^2"


def P(text, ring=R2):
    return parse_polynomial(text, ring)


def cyc(rels, ring=R2, D=10):
    return expand(cyclic_presentation(ring, [P(r, ring) for r in rels]), D)


def tor_rows(M):
    return [list(row) for row in homalg.koszul_tor(M).entries]


# Tor

def test_tor_of_residue_field():
    B = homalg.koszul_tor(cyc(["t1", "t2"], D=6))
    assert B.triples() == [(0, 0, 1), (1, 1, 2), (2, 2, 1)]
    assert B.stability_ok


def test_tor_of_free_module():
    assert homalg.koszul_tor(cyc([], D=6)).triples() == [(0, 0, 1)]


def test_tor_of_c22_quotient():
    B = homalg.koszul_tor(cyc([C22], D=8))
    assert B.triples() == [(0, 0, 1), (1, 3, 1)]


@pytest.mark.parametrize("rels,n", [([C22], 2), (["t2^2"], 2), (["t1*t2"], 2), (["t1", "t2"], 2),
                                    (["t3"], 3), (["t1^2", "t2^3"], 2), (["t1*t2", "t2*t3"], 3)])
def test_tor_matches_dense_oracle(rels, n):
    ring = polynomial_ring(n)
    M = cyc(rels, ring, D=7)
    gens = [set(P(r, ring).terms) for r in rels]
    assert tor_rows(M) == cyclic_tor(n, gens, 7)


def test_stability_window_raises():
    M = cyc([C22], D=3)
    B = homalg.koszul_tor(M)
    assert not B.stability_ok
    with pytest.raises(CutoffInsufficient):
        homalg.projective_dimension(B)


# projective dimension and depth

def test_projective_dimension_examples():
    assert homalg.projective_dimension(homalg.koszul_tor(cyc(["t1", "t2"], D=6))) == 2
    assert homalg.projective_dimension(homalg.koszul_tor(cyc([], D=6))) == 0
    assert homalg.projective_dimension(homalg.koszul_tor(zero_module(R2, 4))) == -math.inf


def test_depth_via_ab_examples():
    assert homalg.depth_via_ab(cyc([], D=6)).depth == 2
    assert homalg.depth_via_ab(cyc(["t1", "t2"], D=6)).depth == 0
    rep = homalg.depth_via_ab(cyc(["t3"], R3, D=8))
    assert (rep.depth, rep.projective_dimension) == (2, 1)
    z = homalg.depth_via_ab(zero_module(R2, 4))
    assert z.depth == math.inf and z.projective_dimension == -math.inf


def test_depth_via_ext_examples():
    assert homalg.depth_via_ext(cyc(["t1"], R1, D=6)).depth == 0
    assert homalg.depth_via_ext(cyc([], R1, D=6)).depth == 1
    assert homalg.depth_via_ext(cyc(["t2^2"], D=8)).depth == 1
    assert homalg.depth_via_ext(zero_module(R2, 3)).depth == math.inf


def test_ext_refuses_short_cutoff():
    # a socle in degree 9 is invisible at cutoff 5
    with pytest.raises(CutoffInsufficient):
        homalg.depth_via_ext(cyc(["t1^10"], R1, D=5))
    assert homalg.depth_via_ext(cyc(["t1^10"], R1, D=14)).depth == 0


def test_depth_all_cross_checks():
    assert homalg.depth(cyc(["t2^2"], D=8), "all").depth == 1
    with pytest.raises(ValueError):
        homalg.depth(cyc([], D=4), "nope")


def test_inconsistent_result_type():
    assert issubclass(InconsistentResult, RuntimeError)


# regular sequences

def test_regular_sequence_examples():
    H3 = cyc([], R3, D=8)
    assert homalg.is_regular_sequence(H3, list(R3.gens()))
    v = homalg.is_regular_sequence(cyc(["t1*t2"], D=8), [P("t1")])
    assert not v and v.prefix_length == 0 and v.failing_degree == 1
    c1, c2 = dickson_classes(2).classes
    assert homalg.is_regular_sequence(cyc([], D=10), [c1, c2])
    with pytest.raises(ValueError):
        homalg.is_regular_sequence(H3, [R3.one()])


def test_depth_via_dickson_examples():
    rep = homalg.depth_via_dickson(cyc([], D=10))
    assert rep.depth == 2 and len(rep.witnesses) == 2 and not rep.flags
    assert homalg.depth_via_dickson(cyc(["t1", "t2"], D=6)).depth == 0
    rep = homalg.depth_via_dickson(cyc([C22], D=12))
    assert rep.depth == 1 and rep.witnesses == dickson_classes(2).classes[:1]


def test_depth_over_dickson_agrees_examples():
    assert homalg.depth_over_dickson_agrees(cyc([], D=16)) == homalg.RingDepths(2, 2, 2)
    assert homalg.depth_over_dickson_agrees(cyc(["t1", "t2"], D=16)) == homalg.RingDepths(0, 0, 0)
    assert homalg.depth_over_dickson_agrees(cyc(["t2"], D=16)) == homalg.RingDepths(1, 1, 1)


def test_structure_examples():
    H = cyc([], D=14)
    assert homalg.structure_check(H, 2)
    c = dickson_classes(2)
    top = H.cutoff - 3
    conv = convolve(polynomial_hilbert(c.degrees, top).values, quotient_by_elements(H, c.classes).dims, top)
    assert H.dims[:top + 1] == conv
    assert homalg.structure_check(cyc(["t1", "t2"], D=6), 0)
    for n in (2, 3):
        ring = polynomial_ring(n)
        M = expand(sum_presentations(free_presentation(ring), shift_presentation(free_presentation(ring), 1)), 20)
        assert homalg.structure_check(M, n)
        dk = dickson_classes(n)
        prod = math.prod(dk.degrees)
        assert sum(quotient_by_elements(M, dk.classes).dims) == 2 * prod


def test_structure_check_rejects_nonregular():
    with pytest.raises(ValueError):
        homalg.structure_check(cyc(["t1", "t2"], D=6), 1)


def test_ses_bound_examples():
    assert homalg.ses_depth_bound(1, 1, 1)
    assert homalg.ses_depth_bound(1, 1, math.inf)
    assert not homalg.ses_depth_bound(2, 0, 2)


# properties over random presentations

seeds = st.integers(1, 10_000)


@given(seeds)
def test_euler_identity(seed):
    M = expand(random_presentation(seed, 2), 12)
    assert homalg.koszul_euler_check(M)


@given(seeds)
def test_auslander_buchsbaum_and_methods(seed):
    M = expand(random_presentation(seed, 2), 20)
    ab = homalg.depth_via_ab(M)
    ext = homalg.depth_via_ext(M)
    assert ab.depth == ext.depth
    assert ext.depth + homalg.projective_dimension(homalg.koszul_tor(M)) == 2
    assert homalg.depth_via_dickson(M, compare=False).depth <= ab.depth


@given(seeds)
def test_regular_implies_free_over_the_sequence(seed):
    M = expand(random_presentation(seed, 2), 16)
    for alphas in ([P("t1")], [P("t1"), P("t2")], list(dickson_classes(2).classes)):
        if homalg.is_regular_sequence(M, alphas):
            assert homalg.hilbert_convolution_check(M, alphas)


def test_tor_rows_stop_at_koszul_length():
    B = homalg.koszul_tor(cyc(["t1", "t2"], D=6))
    assert len(B.entries) == 3 and B[3, 3] == 0


def test_direct_sum_and_suspension_depth():
    M = direct_sum(cyc([], D=10), suspension(cyc(["t1", "t2"], D=9), 1))
    assert homalg.depth(M, "all").depth == 0
    assert homalg.depth(expand(trivial_presentation(R2, 2), 8), "ab").depth == 0
