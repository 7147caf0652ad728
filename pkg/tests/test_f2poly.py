from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, strategies as st

from f2depth.dickson import SubgroupFlag
from f2depth.f2poly import (AlgebraMap, InhomogeneousError, ParseError, Polynomial, RingDescriptor,
                            add, apply_map, count_monomials, format_polynomial, identity_map,
                            linear_substitution, monomial_basis, mul, nonzero_linear_forms,
                            parse_polynomial, polynomial_ring)
from oracle import exps, symbols, to_sympy

R2 = polynomial_ring(2)
R3 = polynomial_ring(3)


def P(text, ring=R2):
    return parse_polynomial(text, ring)


def homogeneous(ring, max_degree=4):
    @st.composite
    def build(draw):
        d = draw(st.integers(0, max_degree))
        basis = monomial_basis(ring, d)
        chosen = draw(st.lists(st.sampled_from(basis), max_size=len(basis))) if basis else []
        return Polynomial.from_terms(ring, chosen)
    return build()


def same_degree_pair(ring, max_degree=4):
    @st.composite
    def build(draw):
        d = draw(st.integers(0, max_degree))
        basis = monomial_basis(ring, d)
        a = draw(st.lists(st.sampled_from(basis), max_size=len(basis)))
        b = draw(st.lists(st.sampled_from(basis), max_size=len(basis)))
        return Polynomial.from_terms(ring, a), Polynomial.from_terms(ring, b)
    return build()


# examples

def test_add_examples():
    assert add(P("t1"), P("t1")).is_zero()
    assert add(P("t1"), P("t2")) == P("t1 + t2")
    assert P("t1^2 + t1*t2") + P("t1*t2 + t2^2") == P("t1^2 + t2^2")


def test_add_rejects_degree_mismatch():
    with pytest.raises(ValueError):
        add(P("t1"), P("t1^2"))
    assert add(P("0"), P("t1^2")) == P("t1^2")


def test_mul_examples():
    assert mul(P("t1"), P("t2")) == P("t1*t2")
    assert P("t1 + t2") * P("t1 + t2") == P("t1^2 + t2^2")
    assert P("t1") * P("t2") * P("t1 + t2") == P("t1^2*t2 + t1*t2^2")


def test_restriction_examples():
    istar = SubgroupFlag.standard(3).restriction()
    assert apply_map(istar, P("t3", R3)).is_zero()
    assert apply_map(istar, P("t1", R3)) == P("t1", polynomial_ring(2))
    assert apply_map(istar, P("t1*t3 + t1^2", R3)) == P("t1^2", polynomial_ring(2))


def test_monomial_basis_examples():
    assert monomial_basis(R2, 2) == [(2, 0), (1, 1), (0, 2)]
    ring = RingDescriptor(("c1", "c2"), (2, 3))
    assert monomial_basis(ring, 6) == [(3, 0), (0, 2)]
    assert monomial_basis(R3, 0) == [(0, 0, 0)]
    assert monomial_basis(ring, 1) == []


def test_nonzero_linear_forms_examples():
    assert nonzero_linear_forms(1) == [P("t1", polynomial_ring(1))]
    assert nonzero_linear_forms(2) == [P("t1"), P("t2"), P("t1 + t2")]
    assert len(nonzero_linear_forms(3)) == 7
    assert len(set(nonzero_linear_forms(4))) == 15


def test_homogeneity_enforced():
    with pytest.raises(InhomogeneousError):
        P("t1 + t2^2")


def test_algebra_map_must_preserve_degree():
    with pytest.raises(ValueError):
        AlgebraMap(R2, R2, (P("t1^2"), P("t2")))


def test_weighted_ring_degrees():
    ring = RingDescriptor.from_pairs([("c1", 2), ("c2", 3)])
    p = parse_polynomial("c1^3 + c2^2", ring)
    assert p.degree == 6
    assert str(ring) == "F2[c1:2, c2:3]"


def test_format_and_parse():
    p = P("t1*t2^2 + t1^2*t2")
    assert format_polynomial(p) == "t1^2*t2 + t1*t2^2"
    assert parse_polynomial(format_polynomial(p), R2) == p
    assert format_polynomial(P("0")) == "0"
    assert P("(t1 + t2)^2") == P("t1^2 + t2^2")
    assert P("3*t1") == P("t1")
    assert P("t1 - t2") == P("t1 + t2")
    with pytest.raises(ParseError):
        P("t1 + t7")
    with pytest.raises(ParseError):
        P("t1 +")


# properties

@given(homogeneous(R3), homogeneous(R3))
def test_mul_commutative_and_matches_sympy(p, q):
    assert p * q == q * p
    gens = symbols(3)
    assert set((p * q).terms) == exps(to_sympy(p, gens) * to_sympy(q, gens))


@given(homogeneous(R3, 3), homogeneous(R3, 3), homogeneous(R3, 3))
def test_mul_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(same_degree_pair(R3), homogeneous(R3, 3))
def test_distributive_and_frobenius(pq, r):
    p, q = pq
    assert (p + q) * r == p * r + q * r
    assert (p + q) ** 2 == p ** 2 + q ** 2
    assert (p + q) + q == p


@given(st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=3, max_size=3),
       homogeneous(R3, 3), homogeneous(R3, 3))
def test_maps_are_multiplicative(matrix, p, q):
    phi = linear_substitution(R3, matrix)
    assert apply_map(phi, p * q) == apply_map(phi, p) * apply_map(phi, q)


@given(st.integers(1, 4), st.integers(0, 7))
def test_basis_size_is_binomial(n, d):
    ring = polynomial_ring(n)
    assert len(monomial_basis(ring, d)) == comb(d + n - 1, n - 1)
    assert count_monomials(ring.degrees, d) == comb(d + n - 1, n - 1)


@given(homogeneous(R3))
def test_identity_map_and_round_trip(p):
    assert apply_map(identity_map(R3), p) == p
    assert parse_polynomial(format_polynomial(p), R3) == p
