from __future__ import annotations

from hypothesis import given, strategies as st

from f2depth import gf2
from oracle import np_rank


def to_rows(vectors, width):
    return [[(v >> i) & 1 for i in range(width)] for v in vectors]


vectors = st.lists(st.integers(min_value=0, max_value=2 ** 12 - 1), max_size=14)


@given(vectors)
def test_rank_matches_dense_oracle(vs):
    assert gf2.rank(vs) == np_rank(to_rows(vs, 12))


@given(vectors)
def test_kernel_is_a_basis_of_the_nullspace(cols):
    ker = gf2.kernel(cols)
    for x in ker:
        assert gf2.apply(cols, x) == 0
    assert gf2.rank(ker) == len(ker)
    assert len(ker) == len(cols) - gf2.rank(cols)


@given(vectors, vectors)
def test_compose_agrees_with_apply(outer, inner):
    k = len(outer)
    inner = [v & ((1 << k) - 1) for v in inner]
    comp = gf2.compose(outer, inner)
    for i, c in enumerate(inner):
        assert comp[i] == gf2.apply(outer, c)


def test_bits_lowest_first():
    assert list(gf2.bits(0b101001)) == [0, 3, 5]


@given(st.integers(1, 10), st.data())
def test_subquotient_dimension_and_coords(m, data):
    rels = data.draw(st.lists(st.integers(0, 2 ** m - 1), max_size=6))
    S = gf2.Subquotient(m, rels)
    assert S.dim == m - gf2.rank(rels)
    for r in rels:
        assert S.coords(r) == 0
    for i, rep in enumerate(S.reps):
        assert S.coords(rep) == 1 << i
    v = data.draw(st.integers(0, 2 ** m - 1))
    w = data.draw(st.integers(0, 2 ** m - 1))
    assert S.coords(v ^ w) == S.coords(v) ^ S.coords(w)


def test_subquotient_with_span_rejects_outside_vectors():
    S = gf2.Subquotient(3, relations=[0b001], span=[0b001, 0b010])
    assert S.dim == 1
    assert S.coords(0b011) == S.coords(0b010)
    try:
        S.coords(0b100)
    except ValueError:
        pass
    else:
        raise AssertionError("vector outside the span was accepted")
