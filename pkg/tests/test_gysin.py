from __future__ import annotations

import math

import pytest

from f2depth import gf2

from f2depth.dickson import SubgroupFlag
from f2depth.f2poly import parse_polynomial, polynomial_ring
from f2depth.grmodule import (cyclic_presentation, direct_sum, expand, free_presentation, same_shape,
                              sum_presentations, suspension, trivial_presentation)
from f2depth.gysin import (GysinTriple, adapt, check_cm_descends, check_free_descends,
                           check_k_action_descends, check_lemma_2322, check_prop_241, check_prop_2311,
                           gysin_consistency, gysin_split, lemma_3122, quotient_ring, sequence_S_check,
                           theorem_31_check)
from f2depth.homalg import depth_via_ab
from f2depth.report import Verdict

D = 14


def ring(n):
    return polynomial_ring(n)


def free(n, D=D):
    return expand(free_presentation(ring(n)), D)


def cyc(n, rels, D=D):
    R = ring(n)
    return expand(cyclic_presentation(R, [parse_polynomial(r, R) for r in rels]), D)


def points(n, k, D=D):
    return expand(sum_presentations(*[trivial_presentation(ring(n))] * k), D)


def test_split_examples():
    for n in (2, 3):
        coinv, torsion = gysin_split(free(n), SubgroupFlag.standard(n))
        assert same_shape(coinv, free(n - 1)) and torsion.is_zero()
    coinv, torsion = gysin_split(cyc(2, ["t2^2"]), SubgroupFlag.standard(2))
    assert coinv.dims == (1,) * (D + 1)
    assert torsion.dims == (0,) + (1,) * (D - 1)
    # t_n acting as zero: both parts are the module itself
    coinv, torsion = gysin_split(cyc(3, ["t3"]), SubgroupFlag.standard(3))
    assert same_shape(coinv, free(2)) and same_shape(torsion, free(2, D - 1))


def test_split_dims_match_tn_rank():
    # coinvariants = cokernel of t_n, torsion = kernel of t_n, degree by degree
    flag = SubgroupFlag.standard(2)
    for M in (cyc(2, ["t2^2"]), cyc(2, ["t1*t2"]), cyc(2, ["t1^2 + t2^2"]), points(2, 1)):
        coinv, torsion = gysin_split(M, flag)
        tn = flag.last_variable()
        for d in range(min(coinv.cutoff, torsion.cutoff)):
            into = gf2.rank(M.mult_matrix(tn, d - 1)) if d >= 1 else 0
            out = gf2.rank(M.mult_matrix(tn, d))
            assert coinv.dim(d) == M.dim(d) - into
            assert torsion.dim(d) == M.dim(d) - out


def test_split_requires_codim_one():
    with pytest.raises(ValueError):
        gysin_split(free(3), SubgroupFlag.standard(3, 2))


def test_consistency_examples():
    for n in (2, 3):
        assert gysin_consistency(GysinTriple.build(free(n), free(n - 1), SubgroupFlag.standard(n)))
        T = GysinTriple.build(points(n, 1), points(n - 1, 2), SubgroupFlag.standard(n))
        assert gysin_consistency(T)
        assert T.coinv.dims[0] + T.torsion.dims[0] == 2
        T = GysinTriple.build(cyc(n, [f"t{n}"]), direct_sum(free(n - 1), free(n - 1)), SubgroupFlag.standard(n))
        assert gysin_consistency(T)
    bad = gysin_consistency(GysinTriple.build(free(2), points(1, 1), SubgroupFlag.standard(2)))
    assert not bad and bad.first_failure == 1


def test_prop_241_examples():
    n = 3
    flag = SubgroupFlag.standard(n)
    T = GysinTriple.build(free(n), free(n - 1), flag)
    assert all(check_prop_241(T, k) for k in range(1, n))
    T = GysinTriple.build(cyc(n, [f"t{n}"]), direct_sum(free(n - 1), free(n - 1)), flag)
    assert check_prop_241(T, n - 1)
    assert depth_via_ab(T.coinv).depth == depth_via_ab(T.torsion).depth == n - 1
    T = GysinTriple.build(points(2, 1), points(1, 2), SubgroupFlag.standard(2))
    res = check_prop_241(T, 1)
    assert res and "W=0" in res.detail


def test_lemma_3122_examples():
    out = lemma_3122(free(3), SubgroupFlag.standard(3))
    assert out.result and out.q1.is_zero() and same_shape(out.q0, free(2))
    out = lemma_3122(cyc(2, ["t2^2"]), SubgroupFlag.standard(2))
    assert out.result and out.q1.dims[:4] == (0, 0, 1, 1)
    M = cyc(3, ["t3"])
    out = lemma_3122(M, SubgroupFlag.standard(3))
    assert out.result and out.q1.dims == suspension(free(2, D - 1), 1).dims
    assert len(out.tor.entries) == 2


def test_sequence_S_examples():
    S = sequence_S_check(free(2), SubgroupFlag.standard(2), [1])
    assert S and S.results[0]
    assert S.B.triples() == []
    assert S.A.triples() == [(0, 0, 1)]
    assert not any(S.C.row_nonzero(p) for p in range(2, 3))
    S = sequence_S_check(points(2, 1), SubgroupFlag.standard(2))
    assert S.results[0]
    # no torsion: B vanishes and A matches C degreewise
    for n in (2, 3):
        S = sequence_S_check(cyc(n, ["t1"], 20), SubgroupFlag.standard(n))
        assert S and not S.B.triples()
        assert S.A.entries == S.C.entries[:len(S.A.entries)] and not S.C.row_nonzero(n)


def test_theorem_31_examples():
    for n in (2, 3):
        flag = SubgroupFlag.standard(n)
        res = theorem_31_check(free(n), free(n - 1), flag)
        assert res and res.detail == f"depths {n} >= {n - 1}"
        assert theorem_31_check(points(n, 1), points(n - 1, 2), flag).detail == "depths 0 >= 0"
        res = theorem_31_check(cyc(n, [f"t{n}"]), direct_sum(free(n - 1), free(n - 1)), flag)
        assert res and res.detail == f"depths {n - 1} >= {n - 1}"


def test_theorem_31_codim_two_needs_chain():
    flag = SubgroupFlag.standard(3, 2)
    with pytest.raises(ValueError):
        theorem_31_check(free(3), free(1), flag)
    assert theorem_31_check(free(3), free(1), flag, [free(2)])
    res = theorem_31_check(free(3), free(1), flag, [points(2, 1)])
    assert res.verdict is Verdict.NOT_APPLICABLE


def test_prop_2311_examples():
    for n in (2, 3):
        assert check_prop_2311(free(n), SubgroupFlag.standard(n))
    res = check_prop_2311(cyc(2, ["t1"]), SubgroupFlag.standard(2))
    assert res and res.detail == "1 vs 0 + 1"
    res = check_prop_2311(points(2, 1), SubgroupFlag.standard(2))
    assert res.verdict is Verdict.NOT_APPLICABLE and "hypothesis not met" in res.detail


def test_prop_2311_nonstandard_flag():
    # W = ker(t1 + t2): adapted t2' = t1 + t2 kills H*V/(t1+t2)... use M = H*V/(t1)
    flag = SubgroupFlag(2, ((1, 0), (1, 1)))
    assert check_prop_2311(cyc(2, ["t1"]), flag)


def test_lemma_2322_examples():
    for n in (2, 3):
        flag = SubgroupFlag.standard(n)
        S = quotient_ring(flag)
        tn = S.gen(0)
        assert check_lemma_2322(free_presentation(S), flag)
        assert check_lemma_2322(cyclic_presentation(S, [tn ** 2]), flag)
        probe = sum_presentations(free_presentation(S), cyclic_presentation(S, [tn]))
        res = check_lemma_2322(probe, flag)
        # N = F2[t_n] + F2 has depth 0; H*V (x) N = H*V + H*V/(t_n) has depth n-1
        assert res and res.detail == f"{n - 1} vs 0 + {n - 1}"
    with pytest.raises(ValueError):
        check_lemma_2322(free_presentation(ring(2)), SubgroupFlag.standard(2))


def test_k_action_helpers():
    assert check_cm_descends(3, 2, 3, 2)
    assert not check_cm_descends(3, 1, 3, 2)
    assert check_cm_descends(2, 1, 3, 2).verdict is Verdict.NOT_APPLICABLE
    assert check_free_descends(0, 0)
    assert check_free_descends(1, 0).verdict is Verdict.NOT_APPLICABLE
    assert check_k_action_descends(1, 1, 1)
    assert not check_k_action_descends(1, 2, 1)
    assert check_k_action_descends(math.inf, 0, 1).verdict is Verdict.NOT_APPLICABLE
