"""Algebraic side of the Gysin sequence for a codimension-one subgroup W of V.

Everything runs in adapted coordinates, where W is cut out by t_n.  A module
over H*V in original coordinates is moved there by ``adapt``.  The transfer
is never built: the short exact sequence

    0 -> M/t_n M -> M_W -> ker(t_n on M) -> 0

is only used through its dimension count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dickson import SubgroupFlag, dickson_classes, dtilde_generators
from .f2poly import RingDescriptor
from .grmodule import (DegreewiseModule, GradedPresentation, base_change, expand, kernel_of_mult,
                       quotient_by_elements, restrict_scalars, same_shape, subquotient_module,
                       suspension)
from .gf2 import kernel
from .homalg import BettiTable, depth_via_ab, koszul_tor
from .report import CheckResult, Verdict, fmt_depth


def adapt(M: DegreewiseModule, flag: SubgroupFlag) -> DegreewiseModule:
    """Re-express an H*V-module in the flag's adapted coordinates."""
    if M.ring != flag.ring_V():
        raise ValueError(f"module ring {M.ring} is not H*V of rank {flag.n}")
    return M if flag.is_standard else restrict_scalars(M, flag.change_of_basis())


def gysin_split(M_V: DegreewiseModule, flag: SubgroupFlag) -> tuple[DegreewiseModule, DegreewiseModule]:
    """(M/t_n M, ker t_n) as H*W-modules, via the section t_j -> t_j."""
    tn = flag.last_variable()
    M = adapt(M_V, flag)
    sec = flag.section()
    coinv = restrict_scalars(quotient_by_elements(M, [tn]), sec)
    torsion = restrict_scalars(kernel_of_mult(M, tn), sec)
    return coinv, torsion


@dataclass(frozen=True)
class GysinTriple:
    M_V: DegreewiseModule
    flag: SubgroupFlag
    M_W: DegreewiseModule
    coinv: DegreewiseModule
    torsion: DegreewiseModule

    @classmethod
    def build(cls, M_V: DegreewiseModule, M_W: DegreewiseModule, flag: SubgroupFlag) -> GysinTriple:
        if M_W.ring != flag.ring_W():
            raise ValueError(f"M_W must be over H*W of rank {flag.rank_W}, got {M_W.ring}")
        coinv, torsion = gysin_split(M_V, flag)
        return cls(M_V, flag, M_W, coinv, torsion)

    @property
    def cutoff(self) -> int:
        return min(self.M_W.cutoff, self.coinv.cutoff, self.torsion.cutoff)


def gysin_consistency(T: GysinTriple) -> CheckResult:
    """dim (M_W)_d = dim coinv_d + dim torsion_d for every common degree."""
    for d in range(T.cutoff + 1):
        lhs, a, b = T.M_W.dim(d), T.coinv.dim(d), T.torsion.dim(d)
        if lhs != a + b:
            return CheckResult.of("gysin-consistency", False, f"degree {d}: {lhs} != {a} + {b}", d)
    return CheckResult.of("gysin-consistency", True, f"degrees 0..{T.cutoff}")


def check_prop_241(T: GysinTriple, k: int) -> CheckResult:
    """depth M_W >= k  <=>  depth coinv >= k and depth torsion >= k (all over H*W)."""
    name = f"prop241-k{k}"
    if not gysin_consistency(T):
        return CheckResult(name, Verdict.NOT_APPLICABLE, "pair is not Gysin-consistent")
    dw = depth_via_ab(T.M_W).depth
    dc = depth_via_ab(T.coinv).depth
    dt = depth_via_ab(T.torsion).depth
    lhs = dw >= k
    rhs = dc >= k and dt >= k
    detail = f"depth W={fmt_depth(dw)} coinv={fmt_depth(dc)} torsion={fmt_depth(dt)}"
    return CheckResult.of(name, lhs == rhs, detail)


@dataclass(frozen=True)
class Lemma3122:
    q0: DegreewiseModule
    q1: DegreewiseModule
    tor: BettiTable
    result: CheckResult


def lemma_3122(M_V: DegreewiseModule, flag: SubgroupFlag) -> Lemma3122:
    """Koszul homology of M on t_n against coinvariants and suspended torsion.

    q0, q1 are built as homology of the complex Sigma M -> M (as H*W-modules)
    and compared with gysin_split by shape; the Hilbert functions are also
    compared with Tor over F2[t_n] computed by the generic Koszul routine.
    """
    tn = flag.last_variable()
    M = adapt(M_V, flag)
    D = M.cutoff
    sec = flag.section()
    SM = suspension(M, 1)

    def cycles(d):
        return kernel(M.mult_matrix(tn, d - 1)) if d >= 1 else []

    def boundaries(d):
        return M.mult_matrix(tn, d - 1) if d >= 1 else []

    q1 = restrict_scalars(subquotient_module(SM, D, span=cycles), sec)
    q0 = restrict_scalars(subquotient_module(M, D, relations=boundaries), sec)
    tor = koszul_tor(restrict_scalars(M, flag.quotient_inclusion()))
    coinv, torsion = gysin_split(M_V, flag)
    storsion = suspension(torsion, 1)
    problems = []
    if not same_shape(q0, coinv):
        problems.append("q0 differs from coinvariants")
    if not same_shape(q1, storsion):
        problems.append("q1 differs from suspended torsion")
    first = None
    for d in range(D + 1):
        if tor[0, d] != coinv.dim(d) or tor[1, d] != storsion.dim(d):
            problems.append(f"Tor over F2[t_n] differs in degree {d}")
            first = d
            break
    if len(tor.entries) != 2:
        problems.append("Tor over F2[t_n] has more than two rows")
    return Lemma3122(q0, q1, tor, CheckResult.of("lemma3122", not problems, "; ".join(problems), first))


@dataclass(frozen=True)
class SequenceS:
    A: BettiTable
    B: BettiTable
    C: BettiTable
    results: tuple[CheckResult, ...]

    def __bool__(self):
        return all(r.verdict is not Verdict.FAIL for r in self.results)


def _rows_vanish(T: BettiTable, start: int) -> bool:
    return not any(T.row_nonzero(p) for p in range(max(start, 0), len(T.entries)))


def sequence_S_check(M_V: DegreewiseModule, flag: SubgroupFlag,
                     ks: Sequence[int] | None = None) -> SequenceS:
    """Euler identity of the long exact sequence
    ... -> B_{p-2} -> A_p -> C_p -> B_{p-1} -> A_{p-1} -> ...
    with A = Tor^{DW}(F2, coinv), B = Tor^{DW}(F2, Sigma torsion),
    C = Tor^{D~V}(F2, M), plus the vanishing implication for each k.
    """
    n = flag.n
    M = adapt(M_V, flag)
    coinv, torsion = gysin_split(M_V, flag)
    dw = dickson_classes(n - 1).inclusion()
    A = koszul_tor(restrict_scalars(coinv, dw))
    B = koszul_tor(restrict_scalars(suspension(torsion, 1), dw))
    C = koszul_tor(restrict_scalars(M, dtilde_generators(flag).inclusion()))
    top = min(A.cutoff, B.cutoff, C.cutoff)
    results = []
    bad = None
    for d in range(top + 1):
        total = sum((-1) ** p * (A[p, d] - C[p, d] + B[p - 1, d]) for p in range(n + 1))
        if total:
            bad = d
            break
    results.append(CheckResult.of("seqS-euler", bad is None,
                                  f"degrees 0..{top}" if bad is None else f"degree {bad}", bad))
    for k in (range(1, n + 1) if ks is None else ks):
        name = f"seqS-vanishing-k{k}"
        A.require_certified()
        B.require_certified()
        if not (_rows_vanish(A, n - k) and _rows_vanish(B, n - k)):
            results.append(CheckResult(name, Verdict.NOT_APPLICABLE, "hypothesis not met"))
            continue
        C.require_certified()
        ok = _rows_vanish(C, n - k + 1)
        results.append(CheckResult.of(name, ok, "" if ok else f"C_p != 0 for some p >= {n - k + 1}"))
    return SequenceS(A, B, C, tuple(results))


def chain_flags(n: int, codim: int) -> list[SubgroupFlag]:
    """Standard codimension-one steps from rank n down to rank n - codim."""
    return [SubgroupFlag.standard(r) for r in range(n, n - codim, -1)]


def theorem_31_check(M_V: DegreewiseModule, M_W: DegreewiseModule, flag: SubgroupFlag,
                     intermediates: Sequence[DegreewiseModule] = ()) -> CheckResult:
    """depth_{H*W} M_W <= depth_{H*V} M_V.

    For codim c > 1 the intermediate modules over ranks n-1 .. n-c+1 must be
    given; every codimension-one step is checked for Gysin consistency and
    for the inequality, and so is the end-to-end comparison.
    """
    name = f"thm31-codim{flag.codim}"
    if len(intermediates) != flag.codim - 1:
        raise ValueError(f"codimension {flag.codim} needs {flag.codim - 1} intermediate modules")
    chain = [adapt(M_V, flag), *intermediates, M_W]
    depths = [depth_via_ab(chain[0]).depth]
    for step, upper in enumerate(chain[:-1]):
        lower = chain[step + 1]
        T = GysinTriple.build(upper, lower, SubgroupFlag.standard(upper.ring.ngens))
        if not gysin_consistency(T):
            return CheckResult(name, Verdict.NOT_APPLICABLE,
                               f"step {step} (rank {upper.ring.ngens}) is not Gysin-consistent")
        depths.append(depth_via_ab(lower).depth)
    steps_ok = all(depths[i + 1] <= depths[i] for i in range(len(depths) - 1))
    detail = " >= ".join(fmt_depth(x) for x in depths)
    return CheckResult.of(name, steps_ok and depths[-1] <= depths[0], f"depths {detail}")


def check_prop_2311(M: DegreewiseModule, flag: SubgroupFlag) -> CheckResult:
    """depth_{H*V} M = depth_{H*W}(M / t_n M) + 1 when M has no t_n-torsion."""
    coinv, torsion = gysin_split(M, flag)
    if not torsion.is_zero():
        return CheckResult("prop2311", Verdict.NOT_APPLICABLE, "hypothesis not met: t_n-torsion is nonzero")
    dv = depth_via_ab(adapt(M, flag)).depth
    dc = depth_via_ab(coinv).depth
    return CheckResult.of("prop2311", dv == dc + 1, f"{fmt_depth(dv)} vs {fmt_depth(dc)} + 1")


def quotient_ring(flag: SubgroupFlag) -> RingDescriptor:
    """H*(V/W) = F2[t_n], as the source ring of q*."""
    return flag.quotient_inclusion().source


def check_lemma_2322(N: GradedPresentation, flag: SubgroupFlag, cutoff: int | None = None) -> CheckResult:
    """depth_{H*V}(H*V (x)_{F2[t_n]} N) = depth_{F2[t_n]} N + rank W."""
    if N.ring != quotient_ring(flag):
        raise ValueError(f"N must be over {quotient_ring(flag)}")
    ext = base_change(N, flag.quotient_inclusion())
    D = cutoff
    dn = depth_via_ab(expand(N, D)).depth
    dm = depth_via_ab(expand(ext, D)).depth
    return CheckResult.of("lemma2322", dm == dn + flag.rank_W,
                          f"{fmt_depth(dm)} vs {fmt_depth(dn)} + {flag.rank_W}")


# --- k-actions ---------------------------------------------------------------

def is_k_action(depth_V: float, k: int) -> bool:
    return depth_V <= k


def check_cm_descends(depth_V: float, depth_W: float, n: int, rank_W: int) -> CheckResult:
    """Cohen-Macaulay over H*V forces Cohen-Macaulay over H*W."""
    if depth_V != n:
        return CheckResult("cm-descends", Verdict.NOT_APPLICABLE, "not Cohen-Macaulay over H*V")
    return CheckResult.of("cm-descends", depth_W == rank_W, f"depth W = {fmt_depth(depth_W)}")


def check_free_descends(depth_V: float, depth_W: float) -> CheckResult:
    """Depth zero over H*V forces depth zero over H*W."""
    if depth_V != 0:
        return CheckResult("free-descends", Verdict.NOT_APPLICABLE, "depth over H*V is not 0")
    return CheckResult.of("free-descends", depth_W == 0, f"depth W = {fmt_depth(depth_W)}")


def check_k_action_descends(depth_V: float, depth_W: float, k: int) -> CheckResult:
    name = f"k-action-k{k}"
    if not is_k_action(depth_V, k):
        return CheckResult(name, Verdict.NOT_APPLICABLE, f"depth over H*V is {fmt_depth(depth_V)} > {k}")
    return CheckResult.of(name, is_k_action(depth_W, k), f"depth W = {fmt_depth(depth_W)}")

