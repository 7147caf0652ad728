"""Koszul homology, Tor and Ext against F2, projective dimension and depth.

Over S = F2[u_1..u_s] the Koszul complex on the generators resolves F2, so

    Tor_i^S(F2, M)_d = H_i( (+)_{|T|=i} M_{d - |e_T|} ),
    Ext^i_S(F2, M)_d = H^i( (+)_{|T|=i} M_{d + |e_T|} ),

and both only need the multiplication matrices of M.  Tor in internal degree
d only involves M in degrees <= d, so every Tor entry up to the cutoff is
exact; what a finite cutoff cannot rule out is a nonzero entry above it.
A BettiTable is therefore certified only if every row vanishes on the top
window of width (max generator degree of S) + 1, and that window lies
strictly above every generator and relation degree of the presentation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import gf2
from .dickson import DicksonSystem, SubgroupFlag, dickson_classes, dtilde_generators
from .errors import CutoffInsufficient, InconsistentResult
from .f2poly import Polynomial, RingDescriptor, polynomial_ring
from .grmodule import (DegreewiseModule, convolve, kernel_of_mult, polynomial_hilbert,
                       quotient_by_elements, restrict_scalars)
from .report import CheckResult

INF = math.inf


@lru_cache(maxsize=None)
def _subsets(degrees: tuple[int, ...]) -> tuple[tuple[tuple[tuple[int, ...], int], ...], ...]:
    """Subsets T of the generators grouped by size, with their total degree."""
    s = len(degrees)
    return tuple(tuple((T, sum(degrees[j] for j in T)) for T in combinations(range(s), q))
                 for q in range(s + 1))


@dataclass(frozen=True)
class BettiTable:
    ring: RingDescriptor
    cutoff: int
    entries: tuple[tuple[int, ...], ...]
    stability_ok: bool
    window: int

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, d = key
        if 0 <= i < len(self.entries) and 0 <= d <= self.cutoff:
            return self.entries[i][d]
        return 0

    def row_nonzero(self, i: int) -> bool:
        return 0 <= i < len(self.entries) and any(self.entries[i])

    def triples(self) -> list[tuple[int, int, int]]:
        return [(i, d, v) for i, row in enumerate(self.entries) for d, v in enumerate(row) if v]

    def require_certified(self) -> BettiTable:
        if not self.stability_ok:
            rows = [i for i, row in enumerate(self.entries)
                    if any(row[max(0, self.cutoff - self.window + 1):])]
            raise CutoffInsufficient(
                f"Tor rows {rows} do not vanish on the top {self.window} degrees "
                f"below the cutoff {self.cutoff}, or the window does not clear the "
                f"presentation degrees")
        return self


def _koszul_ranks(M: DegreewiseModule, d: int) -> tuple[list[int], list[int]]:
    """Sizes of K_{q,d} and ranks of d_q: K_{q,d} -> K_{q-1,d}, q = 0..s+1."""
    degs = M.ring.degrees
    s = len(degs)
    subsets = _subsets(degs)
    layout = []
    sizes = []
    for q in range(s + 1):
        offs, tot = {}, 0
        for T, dT in subsets[q]:
            dim = M.dim(d - dT)
            offs[T] = (tot, d - dT, dim)
            tot += dim
        layout.append(offs)
        sizes.append(tot)
    ranks = [0] * (s + 2)
    for q in range(1, s + 1):
        cols = []
        for T, (off, src, dim) in layout[q].items():
            if not dim:
                continue
            parts = []
            for j in T:
                face = tuple(x for x in T if x != j)
                parts.append((M.act(j, src), layout[q - 1][face][0]))
            for b in range(dim):
                col = 0
                for act, off2 in parts:
                    col ^= act[b] << off2
                cols.append(col)
        ranks[q] = gf2.rank(cols)
    return sizes, ranks


def koszul_tor(M: DegreewiseModule) -> BettiTable:
    """dim Tor_i^S(F2, M)_d for 0 <= i <= s and 0 <= d <= cutoff."""
    s = M.ring.ngens
    D = M.cutoff
    rows = [[0] * (D + 1) for _ in range(s + 1)]
    for d in range(D + 1):
        sizes, ranks = _koszul_ranks(M, d)
        for q in range(s + 1):
            rows[q][d] = sizes[q] - ranks[q] - ranks[q + 1]
    window = max(M.ring.degrees, default=0) + 1
    lo = max(0, D - window + 1)
    stable = D - window + 1 > M.horizon and not any(any(r[lo:]) for r in rows)
    if M.is_zero():
        stable = True
    return BettiTable(M.ring, D, tuple(tuple(r) for r in rows), stable, window)


def koszul_euler_check(M: DegreewiseModule, table: BettiTable | None = None) -> CheckResult:
    """sum_i (-1)^i dim Tor_i(F2,M)_d == sum_T (-1)^|T| dim M_{d-|e_T|}, every d."""
    table = table or koszul_tor(M)
    subsets = _subsets(M.ring.degrees)
    for d in range(M.cutoff + 1):
        lhs = sum((-1) ** i * table[i, d] for i in range(len(table.entries)))
        rhs = sum((-1) ** q * M.dim(d - dT) for q, group in enumerate(subsets) for _, dT in group)
        if lhs != rhs:
            return CheckResult.of("koszul-euler", False, f"degree {d}: {lhs} != {rhs}", d)
    return CheckResult.of("koszul-euler", True)


def projective_dimension(B: BettiTable) -> float:
    """max{i : Tor_i != 0}; -inf for the zero module."""
    B.require_certified()
    nonzero = [i for i in range(len(B.entries)) if B.row_nonzero(i)]
    return max(nonzero) if nonzero else -INF


@dataclass(frozen=True)
class DepthReport:
    depth: float
    method: str
    projective_dimension: float
    witnesses: tuple[Polynomial, ...] = ()
    flags: tuple[str, ...] = ()


def depth_via_ab(M: DegreewiseModule, table: BettiTable | None = None) -> DepthReport:
    """depth = s - pd, with pd read off a certified Koszul Betti table."""
    table = (table or koszul_tor(M)).require_certified()
    pd = projective_dimension(table)
    if pd == -INF:
        return DepthReport(INF, "tor-AB", -INF)
    return DepthReport(M.ring.ngens - pd, "tor-AB", pd)


@dataclass(frozen=True)
class ExtTable:
    """dim Ext^i_S(F2, M)_d for the computable internal degrees of each row."""

    ring: RingDescriptor
    rows: tuple[dict[int, int], ...]

    def first_nonzero_row(self) -> int | None:
        for i, row in enumerate(self.rows):
            if any(row.values()):
                return i
        return None


def _ext_ranks(M: DegreewiseModule, d: int, q: int) -> int:
    """Rank of delta^q: C^q_d -> C^{q+1}_d, C^q_d = (+)_{|S|=q} M_{d+|e_S|}."""
    degs = M.ring.degrees
    s = len(degs)
    if q < 0 or q >= s:
        return 0
    subsets = _subsets(degs)
    target, tot = {}, 0
    for T, dT in subsets[q + 1]:
        target[T] = tot
        tot += M.dim(d + dT)
    cols = []
    for S, dS in subsets[q]:
        src = d + dS
        dim = M.dim(src)
        if not dim:
            continue
        parts = [(M.act(j, src), target[tuple(sorted(S + (j,)))])
                 for j in range(s) if j not in S]
        for b in range(dim):
            col = 0
            for act, off in parts:
                col ^= act[b] << off
            cols.append(col)
    return gf2.rank(cols)


def ext_table(M: DegreewiseModule) -> ExtTable:
    degs = M.ring.degrees
    s = len(degs)
    subsets = _subsets(degs)
    lowest = -sum(degs)
    rows = []
    for i in range(s + 1):
        reach = max((dT for _, dT in subsets[i + 1]), default=None) if i < s else None
        reach = max(reach if reach is not None else 0, max(dT for _, dT in subsets[i]))
        row = {}
        for d in range(lowest, M.cutoff - reach + 1):
            size = sum(M.dim(d + dT) for _, dT in subsets[i])
            row[d] = size - _ext_ranks(M, d, i) - _ext_ranks(M, d, i - 1)
        rows.append(row)
    return ExtTable(M.ring, tuple(rows))


def depth_via_ext(M: DegreewiseModule) -> DepthReport:
    """inf{i : Ext^i(F2, M) != 0} over the computable window.

    The window of each row is only trusted once the Koszul Betti table of M
    is certified: with a short cutoff a high-degree socle would fall outside
    it and the answer would be too large.  ``depth`` with method="all"
    cross-checks against the Tor route.
    """
    if M.is_zero():
        return DepthReport(INF, "ext-inf", -INF)
    koszul_tor(M).require_certified()
    table = ext_table(M)
    for i, row in enumerate(table.rows):
        if not row:
            raise CutoffInsufficient(f"no internal degree of Ext^{i} is computable at cutoff {M.cutoff}")
        if any(row.values()):
            return DepthReport(i, "ext-inf", M.ring.ngens - i)
    raise CutoffInsufficient(f"no nonzero Ext found below cutoff {M.cutoff}")


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    prefix_length: int
    failing_degree: int | None = None

    def __bool__(self):
        return self.regular


def is_regular_sequence(M: DegreewiseModule, alphas: Sequence[Polynomial]) -> RegularityVerdict:
    """Both the kernel test and the Hilbert identity must pass for each element."""
    cur = M
    for i, a in enumerate(alphas):
        if a.degree is None or a.degree < 1:
            raise ValueError("regular sequence elements must have positive degree")
        e = a.degree
        K = kernel_of_mult(cur, a)
        kernel_fail = next((d for d, v in enumerate(K.dims) if v), None)
        Q = quotient_by_elements(cur, [a])
        hilb_fail = next((d - e for d in range(cur.cutoff + 1)
                          if Q.dims[d] != cur.dim(d) - cur.dim(d - e)), None)
        if kernel_fail != hilb_fail:
            raise CutoffInsufficient(
                f"kernel and Hilbert tests disagree for element {i} ({kernel_fail} vs {hilb_fail})")
        if kernel_fail is not None:
            return RegularityVerdict(False, i, kernel_fail)
        cur = Q
    return RegularityVerdict(True, len(alphas))


def _dickson_for(M: DegreewiseModule, dickson: DicksonSystem | None) -> DicksonSystem:
    dickson = dickson or dickson_classes(M.ring.ngens)
    if M.ring != polynomial_ring(dickson.n):
        raise ValueError(f"Dickson classes of rank {dickson.n} do not live in {M.ring}")
    return dickson


def depth_via_dickson(M: DegreewiseModule, dickson: DicksonSystem | None = None,
                      compare: bool = True) -> DepthReport:
    """Largest k with c_1..c_k regular on M.

    Always a lower bound for the depth; equal to it for unstable modules.
    Refuses to answer unless the Koszul Betti table is certified, since a
    zero divisor can hide above a short cutoff.  ``compare`` adds a flag
    when the Tor route gives a different answer.
    """
    dickson = _dickson_for(M, dickson)
    if M.is_zero():
        return DepthReport(INF, "dickson-regular", -INF, dickson.classes)
    table = koszul_tor(M).require_certified()
    k = 0
    cur = M
    for c in dickson.classes:
        if not is_regular_sequence(cur, [c]):
            break
        cur = quotient_by_elements(cur, [c])
        k += 1
    flags = ()
    if compare:
        ab = depth_via_ab(M, table).depth
        if ab != k:
            flags = (f"disagrees-with-ab:{ab}",)
    return DepthReport(k, "dickson-regular", dickson.n - k, dickson.classes[:k], flags)


def depth(M: DegreewiseModule, method: str = "ab", dickson: DicksonSystem | None = None) -> DepthReport:
    if method == "ab":
        return depth_via_ab(M)
    if method == "ext":
        return depth_via_ext(M)
    if method == "dickson":
        return depth_via_dickson(M, dickson)
    if method == "all":
        ab, ext = depth_via_ab(M), depth_via_ext(M)
        if ab.depth != ext.depth:
            raise InconsistentResult(f"Tor route gives depth {ab.depth}, Ext route {ext.depth}")
        return ab
    raise ValueError(f"unknown depth method {method!r}")


@dataclass(frozen=True)
class RingDepths:
    hv: float
    dv: float
    dtilde: float

    @property
    def agree(self) -> bool:
        return self.hv == self.dv == self.dtilde

    def __bool__(self):
        return self.agree


def depth_over_dickson_agrees(M: DegreewiseModule, flag: SubgroupFlag | None = None,
                              strict: bool = True) -> RingDepths:
    """Depths of M over H*V, over DV and over the intermediate algebra."""
    n = M.ring.ngens
    if M.ring != polynomial_ring(n):
        raise ValueError("module must be over H*V")
    flag = flag or SubgroupFlag.standard(n)
    if not flag.is_standard:
        M = restrict_scalars(M, flag.change_of_basis())
    hv = depth_via_ab(M).depth
    dv = depth_via_ab(restrict_scalars(M, dickson_classes(n).inclusion())).depth
    dt = depth_via_ab(restrict_scalars(M, dtilde_generators(flag).inclusion())).depth
    out = RingDepths(hv, dv, dt)
    if strict and not out.agree:
        raise InconsistentResult(f"depths over H*V, DV, D~V differ: {out}")
    return out


def hilbert_convolution_check(M: DegreewiseModule, alphas: Sequence[Polynomial],
                              upto: int | None = None) -> CheckResult:
    """hilbert(M) == hilbert(F2[alphas]) * hilbert(M / (alphas) M) in low degrees."""
    top = M.cutoff - max((a.degree for a in alphas), default=0) if upto is None else upto
    Mbar = quotient_by_elements(M, alphas)
    poly = polynomial_hilbert([a.degree for a in alphas], top).values
    conv = convolve(poly, Mbar.dims, top)
    for d in range(top + 1):
        if conv[d] != M.dims[d]:
            return CheckResult.of("hilbert-convolution", False,
                                  f"degree {d}: {M.dims[d]} != {conv[d]}", d)
    return CheckResult.of("hilbert-convolution", True, f"degrees 0..{top}")


def structure_check(M: DegreewiseModule, k: int, dickson: DicksonSystem | None = None) -> CheckResult:
    """Hilbert shadow of M ~ F2[c_1..c_k] (x) M/(c_1..c_k) as DV-modules."""
    dickson = _dickson_for(M, dickson)
    if not 0 <= k <= dickson.n:
        raise ValueError(f"k={k} outside 0..{dickson.n}")
    found = depth_via_dickson(M, dickson, compare=False).depth
    if found < k:
        raise ValueError(f"c_1..c_{k} is not regular on the module (only {found})")
    res = hilbert_convolution_check(M, dickson.classes[:k])
    return CheckResult(f"structure-k{k}", res.verdict, res.detail, res.first_failure)


def ses_depth_bound(depth_sub: float, depth_mid: float, depth_quot: float) -> bool:
    """depth M >= min(depth M', depth M'') for 0 -> M' -> M -> M'' -> 0."""
    return depth_mid >= min(depth_sub, depth_quot)
