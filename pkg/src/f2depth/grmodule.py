"""Finitely presented graded modules and their degreewise expansion.

A :class:`DegreewiseModule` stores, for each degree d up to a cutoff, the
dimension of M_d and, for each ring generator u_j, the matrix of
multiplication M_d -> M_{d+|u_j|} (as GF(2) column bit vectors).  Every
construction here returns a new immutable module; pieces above the cutoff
are never guessed.  Kernels of positive-degree maps lose the top degrees
they cannot certify, so their cutoff drops accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import gf2
from .errors import CutoffInsufficient
from .f2poly import (AlgebraMap, InhomogeneousError, Monomial, Polynomial, RingDescriptor,
                     apply_map, count_monomials, monomial_basis)


class InhomogeneousRelation(InhomogeneousError):
    def __init__(self, index: int, message: str):
        super().__init__(f"relation {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class GradedPresentation:
    """Generators with degrees and relations, one coefficient per generator."""

    ring: RingDescriptor
    generators: tuple[tuple[str, int], ...]
    relations: tuple[tuple[Polynomial, ...], ...] = ()

    def __post_init__(self):
        gens = tuple((str(n), int(d)) for n, d in self.generators)
        rels = tuple(tuple(r) for r in self.relations)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)
        names = [n for n, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate module generator names {names}")
        clash = set(names) & set(self.ring.names)
        if clash:
            raise ValueError(f"module generator names clash with ring generators: {sorted(clash)}")
        for n, d in gens:
            if d < 0:
                raise ValueError(f"generator {n} has negative degree {d}")
        for i, rel in enumerate(rels):
            if len(rel) != len(gens):
                raise InhomogeneousRelation(i, f"has {len(rel)} coefficients for {len(gens)} generators")
            seen = set()
            for (n, gd), c in zip(gens, rel):
                if c.ring != self.ring:
                    raise InhomogeneousRelation(i, f"coefficient of {n} is not in {self.ring}")
                if c.terms:
                    seen.add(c.degree + gd)
            if len(seen) > 1:
                raise InhomogeneousRelation(i, f"terms of total degrees {sorted(seen)}")

    @classmethod
    def build(cls, ring: RingDescriptor, generators: Iterable[tuple[str, int]],
              relations: Iterable[Mapping[str, Polynomial]] = ()) -> GradedPresentation:
        """Relations given as {generator name: coefficient}; missing names mean 0."""
        gens = tuple(generators)
        names = [n for n, _ in gens]
        rels = []
        for rel in relations:
            unknown = set(rel) - set(names)
            if unknown:
                raise KeyError(f"unknown module generator(s) {sorted(unknown)}")
            rels.append(tuple(rel.get(n, ring.zero()) for n in names))
        return cls(ring, gens, tuple(rels))

    def relation_degree(self, i: int) -> int | None:
        for (_, gd), c in zip(self.generators, self.relations[i]):
            if c.terms:
                return c.degree + gd
        return None

    @property
    def max_generator_degree(self) -> int:
        return max((d for _, d in self.generators), default=0)

    @property
    def max_relation_degree(self) -> int:
        degs = [self.relation_degree(i) for i in range(len(self.relations))]
        return max((d for d in degs if d is not None), default=0)


def default_cutoff(P: GradedPresentation, homology_degrees: Sequence[int] | None = None) -> int:
    """max generator degree + max relation degree + (sum of ring degrees) + 8.

    For H*V the middle term is n.  When the homology will be taken over a
    different ring (a Dickson algebra, say) pass its generator degrees.
    """
    degs = P.ring.degrees if homology_degrees is None else homology_degrees
    return P.max_generator_degree + P.max_relation_degree + sum(degs) + 8


# --- presentation builders ---------------------------------------------------

def free_presentation(ring: RingDescriptor, degrees: Sequence[int] = (0,),
                      prefix: str = "g") -> GradedPresentation:
    return GradedPresentation(ring, tuple((f"{prefix}{i}", d) for i, d in enumerate(degrees)))


def cyclic_presentation(ring: RingDescriptor, relations: Iterable[Polynomial] = (),
                        degree: int = 0, name: str = "g") -> GradedPresentation:
    """R/(relations), generated in ``degree``."""
    return GradedPresentation(ring, ((name, degree),), tuple((r,) for r in relations))


def trivial_presentation(ring: RingDescriptor, degree: int = 0, name: str = "g") -> GradedPresentation:
    """The module F2 (every generator acts by zero), in ``degree``."""
    return cyclic_presentation(ring, ring.gens(), degree, name)


def sum_presentations(*parts: GradedPresentation) -> GradedPresentation:
    ring = parts[0].ring
    gens: list[tuple[str, int]] = []
    rels: list[tuple[Polynomial, ...]] = []
    for k, P in enumerate(parts):
        if P.ring != ring:
            raise ValueError("ring mismatch in direct sum of presentations")
        before, after = len(gens), sum(len(Q.generators) for Q in parts[k + 1:])
        gens.extend((f"{n}_{k}", d) for n, d in P.generators)
        for rel in P.relations:
            rels.append((ring.zero(),) * before + rel + (ring.zero(),) * after)
    return GradedPresentation(ring, tuple(gens), tuple(rels))


def shift_presentation(P: GradedPresentation, s: int) -> GradedPresentation:
    return GradedPresentation(P.ring, tuple((n, d + s) for n, d in P.generators), P.relations)


def base_change(P: GradedPresentation, phi: AlgebraMap) -> GradedPresentation:
    """R (x)_S N: push every relation coefficient through phi: S -> R.

    Only meaningful as a derived-functor-free construction when R is flat
    over S; the polynomial inclusions used here are free.  Not checked.
    """
    if phi.source != P.ring:
        raise ValueError("map source is not the presentation's ring")
    rels = tuple(tuple(apply_map(phi, c) for c in rel) for rel in P.relations)
    return GradedPresentation(phi.target, P.generators, rels)


# --- the expanded form -------------------------------------------------------

@dataclass(frozen=True)
class HilbertFunction:
    values: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.values[d] if 0 <= d < len(self.values) else 0

    def __len__(self):
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True, eq=False)
class DegreewiseModule:
    ring: RingDescriptor
    cutoff: int
    dims: tuple[int, ...]
    action: Mapping[tuple[int, int], tuple[int, ...]]
    basis_labels: tuple[tuple, ...] | None = None
    # every generator and relation of the module lives in degrees <= horizon
    horizon: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.dims) != self.cutoff + 1:
            raise ValueError("dims must cover degrees 0..cutoff")

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        if d > self.cutoff:
            raise ValueError(f"degree {d} is above the cutoff {self.cutoff}")
        return self.dims[d]

    def act(self, j: int, d: int) -> tuple[int, ...]:
        """Matrix of multiplication by generator j from degree d."""
        if d < 0:
            return ()
        if d + self.ring.degrees[j] > self.cutoff:
            raise ValueError(f"multiplication from degree {d} leaves the cutoff {self.cutoff}")
        return self.action[(j, d)]

    def monomial_matrix(self, m: Monomial, d: int) -> tuple[int, ...]:
        key = ("mono", m, d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        j = next((i for i, e in enumerate(m) if e), None)
        if j is None:
            out = gf2.unit_columns(self.dim(d))
        else:
            rest = m[:j] + (m[j] - 1,) + m[j + 1:]
            inner = self.monomial_matrix(rest, d)
            mid = d + self.ring.monomial_degree(rest)
            out = gf2.compose(self.act(j, mid), inner)
        self._cache[key] = out
        return out

    def mult_matrix(self, alpha: Polynomial, d: int) -> tuple[int, ...]:
        """Matrix of x -> alpha*x from M_d to M_{d+deg alpha}."""
        if alpha.ring != self.ring:
            raise ValueError(f"{alpha} is not in the module's ring {self.ring}")
        if d < 0:
            return ()
        if not alpha.terms:
            return gf2.zero_map(self.dim(d))
        key = ("poly", alpha, d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = gf2.zero_map(self.dim(d))
        for m in alpha.terms:
            out = gf2.add_maps(out, self.monomial_matrix(m, d))
        self._cache[key] = out
        return out

    def is_zero(self) -> bool:
        return not any(self.dims)

    def hilbert(self) -> HilbertFunction:
        return HilbertFunction(self.dims)


def hilbert_function(M: DegreewiseModule) -> HilbertFunction:
    return M.hilbert()


def zero_module(ring: RingDescriptor, cutoff: int) -> DegreewiseModule:
    action = {(j, d): () for j, e in enumerate(ring.degrees) for d in range(cutoff - e + 1)}
    return DegreewiseModule(ring, cutoff, (0,) * (cutoff + 1), action,
                            tuple(() for _ in range(cutoff + 1)))


def _add_exps(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def expand(P: GradedPresentation, cutoff: int | None = None) -> DegreewiseModule:
    """Degreewise quotient of the free module by the span of shifted relations.

    Free basis elements are (generator index, monomial); within a degree the
    earliest basis element gets the highest bit, so relations are solved for
    their graded-lex leading terms and the surviving basis is a normal-form
    (standard monomial) basis.
    """
    D = default_cutoff(P) if cutoff is None else cutoff
    if D < 0:
        raise ValueError("cutoff must be non-negative")
    ring = P.ring
    rel_degs = [P.relation_degree(i) for i in range(len(P.relations))]
    indices: list[dict] = []
    slices: list[gf2.Subquotient] = []
    labels = []
    for d in range(D + 1):
        basis = [(g, m) for g, (_, gd) in enumerate(P.generators)
                 for m in monomial_basis(ring, d - gd)]
        nb = len(basis)
        index = {lab: nb - 1 - pos for pos, lab in enumerate(basis)}
        rels = []
        for rel, rd in zip(P.relations, rel_degs):
            if rd is None or rd > d:
                continue
            for m in monomial_basis(ring, d - rd):
                v = 0
                for g, c in enumerate(rel):
                    for t in c.terms:
                        v ^= 1 << index[(g, _add_exps(t, m))]
                rels.append(v)
        sq = gf2.Subquotient(nb, rels)
        indices.append(index)
        slices.append(sq)
        labels.append(tuple(basis[nb - 1 - (rep.bit_length() - 1)] for rep in sq.reps))
    action = {}
    for j, e in enumerate(ring.degrees):
        unit = tuple(int(i == j) for i in range(ring.ngens))
        for d in range(D - e + 1):
            tgt_index, tgt = indices[d + e], slices[d + e]
            action[(j, d)] = tuple(tgt.coords(1 << tgt_index[(g, _add_exps(m, unit))])
                                   for g, m in labels[d])
    horizon = max(P.max_generator_degree, P.max_relation_degree)
    return DegreewiseModule(ring, D, tuple(s.dim for s in slices), action, tuple(labels), horizon)


SliceFn = Callable[[int], Iterable[int]]


def subquotient_module(parent: DegreewiseModule, cutoff: int,
                       span: SliceFn | None = None,
                       relations: SliceFn | None = None,
                       horizon: int | None = None) -> DegreewiseModule:
    """The module Z/B where Z_d = span(d) (whole M_d if None), B_d = relations(d).

    Z and B must be submodules of ``parent`` (closed under the action).
    """
    if cutoff > parent.cutoff:
        raise ValueError("subquotient cutoff exceeds the parent's")
    ring = parent.ring
    slices = [gf2.Subquotient(parent.dims[d],
                              relations(d) if relations else (),
                              span(d) if span else None)
              for d in range(cutoff + 1)]
    action = {}
    for j, e in enumerate(ring.degrees):
        for d in range(cutoff - e + 1):
            cols = parent.act(j, d)
            tgt = slices[d + e]
            action[(j, d)] = tuple(tgt.coords(gf2.apply(cols, rep)) for rep in slices[d].reps)
    labels = tuple(tuple(s.reps) for s in slices)
    horizon = parent.horizon if horizon is None else horizon
    return DegreewiseModule(ring, cutoff, tuple(s.dim for s in slices), action, labels, horizon)


def kernel_of_mult(M: DegreewiseModule, alpha: Polynomial | Sequence[Polynomial]) -> DegreewiseModule:
    """The submodule of elements killed by alpha.

    For a sequence (x1, ..., xi) this is T^{x1}(T^{(x2..xi)}(M)).  The result
    is known only up to cutoff - deg alpha.
    """
    if not isinstance(alpha, Polynomial):
        seq = list(alpha)
        out = M
        for a in reversed(seq):
            out = kernel_of_mult(out, a)
        return out
    if alpha.ring != M.ring:
        raise ValueError(f"{alpha} is not in the module's ring")
    e = alpha.degree or 0
    top = M.cutoff - e
    if top < 0:
        raise CutoffInsufficient(f"no degree of the kernel of {alpha} is below the cutoff {M.cutoff}")
    return subquotient_module(M, top, span=lambda d: gf2.kernel(M.mult_matrix(alpha, d)),
                              horizon=M.horizon + e)


def quotient_by_elements(M: DegreewiseModule, alphas: Sequence[Polynomial]) -> DegreewiseModule:
    """M / (alphas) M, i.e. F2 (x)_{F2[alphas]} M."""
    alphas = [a for a in alphas]
    for a in alphas:
        if a.ring != M.ring:
            raise ValueError(f"{a} is not in the module's ring")

    def image(d: int):
        out = []
        for a in alphas:
            if a.terms and d - a.degree >= 0:
                out.extend(M.mult_matrix(a, d - a.degree))
        return out

    shift = max((a.degree for a in alphas if a.terms), default=0)
    return subquotient_module(M, M.cutoff, relations=image, horizon=M.horizon + shift)


def suspension(M: DegreewiseModule, s: int) -> DegreewiseModule:
    """Sigma^s M; the cutoff moves up with the degrees."""
    if s < 0:
        raise ValueError("suspension must be non-negative")
    if s == 0:
        return M
    D = M.cutoff + s
    action = {}
    for j, e in enumerate(M.ring.degrees):
        for d in range(D - e + 1):
            action[(j, d)] = M.action[(j, d - s)] if d >= s else ()
    labels = None
    if M.basis_labels is not None:
        labels = tuple(() for _ in range(s)) + M.basis_labels
    return DegreewiseModule(M.ring, D, (0,) * s + M.dims, action, labels, M.horizon + s)


def direct_sum(*modules: DegreewiseModule) -> DegreewiseModule:
    """Blockwise sum, truncated to the smallest cutoff."""
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    ring = modules[0].ring
    for M in modules:
        if M.ring != ring:
            raise ValueError(f"ring mismatch: {M.ring} vs {ring}")
    D = min(M.cutoff for M in modules)
    dims = tuple(sum(M.dims[d] for M in modules) for d in range(D + 1))
    action = {}
    for j, e in enumerate(ring.degrees):
        for d in range(D - e + 1):
            cols: list[int] = []
            offset = 0
            for M in modules:
                cols.extend(c << offset for c in M.action[(j, d)])
                offset += M.dims[d + e]
            action[(j, d)] = tuple(cols)
    labels = tuple(tuple((k, lab) for k, M in enumerate(modules)
                         for lab in (M.basis_labels[d] if M.basis_labels else range(M.dims[d])))
                   for d in range(D + 1))
    return DegreewiseModule(ring, D, dims, action, labels, max(M.horizon for M in modules))


def restrict_scalars(M: DegreewiseModule, phi: AlgebraMap) -> DegreewiseModule:
    """View an R-module as an S-module along phi: S -> R."""
    if phi.target != M.ring:
        raise ValueError(f"map target {phi.target} is not the module ring {M.ring}")
    action = {}
    for i, e in enumerate(phi.source.degrees):
        img = phi.images[i]
        for d in range(M.cutoff - e + 1):
            action[(i, d)] = M.mult_matrix(img, d) if img.terms else gf2.zero_map(M.dims[d])
    return DegreewiseModule(phi.source, M.cutoff, M.dims, action, M.basis_labels, M.horizon)


def truncate(M: DegreewiseModule, cutoff: int) -> DegreewiseModule:
    if cutoff > M.cutoff:
        raise ValueError("cannot raise a cutoff by truncation")
    action = {(j, d): cols for (j, d), cols in M.action.items()
              if d + M.ring.degrees[j] <= cutoff}
    labels = M.basis_labels[:cutoff + 1] if M.basis_labels else None
    return DegreewiseModule(M.ring, cutoff, M.dims[:cutoff + 1], action, labels, M.horizon)


# --- invariants used to compare modules ---------------------------------------

def action_ranks(M: DegreewiseModule, upto: int | None = None) -> dict[tuple[int, int], int]:
    top = M.cutoff if upto is None else upto
    return {(j, d): gf2.rank(cols) for (j, d), cols in sorted(M.action.items())
            if d + M.ring.degrees[j] <= top}


def same_shape(A: DegreewiseModule, B: DegreewiseModule, upto: int | None = None) -> bool:
    """Equal Hilbert functions and equal ranks of every generator action."""
    if A.ring != B.ring:
        return False
    top = min(A.cutoff, B.cutoff) if upto is None else upto
    return (A.dims[:top + 1] == B.dims[:top + 1]
            and action_ranks(A, top) == action_ranks(B, top))


def commutes(M: DegreewiseModule) -> bool:
    degs = M.ring.degrees
    for j in range(len(degs)):
        for k in range(j + 1, len(degs)):
            for d in range(M.cutoff - degs[j] - degs[k] + 1):
                a = gf2.compose(M.act(k, d + degs[j]), M.act(j, d))
                b = gf2.compose(M.act(j, d + degs[k]), M.act(k, d))
                if a != b:
                    return False
    return True


def polynomial_hilbert(degrees: Sequence[int], upto: int) -> HilbertFunction:
    """Hilbert function of F2[x1..xk] with the given generator degrees."""
    return HilbertFunction(tuple(count_monomials(degrees, d) for d in range(upto + 1)))


def convolve(a: Sequence[int], b: Sequence[int], upto: int) -> tuple[int, ...]:
    return tuple(sum(a[e] * b[d - e] for e in range(d + 1) if e < len(a) and d - e < len(b))
                 for d in range(upto + 1))
