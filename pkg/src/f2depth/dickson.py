"""Dickson invariants of F2[t1..tn] and the intermediate algebra for a hyperplane.

The classes are read off the polynomial prod_{u in H^1 V} (X + u), expanded in
(F2[t1..tn])[X]; the product over the nonzero forms alone has constant term
equal to the top class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .f2poly import (AlgebraMap, Polynomial, RingDescriptor, linear_substitution,
                     nonzero_linear_forms, polynomial_ring)
from .gf2 import rank


def dickson_degrees(n: int) -> tuple[int, ...]:
    return tuple(2 ** n - 2 ** (n - i) for i in range(1, n + 1))


def dickson_ring(n: int, prefix: str = "c") -> RingDescriptor:
    """Abstract polynomial ring on generators of the Dickson degrees."""
    return RingDescriptor(tuple(f"{prefix}{i}" for i in range(1, n + 1)), dickson_degrees(n))


@dataclass(frozen=True)
class DicksonSystem:
    n: int
    classes: tuple[Polynomial, ...]
    ring_DV: RingDescriptor

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.classes)

    def inclusion(self) -> AlgebraMap:
        """DV -> H*V sending the i-th abstract generator to c_{V,i}."""
        return AlgebraMap(self.ring_DV, polynomial_ring(self.n), self.classes)


def fundamental_polynomial(n: int) -> list[Polynomial]:
    """Coefficients (index = power of X) of prod over nonzero u of (X + u)."""
    ring = polynomial_ring(n)
    coeffs = [ring.one()]
    for u in nonzero_linear_forms(n):
        nxt = [ring.zero() for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] + c * u
        coeffs = nxt
    return coeffs


def dickson_classes(n: int) -> DicksonSystem:
    """c_{V,i} is the coefficient of X^(2^(n-i) - 1) in prod_{u != 0} (X + u)."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    if n == 0:
        return DicksonSystem(0, (), dickson_ring(0))
    coeffs = fundamental_polynomial(n)
    classes = tuple(coeffs[2 ** (n - i) - 1] for i in range(1, n + 1))
    return DicksonSystem(n, classes, dickson_ring(n))


def _rank_f2(rows: Sequence[Sequence[int]]) -> int:
    return rank(sum((a % 2) << j for j, a in enumerate(row)) for row in rows)


@dataclass(frozen=True)
class SubgroupFlag:
    """A subgroup W of V of the given codimension, via an adapted basis.

    In the adapted coordinates t'_i = sum_j basis_change[i][j] t_j the
    restriction to W keeps t'_1..t'_{n-codim} and kills the rest.
    """

    n: int
    basis_change: tuple[tuple[int, ...], ...]
    codim: int = 1

    def __post_init__(self):
        rows = tuple(tuple(int(a) % 2 for a in row) for row in self.basis_change)
        object.__setattr__(self, "basis_change", rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"basis change must be {self.n}x{self.n}")
        if not 1 <= self.codim <= self.n:
            raise ValueError(f"codimension {self.codim} outside 1..{self.n}")
        if _rank_f2(rows) != self.n:
            raise ValueError("basis change is not invertible over F2")

    @classmethod
    def standard(cls, n: int, codim: int = 1) -> SubgroupFlag:
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), codim)

    @property
    def rank_W(self) -> int:
        return self.n - self.codim

    @property
    def is_standard(self) -> bool:
        return all(self.basis_change[i][j] == (i == j)
                   for i in range(self.n) for j in range(self.n))

    def change_of_basis(self) -> AlgebraMap:
        """H*V (adapted) -> H*V (original)."""
        return linear_substitution(polynomial_ring(self.n), self.basis_change)

    def ring_V(self) -> RingDescriptor:
        return polynomial_ring(self.n)

    def ring_W(self) -> RingDescriptor:
        return polynomial_ring(self.rank_W)

    def restriction(self) -> AlgebraMap:
        """i*: H*V -> H*W in adapted coordinates."""
        rv, rw = self.ring_V(), self.ring_W()
        imgs = [rw.gen(j) if j < self.rank_W else rw.zero() for j in range(self.n)]
        return AlgebraMap(rv, rw, tuple(imgs))

    def section(self) -> AlgebraMap:
        """H*W -> H*V, t_j -> t_j; the H*W-structure on modules killed by the last variables."""
        rv, rw = self.ring_V(), self.ring_W()
        return AlgebraMap(rw, rv, tuple(rv.gen(j) for j in range(self.rank_W)))

    def quotient_inclusion(self) -> AlgebraMap:
        """q*: H*(V/W) = F2[t_n] -> H*V (codimension one)."""
        self._need_codim_one()
        rv = self.ring_V()
        name = rv.names[-1]
        return AlgebraMap(RingDescriptor((name,), (1,)), rv, (rv.gen(self.n - 1),))

    def last_variable(self) -> Polynomial:
        self._need_codim_one()
        return self.ring_V().gen(self.n - 1)

    def _need_codim_one(self):
        if self.codim != 1:
            raise ValueError(f"operation requires a codimension-one subgroup, got codim {self.codim}")


def _embed(p: Polynomial, ring: RingDescriptor) -> Polynomial:
    pad = ring.ngens - p.ring.ngens
    return Polynomial(ring, tuple(t + (0,) * pad for t in p.terms))


def dickson_classes_for_subgroup(flag: SubgroupFlag) -> DicksonSystem:
    """Dickson classes of W in its retained variables t1..t_{n-codim}."""
    return dickson_classes(flag.rank_W)


@dataclass(frozen=True)
class DTilde:
    generators: tuple[Polynomial, ...]
    ring: RingDescriptor

    def inclusion(self) -> AlgebraMap:
        return AlgebraMap(self.ring, self.generators[0].ring, self.generators)


def dtilde_generators(flag: SubgroupFlag) -> DTilde:
    """c_{W,1}..c_{W,n-1} embedded in F2[t1..tn], followed by t_n."""
    if flag.codim != 1:
        raise ValueError(f"the intermediate algebra needs a codimension-one subgroup, got {flag.codim}")
    n = flag.n
    rv = polynomial_ring(n)
    dw = dickson_classes(n - 1)
    gens = tuple(_embed(c, rv) for c in dw.classes) + (rv.gen(n - 1),)
    names = tuple(f"w{i}" for i in range(1, n)) + (rv.names[-1],)
    ring = RingDescriptor(names, dickson_degrees(n - 1) + (1,))
    return DTilde(gens, ring)
