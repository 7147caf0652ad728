"""Curated (M_V, M_W) families and seeded random presentations.

Each entry carries one presentation per rank r = n, n-1, ..., 0 along the
standard flag (level r lives over F2[t1..tr]), so that theorem checks for a
subgroup of any codimension can walk the flag one step at a time.  The
lower levels are hand-written from the equivariant cohomology of the named
space and are validated by the Gysin dimension count, never trusted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .dickson import SubgroupFlag
from .f2poly import Polynomial, RingDescriptor, monomial_basis, polynomial_ring
from .grmodule import (GradedPresentation, cyclic_presentation, free_presentation,
                       shift_presentation, sum_presentations, trivial_presentation)

SUPPORTED_RANKS = (2, 3, 4)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    family: str
    levels: tuple[GradedPresentation, ...]
    expected: tuple[float, ...]
    provenance: str
    tags: frozenset[str] = field(default_factory=frozenset)
    base: GradedPresentation | None = None

    @property
    def flag(self) -> SubgroupFlag:
        return SubgroupFlag.standard(self.n)

    @property
    def presentation_V(self) -> GradedPresentation:
        return self.levels[self.n]

    @property
    def presentation_W(self) -> GradedPresentation:
        return self.levels[self.n - 1]

    @property
    def expected_depth_V(self) -> float:
        return self.expected[self.n]

    @property
    def expected_depth_W(self) -> float:
        return self.expected[self.n - 1]


def _free(r: int) -> GradedPresentation:
    return free_presentation(polynomial_ring(r), (0,), "g")


def _points(r: int, k: int) -> GradedPresentation:
    """F2^k in degree 0 over H*W_r."""
    ring = polynomial_ring(r)
    return sum_presentations(*[trivial_presentation(ring)] * k)


def _cyclic(r: int, var: int, power: int = 1) -> GradedPresentation:
    """H*W_r / (t_var^power)."""
    ring = polynomial_ring(r)
    return cyclic_presentation(ring, [ring.gen(var - 1) ** power])


_ALL = frozenset({"gysin", "thm31", "prop241", "lemma3122", "seqS", "prop2311",
                  "structure", "methods", "kaction"})


def _entry(name, n, family, levels, expected, provenance, extra=(), base=None) -> CatalogEntry:
    return CatalogEntry(f"{name}-n{n}", n, family, tuple(levels), tuple(expected), provenance,
                        _ALL | frozenset(extra), base)


def builtin_entries(n: int) -> list[CatalogEntry]:
    if n not in SUPPORTED_RANKS:
        raise ValueError(f"catalog supports ranks {SUPPORTED_RANKS}, got {n}")
    ranks = range(n + 1)
    out = [
        _entry("point", n, "a", [_free(r) for r in ranks], list(ranks),
               "trivial action on a point: H*W_r is free, depth r"),
        _entry("circle", n, "b",
               [sum_presentations(_free(r), shift_presentation(_free(r), 1)) for r in ranks],
               list(ranks), "trivial action on a circle: two free summands, depth r"),
        _entry("free", n, "c", [_points(r, 2 ** (n - r)) for r in ranks], [0] * (n + 1),
               "V acting on itself: 2^(n-r) orbits of W_r, finite modules of depth 0"),
        _entry("two-points", n, "d",
               _two_points(n), list(range(n)) + [n - 1],
               "X = V/W: H*V/(t_n) at the top (depth n-1), two free summands below (depth r)"),
        _entry("sphere-t1", n, "e", _sphere(n), [0] + list(range(0, n)),
               "sphere with Euler class t1: H*W_r/(t1), depth r-1; at rank 0 two points"),
        _entry("point-plus-free", n, "f",
               [sum_presentations(_free(r), _points(r, 2 ** (n - r))) for r in ranks], [0] * (n + 1),
               "disjoint union of a fixed point and a free orbit: depth 0"),
        _entry("ext-free", n, "g", [_free(r) for r in ranks], list(ranks),
               "H*V (x) F2[t_n]: free, depth r", ("lemma2322",),
               free_presentation(_quotient_ring(n), (0,), "g")),
    ]
    for m in (1, 2, 3):
        ring_n = _quotient_ring(n)
        levels = [sum_presentations(_free(r), shift_presentation(_free(r), m - 1)) for r in range(n)]
        levels.append(_cyclic(n, n, m))
        out.append(_entry(f"ext-trunc{m}", n, "g", levels, list(range(n)) + [n - 1],
                          f"H*V (x) F2[t_n]/(t_n^{m}): depth n-1 at the top, "
                          f"H*W_r + Sigma^{m - 1} H*W_r below", ("lemma2322",),
                          cyclic_presentation(ring_n, [ring_n.gen(0) ** m])))
    return sorted(out, key=lambda e: e.name)


def _two_points(n: int) -> list[GradedPresentation]:
    return [sum_presentations(_free(r), _free(r)) for r in range(n)] + [_cyclic(n, n)]


def _sphere(n: int) -> list[GradedPresentation]:
    return [_points(0, 2)] + [_cyclic(r, 1) for r in range(1, n + 1)]


def _quotient_ring(n: int) -> RingDescriptor:
    return SubgroupFlag.standard(n).quotient_inclusion().source


def all_entries(ranks=SUPPORTED_RANKS) -> list[CatalogEntry]:
    return sorted((e for n in ranks for e in builtin_entries(n)), key=lambda e: e.name)


def find_entry(name: str) -> CatalogEntry:
    for n in SUPPORTED_RANKS:
        for e in builtin_entries(n):
            if e.name == name:
                return e
    raise KeyError(f"no catalog entry named {name!r}")


def random_presentation(seed: int, n: int, max_gens: int = 3, max_rels: int = 3,
                        max_deg: int = 3) -> GradedPresentation:
    """Deterministic pseudo-random homogeneous presentation over F2[t1..tn]."""
    if n < 1 or max_gens < 1 or max_rels < 0 or max_deg < 1:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    ring = polynomial_ring(n)
    gens = tuple((f"g{i}", rng.randint(0, max_deg - 1)) for i in range(rng.randint(1, max_gens)))
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        low = min(d for _, d in gens) + 1
        e = rng.randint(low, min(d for _, d in gens) + max_deg)
        for _attempt in range(8):
            rel = []
            for _, gd in gens:
                basis = monomial_basis(ring, e - gd) if e - gd >= 1 else []
                rel.append(Polynomial.from_terms(ring, [m for m in basis if rng.random() < 0.5]))
            if any(c.terms for c in rel):
                rels.append(tuple(rel))
                break
    return GradedPresentation(ring, gens, tuple(rels))

