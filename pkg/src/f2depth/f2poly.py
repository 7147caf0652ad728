"""Graded polynomial algebras over F2 with generators of arbitrary degree.

Monomials are exponent tuples.  Within one degree, monomials are listed in
descending lexicographic order of their exponent tuples (graded lex), which
fixes every basis used elsewhere in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


class InhomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class RingDescriptor:
    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per generator name")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        for name, deg in zip(self.names, self.degrees):
            if deg < 1:
                raise ValueError(f"generator {name} has degree {deg} < 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> RingDescriptor:
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(int(p[1]) for p in pairs))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown ring generator {name!r}") from None

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def gen(self, i: int | str) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        exps = [0] * self.ngens
        exps[i] = 1
        return Polynomial(self, (tuple(exps),))

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.ngens)]

    def one(self) -> Polynomial:
        return Polynomial(self, ((0,) * self.ngens,))

    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def __str__(self):
        inner = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"F2[{inner}]"


def polynomial_ring(n: int, prefix: str = "t") -> RingDescriptor:
    """F2[t1..tn] with every generator in degree 1, i.e. H*V for rank n."""
    return RingDescriptor(tuple(f"{prefix}{i}" for i in range(1, n + 1)), (1,) * n)


def _canonical(terms: Iterable[Monomial]) -> tuple[Monomial, ...]:
    odd: set[Monomial] = set()
    for t in terms:
        odd ^= {t}
    return tuple(sorted(odd, reverse=True))


@dataclass(frozen=True)
class Polynomial:
    """Homogeneous element; ``terms`` is the sorted tuple of monomials present."""

    ring: RingDescriptor
    terms: tuple[Monomial, ...]

    def __post_init__(self):
        degs = {self.ring.monomial_degree(t) for t in self.terms}
        if len(degs) > 1:
            raise InhomogeneousError(f"inhomogeneous terms with degrees {sorted(degs)}")

    @classmethod
    def from_terms(cls, ring: RingDescriptor, terms: Iterable[Monomial]) -> Polynomial:
        terms = _canonical(tuple(int(e) for e in t) for t in terms)
        for t in terms:
            if len(t) != ring.ngens or min(t, default=0) < 0:
                raise ValueError(f"bad exponent vector {t} for {ring}")
        return cls(ring, terms)

    @property
    def degree(self) -> int | None:
        """Weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return self.ring.monomial_degree(self.terms[0])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return None

    def __add__(self, other: Polynomial) -> Polynomial:
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.terms and other.terms and self.degree != other.degree:
            raise InhomogeneousError(
                f"cannot add degree {self.degree} and degree {other.degree}")
        return Polynomial(self.ring, tuple(sorted(set(self.terms) ^ set(other.terms), reverse=True)))

    __sub__ = __add__

    def __mul__(self, other: Polynomial) -> Polynomial:
        if self._check(other) is NotImplemented:
            return NotImplemented
        odd: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                odd ^= {tuple(x + y for x, y in zip(a, b))}
        return Polynomial(self.ring, tuple(sorted(odd, reverse=True)))

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


@dataclass(frozen=True)
class AlgebraMap:
    """Degree-preserving algebra map determined by the images of the source generators."""

    source: RingDescriptor
    target: RingDescriptor
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise ValueError("one image per source generator")
        for j, img in enumerate(self.images):
            if img.ring != self.target:
                raise ValueError(f"image of {self.source.names[j]} is not in the target ring")
            if img.terms and img.degree != self.source.degrees[j]:
                raise ValueError(
                    f"image of {self.source.names[j]} has degree {img.degree}, "
                    f"expected {self.source.degrees[j]}")

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_map(self, p)


def apply_map(phi: AlgebraMap, p: Polynomial) -> Polynomial:
    if p.ring != phi.source:
        raise ValueError("polynomial is not in the source ring of the map")
    powers: dict[tuple[int, int], Polynomial] = {}
    total: set[Monomial] = set()
    for term in p.terms:
        prod = phi.target.one()
        for j, e in enumerate(term):
            if e:
                key = (j, e)
                if key not in powers:
                    powers[key] = phi.images[j] ** e
                prod = prod * powers[key]
        total ^= set(prod.terms)
    return Polynomial(phi.target, tuple(sorted(total, reverse=True)))


def identity_map(ring: RingDescriptor) -> AlgebraMap:
    return AlgebraMap(ring, ring, tuple(ring.gens()))


def linear_substitution(ring: RingDescriptor, matrix: Sequence[Sequence[int]]) -> AlgebraMap:
    """Endomorphism of F2[t1..tn] sending t_i to sum_j matrix[i][j] t_j."""
    gens = ring.gens()
    images = []
    for row in matrix:
        img = ring.zero()
        for j, a in enumerate(row):
            if a % 2:
                img = img + gens[j]
        images.append(img)
    return AlgebraMap(ring, ring, tuple(images))


@lru_cache(maxsize=None)
def _compositions(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    if not degrees:
        return ((),) if d == 0 else ()
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head, -1, -1):
        for tail in _compositions(rest, d - e * head):
            out.append((e,) + tail)
    return tuple(out)


def monomial_basis(ring: RingDescriptor, d: int) -> list[Monomial]:
    """All monomials of weighted degree exactly d, in graded-lex order."""
    if d < 0:
        return []
    return list(_compositions(ring.degrees, d))


def count_monomials(degrees: Sequence[int], d: int) -> int:
    return len(_compositions(tuple(degrees), d)) if d >= 0 else 0


def nonzero_linear_forms(n: int) -> list[Polynomial]:
    """All 2^n - 1 nonzero linear forms; bit j of the index selects t_{j+1}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ring = polynomial_ring(n)
    forms = []
    for mask in range(1, 2 ** n):
        terms = []
        for j in range(n):
            if mask >> j & 1:
                e = [0] * n
                e[j] = 1
                terms.append(tuple(e))
        forms.append(Polynomial.from_terms(ring, terms))
    return forms


def format_monomial(ring: RingDescriptor, m: Monomial) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    return " + ".join(format_monomial(p.ring, t) for t in p.terms)


# --- text syntax -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _TermParser:
    """Recursive descent over sums of products; values are sets of exponent tuples."""

    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = list(names)
        self.n = len(names)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> set[Monomial]:
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.sum()
        if self.i != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return val

    def sum(self) -> set[Monomial]:
        val = self.product()
        while self.peek() in (("op", "+"), ("op", "-")):
            self.take()
            val = val ^ self.product()
        return val

    def product(self) -> set[Monomial]:
        val = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            rhs = self.power()
            out: set[Monomial] = set()
            for a in val:
                for b in rhs:
                    out ^= {tuple(x + y for x, y in zip(a, b))}
            val = out
        return val

    def power(self) -> set[Monomial]:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            k = int(tok)
            out = {(0,) * self.n}
            for _ in range(k):
                nxt: set[Monomial] = set()
                for a in out:
                    for b in base:
                        nxt ^= {tuple(x + y for x, y in zip(a, b))}
                out = nxt
            return out
        return base

    def atom(self) -> set[Monomial]:
        kind, tok = self.take()
        if kind == "num":
            return {(0,) * self.n} if int(tok) % 2 else set()
        if kind == "name":
            if tok not in self.names:
                raise ParseError(f"unknown generator name {tok!r}")
            e = [0] * self.n
            e[self.names.index(tok)] = 1
            return {tuple(e)}
        if (kind, tok) == ("op", "("):
            val = self.sum()
            if self.take() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return val
        raise ParseError(f"unexpected token {tok!r}" if tok else "unexpected end of expression")


def parse_terms(text: str, names: Sequence[str]) -> set[Monomial]:
    """Parse ``text`` into the set of exponent tuples over ``names`` (mod 2)."""
    return _TermParser(text, names).parse()


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse e.g. ``t1^2*t2 + t1*t2^2``; ``0`` is the zero polynomial."""
    return Polynomial.from_terms(ring, parse_terms(text, ring.names))
