"""Exact GF(2) linear algebra on Python ints used as bit vectors.

A vector of length m is an int whose bit i is coordinate i.  A linear map
F2^m -> F2^k is stored as the tuple of its m column images (ints below 2^k).
Echelon forms pivot on the highest set bit, so reduction is deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def bits(v: int):
    """Yield the indices of the set bits of v, lowest first."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def apply(cols: Sequence[int], v: int) -> int:
    out = 0
    while v:
        low = v & -v
        out ^= cols[low.bit_length() - 1]
        v ^= low
    return out


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Columns of outer o inner."""
    return tuple(apply(outer, c) for c in inner)


def add_maps(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(a, b))


def rank(vectors: Iterable[int]) -> int:
    piv: dict[int, int] = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            p = piv.get(h)
            if p is None:
                piv[h] = v
                break
            v ^= p
    return len(piv)


def kernel(cols: Sequence[int]) -> list[int]:
    """Basis of {x : sum of cols[i] over bits i of x == 0}.

    Each column is augmented with its own index bit below the data bits, so
    a column that reduces to zero leaves behind its dependency.
    """
    m = len(cols)
    piv: dict[int, int] = {}
    basis = []
    for i, c in enumerate(cols):
        v = (c << m) | (1 << i)
        while v >> m:
            h = v.bit_length() - 1
            p = piv.get(h)
            if p is None:
                piv[h] = v
                break
            v ^= p
        else:
            basis.append(v)
    return basis


class Subquotient:
    """A subquotient Z/B of F2^m with a fixed basis and a coordinate map.

    ``relations`` span B.  ``span`` spans Z (which must contain B); when it
    is None, Z is the whole space and the basis is the set of unit vectors at
    the non-pivot positions of B, i.e. a normal-form complement.
    """

    __slots__ = ("ambient", "reps", "_piv")

    def __init__(self, ambient: int, relations: Iterable[int] = (),
                 span: Iterable[int] | None = None):
        self.ambient = ambient
        piv: dict[int, tuple[int, int]] = {}
        for b in relations:
            while b:
                h = b.bit_length() - 1
                p = piv.get(h)
                if p is None:
                    piv[h] = (b, 0)
                    break
                b ^= p[0]
        reps: list[int] = []
        if span is None:
            for c in range(ambient):
                if c not in piv:
                    piv[c] = (1 << c, 1 << len(reps))
                    reps.append(1 << c)
        else:
            for z in span:
                r, combo = z, 0
                while r:
                    h = r.bit_length() - 1
                    p = piv.get(h)
                    if p is None:
                        piv[h] = (r, combo ^ (1 << len(reps)))
                        reps.append(z)
                        break
                    r ^= p[0]
                    combo ^= p[1]
        self.reps = reps
        self._piv = piv

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: int) -> int:
        """Coordinates of the class of v; v must lie in Z."""
        piv = self._piv
        acc = 0
        while v:
            h = v.bit_length() - 1
            p = piv.get(h)
            if p is None:
                raise ValueError("vector does not lie in the subquotient's span")
            v ^= p[0]
            acc ^= p[1]
        return acc


def unit_columns(n: int) -> tuple[int, ...]:
    return tuple(1 << i for i in range(n))


def zero_map(n: int) -> tuple[int, ...]:
    return (0,) * n
