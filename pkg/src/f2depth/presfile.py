"""Line-based text format for graded presentations.

    # comment
    ring t1:1 t2:1
    generators g:0 h:1
    relation t1^2*t2*g + t1*t2^2*g
    relation t1*h + t1^2*g

``ring`` must come first.  Each relation is a sum of terms, every term a
product of ring generators times exactly one module generator.  A file with
no ``generators`` line is the zero module; a file with no ``ring`` line at
all is the zero module over F2.
"""

from __future__ import annotations

from pathlib import Path

from .f2poly import (InhomogeneousError, ParseError, Polynomial, RingDescriptor, format_polynomial,
                     parse_terms)
from .grmodule import GradedPresentation, InhomogeneousRelation


class PresentationSyntaxError(ParseError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _pairs(fields: list[str], lineno: int, what: str) -> list[tuple[str, int]]:
    out = []
    for f in fields:
        name, sep, deg = f.partition(":")
        if not sep or not name or not deg.lstrip("-").isdigit():
            raise PresentationSyntaxError(lineno, f"{what} entry {f!r} is not name:degree")
        out.append((name, int(deg)))
    return out


def _relation(text: str, ring: RingDescriptor, gens: list[tuple[str, int]],
              lineno: int) -> tuple[Polynomial, ...]:
    gnames = [g for g, _ in gens]
    try:
        terms = parse_terms(text, list(ring.names) + gnames)
    except ParseError as exc:
        raise PresentationSyntaxError(lineno, str(exc)) from None
    k = ring.ngens
    coeffs: list[list] = [[] for _ in gens]
    for t in terms:
        module_part = t[k:]
        if sorted(module_part) != [0] * (len(gens) - 1) + [1]:
            raise PresentationSyntaxError(lineno, "every term needs exactly one module generator to the first power")
        coeffs[module_part.index(1)].append(t[:k])
    try:
        return tuple(Polynomial.from_terms(ring, c) for c in coeffs)
    except InhomogeneousError as exc:
        raise PresentationSyntaxError(lineno, f"inhomogeneous coefficient: {exc}") from None


def parse_presentation_text(text: str) -> GradedPresentation:
    ring: RingDescriptor | None = None
    gens: list[tuple[str, int]] | None = None
    rels: list[tuple[Polynomial, ...]] = []
    rel_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "ring":
            if ring is not None:
                raise PresentationSyntaxError(lineno, "second ring line")
            pairs = _pairs(rest.split(), lineno, "ring")
            if any(d < 1 for _, d in pairs):
                raise PresentationSyntaxError(lineno, "ring generators need positive degrees")
            if len({n for n, _ in pairs}) != len(pairs):
                raise PresentationSyntaxError(lineno, "duplicate ring generator")
            ring = RingDescriptor.from_pairs(pairs)
        elif key == "generators":
            if ring is None:
                raise PresentationSyntaxError(lineno, "generators before ring")
            if gens is not None:
                raise PresentationSyntaxError(lineno, "second generators line")
            gens = _pairs(rest.split(), lineno, "generator")
            if any(d < 0 for _, d in gens):
                raise PresentationSyntaxError(lineno, "generator degrees must be nonnegative")
        elif key == "relation":
            if ring is None or gens is None:
                raise PresentationSyntaxError(lineno, "relation before ring and generators")
            rels.append(_relation(rest, ring, gens, lineno))
            rel_lines.append(lineno)
        else:
            raise PresentationSyntaxError(lineno, f"unknown keyword {key!r}")
    ring = ring or RingDescriptor((), ())
    try:
        return GradedPresentation(ring, tuple(gens or ()), tuple(rels))
    except InhomogeneousRelation as exc:
        raise InhomogeneousRelation(exc.index, f"(line {rel_lines[exc.index]}) {exc}") from None


def parse_presentation(path: str | Path) -> GradedPresentation:
    return parse_presentation_text(Path(path).read_text())


def emit_presentation(P: GradedPresentation, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(" ".join(["ring"] + [f"{n}:{d}" for n, d in zip(P.ring.names, P.ring.degrees)]))
    if P.generators:
        lines.append(" ".join(["generators"] + [f"{n}:{d}" for n, d in P.generators]))
    for rel in P.relations:
        parts = []
        for (g, _), c in zip(P.generators, rel):
            for t in (c.terms if c.terms else ()):
                mono = format_polynomial(Polynomial(P.ring, (t,)))
                parts.append(g if mono == "1" else f"{mono}*{g}")
        lines.append("relation " + (" + ".join(parts) if parts else "0"))
    return "\n".join(lines) + "\n"
