"""Command-line front end.

Exit codes: 0 when everything requested succeeded or passed, 1 on a failed
check or bad input, 2 when the degree cutoff could not certify the answer.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import homalg
from .catalog import SUPPORTED_RANKS, all_entries, builtin_entries, find_entry
from .dickson import SubgroupFlag, dickson_classes, dtilde_generators
from .errors import CutoffInsufficient, InconsistentResult
from .f2poly import ParseError, format_polynomial, polynomial_ring
from .grmodule import (DegreewiseModule, GradedPresentation, default_cutoff, expand,
                       restrict_scalars)
from .gysin import GysinTriple, adapt, gysin_consistency, gysin_split
from .presfile import emit_presentation, parse_presentation
from .report import fmt_depth
from .verify import SEEDED_SUITES, SUITES, exit_code, run_suite

log = logging.getLogger("f2depth")

EXIT_OK, EXIT_FAIL, EXIT_CUTOFF = 0, 1, 2


class UsageError(Exception):
    pass


def parse_flag(text: str, codim: int = 1) -> SubgroupFlag:
    """'1,0;0,1' -> rows of the basis change."""
    rows = [tuple(int(x) for x in row.split(",")) for row in text.split(";") if row.strip()]
    return SubgroupFlag(len(rows), tuple(rows), codim)


def parse_seeds(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.partition("..")
        out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    return out


def _jsonable(x):
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return fmt_depth(x)
    return x


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps({k: _jsonable(v) for k, v in record.items()}, sort_keys=True))
    else:
        print(text)


def _hv(P: GradedPresentation) -> int:
    n = P.ring.ngens
    if P.ring != polynomial_ring(n):
        raise UsageError(f"this operation needs a module over F2[t1..tn], got {P.ring}")
    return n


def _ring_view(M: DegreewiseModule, ring: str, flag: SubgroupFlag | None) -> DegreewiseModule:
    if ring == "hv":
        return M
    n = M.ring.ngens
    if ring == "dv":
        return restrict_scalars(M, dickson_classes(n).inclusion())
    flag = flag or SubgroupFlag.standard(n)
    if flag.n != n:
        raise UsageError(f"flag has rank {flag.n}, module has rank {n}")
    return restrict_scalars(adapt(M, flag), dtilde_generators(flag).inclusion())


def _homology_degrees(P: GradedPresentation, ring: str) -> tuple[int, ...]:
    n = P.ring.ngens
    if ring == "dv":
        return dickson_classes(n).degrees
    if ring == "dtilde":
        return dickson_classes(n - 1).degrees + (1,)
    return P.ring.degrees


def _with_retry(args, P: GradedPresentation, ring: str, fn: Callable[[int], int]) -> int:
    D = args.cutoff if args.cutoff is not None else default_cutoff(P, _homology_degrees(P, ring))
    for attempt in range(1 if args.no_retry else 2):
        try:
            return fn(D)
        except CutoffInsufficient as exc:
            log.info("cutoff %d insufficient: %s", D, exc)
            last = exc
            D *= 2
    print(f"cutoff insufficient: {last}", file=sys.stderr)
    return EXIT_CUTOFF


# --- commands -------------------------------------------------------------------

def cmd_depth(args) -> int:
    P = parse_presentation(args.module)
    flag = parse_flag(args.flag) if args.flag else None
    if args.ring != "hv" or args.method == "dickson":
        _hv(P)
    if args.method == "dickson" and args.ring != "hv":
        raise UsageError("the Dickson method runs over H*V only")

    def run(D: int) -> int:
        M = _ring_view(expand(P, D), args.ring, flag)
        rep = homalg.depth(M, args.method)
        _emit(args, {"depth": rep.depth, "projective_dimension": rep.projective_dimension,
                     "method": rep.method if args.method != "all" else "all", "ring": args.ring,
                     "cutoff": D, "flags": list(rep.flags),
                     "witnesses": [format_polynomial(w) for w in rep.witnesses]},
              f"depth {fmt_depth(rep.depth)} (pd {fmt_depth(rep.projective_dimension)}, "
              f"method {args.method}, ring {args.ring}, cutoff {D})"
              + "".join(f"\n  flag: {f}" for f in rep.flags))
        return EXIT_OK

    return _with_retry(args, P, args.ring, run)


def cmd_betti(args) -> int:
    P = parse_presentation(args.module)
    flag = parse_flag(args.flag) if args.flag else None
    if args.ring != "hv":
        _hv(P)

    def run(D: int) -> int:
        B = homalg.koszul_tor(_ring_view(expand(P, D), args.ring, flag))
        B.require_certified()
        if args.json:
            for i, d, v in B.triples():
                print(json.dumps({"i": i, "d": d, "dim": v}, sort_keys=True))
            print(json.dumps({"certified": B.stability_ok, "cutoff": D}, sort_keys=True))
        else:
            width = max(len(str(v)) for row in B.entries for v in row)
            print("d: " + " ".join(str(d).rjust(width) for d in range(D + 1)))
            for i, row in enumerate(B.entries):
                print(f"{i}: " + " ".join((str(v) if v else ".").rjust(width) for v in row))
            print(f"certified at cutoff {D}")
        return EXIT_OK

    return _with_retry(args, P, args.ring, run)


def cmd_hilbert(args) -> int:
    P = parse_presentation(args.module)
    D = args.cutoff if args.cutoff is not None else default_cutoff(P)
    M = expand(P, D)
    _emit(args, {"cutoff": D, "dims": list(M.dims)}, " ".join(map(str, M.dims)))
    return EXIT_OK


def cmd_dickson(args) -> int:
    if args.rank < 1:
        raise UsageError("--rank must be at least 1")
    dk = dickson_classes(args.rank)
    for i, (c, d) in enumerate(zip(dk.classes, dk.degrees), start=1):
        _emit(args, {"i": i, "degree": d, "class": format_polynomial(c)},
              f"c{i} (degree {d}) = {format_polynomial(c)}")
    return EXIT_OK


def cmd_gysin(args) -> int:
    P = parse_presentation(args.module)
    n = _hv(P)
    flag = parse_flag(args.flag) if args.flag else SubgroupFlag.standard(n)
    if flag.n != n:
        raise UsageError(f"flag has rank {flag.n}, module has rank {n}")
    D = args.cutoff if args.cutoff is not None else default_cutoff(P)
    MV = expand(P, D)
    coinv, torsion = gysin_split(MV, flag)
    _emit(args, {"part": "coinvariants", "dims": list(coinv.dims)}, "coinv:   " + " ".join(map(str, coinv.dims)))
    _emit(args, {"part": "torsion", "dims": list(torsion.dims)}, "torsion: " + " ".join(map(str, torsion.dims)))
    if not args.with_module:
        return EXIT_OK
    MW = expand(parse_presentation(args.with_module), D)
    res = gysin_consistency(GysinTriple.build(MV, MW, flag))
    _emit(args, {"part": "consistency", "verdict": res.verdict.value, "detail": res.detail,
                 "first_failure": res.first_failure},
          f"consistency: {res.verdict.value} {res.detail}")
    return EXIT_OK if res else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = builtin_entries(args.rank) if args.rank else all_entries()
        for e in entries:
            _emit(args, {"name": e.name, "n": e.n, "family": e.family,
                         "depth_V": e.expected_depth_V, "depth_W": e.expected_depth_W,
                         "provenance": e.provenance, "tags": sorted(e.tags)},
                  f"{e.name:24s} depth V={fmt_depth(e.expected_depth_V)} "
                  f"W={fmt_depth(e.expected_depth_W)}  {e.provenance}")
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog emit needs an entry name")
    e = find_entry(args.name)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {f"{e.name}.r{r}.pres": emit_presentation(P, f"{e.name} at rank {r}; expected depth "
                                                            f"{fmt_depth(e.expected[r])}")
             for r, P in enumerate(e.levels)}
    if e.base is not None:
        files[f"{e.name}.base.pres"] = emit_presentation(e.base, f"{e.name}: module over F2[t_n]")
    for fname, text in files.items():
        (out / fname).write_text(text)
        print(out / fname)
    return EXIT_OK


def cmd_verify(args) -> int:
    seeds = parse_seeds(args.seeds) if args.seeds else []
    if seeds and args.suite not in SEEDED_SUITES:
        raise UsageError(f"--seeds applies to suites {', '.join(SEEDED_SUITES)}")
    ranks = args.rank or ([2] if seeds else [2, 3])
    records = run_suite(args.suite, ranks, seeds, args.cutoff, not args.no_retry, args.jobs)
    for r in records:
        where = "" if r.first_failure is None else f" (first failure at degree {r.first_failure})"
        _emit(args, r.as_dict(), f"{r.verdict.upper():19s} {r.instance:22s} {r.check}: {r.detail}{where}")
    code = exit_code(records)
    n_fail = sum(r.failed for r in records)
    n_cut = sum(r.insufficient for r in records)
    summary = f"{args.suite}: {len(records)} records, {n_fail} failed, {n_cut} cutoff-insufficient"
    print(summary, file=sys.stderr)
    return code


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="f2depth", description="Depth and homology of graded F2 modules.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ring=True):
        sp.add_argument("--cutoff", type=int, help="degree cutoff D (default: computed)")
        sp.add_argument("--json", action="store_true", help="line-delimited JSON records")
        sp.add_argument("--no-retry", action="store_true", help="do not retry at twice the cutoff")
        if ring:
            sp.add_argument("--ring", choices=("hv", "dv", "dtilde"), default="hv")
            sp.add_argument("--flag", help="basis change rows, e.g. '1,0;0,1' (for --ring dtilde)")

    sp = sub.add_parser("depth", help="depth of a presented module")
    sp.add_argument("module")
    sp.add_argument("--method", choices=("ab", "ext", "dickson", "all"), default="ab")
    common(sp)
    sp.set_defaults(func=cmd_depth)

    sp = sub.add_parser("betti", help="Koszul Betti table dim Tor_i(F2, M)_d")
    sp.add_argument("module")
    common(sp)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("hilbert", help="Hilbert function up to the cutoff")
    sp.add_argument("module")
    common(sp, ring=False)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("dickson", help="Dickson classes of rank n")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dickson)

    sp = sub.add_parser("gysin", help="coinvariants and torsion for a hyperplane")
    sp.add_argument("module")
    sp.add_argument("--flag", help="basis change rows; the hyperplane is t_n = 0 after it")
    sp.add_argument("--with", dest="with_module", help="presentation of M_W to check against")
    sp.add_argument("--cutoff", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gysin)

    sp = sub.add_parser("catalog", help="list or emit builtin entries")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--rank", type=int, choices=SUPPORTED_RANKS)
    sp.add_argument("--out", default=".")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=SUITES)
    sp.add_argument("--rank", type=int, action="append", choices=SUPPORTED_RANKS)
    sp.add_argument("--seeds", help="e.g. 1..100 or 1,5,9")
    sp.add_argument("--cutoff", type=int)
    sp.add_argument("--no-retry", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_FAIL
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "cutoff", None) is not None and args.cutoff < 1:
        print("error: --cutoff must be at least 1", file=sys.stderr)
        return EXIT_FAIL
    try:
        return args.func(args)
    except CutoffInsufficient as exc:
        print(f"cutoff insufficient: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except (UsageError, ParseError, ValueError, KeyError, OSError, InconsistentResult) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
