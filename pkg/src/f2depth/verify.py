"""Verification suites over the catalog and over seeded random presentations.

Every suite maps an instance (a catalog entry name or a seed) to a list of
records.  An instance whose computation hits CutoffInsufficient is retried
once at twice the cutoff; if that fails too it is reported as such.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from . import homalg
from .catalog import CatalogEntry, builtin_entries, find_entry, random_presentation
from .dickson import (SubgroupFlag, dickson_classes, dickson_degrees, dtilde_generators,
                      nonzero_linear_forms)
from .errors import CutoffInsufficient, InconsistentResult
from .f2poly import polynomial_ring
from .grmodule import DegreewiseModule, GradedPresentation, default_cutoff, expand, restrict_scalars
from .gysin import (GysinTriple, check_cm_descends, check_free_descends, check_k_action_descends,
                    check_lemma_2322, check_prop_241, check_prop_2311, gysin_consistency, lemma_3122,
                    sequence_S_check, theorem_31_check)
from .report import CheckResult, Verdict, fmt_depth

SUITES = ("ab", "methods", "euler", "thm31", "prop241", "lemma3122", "seqS", "prop2311",
          "lemma2322", "structure", "dickson", "gysin", "kaction")
SEEDED_SUITES = ("ab", "methods", "euler")

INSUFFICIENT = "cutoff insufficient"


@dataclass(frozen=True)
class Record:
    suite: str
    instance: str
    check: str
    verdict: str
    detail: str = ""
    first_failure: int | None = None
    cutoff: int | None = None

    @property
    def failed(self) -> bool:
        return self.verdict == Verdict.FAIL.value

    @property
    def insufficient(self) -> bool:
        return self.verdict == INSUFFICIENT

    def as_dict(self) -> dict:
        return asdict(self)


def _rec(suite, inst, res: CheckResult, cutoff) -> Record:
    return Record(suite, inst, res.name, res.verdict.value, res.detail, res.first_failure, cutoff)


def _ring_degrees(r: int, which: str) -> tuple[int, ...]:
    if which == "hv":
        return (1,) * r
    if which == "dv":
        return dickson_degrees(r)
    if which == "dtilde":
        return dickson_degrees(r - 1) + (1,) if r >= 1 else ()
    raise ValueError(which)


_SUITE_RINGS = {"ab": ("hv", "dv", "dtilde"), "methods": ("hv",), "seqS": ("hv", "dtilde")}


def policy_cutoff(presentations: Iterable[GradedPresentation], suite: str) -> int:
    """Default cutoff rule, applied with every homology ring the suite uses."""
    rings = _SUITE_RINGS.get(suite, ("hv",))
    return max(default_cutoff(P, _ring_degrees(P.ring.ngens, w)) for P in presentations for w in rings)


def _ring_maps(M: DegreewiseModule):
    n = M.ring.ngens
    yield "hv", None
    if n >= 1:
        yield "dv", dickson_classes(n).inclusion()
        yield "dtilde", dtilde_generators(SubgroupFlag.standard(n)).inclusion()


# --- per-module checks --------------------------------------------------------

def _ab_checks(M: DegreewiseModule, label: str) -> list[CheckResult]:
    """depth (Ext route) + pd (Tor route) = #generators, over H*V, DV and D~V."""
    out = []
    depths = {}
    for which, phi in _ring_maps(M):
        N = M if phi is None else restrict_scalars(M, phi)
        pd = homalg.projective_dimension(homalg.koszul_tor(N))
        dep = homalg.depth_via_ext(N).depth
        depths[which] = dep
        s = N.ring.ngens
        ok = (pd == -homalg.INF and dep == homalg.INF) if N.is_zero() else dep + pd == s
        out.append(CheckResult.of(f"{label}ab-{which}", ok,
                                  f"depth {fmt_depth(dep)} + pd {fmt_depth(pd)} vs {s}"))
    agree = len(set(depths.values())) == 1
    out.append(CheckResult.of(f"{label}ring-agreement", agree,
                              " ".join(f"{k}={fmt_depth(v)}" for k, v in depths.items())))
    return out


def _methods_checks(M: DegreewiseModule, label: str, exact_dickson: bool) -> list[CheckResult]:
    ab = homalg.depth_via_ab(M).depth
    ext = homalg.depth_via_ext(M).depth
    out = [CheckResult.of(f"{label}ab=ext", ab == ext, f"{fmt_depth(ab)} vs {fmt_depth(ext)}")]
    if M.ring.ngens >= 1:
        dk = homalg.depth_via_dickson(M, compare=False).depth
        if exact_dickson:
            out.append(CheckResult.of(f"{label}dickson=ab", dk == ab, f"{fmt_depth(dk)} vs {fmt_depth(ab)}"))
        else:
            out.append(CheckResult.of(f"{label}dickson<=ab", dk <= ab, f"{fmt_depth(dk)} vs {fmt_depth(ab)}"))
    return out


def _expected_check(M: DegreewiseModule, expected: float, label: str) -> CheckResult:
    got = homalg.depth_via_ab(M).depth
    return CheckResult.of(f"{label}expected-depth", got == expected,
                          f"{fmt_depth(got)} vs expected {fmt_depth(expected)}")


# --- suites over catalog entries ---------------------------------------------

def _levels(entry: CatalogEntry, D: int) -> list[DegreewiseModule]:
    return [expand(P, D) for P in entry.levels]


def _catalog_suite(suite: str, entry: CatalogEntry, D: int) -> list[CheckResult]:
    n = entry.n
    flag = entry.flag
    if suite in ("ab", "methods", "euler", "structure"):
        mods = _levels(entry, D)
        out = []
        for r, M in enumerate(mods):
            if suite == "structure" and r == 0:
                continue
            label = f"rank{r}:"
            if suite == "ab":
                out.extend(_ab_checks(M, label))
                out.append(_expected_check(M, entry.expected[r], label))
            elif suite == "methods":
                out.extend(_methods_checks(M, label, exact_dickson=True))
            elif suite == "euler":
                res = homalg.koszul_euler_check(M)
                out.append(CheckResult(label + res.name, res.verdict, res.detail, res.first_failure))
            else:
                k_max = homalg.depth_via_dickson(M, compare=False).depth
                for k in range(1, min(k_max, r) + 1):
                    res = homalg.structure_check(M, k)
                    out.append(CheckResult(label + res.name, res.verdict, res.detail, res.first_failure))
        return out
    if suite == "gysin":
        mods = _levels(entry, D)
        out = []
        for r in range(n, 0, -1):
            T = GysinTriple.build(mods[r], mods[r - 1], SubgroupFlag.standard(r))
            res = gysin_consistency(T)
            out.append(CheckResult(f"rank{r}->{r - 1}:{res.name}", res.verdict, res.detail, res.first_failure))
        return out
    if suite == "thm31":
        mods = _levels(entry, D)
        out = []
        for c in range(1, n + 1):
            res = theorem_31_check(mods[n], mods[n - c], SubgroupFlag.standard(n, c),
                                   [mods[n - j] for j in range(1, c)])
            out.append(res)
        return out
    MV = expand(entry.presentation_V, D)
    if suite == "prop241":
        T = GysinTriple.build(MV, expand(entry.presentation_W, D), flag)
        return [check_prop_241(T, k) for k in range(1, n)]
    if suite == "lemma3122":
        return [lemma_3122(MV, flag).result]
    if suite == "seqS":
        return list(sequence_S_check(MV, flag).results)
    if suite == "prop2311":
        return [check_prop_2311(MV, flag)]
    if suite == "lemma2322":
        if entry.base is None:
            return [CheckResult("lemma2322", Verdict.NOT_APPLICABLE, "entry has no base module")]
        return [check_lemma_2322(entry.base, flag, D)]
    if suite == "kaction":
        mods = _levels(entry, D)
        dv = homalg.depth_via_ab(mods[n]).depth
        out = []
        for r in range(n - 1, -1, -1):
            dw = homalg.depth_via_ab(mods[r]).depth
            for res in [check_cm_descends(dv, dw, n, r), check_free_descends(dv, dw),
                        *(check_k_action_descends(dv, dw, k) for k in range(n + 1))]:
                out.append(CheckResult(f"rank{r}:{res.name}", res.verdict, res.detail))
        return out
    raise ValueError(f"suite {suite!r} does not run on catalog entries")


def _dickson_suite(n: int) -> list[CheckResult]:
    dk = dickson_classes(n)
    expected = tuple(2 ** n - 2 ** (n - i) for i in range(1, n + 1))
    out = [CheckResult.of("degrees", dk.degrees == expected, f"degrees {dk.degrees}")]
    prod = polynomial_ring(n).one()
    for u in nonzero_linear_forms(n):
        prod = prod * u
    out.append(CheckResult.of("top-class", dk.classes[-1] == prod, f"{2 ** n - 1} linear forms"))
    return out


# --- instances, retry and dispatch --------------------------------------------

_SEED = re.compile(r"seed-(\d+)-n(\d+)$")


def seed_instance(seed: int, n: int) -> str:
    return f"seed-{seed:04d}-n{n}"


def _run_once(suite: str, instance: str, D: int) -> tuple[list[CheckResult], int]:
    m = _SEED.match(instance)
    if m:
        if suite not in SEEDED_SUITES:
            raise ValueError(f"suite {suite!r} is only run on catalog entries")
        seed, n = int(m.group(1)), int(m.group(2))
        P = random_presentation(seed, n)
        M = expand(P, D)
        if suite == "ab":
            if M.is_zero():
                return [CheckResult("ab", Verdict.NOT_APPLICABLE, "zero module")], D
            return _ab_checks(M, ""), D
        if suite == "methods":
            return _methods_checks(M, "", exact_dickson=False), D
        return [homalg.koszul_euler_check(M)], D
    if suite == "dickson":
        n = int(instance.removeprefix("rank"))
        return _dickson_suite(n), 0
    entry = find_entry(instance)
    return _catalog_suite(suite, entry, D), D


def run_instance(suite: str, instance: str, cutoff: int | None = None, retry: bool = True) -> list[Record]:
    D = cutoff if cutoff is not None else _first_cutoff(suite, instance)
    last, tried = None, D
    for _ in range(2 if retry else 1):
        try:
            results, used = _run_once(suite, instance, D)
        except CutoffInsufficient as exc:
            last, tried = exc, D
            D *= 2
            continue
        except InconsistentResult as exc:
            return [Record(suite, instance, "consistency", Verdict.FAIL.value, str(exc), None, D)]
        return [_rec(suite, instance, r, used) for r in results]
    return [Record(suite, instance, "cutoff", INSUFFICIENT, str(last), None, tried)]


def _first_cutoff(suite: str, instance: str) -> int:
    m = _SEED.match(instance)
    if m:
        return policy_cutoff([random_presentation(int(m.group(1)), int(m.group(2)))], suite)
    if suite == "dickson":
        return 0
    return policy_cutoff(find_entry(instance).levels, suite)


def instances(suite: str, ranks: Sequence[int], seeds: Sequence[int] = ()) -> list[str]:
    if suite == "dickson":
        return [f"rank{n}" for n in ranks]
    names = []
    if seeds:
        if suite not in SEEDED_SUITES:
            raise ValueError(f"suite {suite!r} does not take seeds")
        names.extend(seed_instance(s, n) for n in ranks for s in seeds)
    else:
        for n in ranks:
            for e in builtin_entries(n):
                if suite != "lemma2322" or "lemma2322" in e.tags:
                    names.append(e.name)
    return sorted(names)


def _job(args):
    return run_instance(*args)


def run_suite(suite: str, ranks: Sequence[int] = (2, 3), seeds: Sequence[int] = (),
              cutoff: int | None = None, retry: bool = True, jobs: int = 1,
              progress: Callable[[list[Record]], None] | None = None) -> list[Record]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    names = instances(suite, ranks, seeds)
    tasks = [(suite, name, cutoff, retry) for name in names]
    out: list[list[Record]] = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for recs in pool.map(_job, tasks):
                out.append(recs)
                if progress:
                    progress(recs)
    else:
        for t in tasks:
            recs = _job(t)
            out.append(recs)
            if progress:
                progress(recs)
    return [r for recs in sorted(out, key=lambda rs: rs[0].instance if rs else "") for r in recs]


def exit_code(records: Sequence[Record]) -> int:
    if any(r.failed for r in records):
        return 1
    if any(r.insufficient for r in records):
        return 2
    return 0
