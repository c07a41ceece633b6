"""``qcross verify``: run the verification suite and emit a markdown or JSON report."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import calculus as calc_mod
from .algebra import Algebra, random_monomial
from .calculus import Calculus, OneForm, acceptance_differentials, convention_search, omega_label
from .dual import DEFAULT, Pairing, PairingConvention
from .hopf import Hopf, hopf_sample
from .report import CheckResult, run_check
from .rmatrix import build_R, check_rtt, check_ybe, decouple_f_sector
from .scalar import Params, SpecializationError, fmt

CHECK_NAMES = ("hopf", "grouplike", "rtt", "ybe", "representation", "rll", "smash", "differentials",
               "leibniz", "cross-consistency", "covariance", "one-parameter", "classical-limit")


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    mode: str = "symbolic"
    r0: Optional[Fraction] = None
    s0: Optional[Fraction] = None
    degree_bound: int = 3
    seed: int = 0
    convention: object = DEFAULT  # PairingConvention or "search"
    output: str = "markdown"
    checks: List[str] = field(default_factory=list)
    timings: bool = False

    def validate(self) -> None:
        unknown = [c for c in self.checks if c not in CHECK_NAMES]
        if unknown:
            raise ConfigError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECK_NAMES)}")
        if self.mode not in ("symbolic", "specialized"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.output not in ("markdown", "json"):
            raise ConfigError(f"unknown output {self.output!r}")
        if self.degree_bound < 1:
            raise ConfigError("--degree must be at least 1")
        if self.mode == "symbolic":
            if self.r0 is not None or self.s0 is not None:
                raise ConfigError("--r/--s only apply to --mode specialized")
            return
        if self.r0 is None or self.s0 is None:
            raise ConfigError("specialized mode needs both --r and --s")
        if self.r0 == 0 or self.s0 == 0:
            raise ConfigError("deformation parameters must be nonzero")
        if abs(self.r0) == 1 and set(self.checks) != {"classical-limit"}:
            raise ConfigError("r = ±1 is degenerate; it is only accepted for the classical-limit check")

    def params(self) -> Params:
        return Params.symbolic() if self.mode == "symbolic" else Params.specialized(self.r0, self.s0)

    def echo(self) -> Dict[str, object]:
        conv = self.convention if isinstance(self.convention, str) else self.convention.encode()
        return {
            "mode": self.mode,
            "r": None if self.r0 is None else str(self.r0),
            "s": None if self.s0 is None else str(self.s0),
            "degree": self.degree_bound,
            "seed": self.seed,
            "convention": conv,
            "checks": sorted(self.checks),
        }


@dataclass
class CheckRecord:
    check: str
    results: List[CheckResult]
    timing: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def first_counterexample(self) -> Optional[str]:
        return next((f"{r.name}: {r.counterexample}" for r in self.results if not r.passed), None)


@dataclass
class SuiteReport:
    config: SuiteConfig
    records: List[CheckRecord]
    tables: Dict[str, object]

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.records)

    def to_dict(self, timings: bool = False) -> Dict[str, object]:
        checks = []
        for rec in self.records:
            entry = {
                "check": rec.check,
                "status": "pass" if rec.passed else "fail",
                "counterexample": rec.first_counterexample(),
                "results": [_jsonable(r.to_dict()) for r in rec.results],
            }
            if timings:
                entry["timing_s"] = round(rec.timing, 3)
            checks.append(entry)
        return {"config": self.config.echo(), "verdict": "pass" if self.passed else "fail",
                "checks": checks, "tables": _jsonable(self.tables)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return fmt(x)


class Context:
    """Lazily built objects shared by the checks of one run."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.params = config.params()
        self.alg = Algebra(self.params)
        self.hopf = Hopf(self.alg)
        conv = DEFAULT if config.convention == "search" else config.convention
        self.pairing = Pairing(self.alg, conv, self.hopf)
        self.calc = Calculus(self.pairing)

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.config.seed}:{salt}")


# -- checks --------------------------------------------------------------------

def _hopf(ctx: Context, tables) -> List[CheckResult]:
    sample = hopf_sample(ctx.alg, ctx.rng("hopf"), 200, 4)
    return ctx.hopf.check_hopf_axioms(sample)


def _grouplike(ctx: Context, tables) -> List[CheckResult]:
    return ctx.hopf.check_grouplike()


def _rtt(ctx: Context, tables) -> List[CheckResult]:
    res = check_rtt(ctx.alg, build_R(ctx.params))
    tables["rtt_relations"] = res.details["distinct_relations"]
    return [res]


def _ybe(ctx: Context, tables) -> List[CheckResult]:
    R = build_R(ctx.params)
    return [CheckResult("R12 R13 R23 = R23 R13 R12", check_ybe(R), 729)]


def _representation(ctx: Context, tables) -> List[CheckResult]:
    tables["pairing"] = ctx.pairing.pairing_table()
    return ctx.pairing.check_representation(ctx.rng("representation"), 100)


def _rll(ctx: Context, tables) -> List[CheckResult]:
    results = ctx.pairing.check_rll(ctx.config.degree_bound)
    if not all(r.passed for r in results):
        # diagnostic only: the same relations with the f-sector coupling of R removed
        alt = ctx.pairing.check_rll(ctx.config.degree_bound, decouple_f_sector(ctx.pairing.R))
        tables["rll_decoupled_diagnostic"] = {r.name: r.passed for r in alt}
    return results


def _smash(ctx: Context, tables) -> List[CheckResult]:
    res = ctx.alg.check_smash_consistency()
    return [CheckResult(f"f {g} = (f ▷ {g}) f", ok) for g, ok in res.items()]


def _differentials(ctx: Context, tables) -> List[CheckResult]:
    A = ctx.alg
    calc = ctx.calc
    out = []
    if ctx.config.convention == "search":
        found = convention_search(ctx.params)
        best = found["best_report"]
        tables["convention_search"] = {
            "exact": found["exact"],
            "best": found["best"],
            "surviving": found["surviving"],
            "per_convention": {rep.convention.encode(): {"mismatches": len(rep.mismatches),
                                                          "supports_match": rep.supports_match}
                               for rep in found["reports"]},
            "best_terms": [t.__dict__ for t in best.terms],
        }
        ok = bool(found["exact"]) or (best.supports_match and best.ratios_r_monomial)
        out.append(CheckResult("convention search: exact, or r-monomial ratios", ok, 8,
                               None if ok else f"no exact convention; best {found['best']} has "
                               f"{len(best.mismatches)} mismatched terms"))
        calc = Calculus(Pairing(A, best.convention, ctx.hopf))
    rep = calc.check_paper_differentials()
    tables["differentials"] = {g: str(form) for g, form in calc_mod.generator_differentials(calc).items()}
    tables["differential_terms"] = [t.__dict__ for t in rep.terms]
    tables["omega_commutation"] = calc.omega_commutation_table()
    tables["relation_compatibility"] = {
        "computed": calc_mod.relation_compatibility(calc, calc_mod.generator_differentials(calc)),
        "published": calc_mod.relation_compatibility(calc, calc_mod.published_forms(calc)),
    }
    df = calc.exterior_d(A.f)
    P = ctx.params
    expected = OneForm.basis(calc, 0, 0, A.f.scale(P.one / P.rpow(2) - P.one))
    out.append(CheckResult("df = (r^-2 - 1) f ω^0", df == expected, 1, None if df == expected else str(df)))
    out.append(acceptance_differentials(rep))
    forms = calc_mod.generator_differentials(calc)
    stray = [(g, omega_label(ij)) for g in "abcd" for ij in calc_mod.UNNAMED + [(0, 0)]
             if not forms[g][ij].is_zero()]
    out.append(CheckResult("no ω^0, ω_01, ω_02, ω_10, ω_20 in d(a..d)", not stray, 4,
                           None if not stray else f"d{stray[0][0]} has {stray[0][1]}"))
    out.append(calc.check_generates())
    out.append(calc_mod.check_bimodule(calc, ctx.rng("bimodule"), 100))
    return out


def leibniz_cases(alg: Algebra, rng: random.Random, n_random: int = 100):
    gens = [alg.a, alg.b, alg.c, alg.d, alg.f, alg.finv, alg.delta_inv]
    cases = [(x, y) for x in gens for y in gens]
    cases += calc_mod.random_pairs(alg, rng, n_random, 2)
    return cases


def _leibniz(ctx: Context, tables) -> List[CheckResult]:
    cases = leibniz_cases(ctx.alg, ctx.rng("leibniz"))
    return [run_check("d(xy) = (dx) y + x (dy)", cases, lambda xy: ctx.calc.check_leibniz(*xy),
                      lambda xy: f"x={xy[0]}, y={xy[1]}")]


def _cross(ctx: Context, tables) -> List[CheckResult]:
    return ctx.calc.check_cross_consistency()


def covariance_cases(alg: Algebra, rng: random.Random, n_random: int = 50):
    cases = list(alg.generators().values()) + [alg.delta_inv, alg.one]
    cases += [alg.monomial(random_monomial(rng, 2)) for _ in range(n_random)]
    return cases


def _covariance(ctx: Context, tables) -> List[CheckResult]:
    cases = covariance_cases(ctx.alg, ctx.rng("covariance"))
    return [run_check("(id ⊗ d) Δx = Δ_L(dx)", cases, ctx.calc.check_left_covariance, str)]


def _one_parameter(ctx: Context, tables) -> List[CheckResult]:
    return [calc_mod.check_one_parameter(ctx.calc)]


def _classical(config: SuiteConfig) -> List[CheckResult]:
    # builds its own algebras at r = 1
    s_values = (1, 2, Fraction(3, 5)) if config.mode == "symbolic" else tuple(dict.fromkeys((1, config.s0)))
    conv = DEFAULT if config.convention == "search" else config.convention
    return calc_mod.check_classical_limit(s_values, conv)


CHECKS: Dict[str, Callable[[Context, Dict], List[CheckResult]]] = {
    "hopf": _hopf, "grouplike": _grouplike, "rtt": _rtt, "ybe": _ybe,
    "representation": _representation, "rll": _rll, "smash": _smash,
    "differentials": _differentials, "leibniz": _leibniz, "cross-consistency": _cross,
    "covariance": _covariance, "one-parameter": _one_parameter,
}


def run(config: SuiteConfig) -> SuiteReport:
    config.validate()
    tables: Dict[str, object] = {}
    records = []
    selected = sorted(set(config.checks))
    if not selected:
        return SuiteReport(config, [], tables)
    ctx = None
    for name in selected:
        t0 = time.perf_counter()
        if name == "classical-limit":
            results = _classical(config)
        else:
            ctx = ctx or Context(config)
            results = CHECKS[name](ctx, tables)
        records.append(CheckRecord(name, results, time.perf_counter() - t0))
    return SuiteReport(config, records, tables)


# -- rendering -------------------------------------------------------------------

def render_markdown(report: SuiteReport, timings: bool = False) -> str:
    lines = ["# qcross verification report", "", "## Environment", ""]
    for k, v in report.config.echo().items():
        lines.append(f"- {k}: {v}")
    if not report.records:
        return "\n".join(lines) + "\n"
    lines += ["", f"**Verdict: {'PASS' if report.passed else 'FAIL'}**", "", "## Checks", ""]
    head = "| check | result | n | status |" + (" time (s) |" if timings else "")
    lines += [head, "|---|---|---|---|" + ("---|" if timings else "")]
    for rec in report.records:
        for r in rec.results:
            row = f"| {rec.check} | {r.name} | {r.sample_size} | {'pass' if r.passed else 'FAIL'} |"
            if timings:
                row += f" {rec.timing:.3f} |"
            lines.append(row)
    failures = [(rec.check, r) for rec in report.records for r in rec.results if not r.passed]
    if failures:
        lines += ["", "## Counterexamples", ""]
        for check, r in failures:
            lines.append(f"- {check} / {r.name}: `{r.counterexample}`")
    t = report.tables
    if "rtt_relations" in t:
        lines += ["", "## Relations extracted from RTT", ""]
        lines += [f"- {rel} = 0" for rel in t["rtt_relations"]]
    if "pairing" in t:
        lines += ["", "## Pairing tables", ""]
        for sign, rows in t["pairing"].items():
            for g, mat in rows.items():
                lines.append(f"- ⟨L^{'+' if sign == 'plus' else '-'}, {g}⟩ = " + "; ".join(
                    "[" + ", ".join(row) + "]" for row in mat))
    if "rll_decoupled_diagnostic" in t:
        lines += ["", "## RLL with the f-sector coupling of R removed (diagnostic)", ""]
        lines += [f"- {name}: {'holds' if ok else 'fails'}" for name, ok in t["rll_decoupled_diagnostic"].items()]
    if "convention_search" in t:
        cs = t["convention_search"]
        lines += ["", "## Convention search", "",
                  f"- exact conventions: {', '.join(cs['exact']) or 'none'}",
                  f"- best convention: {cs['best']}",
                  f"- conventions giving representations: {', '.join(cs['surviving'])}"]
        for enc, info in cs["per_convention"].items():
            lines.append(f"- {enc}: {info['mismatches']} mismatched terms, supports match: {info['supports_match']}")
    if "differentials" in t:
        lines += ["", "## Exterior derivatives", ""]
        lines += [f"- d{g} = {form}" for g, form in t["differentials"].items()]
        lines += ["", "| generator | form | published | computed | status | ratio |", "|---|---|---|---|---|---|"]
        for term in t["differential_terms"]:
            lines.append(f"| {term['generator']} | {term['form']} | {term['published']} | {term['computed']} | "
                         f"{term['status']} | {term['ratio'] or ''} |")
    if "relation_compatibility" in t:
        rc = t["relation_compatibility"]
        lines += ["", "## Do the generator differentials respect the relations? (Leibniz extension)", "",
                  "| relation | computed d | published d |", "|---|---|---|"]
        for rel in rc["computed"]:
            lines.append(f"| {rel} | {'yes' if rc['computed'][rel] else 'no'} | "
                         f"{'yes' if rc['published'][rel] else 'no'} |")
    if "omega_commutation" in t:
        lines += ["", "## One-form commutation table", "", "| ω | g | ω g |", "|---|---|---|"]
        for w, row in t["omega_commutation"].items():
            for g, val in row.items():
                lines.append(f"| {w} | {g} | {val} |")
    return "\n".join(lines) + "\n"


def render_json(report: SuiteReport, timings: bool = False) -> str:
    return json.dumps(report.to_dict(timings), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def report_tables(config: SuiteConfig) -> str:
    report = run(config)
    render = render_json if config.output == "json" else render_markdown
    return render(report, config.timings)


# -- argument parsing ------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcross", description="Exact verification suite for A_{r,s}.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run checks and print a report")
    v.add_argument("--all", action="store_true", help="run every check")
    v.add_argument("--check", nargs="+", default=[], metavar="NAME", help=f"one or more of: {', '.join(CHECK_NAMES)}")
    v.add_argument("--mode", default="symbolic", choices=["symbolic", "specialized"])
    v.add_argument("--r", type=_rational, default=None)
    v.add_argument("--s", type=_rational, default=None)
    v.add_argument("--degree", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--convention", default="default", help="default, search, or an encoded convention")
    v.add_argument("--output", default="markdown", choices=["markdown", "json"])
    v.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte stability)")
    v.add_argument("--out", default=None, help="write the report to this file instead of stdout")
    return parser


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    if args.convention == "default":
        conv: object = DEFAULT
    elif args.convention == "search":
        conv = "search"
    else:
        try:
            conv = PairingConvention.decode(args.convention)
        except ValueError as exc:
            raise ConfigError(f"bad --convention: {exc}") from exc
    checks = list(CHECK_NAMES) if args.all else list(args.check)
    return SuiteConfig(mode=args.mode, r0=args.r, s0=args.s, degree_bound=args.degree, seed=args.seed,
                       convention=conv, output=args.output, checks=checks, timings=args.timings)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        config = config_from_args(args)
        config.validate()
        report = run(config)
    except (ConfigError, SpecializationError) as exc:
        print(f"qcross: error: {exc}", file=sys.stderr)
        return 2
    render = render_json if config.output == "json" else render_markdown
    text = render(report, config.timings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
