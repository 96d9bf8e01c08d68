"""Command-line front-end.

Exit codes: 0 on success, 1 on input or usage errors, 2 when a fit does not
converge.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .data import PUBLISHED_TABLES, Series, load_series, published_table_text, reflect_transform
from .dist import EBXII
from .errors import EBXIIError
from .gfun import PARAM_NAMES, as_variant
from .mle import FitResult, TieMap, confidence_intervals, fit, parse_tie_spec
from .select import ModelFitSummary, aic, bic, compare, format_table_csv, read_summaries_csv
from .sim import DEFAULT_SEED, reports_to_csv, reports_to_json, run_study, scenarios_from_config

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2
SEED_ENV = "EBXII_SEED"
REPORT_TAU = 0.05


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for non-convergence here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- fit report ----------------------------------------------------------------

@dataclass(frozen=True)
class FitReport:
    """Serializable summary of a fit.

    ``ci`` holds ``(lower, upper)`` per free parameter at coverage
    ``1 - tau``; it and ``std_errors`` are None when the information matrix
    is singular.
    """

    label: str
    variant: str
    tiemap: str
    free_names: tuple[str, ...]
    estimates: tuple[float, ...]
    std_errors: tuple[float, ...] | None
    params: tuple[tuple[str, float], ...]
    neg_loglik: float
    aic: float
    bic: float
    n: int
    w: int
    converged: bool
    tau: float
    ci: tuple[tuple[float, float], ...] | None
    data: str = ""

    @classmethod
    def from_result(cls, res: FitResult, label: str | None = None, data: str = "", tau: float = REPORT_TAU):
        se = None if res.std_errors is None else tuple(map(float, res.std_errors))
        ci = None
        if se is not None:
            ci = tuple((float(lo), float(hi)) for lo, hi in confidence_intervals(res, tau))
        return cls(
            label=label or res.variant.value,
            variant=res.variant.value,
            tiemap=res.tiemap.describe(),
            free_names=tuple(res.free_names),
            estimates=tuple(map(float, res.free_estimates)),
            std_errors=se,
            params=tuple(res.params().items()),
            neg_loglik=float(res.neg_loglik),
            aic=aic(res.w, res.neg_loglik),
            bic=bic(res.w, res.neg_loglik, res.n),
            n=res.n,
            w=res.w,
            converged=res.converged,
            tau=tau,
            ci=ci,
            data=data,
        )

    def summary(self) -> ModelFitSummary:
        return ModelFitSummary(self.label, self.w, self.neg_loglik, self.n, self.aic, self.bic, "fitted")

    def to_json(self) -> str:
        # json writes floats with repr, which round-trips exactly
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "FitReport":
        obj = json.loads(text)

        def tup(v):
            return tuple(tup(x) for x in v) if isinstance(v, list) else v

        return cls(**{k: tup(v) for k, v in obj.items()})


# -- argument helpers ----------------------------------------------------------

def _assignment(text: str) -> tuple[str, float]:
    name, sep, val = text.partition("=")
    if not sep or not name.strip():
        raise UsageError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), float(val)
    except ValueError:
        raise UsageError(f"bad number in {text!r}") from None


def parse_params(text: str) -> dict[str, float]:
    """``a=3,b=0.8,c=1,d=1.5`` to a dict."""
    return dict(_assignment(part) for part in text.split(",") if part.strip())


def _floats(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _distribution(args) -> EBXII:
    v = as_variant(args.g)
    params = parse_params(args.params)
    names = PARAM_NAMES[v]
    unknown = set(params) - set(names)
    if unknown:
        raise UsageError(f"unknown parameters {sorted(unknown)} for {v.value}; expected {', '.join(names)}")
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"missing parameters {missing} for {v.value}")
    return EBXII.from_params(v, strict=not args.relaxed, **params)


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------------

def cmd_fit(args) -> int:
    v = as_variant(args.g)
    series: Series = load_series(args.data, column=args.column)
    if args.reflect is not None:
        series = reflect_transform(series, args.reflect)
    fixed = dict(_assignment(s) for s in args.fix)
    ties = {}
    for spec in args.tie:
        lhs, other, k = parse_tie_spec(spec)
        ties[lhs] = (other, k)
    tmap = TieMap.build(v, fixed=fixed, ties=ties)
    init = dict(_assignment(s) for s in args.init) or None
    res = fit(v, tmap, series.to_numpy(), init=init, allow_defective=args.allow_defective)
    report = FitReport.from_result(res, label=args.label, data=series.provenance)
    _write(report.to_json() + "\n", args.out)
    if not res.converged:
        print(f"fit did not converge: {res.message}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_quantile(args) -> int:
    dist = _distribution(args)
    vs = _floats(args.v)
    qs = np.atleast_1d(dist.quantile(np.array(vs)))
    lines = ["v,quantile"] + [f"{_fmt(v)},{_fmt(q)}" for v, q in zip(vs, qs)]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_curve(args) -> int:
    dist = _distribution(args)
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    x = np.linspace(args.x_from, args.x_to, args.n)
    y = np.atleast_1d(getattr(dist, args.what)(x))
    lines = ["x,value"] + [f"{_fmt(a)},{_fmt(b)}" for a, b in zip(x, y)]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    dist = _distribution(args)
    seed = args.seed if args.seed is not None else _default_seed()
    x = dist.sample(args.n, seed, allow_defective=args.allow_defective)
    _write("".join(f"{float(v)!r}\n" for v in x), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    text = Path(args.scenario).read_text(encoding="utf-8")
    env_seed = os.environ.get(SEED_ENV)
    default_seed = _default_seed() if env_seed is not None else DEFAULT_SEED
    scenarios = scenarios_from_config(text, default_seed=default_seed)
    if not scenarios:
        raise UsageError(f"{args.scenario}: no scenario sections")
    reports = [run_study(s, workers=args.workers) for s in scenarios]
    if args.json:
        Path(args.json).write_text(reports_to_json(reports) + "\n", encoding="utf-8")
    _write(reports_to_csv(reports), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    rows = [FitReport.from_json(Path(p).read_text(encoding="utf-8")).summary() for p in args.reports]
    if args.published:
        if args.published in PUBLISHED_TABLES and not Path(args.published).exists():
            text = published_table_text(args.published)
        else:
            text = Path(args.published).read_text(encoding="utf-8")
        rows += read_summaries_csv(text)
    if not rows:
        raise UsageError("nothing to compare: give --reports and/or --published")
    _write(format_table_csv(compare(rows, by=args.by), args.by), args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def _add_dist_args(p):
    p.add_argument("--g", required=True, choices=["g0", "g1", "g2", "g3"])
    p.add_argument("--params", required=True, help="comma list such as a=3,b=0.8,c=1,d=1.5")
    p.add_argument("--relaxed", action="store_true", help="skip the d >= 1 and monotonicity guard checks")
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ebxii", description="Extended Burr XII distributions: evaluation, fitting, simulation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", help="maximum likelihood fit; writes a JSON report")
    p.add_argument("--g", required=True, choices=["g0", "g1", "g2", "g3"])
    p.add_argument("--data", required=True, help="text file with one value per line")
    p.add_argument("--column", type=int, help="0-based column for comma-separated data")
    p.add_argument("--fix", action="append", default=[], metavar="NAME=VAL")
    p.add_argument("--tie", action="append", default=[], metavar="NAME=K*NAME")
    p.add_argument("--init", action="append", default=[], metavar="NAME=VAL")
    p.add_argument("--reflect", type=float, metavar="PIVOT", help="fit PIVOT - x instead of x")
    p.add_argument("--label", help="row label used by compare (default: the variant)")
    p.add_argument("--allow-defective", action="store_true", help="fit models that put mass on the lower bound")
    p.add_argument("--out", help="report path (default stdout)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("quantile", help="quantiles at probabilities")
    _add_dist_args(p)
    p.add_argument("--v", required=True, help="comma list of probabilities")
    p.set_defaults(func=cmd_quantile)

    p = sub.add_parser("curve", help="cdf, pdf or hazard on an even grid as CSV")
    _add_dist_args(p)
    p.add_argument("--what", required=True, choices=["cdf", "pdf", "hazard"])
    p.add_argument("--from", dest="x_from", type=float, required=True)
    p.add_argument("--to", dest="x_to", type=float, required=True)
    p.add_argument("--n", type=int, default=200)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("sample", help="inverse-transform draws, one per line")
    _add_dist_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, help=f"default: ${SEED_ENV}, else 0")
    p.add_argument("--allow-defective", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("simulate", help="run recovery studies from a scenario file")
    p.add_argument("--scenario", required=True, help="INI file, one section per scenario")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", help="also write the full report as JSON here")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="rank fit reports and published rows by AIC or BIC")
    p.add_argument("--reports", nargs="*", default=[], help="FitReport JSON files")
    p.add_argument(
        "--published", help=f"CSV of published rows, or a bundled table: {', '.join(sorted(PUBLISHED_TABLES))}"
    )
    p.add_argument("--by", choices=["aic", "bic"], default="aic")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (UsageError, EBXIIError, ValueError, OSError) as exc:
        print(f"ebxii {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
