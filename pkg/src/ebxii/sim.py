"""Seeded Monte Carlo parameter-recovery studies.

Each replication draws a sample with a seed hashed from (master seed, n, r)
and refits it, so cells can run in any order or in parallel and still merge
into the same report.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .dist import EBXII
from .errors import EBXIIError
from .gfun import PARAM_NAMES, Variant, as_variant
from .mle import TieMap, confidence_intervals, fit, parse_tie_spec
from .rng import combine_seeds

DEFAULT_REPLICATIONS = 200
DEFAULT_SEED = 20180611


@dataclass(frozen=True)
class Scenario:
    """One study design: the truth, the fitted model and the grid of sizes.

    Parameters not listed in ``free`` or ``ties`` are held at their true
    values during fitting.
    """

    name: str
    variant: Variant
    params: Mapping[str, float]
    free: tuple[str, ...]
    sizes: tuple[int, ...] = (1000, 10000)
    replications: int = DEFAULT_REPLICATIONS
    seed: int = DEFAULT_SEED
    ties: Mapping[str, tuple[str, float]] = field(default_factory=dict)

    def __post_init__(self):
        v = as_variant(self.variant)
        object.__setattr__(self, "variant", v)
        object.__setattr__(self, "params", {k: float(x) for k, x in self.params.items()})
        object.__setattr__(self, "free", tuple(self.free))
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        if self.replications < 0:
            raise ValueError("replications must be >= 0")
        missing = set(PARAM_NAMES[v]) - set(self.params)
        if missing:
            raise ValueError(f"scenario {self.name!r} lacks true values for {sorted(missing)}")
        # raises if the truth is not a valid member
        dist = self.distribution()
        if dist.is_defective:
            raise ValueError(f"scenario {self.name!r} describes a defective distribution")

    def distribution(self) -> EBXII:
        return EBXII.from_params(self.variant, **{k: self.params[k] for k in PARAM_NAMES[self.variant]})

    def tiemap(self) -> TieMap:
        fixed = {k: v for k, v in self.params.items() if k not in self.free and k not in self.ties}
        return TieMap.build(self.variant, fixed=fixed, ties=dict(self.ties))

    def truth(self) -> np.ndarray:
        tm = self.tiemap()
        return np.array([self.params[n] for n in tm.free_names])


@dataclass(frozen=True)
class CellReport:
    """Aggregates for one sample size; per-parameter arrays follow ``names``."""

    n: int
    names: tuple[str, ...]
    truth: tuple[float, ...]
    successes: int
    failures: int
    mean_estimate: tuple[float, ...]
    empirical_sd: tuple[float, ...]
    mean_se: tuple[float, ...]
    mean_neg_loglik: float
    mean_abs_error: tuple[float, ...]
    coverage: tuple[float, ...]

    def sem(self) -> np.ndarray:
        """Standard error of the mean estimate, empirical SD / sqrt(successes)."""
        return np.asarray(self.empirical_sd) / np.sqrt(max(self.successes, 1))


@dataclass(frozen=True)
class StudyReport:
    scenario: str
    variant: str
    replications: int
    seed: int
    cells: tuple[CellReport, ...]

    def cell(self, n: int) -> CellReport:
        return next(c for c in self.cells if c.n == n)


@dataclass(frozen=True)
class _Replicate:
    ok: bool
    estimate: tuple[float, ...] = ()
    se: tuple[float, ...] = ()
    neg_loglik: float = float("nan")
    covered: tuple[bool, ...] = ()


def replication_seed(master: int, n: int, r: int) -> int:
    return combine_seeds(master, n, r)


def _one(scenario: Scenario, n: int, r: int, tau: float) -> _Replicate:
    dist = scenario.distribution()
    tm = scenario.tiemap()
    truth = scenario.truth()
    x = dist.sample(n, replication_seed(scenario.seed, n, r))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = fit(scenario.variant, tm, x)
    except EBXIIError:
        return _Replicate(False)
    if not res.converged or res.std_errors is None:
        return _Replicate(False)
    ci = confidence_intervals(res, tau)
    covered = tuple(bool(lo <= t <= hi) for t, (lo, hi) in zip(truth, ci))
    return _Replicate(True, tuple(res.free_estimates), tuple(res.std_errors), res.neg_loglik, covered)


def _aggregate(scenario: Scenario, n: int, reps: Sequence[_Replicate]) -> CellReport:
    tm = scenario.tiemap()
    truth = scenario.truth()
    good = [r for r in reps if r.ok]
    k = tm.free_count
    if good:
        est = np.array([r.estimate for r in good])
        se = np.array([r.se for r in good])
        mean = est.mean(axis=0)
        sd = est.std(axis=0, ddof=1) if len(good) > 1 else np.zeros(k)
        mse = se.mean(axis=0)
        nll = float(np.mean([r.neg_loglik for r in good]))
        mae = np.abs(est - truth).mean(axis=0)
        cov = np.array([r.covered for r in good], dtype=float).mean(axis=0)
    else:
        mean = sd = mse = mae = cov = np.full(k, np.nan)
        nll = float("nan")
    return CellReport(
        n=n,
        names=tm.free_names,
        truth=tuple(map(float, truth)),
        successes=len(good),
        failures=len(reps) - len(good),
        mean_estimate=tuple(map(float, mean)),
        empirical_sd=tuple(map(float, sd)),
        mean_se=tuple(map(float, mse)),
        mean_neg_loglik=nll,
        mean_abs_error=tuple(map(float, mae)),
        coverage=tuple(map(float, cov)),
    )


def run_study(scenario: Scenario, workers: int = 1, tau: float = 0.05) -> StudyReport:
    """Run every (n, replication) of a scenario and aggregate per n.

    Fits that raise, fail to converge or lack standard errors count as
    failures and are left out of the means. With ``workers > 1`` the
    replications run in a process pool; results are merged in (n, r) order,
    so the report does not depend on scheduling.
    """
    tasks = [(n, r) for n in scenario.sizes for r in range(scenario.replications)]
    if workers > 1 and tasks:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_one, scenario, n, r, tau) for n, r in tasks]
            results = [f.result() for f in futures]
    else:
        results = [_one(scenario, n, r, tau) for n, r in tasks]
    by_n: dict[int, list[_Replicate]] = {n: [] for n in scenario.sizes}
    for (n, _), rep in zip(tasks, results):
        by_n[n].append(rep)
    cells = tuple(_aggregate(scenario, n, by_n[n]) for n in scenario.sizes) if scenario.replications else ()
    return StudyReport(scenario.name, scenario.variant.value, scenario.replications, scenario.seed, cells)


# -- the reference design ------------------------------------------------------

def recovery_scenarios(replications: int = DEFAULT_REPLICATIONS, seed: int = DEFAULT_SEED) -> list[Scenario]:
    """The 12 recovery designs: g1, g2, g3 with (b, c) in four combinations.

    a = 3, d = 1.5, eps = 1 and p = 1 are held fixed (g3 has no p); b and c
    are estimated from samples of 1000 and 10000.
    """
    out = []
    for v in (Variant.G1, Variant.G2, Variant.G3):
        for b, c in ((0.8, 1.0), (1.2, 1.0), (0.8, 0.5), (1.2, 0.5)):
            params = {"a": 3.0, "b": b, "c": c, "d": 1.5, "eps": 1.0}
            if v is not Variant.G3:
                params["p"] = 1.0
            out.append(Scenario(f"{v.value}_b{b:g}_c{c:g}", v, params, ("b", "c"), (1000, 10000), replications, seed))
    return out


# -- configuration and output --------------------------------------------------

def _split_list(text: str) -> list[str]:
    return [s.strip() for s in text.replace(";", ",").split(",") if s.strip()]


def scenarios_from_config(text: str, default_seed: int = DEFAULT_SEED) -> list[Scenario]:
    """Read scenarios from INI-style text, one section per scenario.

    Keys: ``variant``; the true parameter values (a, b, c, d, eps, p as the
    variant needs); ``free`` (comma list); optional ``ties`` (comma list of
    NAME=K*NAME), ``sizes``, ``replications`` and ``seed`` (falls back to
    ``default_seed``). A ``[DEFAULT]`` section supplies shared values.
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.read_string(text)
    out = []
    for name in cp.sections():
        sec = cp[name]
        if "variant" not in sec:
            raise ValueError(f"scenario {name!r} has no variant")
        v = as_variant(sec["variant"])
        params = {k: sec.getfloat(k) for k in PARAM_NAMES[v] if k in sec}
        ties = {}
        for spec in _split_list(sec.get("ties", "")):
            lhs, other, k = parse_tie_spec(spec)
            ties[lhs] = (other, k)
        out.append(
            Scenario(
                name,
                v,
                params,
                tuple(_split_list(sec.get("free", ""))),
                tuple(int(s) for s in _split_list(sec.get("sizes", "1000, 10000"))),
                sec.getint("replications", DEFAULT_REPLICATIONS),
                sec.getint("seed", default_seed),
                ties,
            )
        )
    return out


def scenarios_to_config(scenarios: Sequence[Scenario]) -> str:
    cp = configparser.ConfigParser(interpolation=None)
    for s in scenarios:
        sec = {"variant": s.variant.value}
        sec.update({k: repr(s.params[k]) for k in PARAM_NAMES[s.variant]})
        sec["free"] = ", ".join(s.free)
        if s.ties:
            sec["ties"] = ", ".join(f"{k}={m!r}*{o}" for k, (o, m) in s.ties.items())
        sec["sizes"] = ", ".join(map(str, s.sizes))
        sec["replications"] = str(s.replications)
        sec["seed"] = str(s.seed)
        cp[s.name] = sec
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


_CSV_FIELDS = [
    "scenario", "variant", "n", "param", "true", "mean_estimate", "empirical_sd",
    "mean_se", "mean_neg_loglik", "mean_abs_error", "coverage", "successes", "failures",
]


def reports_to_csv(reports: Sequence[StudyReport]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(_CSV_FIELDS)
    for rep in reports:
        for c in rep.cells:
            for i, name in enumerate(c.names):
                wr.writerow([
                    rep.scenario, rep.variant, c.n, name,
                    *(f"{v:.6g}" for v in (c.truth[i], c.mean_estimate[i], c.empirical_sd[i], c.mean_se[i],
                                           c.mean_neg_loglik, c.mean_abs_error[i], c.coverage[i])),
                    c.successes, c.failures,
                ])
    return buf.getvalue()


def reports_to_json(reports: Sequence[StudyReport]) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2)


def report_from_dict(obj: Mapping) -> StudyReport:
    cells = tuple(
        CellReport(**{k: tuple(v) if isinstance(v, list) else v for k, v in c.items()}) for c in obj["cells"]
    )
    return StudyReport(obj["scenario"], obj["variant"], obj["replications"], obj["seed"], cells)
