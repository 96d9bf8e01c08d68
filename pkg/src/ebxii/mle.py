"""Likelihood, analytic derivatives, parameter ties and maximum likelihood fits.

Derivatives are exact. With u = log g and u' its x-derivative, the log density
is ``log a + u + log u' - (a + 1) log(1 + e^u)``; the partials below chain the
closed-form parameter derivatives of u and u' from :func:`ebxii.gfun.log_g_jet`.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.optimize import minimize
from scipy.special import expit
from scipy.stats import norm

from .dist import EBXII
from .errors import (
    ConditionViolatedError,
    DefectiveDistributionError,
    DomainError,
    MissingStandardErrorsError,
    SingularInformationWarning,
    TieMapError,
)
from .gfun import PARAM_NAMES, Variant, as_variant, log_g_jet

SENTINEL = 1e12
PGTOL = 1e-6
FTOL = 1e-10
MAXITER = 500
_MAX_RESTARTS = 20


# ---------------------------------------------------------------------------
# log-likelihood and derivatives


def _check_theta(variant: Variant, theta: np.ndarray):
    names = PARAM_NAMES[variant]
    if theta.shape != (len(names),):
        raise DomainError(f"{variant.value} expects {len(names)} parameters {names}, got {theta.shape}")
    if not np.all(np.isfinite(theta)):
        raise DomainError("parameters must be finite")
    a, b, c = theta[:3]
    if a <= 0 or c <= 0:
        raise DomainError("a and c must be > 0")
    if b < 0 or (b == 0 and variant is not Variant.G2):
        raise DomainError("b must be > 0 (>= 0 for g2)")
    if np.any(theta[4:] < 0):
        raise DomainError("eps and p must be >= 0")


def _check_data(variant: Variant, theta: np.ndarray, x: np.ndarray):
    d = theta[3]
    if variant is Variant.G0:
        if np.any(~(x + d > 0)):
            raise DomainError(f"data must exceed the support lower bound {-d}")
    else:
        if np.any(~(x > 0)) or np.any(~(x + d > 1)):
            raise DomainError("data must satisfy x > 0 and x + d > 1")


def _parts(variant, theta, data, order: int):
    variant = as_variant(variant)
    theta = np.asarray(theta, dtype=float)
    x = np.asarray(data, dtype=float).ravel()
    _check_theta(variant, theta)
    _check_data(variant, theta, x)
    jet = log_g_jet(variant, theta[1:], x, second=order >= 2)
    if np.any(jet.ux < 0) or np.any(np.isnan(jet.ux)):
        raise ConditionViolatedError("g is decreasing at one or more data points")
    return variant, theta, x, jet


def _loglik_from_jet(a: float, jet) -> float:
    with np.errstate(divide="ignore"):
        terms = math.log(a) + jet.u + np.log(jet.ux) - (a + 1.0) * np.logaddexp(0.0, jet.u)
    return float(np.sum(terms))


def _score_from_jet(a: float, n: int, jet) -> np.ndarray:
    C = expit(jet.u)
    grad = np.empty(1 + jet.U1.shape[1])
    grad[0] = n / a - np.sum(np.logaddexp(0.0, jet.u))
    w = 1.0 - (a + 1.0) * C
    grad[1:] = jet.U1.T @ w + jet.X1.T @ (1.0 / jet.ux)
    return grad


def loglik(variant, theta, data) -> float:
    """Sum of log densities; -inf if some point has zero density."""
    _, theta, _, jet = _parts(variant, theta, data, order=0)
    return _loglik_from_jet(theta[0], jet)


def score(variant, theta, data) -> np.ndarray:
    """Gradient of the log-likelihood with respect to the model parameters."""
    _, theta, x, jet = _parts(variant, theta, data, order=1)
    return _score_from_jet(theta[0], x.size, jet)


def hessian(variant, theta, data) -> np.ndarray:
    """Matrix of second partials of the log-likelihood (symmetric)."""
    _, theta, x, jet = _parts(variant, theta, data, order=2)
    a = theta[0]
    n = x.size
    k = jet.U1.shape[1]
    C = expit(jet.u)
    inv_ux = 1.0 / jet.ux
    H = np.empty((k + 1, k + 1))
    H[0, 0] = -n / a**2
    H[0, 1:] = H[1:, 0] = -(C @ jet.U1)
    w = 1.0 - (a + 1.0) * C
    Hg = np.einsum("n,nij->ij", w, jet.U2) + np.einsum("n,nij->ij", inv_ux, jet.X2)
    Xs = jet.X1 * inv_ux[:, None]
    Hg -= Xs.T @ Xs
    Us = jet.U1 * np.sqrt((a + 1.0) * C * (1.0 - C))[:, None]
    Hg -= Us.T @ Us
    H[1:, 1:] = 0.5 * (Hg + Hg.T)
    return H


# ---------------------------------------------------------------------------
# parameter ties


@dataclass(frozen=True)
class Fixed:
    value: float


@dataclass(frozen=True)
class Linked:
    index: int
    multiplier: float = 1.0


Entry = Union[Fixed, Linked]


@dataclass(frozen=True)
class TieMap:
    """Linear map from free coordinates to the model parameter vector.

    Each model parameter is either ``Fixed(value)`` or
    ``Linked(index, multiplier)``, meaning ``theta_j = multiplier * phi[index]``.
    """

    variant: Variant
    entries: tuple[Entry, ...]
    free_names: tuple[str, ...] = ()

    def __post_init__(self):
        v = as_variant(self.variant)
        object.__setattr__(self, "variant", v)
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        names = PARAM_NAMES[v]
        if len(entries) != len(names):
            raise TieMapError(f"{v.value} has {len(names)} parameters, tie map gives {len(entries)}")
        used = set()
        for name, e in zip(names, entries):
            if isinstance(e, Linked):
                if e.index < 0:
                    raise TieMapError(f"negative free index for {name}")
                if e.multiplier == 0 or not math.isfinite(e.multiplier):
                    raise TieMapError(f"multiplier for {name} must be finite and nonzero")
                used.add(e.index)
            elif not isinstance(e, Fixed):
                raise TieMapError(f"bad tie entry for {name}: {e!r}")
        k = max(used) + 1 if used else 0
        if used != set(range(k)):
            missing = sorted(set(range(k)) - used)
            raise TieMapError(f"free indices {missing} are not referenced by any parameter")
        if not self.free_names:
            labels = []
            for i in range(k):
                labels.append(next(n for n, e in zip(names, entries) if isinstance(e, Linked) and e.index == i))
            object.__setattr__(self, "free_names", tuple(labels))
        elif len(self.free_names) != k:
            raise TieMapError("free_names length does not match the number of free coordinates")

    @property
    def free_count(self) -> int:
        return len(self.free_names)

    @property
    def names(self) -> tuple[str, ...]:
        return PARAM_NAMES[self.variant]

    @property
    def matrix(self) -> np.ndarray:
        R = np.zeros((len(self.entries), self.free_count))
        for j, e in enumerate(self.entries):
            if isinstance(e, Linked):
                R[j, e.index] = e.multiplier
        return R

    @property
    def offset(self) -> np.ndarray:
        return np.array([e.value if isinstance(e, Fixed) else 0.0 for e in self.entries])

    def expand(self, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        if phi.shape != (self.free_count,):
            raise TieMapError(f"expected {self.free_count} free values, got shape {phi.shape}")
        return self.matrix @ phi + self.offset

    def reduce_grad(self, grad) -> np.ndarray:
        return self.matrix.T @ np.asarray(grad, dtype=float)

    def reduce_hess(self, hess) -> np.ndarray:
        R = self.matrix
        return R.T @ np.asarray(hess, dtype=float) @ R

    @classmethod
    def identity(cls, variant) -> "TieMap":
        v = as_variant(variant)
        return cls(v, tuple(Linked(i) for i in range(len(PARAM_NAMES[v]))))

    @classmethod
    def build(
        cls,
        variant,
        fixed: Mapping[str, float] | None = None,
        ties: Mapping[str, tuple[str, float]] | None = None,
    ) -> "TieMap":
        """Build from named fixes and ties.

        ``ties`` maps a parameter to ``(other, k)`` meaning ``name = k * other``.
        Chains resolve to their root, so ``{"d": ("b", 0.5), "eps": ("b", 1)}``
        leaves ``b`` free with ``d`` and ``eps`` following it.
        """
        v = as_variant(variant)
        names = PARAM_NAMES[v]
        fixed = dict(fixed or {})
        ties = dict(ties or {})
        for n in list(fixed) + list(ties) + [t[0] for t in ties.values()]:
            if n not in names:
                raise TieMapError(f"unknown parameter {n!r} for {v.value}; expected one of {names}")
        for n in ties:
            if n in fixed:
                raise TieMapError(f"{n} is both fixed and tied")

        def resolve(name, seen=()):
            if name in seen:
                raise TieMapError(f"circular tie involving {name}")
            if name in ties:
                other, k = ties[name]
                root, mult = resolve(other, seen + (name,))
                return root, k * mult
            return name, 1.0

        roots: list[str] = []
        entries: list[Entry] = []
        for n in names:
            if n in fixed:
                entries.append(Fixed(float(fixed[n])))
                continue
            root, mult = resolve(n)
            if root in fixed:
                entries.append(Fixed(mult * float(fixed[root])))
                continue
            if root not in roots:
                roots.append(root)
            entries.append(Linked(roots.index(root), mult))
        # renumber free coordinates in model order of their roots
        order = sorted(range(len(roots)), key=lambda i: names.index(roots[i]))
        remap = {old: new for new, old in enumerate(order)}
        entries = [Linked(remap[e.index], e.multiplier) if isinstance(e, Linked) else e for e in entries]
        return cls(v, tuple(entries), tuple(roots[i] for i in order))

    def describe(self) -> str:
        parts = []
        for n, e in zip(self.names, self.entries):
            if isinstance(e, Fixed):
                parts.append(f"{n}={e.value:g} (fixed)")
            else:
                root = self.free_names[e.index]
                parts.append(n if n == root and e.multiplier == 1 else f"{n}={e.multiplier:g}*{root}")
        return ", ".join(parts)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_tie_spec(spec: str) -> tuple[str, str, float]:
    """Parse ``NAME=K*NAME``, ``NAME=NAME*K`` or ``NAME=NAME``.

    Returns ``(name, other, k)`` meaning ``name = k * other``.

    >>> parse_tie_spec("d=0.5*b")
    ('d', 'b', 0.5)
    """
    try:
        lhs, rhs = (s.strip() for s in spec.split("="))
    except ValueError:
        raise TieMapError(f"bad tie spec {spec!r}; expected NAME=K*NAME") from None
    parts = [s.strip() for s in rhs.split("*")]
    names = [s for s in parts if _NAME_RE.fullmatch(s)]
    nums = [s for s in parts if not _NAME_RE.fullmatch(s)]
    if not _NAME_RE.fullmatch(lhs) or len(names) != 1 or len(nums) > 1 or len(parts) > 2:
        raise TieMapError(f"bad tie spec {spec!r}; expected NAME=K*NAME")
    k = 1.0
    if nums:
        try:
            k = float(nums[0])
        except ValueError:
            raise TieMapError(f"bad multiplier {nums[0]!r} in tie spec {spec!r}") from None
    if lhs == names[0]:
        raise TieMapError(f"tie spec {spec!r} ties a parameter to itself")
    return lhs, names[0], k


def tie_expand(tmap: TieMap, phi) -> np.ndarray:
    return tmap.expand(phi)


def tie_reduce_grad(tmap: TieMap, model_grad) -> np.ndarray:
    return tmap.reduce_grad(model_grad)


def tie_reduce_hess(tmap: TieMap, model_hess) -> np.ndarray:
    return tmap.reduce_hess(model_hess)


# ---------------------------------------------------------------------------
# fitting

_DEFAULT_BOUNDS = {"a": (1e-6, 1e6), "b": (1e-6, 1e6), "c": (1e-6, 1e6), "eps": (0.0, 1e3), "p": (0.0, 1e3)}


def default_model_bounds(variant, data) -> dict[str, tuple[float, float]]:
    v = as_variant(variant)
    x = np.asarray(data, dtype=float)
    bounds = {n: _DEFAULT_BOUNDS[n] for n in PARAM_NAMES[v] if n != "d"}
    bounds["d"] = (-float(x.min()) + 1e-9, 1e6) if v is Variant.G0 else (1.0, 1e6)
    return bounds


def default_model_init(variant, data, d: float | None = None) -> dict[str, float]:
    v = as_variant(variant)
    x = np.asarray(data, dtype=float)
    if d is None:
        d = default_model_bounds(v, x)["d"][0]
    lb = -d if v is Variant.G0 else 0.0
    init = {"a": 1.0, "b": 1.0, "c": 1.0 / float(np.median(x - lb)), "d": d, "eps": 1.0, "p": 1.0}
    return {n: init[n] for n in PARAM_NAMES[v]}


def free_bounds(tmap: TieMap, model_bounds: Mapping[str, tuple[float, float]]) -> list[tuple[float, float]]:
    """Intersect model-parameter boxes pulled back through the tie map."""
    out = [[-math.inf, math.inf] for _ in range(tmap.free_count)]
    for n, e in zip(tmap.names, tmap.entries):
        if not isinstance(e, Linked):
            continue
        lo, hi = model_bounds[n]
        lo, hi = lo / e.multiplier, hi / e.multiplier
        if e.multiplier < 0:
            lo, hi = hi, lo
        box = out[e.index]
        box[0] = max(box[0], lo)
        box[1] = min(box[1], hi)
    for name, (lo, hi) in zip(tmap.free_names, out):
        if lo > hi:
            raise TieMapError(f"empty bounds for free parameter {name}")
    return [tuple(b) for b in out]


@dataclass
class FitResult:
    variant: Variant
    tiemap: TieMap
    theta_hat: np.ndarray
    free_estimates: np.ndarray
    std_errors: np.ndarray | None
    neg_loglik: float
    observed_info: np.ndarray
    covariance: np.ndarray | None
    converged: bool
    iterations: int
    n: int
    projected_grad_norm: float
    message: str = ""
    bounds: list = field(default_factory=list, repr=False)

    @property
    def free_names(self) -> tuple[str, ...]:
        return self.tiemap.free_names

    @property
    def w(self) -> int:
        return self.tiemap.free_count

    def params(self) -> dict[str, float]:
        return dict(zip(PARAM_NAMES[self.variant], map(float, self.theta_hat)))

    def ci(self, tau: float = 0.05) -> np.ndarray:
        return confidence_intervals(self, tau)


def _projected_grad(grad: np.ndarray, phi: np.ndarray, bounds) -> np.ndarray:
    """Gradient of the minimisation objective with outward components at active bounds removed."""
    pg = grad.copy()
    for i, (lo, hi) in enumerate(bounds):
        if phi[i] <= lo and pg[i] > 0:
            pg[i] = 0.0
        elif phi[i] >= hi and pg[i] < 0:
            pg[i] = 0.0
    return pg


class _Objective:
    """-l over the free coordinates, with a finite sentinel outside the domain."""

    def __init__(self, variant: Variant, tmap: TieMap, x: np.ndarray):
        self.variant = variant
        self.tmap = tmap
        self.x = x
        self.R = tmap.matrix
        self.off = tmap.offset
        self.nfev = 0
        self._last_ok = None

    def _reject(self, phi):
        # slope of a ramp from the last feasible point, so line searches back off
        if self._last_ok is None:
            return SENTINEL, np.zeros_like(phi)
        delta = phi - self._last_ok
        dd = float(delta @ delta)
        if dd == 0.0:
            return SENTINEL, np.zeros_like(phi)
        return SENTINEL, delta * (SENTINEL / dd)

    def __call__(self, phi):
        self.nfev += 1
        phi = np.asarray(phi, dtype=float)
        theta = self.R @ phi + self.off
        try:
            _, theta, x, jet = _parts(self.variant, theta, self.x, order=1)
        except DomainError:
            return self._reject(phi)
        val = -_loglik_from_jet(theta[0], jet)
        if not math.isfinite(val):
            return self._reject(phi)
        grad = -(self.R.T @ _score_from_jet(theta[0], x.size, jet))
        if not np.all(np.isfinite(grad)):
            return self._reject(phi)
        self._last_ok = phi.copy()
        return val, grad


def _descent_step(obj: _Objective, phi, f, g, bounds, max_rel: float = 0.5):
    """Projected steepest descent with Armijo backtracking and a relative step cap."""
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    d = -_projected_grad(g, phi, bounds)
    scale = np.maximum(np.abs(phi), 1e-3)
    biggest = np.max(np.abs(d) / scale, initial=0.0)
    if biggest == 0.0:
        return phi, f, g
    t = max_rel / biggest
    for _ in range(60):
        cand = np.clip(phi + t * d, lo, hi)
        fc, gc = obj(cand)
        if fc <= f + 1e-4 * float(g @ (cand - phi)):
            return cand, fc, gc
        t *= 0.5
    return phi, f, g


def _newton_polish(obj: _Objective, phi, bounds, max_steps: int = 10):
    """Projected Newton steps on the free coordinates away from active bounds.

    Near the optimum -l changes only at round-off level, so a step is kept
    when it does not raise -l beyond that level and shrinks the gradient.
    """
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    f, g = obj(phi)
    pg_norm = np.max(np.abs(_projected_grad(g, phi, bounds)), initial=0.0)
    for _ in range(max_steps):
        if pg_norm < 0.1 * PGTOL:
            break
        free = (phi > lo) & (phi < hi)
        if not free.any():
            break
        theta = obj.R @ phi + obj.off
        try:
            H = -obj.tmap.reduce_hess(hessian(obj.variant, theta, obj.x))
            step = np.linalg.solve(H[np.ix_(free, free)], -g[free])
        except (DomainError, np.linalg.LinAlgError):
            break
        if not np.all(np.isfinite(step)):
            break
        t = 1.0
        accepted = False
        for _ in range(12):
            cand = phi.copy()
            cand[free] = phi[free] + t * step
            cand = np.clip(cand, lo, hi)
            fc, gc = obj(cand)
            pc = np.max(np.abs(_projected_grad(gc, cand, bounds)), initial=0.0)
            if fc < f or (fc <= f + 1e-14 * max(abs(f), 1.0) and pc < pg_norm):
                phi, f, g, pg_norm = cand, fc, gc, pc
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
    return phi, f, g


def _deficit(v: Variant, theta: np.ndarray) -> float:
    params = dict(zip(PARAM_NAMES[v], map(float, theta)))
    try:
        return EBXII.from_params(v, strict=False, **params).lower_mass_deficit()
    except DomainError:
        return 0.0


def fit(
    variant,
    tmap: TieMap | None,
    data,
    init: Sequence[float] | Mapping[str, float] | None = None,
    bounds: Sequence[tuple[float, float]] | None = None,
    maxiter: int = MAXITER,
    allow_defective: bool = False,
) -> FitResult:
    """Maximum likelihood fit by L-BFGS-B on -l in the free coordinates.

    ``init`` is either a free vector or a mapping of model parameter names
    (defaults fill the rest). Non-convergence is reported through
    ``converged`` rather than raised.

    Raises
    ------
    DefectiveDistributionError
        When the starting point puts positive mass at the lower end of the
        support (e.g. d fixed at 1 with eps = 1) and ``allow_defective`` is
        False. The likelihood then only covers the continuous part.
    """
    v = as_variant(variant)
    tmap = tmap or TieMap.identity(v)
    if tmap.variant is not v:
        raise TieMapError("tie map variant does not match")
    x = np.asarray(data, dtype=float).ravel()
    if x.size == 0:
        raise DomainError("cannot fit an empty sample")

    if bounds is None:
        bounds = free_bounds(tmap, default_model_bounds(v, x))
    bounds = [tuple(map(float, b)) for b in bounds]

    if init is None or isinstance(init, Mapping):
        d_fixed = next((e.value for n, e in zip(tmap.names, tmap.entries) if n == "d" and isinstance(e, Fixed)), None)
        model_init = default_model_init(v, x, d=d_fixed)
        if init is not None:
            model_init.update({k: float(val) for k, val in init.items()})
        phi0 = np.empty(tmap.free_count)
        seen = set()
        for n, e in zip(tmap.names, tmap.entries):
            if isinstance(e, Linked) and e.index not in seen:
                if n == tmap.free_names[e.index] or (init is not None and n in init):
                    phi0[e.index] = model_init[n] / e.multiplier
                    seen.add(e.index)
        for n, e in zip(tmap.names, tmap.entries):
            if isinstance(e, Linked) and e.index not in seen:
                phi0[e.index] = model_init[n] / e.multiplier
                seen.add(e.index)
    else:
        phi0 = np.asarray(init, dtype=float).copy()
    phi0 = np.clip(phi0, [b[0] for b in bounds], [b[1] for b in bounds])
    if not allow_defective:
        deficit = _deficit(v, tmap.expand(phi0))
        if deficit > 0:
            raise DefectiveDistributionError(
                f"starting point has lower mass deficit {deficit:.3g}; pass allow_defective=True to fit anyway"
            )

    obj = _Objective(v, tmap, x)
    f0, _ = obj(phi0)
    phi, f = phi0, f0
    iterations = 0
    message = ""
    ftol_stop = False
    # A sentinel hit can stall the line search while the memory is stale;
    # restarting from the stalled point resets it.
    for _ in range(_MAX_RESTARTS):
        res = minimize(
            obj,
            phi,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"maxiter": max(maxiter - iterations, 1), "gtol": PGTOL, "ftol": FTOL, "maxcor": 10},
        )
        iterations += int(res.nit)
        message = str(res.message)
        cand = np.asarray(res.x, dtype=float)
        fc, gc = obj(cand)
        if fc >= f:
            # no progress: the first quasi-Newton step overshot; take a short
            # projected descent step and let the next restart continue from it
            cand, fc, gc = _descent_step(obj, phi, f, obj(phi)[1], bounds)
            if fc >= f:
                break
        improvement = (f - fc) / max(abs(f), abs(fc), 1.0)
        phi, f, g = cand, fc, gc
        pg = _projected_grad(g, phi, bounds)
        if np.max(np.abs(pg), initial=0.0) < PGTOL or iterations >= maxiter:
            break
        if improvement <= FTOL:
            ftol_stop = True
            break
    f, g = obj(phi)
    if f < SENTINEL:
        phi, f, g = _newton_polish(obj, phi, bounds)
    pg = _projected_grad(g, phi, bounds)
    pg_norm = float(np.max(np.abs(pg))) if pg.size else 0.0
    # the relative-change rule only counts once a fresh restart also stalls
    # and the gradient is small on the objective's own scale
    scale = max(1.0, abs(f))
    converged = f < SENTINEL and (pg_norm < PGTOL or (ftol_stop and pg_norm < 1e-4 * scale))

    theta = tmap.expand(phi)
    k = tmap.free_count
    info = np.full((k, k), np.nan)
    cov = None
    se = None
    if f < SENTINEL:
        try:
            info = -tmap.reduce_hess(hessian(v, theta, x))
        except DomainError:
            pass
    if np.all(np.isfinite(info)):
        try:
            cf = cho_factor(info)
            cov = cho_solve(cf, np.eye(k))
            se = np.sqrt(np.diag(cov))
        except LinAlgError:
            warnings.warn(
                "observed information is not positive definite; standard errors unavailable",
                SingularInformationWarning,
                stacklevel=2,
            )
            cov = np.linalg.pinv(info)
    return FitResult(
        variant=v,
        tiemap=tmap,
        theta_hat=theta,
        free_estimates=phi,
        std_errors=se,
        neg_loglik=float(f),
        observed_info=info,
        covariance=cov,
        converged=bool(converged),
        iterations=iterations,
        n=int(x.size),
        projected_grad_norm=pg_norm,
        message=message,
        bounds=bounds,
    )


def confidence_intervals(result: FitResult, tau: float = 0.05) -> np.ndarray:
    """Wald intervals estimate +/- z * SE at coverage 1 - tau; shape (w, 2)."""
    if result.std_errors is None:
        raise MissingStandardErrorsError("fit has no standard errors (singular information)")
    if not 0 < tau <= 1:
        raise ValueError("tau must lie in (0, 1]")
    z = float(norm.ppf(1.0 - tau / 2.0))
    est = np.asarray(result.free_estimates, dtype=float)
    half = z * np.asarray(result.std_errors, dtype=float)
    return np.column_stack([est - half, est + half])
