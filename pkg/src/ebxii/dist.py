"""The extended Burr XII distribution F(x) = 1 - (1 + g(x))**(-a)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from .errors import DefectiveDistributionError, DomainError, InvalidProbabilityError
from .gfun import GSpec, Variant, _log_g_at_lb, g_support_lb, g_tail_index, log_g
from .rng import Xoshiro256pp

_MAX_NEWTON = 60
_MAX_DOUBLINGS = 1100  # enough to pass the largest finite double
_MODE_X_MAX = 1e12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ModeResult:
    x_m: float
    at_boundary: bool


def _softplus(u):
    return np.logaddexp(0.0, u)


def _target_log_g(a: float, v: np.ndarray) -> np.ndarray:
    """log g(q) that solves F(q) = v, i.e. log((1 - v)**(-1/a) - 1)."""
    t = -np.log1p(-v) / a
    with np.errstate(divide="ignore"):
        return np.where(t > 1.0, t + np.log(-np.expm1(-t)), np.log(np.expm1(t)))


@dataclass(frozen=True)
class EBXII:
    """A member of the family: outer shape ``a`` and generator ``g``.

    Evaluation methods accept scalars or arrays and return the same shape.
    """

    a: float
    g: GSpec

    def __post_init__(self):
        a = float(self.a)
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"a must be a positive finite number, got {self.a}")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_params(cls, variant, strict: bool = True, **params) -> "EBXII":
        """Build from keyword parameters a, b, c, d[, eps[, p]]."""
        params = dict(params)
        a = params.pop("a")
        return cls(a, GSpec(variant, strict=strict, **params))

    @property
    def variant(self) -> Variant:
        return self.g.variant

    @property
    def lower_bound(self) -> float:
        return g_support_lb(self.g)

    def _u(self, x):
        g = self.g
        return log_g(g.variant, g.b, g.c, g.d, g.eps, g.p, x)

    def _split(self, x):
        xa = np.asarray(x, dtype=float)
        inside = xa > self.lower_bound
        return xa, inside

    # -- distribution functions ------------------------------------------------

    def cdf(self, x):
        xa, inside = self._split(x)
        top = np.isposinf(xa)
        inside &= ~top
        out = np.full(xa.shape, self.lower_mass_deficit())
        if np.any(inside):
            u, _, _ = self._u(xa[inside])
            out[inside] = -np.expm1(-self.a * _softplus(u))
        out[top] = 1.0
        return float(out) if xa.ndim == 0 else out

    def sf(self, x):
        xa, inside = self._split(x)
        top = np.isposinf(xa)
        inside &= ~top
        out = np.full(xa.shape, 1.0 - self.lower_mass_deficit())
        if np.any(inside):
            u, _, _ = self._u(xa[inside])
            out[inside] = np.exp(-self.a * _softplus(u))
        out[top] = 0.0
        return float(out) if xa.ndim == 0 else out

    def logpdf(self, x):
        xa, inside = self._split(x)
        if not np.all(inside):
            raise DomainError(f"pdf is undefined at or below the support lower bound {self.lower_bound}")
        u, ux, _ = self._u(xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = math.log(self.a) + u + np.log(ux) - (self.a + 1.0) * _softplus(u)
        return float(out) if xa.ndim == 0 else out

    def pdf(self, x):
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(self.logpdf(x)) if np.ndim(x) else math.exp(self.logpdf(x))

    def hazard(self, x):
        xa, inside = self._split(x)
        if not np.all(inside):
            raise DomainError(f"hazard is undefined at or below the support lower bound {self.lower_bound}")
        u, ux, _ = self._u(xa)
        out = self.a * ux * expit(u)
        return float(out) if xa.ndim == 0 else out

    # -- summaries -------------------------------------------------------------

    def tail_index(self) -> float:
        return self.a * g_tail_index(self.g)

    def lower_mass_deficit(self) -> float:
        """F(lb+): the probability mass missing at the lower end of the support."""
        u0 = _log_g_at_lb(self.g)
        if u0 == -math.inf:
            return 0.0
        if u0 == math.inf:
            return 1.0
        return float(-math.expm1(-self.a * float(_softplus(u0))))

    @property
    def is_defective(self) -> bool:
        return self.lower_mass_deficit() > 0.0

    def mode(self) -> ModeResult:
        """Maximiser of the density.

        g0 uses the closed form; other variants scan a log grid, refine the
        best cell by golden section and polish the stationarity condition
        with Brent's method.
        """
        g = self.g
        if g.variant is Variant.G0:
            if g.b <= 1:
                return ModeResult(-g.d, True)
            y = (g.b - 1.0) / (self.a * g.b + 1.0)
            return ModeResult(y ** (1.0 / g.b) / g.c - g.d, False)

        lb = self.lower_bound
        grid = lb + np.logspace(-9.0, math.log10(_MODE_X_MAX), 4000)
        with np.errstate(all="ignore"):
            lp = self.logpdf(grid)
            lp = np.where(np.isfinite(lp), lp, -np.inf)
        i = int(np.argmax(lp))
        if i == 0 and self._dlogpdf(grid[0]) <= 0:
            return ModeResult(lb, True)
        lo = grid[max(i - 1, 0)] if i > 0 else lb
        hi = grid[min(i + 1, grid.size - 1)]
        x_m = _golden_max(self.logpdf, lo, hi)
        try:
            f_lo, f_hi = self._dlogpdf(lo), self._dlogpdf(hi)
            if f_lo > 0 > f_hi:
                x_m = brentq(self._dlogpdf, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        except (ValueError, DomainError):
            pass
        return ModeResult(float(x_m), False)

    def _dlogpdf(self, x):
        u, ux, uxx = self._u(np.asarray(x, dtype=float))
        val = ux + uxx / ux - (self.a + 1.0) * ux * expit(u)
        return float(val) if np.ndim(x) == 0 else val

    def mode_identity_residual(self, x_m: float) -> float:
        """Relative residual of (a+1) g'^2 = (1+g) g'' at x_m.

        Both sides are divided by g (1 + g) so the check stays finite.
        """
        u, ux, uxx = self._u(np.asarray(x_m, dtype=float))
        lhs = (self.a + 1.0) * float(expit(u)) * float(ux) ** 2
        rhs = float(ux) ** 2 + float(uxx)
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    # -- quantiles and sampling ------------------------------------------------

    def quantile(self, v):
        """Solve F(q) = v on log g: bracket doubling, safeguarded Newton, then
        bisection.

        The returned value is the upper end of a bracket whose endpoints are
        adjacent floats, which is tighter than any tolerance callers rely on.
        """
        va = np.asarray(v, dtype=float)
        if np.any(~((va > 0) & (va < 1))):
            raise InvalidProbabilityError("probabilities must lie strictly between 0 and 1")
        deficit = self.lower_mass_deficit()
        if np.any(va <= deficit):
            raise DefectiveDistributionError(
                f"probability {va.min()} does not exceed the lower mass deficit {deficit}"
            )
        flat = va.ravel()
        target = _target_log_g(self.a, flat)
        q = self._solve_log_g(target)
        return float(q[0]) if va.ndim == 0 else q.reshape(va.shape)

    def _solve_log_g(self, target: np.ndarray) -> np.ndarray:
        lb = self.lower_bound
        lo = np.full(target.shape, lb)
        step = np.ones(target.shape)
        hi = lb + step
        pending = np.ones(target.shape, dtype=bool)
        for _ in range(_MAX_DOUBLINGS):
            u, _, _ = self._u(hi[pending])
            reached = u >= target[pending]
            idx = np.flatnonzero(pending)
            done = idx[reached]
            pending[done] = False
            if not pending.any():
                break
            grow = idx[~reached]
            lo[grow] = hi[grow]
            with np.errstate(over="ignore"):
                step[grow] *= 2.0
                hi[grow] = lb + step[grow]
            if not np.all(np.isfinite(hi[grow])):
                raise DomainError("quantile exceeds the largest representable float")
        else:
            raise DomainError("quantile bracket expansion did not terminate")

        # safeguarded Newton in t = log(x - lb); every evaluation also
        # shrinks the bracket, so a bad step only costs one iteration
        x = lo + 0.5 * (hi - lo)
        active = np.ones(target.shape, dtype=bool)
        for _ in range(_MAX_NEWTON):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            xi = x[idx]
            u, ux, _ = self._u(xi)
            f = u - target[idx]
            up = f >= 0
            hi[idx[up]] = xi[up]
            lo[idx[~up]] = xi[~up]
            with np.errstate(all="ignore"):
                gap = xi - lb
                z = lb + gap * np.exp(-f / (ux * gap))
            lo_i, hi_i = lo[idx], hi[idx]
            bad = ~((z > lo_i) & (z < hi_i))
            z[bad] = lo_i[bad] + 0.5 * (hi_i[bad] - lo_i[bad])
            x[idx] = z
            still = (np.abs(z - xi) > 4.0 * np.spacing(np.abs(xi))) & (f != 0)
            active[idx[~still]] = False

        # close the bracket around the Newton point, then bisect to adjacent floats
        width = 8.0 * np.spacing(np.abs(x))
        probe = np.concatenate([np.maximum(x - width, lo), np.minimum(x + width, hi)])
        u, _, _ = self._u(probe)
        k = target.size
        up = u >= np.concatenate([target, target])
        for part in (slice(0, k), slice(k, 2 * k)):
            pu, pp = up[part], probe[part]
            hi[pu] = np.minimum(hi[pu], pp[pu])
            lo[~pu] = np.maximum(lo[~pu], pp[~pu])

        active = np.ones(target.shape, dtype=bool)
        for _ in range(1100):
            mid = lo + 0.5 * (hi - lo)
            active &= (mid > lo) & (mid < hi)
            if not active.any():
                break
            m = mid[active]
            u, _, _ = self._u(m)
            up = u >= target[active]
            idx = np.flatnonzero(active)
            hi[idx[up]] = m[up]
            lo[idx[~up]] = m[~up]
        return hi

    def sample(self, n: int, seed: int, allow_defective: bool = False) -> np.ndarray:
        """n inverse-transform draws using xoshiro256++ seeded with ``seed``."""
        if n < 0:
            raise ValueError("n must be >= 0")
        if self.is_defective and not allow_defective:
            raise DefectiveDistributionError(
                f"distribution has lower mass deficit {self.lower_mass_deficit():.6g}; "
                "pass allow_defective=True to sample anyway"
            )
        if n == 0:
            return np.empty(0)
        v = Xoshiro256pp(seed).uniforms(n)
        if self.is_defective:
            # draws inside the deficit land on the lower bound
            deficit = self.lower_mass_deficit()
            out = np.full(n, self.lower_bound)
            above = v > deficit
            if above.any():
                out[above] = self.quantile(v[above])
            return out
        return self.quantile(v)


def _golden_max(f, lo: float, hi: float) -> float:
    """Golden-section search for a maximum of f on [lo, hi]."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while (hi - lo) > 1e-9 * (1.0 + abs(c)):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)
