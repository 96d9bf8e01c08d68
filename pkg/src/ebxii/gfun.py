"""The four generator functions g0..g3 and their derivatives.

Every variant is handled through its logarithm, which has the common shape

    log g(x) = b * (log c + eps * log x + chi(x + d)) + w(x)

with ``w(x) = x**p`` for g2 and zero otherwise, and ``chi`` one of

    g0: log s
    g1: p log s - log log s
    g2: -log log s
    g3: log log (s + 1) - log log s

(g0 has no ``eps * log x`` term). Working on log g keeps evaluation finite far
into the tail, and the same pieces feed the likelihood derivatives in
:mod:`ebxii.mle`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import ConditionViolatedError, DomainError


class Variant(str, Enum):
    G0 = "g0"
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"


#: Model parameter names, in the order used by every parameter vector.
PARAM_NAMES: dict[Variant, tuple[str, ...]] = {
    Variant.G0: ("a", "b", "c", "d"),
    Variant.G1: ("a", "b", "c", "d", "eps", "p"),
    Variant.G2: ("a", "b", "c", "d", "eps", "p"),
    Variant.G3: ("a", "b", "c", "d", "eps"),
}

# guard scan grid for g1..g3 (support is x > 0)
_GUARD_GRID = np.logspace(-9.0, 9.0, 256)


def as_variant(v) -> Variant:
    if isinstance(v, Variant):
        return v
    try:
        return Variant(str(v).lower())
    except ValueError:
        raise DomainError(f"unknown g variant {v!r}; expected one of g0, g1, g2, g3") from None


@dataclass(frozen=True)
class GSpec:
    """A g variant together with its parameters.

    ``eps`` is ignored for g0 and ``p`` for g0 and g3 (both stored as 0).

    With ``strict=True`` (the default) construction requires ``d >= 1`` for
    g1..g3 and scans a log grid over (1e-9, 1e9) for points where g would
    decrease. ``strict=False`` keeps only the pointwise checks; it exists for
    experts exploring parameter corners and for the optimizer.
    """

    variant: Variant
    b: float
    c: float
    d: float
    eps: float = 0.0
    p: float = 0.0
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        v = as_variant(self.variant)
        object.__setattr__(self, "variant", v)
        for name in ("b", "c", "d", "eps", "p"):
            val = getattr(self, name)
            val = 0.0 if val is None else float(val)
            if not math.isfinite(val):
                raise DomainError(f"{name} must be finite, got {val}")
            object.__setattr__(self, name, val)
        if v is Variant.G0:
            object.__setattr__(self, "eps", 0.0)
            object.__setattr__(self, "p", 0.0)
        elif v is Variant.G3:
            object.__setattr__(self, "p", 0.0)

        if self.c <= 0:
            raise DomainError(f"c must be > 0, got {self.c}")
        if v is Variant.G2:
            if self.b < 0:
                raise DomainError(f"b must be >= 0 for g2, got {self.b}")
        elif self.b <= 0:
            raise DomainError(f"b must be > 0, got {self.b}")
        if self.eps < 0 or self.p < 0:
            raise DomainError("eps and p must be >= 0")
        if v is Variant.G2 and self.p == 0 and self.b * self.eps == 0:
            raise DomainError("g2 with p = 0 and b*eps = 0 does not diverge")

        if self.strict and v is not Variant.G0:
            if self.d < 1:
                raise DomainError(f"d must be >= 1 for {v.value} so that x + d > 1 on x > 0")
            ok = _condition(v, self.b, self.c, self.d, self.eps, self.p, _GUARD_GRID)
            if not np.all(ok):
                bad = _GUARD_GRID[~ok][0]
                raise ConditionViolatedError(
                    f"{v.value} is not monotone for these parameters (first failure at x={bad:.3g}); "
                    "pass strict=False to override"
                )

    @property
    def lower_bound(self) -> float:
        return g_support_lb(self)

    @property
    def flagged_defective(self) -> bool:
        """True when g(lb+) > 0, i.e. F has a jump at the lower end."""
        return math.isfinite(_log_g_at_lb(self))

    def params(self) -> tuple[float, ...]:
        """g parameters in model order (b, c, d[, eps[, p]])."""
        return (self.b, self.c, self.d, self.eps, self.p)[: len(PARAM_NAMES[self.variant]) - 1]


# ---------------------------------------------------------------------------
# scalar helpers on s = x + d


def _log_s(d, x):
    # log(x + d); log1p keeps precision when x + d is close to 1, plain log
    # keeps it when x + d is small (where d - 1 + x would cancel)
    s = x + d
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(np.abs(s - 1.0) < 0.5, np.log1p((d - 1.0) + x), np.log(s))


def _chi(variant: Variant, s, L, L1, p):
    """chi and its first three derivatives in s."""
    if variant is Variant.G0:
        return L, 1.0 / s, -1.0 / s**2, 2.0 / s**3
    psi = np.log(L)
    psi1 = 1.0 / (s * L)
    psi2 = -(L + 1.0) / (s * L) ** 2
    psi3 = (2.0 * L**2 + 3.0 * L + 2.0) / (s * L) ** 3
    if variant is Variant.G1:
        return (p * L - psi, p / s - psi1, -p / s**2 - psi2, 2.0 * p / s**3 - psi3)
    if variant is Variant.G2:
        return -psi, -psi1, -psi2, -psi3
    t = s + 1.0
    phi = np.log(L1)
    phi1 = 1.0 / (t * L1)
    phi2 = -(L1 + 1.0) / (t * L1) ** 2
    phi3 = (2.0 * L1**2 + 3.0 * L1 + 2.0) / (t * L1) ** 3
    return phi - psi, phi1 - psi1, phi2 - psi2, phi3 - psi3


def _pow(x, p):
    # x**p with 0**0 == 1 and no warnings for x == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.power(x, p)


def log_g(variant: Variant, b, c, d, eps, p, x):
    """Return (log g, d/dx log g, d2/dx2 log g) elementwise. No domain checks."""
    x = np.asarray(x, dtype=float)
    s = x + d
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        L = _log_s(d, x)
        L1 = np.log1p(s) if variant is Variant.G3 else None
        chi, chi1, chi2, _ = _chi(variant, s, L, L1, p)
        if variant is Variant.G0:
            u = b * (math.log(c) + chi)
            ux = b * chi1
            uxx = b * chi2
        else:
            lx = np.log(x)
            u = b * (math.log(c) + eps * lx + chi)
            ux = b * (eps / x + chi1)
            uxx = b * (-eps / x**2 + chi2)
            if variant is Variant.G2:
                xp = _pow(x, p)
                u = u + xp
                ux = ux + p * _pow(x, p - 1.0) if p != 0 else ux
                uxx = uxx + p * (p - 1.0) * _pow(x, p - 2.0) if p not in (0.0, 1.0) else uxx
    return u, ux, uxx


class LogGJet(NamedTuple):
    """log g and its parameter derivatives at each data point.

    Parameter axes follow ``PARAM_NAMES[variant][1:]``. ``U1``/``U2`` are the
    first/second parameter derivatives of log g, ``X1``/``X2`` the same for
    the x-derivative ``ux``.
    """

    u: np.ndarray
    ux: np.ndarray
    U1: np.ndarray
    X1: np.ndarray
    U2: np.ndarray | None
    X2: np.ndarray | None


def log_g_jet(variant: Variant, gparams, x, second: bool = True) -> LogGJet:
    """Closed-form parameter derivatives of log g and of its x-derivative."""
    variant = as_variant(variant)
    x = np.asarray(x, dtype=float)
    k = len(PARAM_NAMES[variant]) - 1
    b, c, d = float(gparams[0]), float(gparams[1]), float(gparams[2])
    eps = float(gparams[3]) if k > 3 else 0.0
    p = float(gparams[4]) if k > 4 else 0.0
    n = x.shape[0]
    s = x + d
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        L = _log_s(d, x)
        L1 = np.log1p(s) if variant is Variant.G3 else None
        chi, chi1, chi2, chi3 = _chi(variant, s, L, L1, p)
        if variant is Variant.G0:
            v = math.log(c) + chi
            vx = chi1
        else:
            lx = np.log(x)
            v = math.log(c) + eps * lx + chi
            vx = eps / x + chi1
        u = b * v
        ux = b * vx

        U1 = np.zeros((n, k))
        X1 = np.zeros((n, k))
        U1[:, 0] = v
        X1[:, 0] = vx
        U1[:, 1] = b / c
        U1[:, 2] = b * chi1
        X1[:, 2] = b * chi2
        if k > 3:
            U1[:, 3] = b * lx
            X1[:, 3] = b / x
        if variant is Variant.G1:
            U1[:, 4] = b * L
            X1[:, 4] = b / s
        elif variant is Variant.G2:
            xp = _pow(x, p)
            xpm1 = _pow(x, p - 1.0)
            u = u + xp
            if p != 0:
                ux = ux + p * xpm1
            U1[:, 4] = xp * lx
            X1[:, 4] = xpm1 * (1.0 + p * lx)

        U2 = X2 = None
        if second:
            U2 = np.zeros((n, k, k))
            X2 = np.zeros((n, k, k))

            def put(arr, i, j, val):
                arr[:, i, j] = val
                arr[:, j, i] = val

            put(U2, 0, 1, 1.0 / c)
            put(U2, 0, 2, chi1)
            put(X2, 0, 2, chi2)
            U2[:, 1, 1] = -b / c**2
            U2[:, 2, 2] = b * chi2
            X2[:, 2, 2] = b * chi3
            if k > 3:
                put(U2, 0, 3, lx)
                put(X2, 0, 3, 1.0 / x)
            if variant is Variant.G1:
                put(U2, 0, 4, L)
                put(X2, 0, 4, 1.0 / s)
                put(U2, 2, 4, b / s)
                put(X2, 2, 4, -b / s**2)
            elif variant is Variant.G2:
                U2[:, 4, 4] = xp * lx**2
                X2[:, 4, 4] = xpm1 * lx * (2.0 + p * lx)
    return LogGJet(u, ux, U1, X1, U2, X2)


def _condition(variant: Variant, b, c, d, eps, p, x):
    """Vectorised monotonicity inequality (True where g' >= 0)."""
    x = np.asarray(x, dtype=float)
    if variant is Variant.G0:
        return np.ones(x.shape, dtype=bool)
    s = x + d
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        L = _log_s(d, x)
        if variant is Variant.G1:
            return L * (p * x + eps * s) >= x
        if variant is Variant.G2:
            return s * L * (b * eps + p * _pow(x, p)) >= b * x
        t = s + 1.0
        L1 = np.log1p(s)
        # equivalent to d/dx log g3 >= 0 after clearing the positive denominators
        return s * L * (eps * t * L1 + x) >= x * t * L1


# ---------------------------------------------------------------------------
# public operations


def g_support_lb(spec: GSpec) -> float:
    """Infimum of the support: -d for g0, 0 otherwise."""
    return -spec.d if spec.variant is Variant.G0 else 0.0


def _check_domain(spec: GSpec, x: np.ndarray):
    lb = g_support_lb(spec)
    if np.any(~(x > lb)):
        bad = x[~(x > lb)].flat[0]
        raise DomainError(f"x={bad} is not above the support lower bound {lb}")
    if spec.variant is not Variant.G0 and np.any(~(x + spec.d > 1)):
        bad = x[~(x + spec.d > 1)].flat[0]
        raise DomainError(f"x + d must exceed 1 for {spec.variant.value}; got x={bad}, d={spec.d}")


def _out(x_in, val):
    return float(val) if np.ndim(x_in) == 0 else val


def _eval_checked(spec: GSpec, x, need_condition: bool):
    xa = np.asarray(x, dtype=float)
    _check_domain(spec, xa)
    if need_condition:
        ok = _condition(spec.variant, spec.b, spec.c, spec.d, spec.eps, spec.p, xa)
        if not np.all(ok):
            bad = xa[~ok].flat[0]
            raise ConditionViolatedError(f"g is decreasing at x={bad} for {spec}")
    return xa, log_g(spec.variant, spec.b, spec.c, spec.d, spec.eps, spec.p, xa)


def g_eval(spec: GSpec, x):
    """g(x). Overflows to inf for g2 with p > 0 far in the tail."""
    _, (u, _, _) = _eval_checked(spec, x, need_condition=False)
    with np.errstate(over="ignore"):
        return _out(x, np.exp(u))


def g_d1(spec: GSpec, x):
    """g'(x) = g(x) * (log g)'(x)."""
    _, (u, ux, _) = _eval_checked(spec, x, need_condition=True)
    with np.errstate(over="ignore", invalid="ignore"):
        return _out(x, np.exp(u) * ux)


def g_d2(spec: GSpec, x):
    """g''(x) = g(x) * ((log g)'^2 + (log g)'')."""
    _, (u, ux, uxx) = _eval_checked(spec, x, need_condition=True)
    with np.errstate(over="ignore", invalid="ignore"):
        return _out(x, np.exp(u) * (ux * ux + uxx))


def g_condition_holds(spec: GSpec, x) -> bool | np.ndarray:
    ok = _condition(spec.variant, spec.b, spec.c, spec.d, spec.eps, spec.p, x)
    return bool(ok) if np.ndim(x) == 0 else ok


def g_tail_index(spec: GSpec) -> float:
    """lim log g(x) / log x as x -> inf (may be +inf)."""
    v = spec.variant
    if v is Variant.G0:
        return spec.b
    if v is Variant.G1:
        return spec.b * (spec.eps + spec.p)
    if v is Variant.G2:
        return spec.b * spec.eps if spec.p == 0 else math.inf
    return spec.b * spec.eps


def _log_g_at_lb(spec: GSpec) -> float:
    """lim log g(x) as x decreases to the support lower bound (-inf if g -> 0)."""
    v = spec.variant
    if v is Variant.G0:
        return -math.inf
    d = spec.d
    L = math.log(d) if d > 0 else -math.inf
    w0 = (1.0 if spec.p == 0 else 0.0) if v is Variant.G2 else 0.0
    if spec.b == 0:
        return w0
    extra = math.log(math.log(d + 1.0)) if v is Variant.G3 else 0.0
    if L > 0:
        if spec.eps > 0:
            return -math.inf
        if v is Variant.G1:
            chi = spec.p * L - math.log(L)
        else:
            chi = extra - math.log(L)
        return spec.b * (math.log(spec.c) + chi) + w0
    if L == 0:
        # d = 1: x**eps / log(1 + x) behaves like x**(eps - 1) near 0
        if spec.eps > 1:
            return -math.inf
        if spec.eps == 1:
            return spec.b * (math.log(spec.c) + extra) + w0
    return math.inf
