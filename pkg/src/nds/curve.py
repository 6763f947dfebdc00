"""Analysis of the length-profile curve mu(r,t) of a two-generator semigroup.

For S = <a1, a2> every factorization (m, n) of x corresponds to a
parameter r = n*a2/x in [0,1], and its lp-norm length is x * mu(r, t)
where

    mu(r, t) = || ((1-r)/a1, r/a2) ||_t .

This module evaluates mu and its first two derivatives in closed form,
locates the minimum argmin(mu_t), solves mu_t(r) = 1/a2 for the root
r0(t) left of the minimum, exposes the slope P(t) = mu_t'(r0(t)), the
Taylor constant k_t bounding the linearization error, and numerically
probes the threshold beyond which |P(t)| > 1/a2.

All evaluation uses exponent-stable forms: the larger coordinate is
factored out of the norm, and derivative terms are powers of the ratios
u/mu, v/mu which lie in [0,1], so t in the hundreds stays finite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, SolverError

R_TOL = 1e-12       # absolute tolerance of the r0 solve
T_TOL = 1e-10       # absolute tolerance of the inverse_r0 solve in t
TAYLOR_GRID = 4096  # coarse grid size for the |mu''| maximization


class Kind(enum.Enum):
    ONE = "one"
    FINITE = "finite"
    INFINITY = "infinity"


@dataclass(frozen=True)
class NormParameter:
    """t in [1, inf]: the endpoints are symbolic, finite t must exceed 1."""

    kind: Kind
    value: float = math.nan

    @staticmethod
    def of(t) -> "NormParameter":
        if isinstance(t, NormParameter):
            return t
        t = float(t)
        if t == 1.0:
            return NormParameter(Kind.ONE)
        if math.isinf(t):
            return NormParameter(Kind.INFINITY)
        if not (t > 1.0) or math.isnan(t):
            raise DomainError(f"norm parameter must lie in [1, inf], got {t}")
        return NormParameter(Kind.FINITE, t)

    @property
    def finite(self) -> bool:
        return self.kind is Kind.FINITE

    def __str__(self):
        if self.kind is Kind.ONE:
            return "1"
        if self.kind is Kind.INFINITY:
            return "inf"
        return format(self.value, ".17g")


def _require_finite_t(t) -> float:
    tp = NormParameter.of(t)
    if not tp.finite:
        raise DomainError(f"operation requires t in (1, inf), got t={tp}")
    return tp.value


def _coords(S, r: float):
    if not (0.0 <= r <= 1.0):
        raise DomainError(f"r must lie in [0,1], got {r}")
    return (1.0 - r) / S.a1, r / S.a2


def mu(S, r: float, t) -> float:
    """mu(r,t) = ||((1-r)/a1, r/a2)||_t; t may be 1, finite, or inf."""
    tp = NormParameter.of(t)
    u, v = _coords(S, r)
    if tp.kind is Kind.ONE:
        return u + v
    if tp.kind is Kind.INFINITY:
        return u if u > v else v
    hi, lo = (u, v) if u > v else (v, u)
    if lo == 0.0:
        return hi
    z = lo / hi
    return hi * (1.0 + z ** tp.value) ** (1.0 / tp.value)


def mu_prime(S, r: float, t) -> float:
    """Closed-form d(mu)/dr; endpoints give the one-sided limits.

    mu' = -(u/mu)^(t-1)/a1 + (v/mu)^(t-1)/a2, both ratios in [0,1].
    At r=0 this is -1/a1, at r=1 it is +1/a2.
    """
    tv = _require_finite_t(t)
    u, v = _coords(S, r)
    m = mu(S, r, t)
    return -((u / m) ** (tv - 1.0)) / S.a1 + ((v / m) ** (tv - 1.0)) / S.a2


def mu_second(S, r: float, t) -> float:
    """Second derivative, strictly positive on r in (0,1) for t in (1,inf).

    Simplifies to (t-1) u^(t-2) v^(t-2) / ((a1 a2)^2 mu^(2t-1)) because
    u v' - v u' = 1/(a1 a2) identically; evaluated via ratio powers.
    """
    tv = _require_finite_t(t)
    u, v = _coords(S, r)
    if r == 0.0 or r == 1.0:
        raise DomainError("mu_second requires r strictly inside (0,1)")
    m = mu(S, r, t)
    a1a2 = S.a1 * S.a2
    return (tv - 1.0) * (u / m) ** (tv - 2.0) * (v / m) ** (tv - 2.0) / (a1a2 * a1a2 * m ** 3)


def argmin_mu(S, t) -> float:
    """Unique critical point r_m of mu_t: r_m = a2 / (a1 * c + a2), c = (a1/a2)^(1/(t-1))."""
    tv = _require_finite_t(t)
    c = (S.a1 / S.a2) ** (1.0 / (tv - 1.0))
    r_m = S.a2 / (S.a1 * c + S.a2)
    # cross-check against the independent derivative, but only where
    # 1 - r_m is representable: near t = 1 the argmin crowds r = 1 and
    # evaluating mu' there loses digits to cancellation in (1 - r)
    if 1.0 - r_m > 1e-8 and abs(mu_prime(S, r_m, t)) >= 1e-10:
        raise SolverError(f"mu' at closed-form argmin is {mu_prime(S, r_m, t):.3e}")
    return r_m


def min_mu(S, t) -> float:
    """min(mu_t) = 1/||(a1,a2)||_q with q the Holder conjugate t/(t-1)."""
    tv = _require_finite_t(t)
    q = tv / (tv - 1.0)
    z = S.a1 / S.a2
    return 1.0 / (S.a2 * (1.0 + z ** q) ** (1.0 / q))


def r0_solve(S, t) -> float:
    """Least r with mu_t(r) = 1/a2, i.e. the root left of argmin(mu_t).

    Bracketed bisection to width 1e-12 followed by a secant polish.
    t = inf returns (a2-a1)/a2 exactly; t = 1 is degenerate (root r=1).
    """
    tp = NormParameter.of(t)
    if tp.kind is Kind.ONE:
        raise DomainError("r0 is degenerate at t=1 (the root is r=1)")
    if tp.kind is Kind.INFINITY:
        return (S.a2 - S.a1) / S.a2
    target = 1.0 / S.a2
    lo, hi = 0.0, argmin_mu(S, tp)
    # mu(lo) = 1/a1 > target, mu(hi) = min < target: sign change guaranteed
    f_lo = mu(S, lo, tp) - target
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        f_mid = mu(S, mid, tp) - target
        if (f_lo > 0.0) == (f_mid > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < R_TOL:
            break
    # secant polish inside the final bracket
    r, r_prev = 0.5 * (lo + hi), lo
    f_prev = mu(S, r_prev, tp) - target
    for _ in range(4):
        f_r = mu(S, r, tp) - target
        denom = f_r - f_prev
        if denom == 0.0:
            break
        step = f_r * (r - r_prev) / denom
        r_prev, f_prev = r, f_r
        r = min(max(r - step, lo), hi)
    return r


def p_of_t(S, t) -> float:
    """P(t) = mu_t'(r0(t)); negative since r0 lies left of the minimum."""
    return mu_prime(S, r0_solve(S, t), t)


def inverse_r0(S, r: float) -> float:
    """The unique t with r0(t) = r, for r strictly inside ((a2-a1)/a2, 1).

    r0 is strictly decreasing in t, so plain monotone bisection works
    once the bracket is grown; polished to |r0(t) - r| below 1e-10 in t.
    """
    lo_r = (S.a2 - S.a1) / S.a2
    if not (lo_r < r < 1.0):
        raise DomainError(f"r must lie in ({lo_r}, 1), got {r}")
    t_lo = 1.0 + 1e-9
    t_hi = 2.0
    while r0_solve(S, t_hi) > r:
        t_lo = t_hi
        t_hi *= 2.0
        if t_hi > 1e9:
            raise SolverError("inverse_r0 bracket did not close")
    for _ in range(200):
        t_mid = 0.5 * (t_lo + t_hi)
        if r0_solve(S, t_mid) > r:
            t_lo = t_mid
        else:
            t_hi = t_mid
        if t_hi - t_lo < T_TOL:
            break
    return 0.5 * (t_lo + t_hi)


def taylor_k(S, t) -> float:
    """Estimate of sup |mu_t''| / 2 over [0,1].

    4096-point interior grid then ternary refinement around the grid
    argmax. This is a numerical estimate of the analytic sup, not a
    certified bound; for t < 2 the sup is infinite at the endpoints and
    the estimate reflects only the sampled interior.
    """
    tv = _require_finite_t(t)
    n = TAYLOR_GRID
    best_i, best = 0, -1.0
    for i in range(n):
        r = (i + 0.5) / n
        val = abs(mu_second(S, r, tv))
        if val > best:
            best_i, best = i, val
    lo = max(best_i - 0.5, 0.25) / n
    hi = min(best_i + 1.5, n - 0.25) / n
    f = lambda r: abs(mu_second(S, r, tv))
    for _ in range(80):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) < f(m2):
            lo = m1
        else:
            hi = m2
    return max(best, f(0.5 * (lo + hi))) / 2.0


def probe_T(S, t_grid: Sequence[float]) -> Optional[float]:
    """Empirical threshold after which |P(t)| > 1/a2 holds for the rest of the grid.

    Returns the first grid point beyond the last failure, the first grid
    point if the condition never fails, or None if the last grid point
    still fails (no stabilization within the grid).
    """
    target = 1.0 / S.a2
    last_fail = -1
    for i, t in enumerate(t_grid):
        if not (abs(p_of_t(S, t)) > target):
            last_fail = i
    if last_fail == len(t_grid) - 1:
        return None
    return float(t_grid[last_fail + 1])


@dataclass(frozen=True)
class MuPoint:
    """mu and derivatives at one (r, t); derivatives None where undefined."""

    r: float
    mu: float
    mu_prime: Optional[float]
    mu_second: Optional[float]


def mu_point(S, r: float, t) -> MuPoint:
    tp = NormParameter.of(t)
    m = mu(S, r, tp)
    if not tp.finite:
        return MuPoint(r, m, None, None)
    d1 = mu_prime(S, r, tp)
    d2 = mu_second(S, r, tp) if 0.0 < r < 1.0 else None
    return MuPoint(r, m, d1, d2)


@dataclass(frozen=True)
class CurveProfile:
    """Summary of mu_t for one semigroup: minimum, root r0, slope P, Taylor k_t."""

    t: float
    r_min: float
    mu_min: float
    r0: float
    P: float
    k_t: float


def curve_profile(S, t) -> CurveProfile:
    tv = _require_finite_t(t)
    r_min = argmin_mu(S, tv)
    m_min = min_mu(S, tv)
    r0 = r0_solve(S, tv)
    P = mu_prime(S, r0, tv)
    k = taylor_k(S, tv)
    if not (0.0 < r0 < r_min < 1.0):
        raise SolverError(f"profile ordering violated: r0={r0}, r_min={r_min}")
    if abs(mu(S, r_min, tv) - m_min) > 1e-10:
        raise SolverError("Holder minimum identity violated beyond 1e-10")
    if P >= 0.0:
        raise SolverError(f"P(t) must be negative, got {P}")
    return CurveProfile(tv, r_min, m_min, r0, P, k)


def special_t_value(a1: int, a2: int) -> float:
    """t with r0(t) = a2/(a1+a2): t = log(1/2) / log(a2/(a1+a2))."""
    return math.log(0.5) / math.log(a2 / (a1 + a2))


def exact_special_p(a1: int, a2: int) -> Fraction:
    """P at the special t, exactly: -(a2^2 - a1^2) / (2 a1 a2^2).

    At r = a2/(a1+a2) both coordinates equal 1/(a1+a2), each ratio
    power collapses to exactly 1/2, and mu' becomes rational.
    """
    return Fraction(-(a2 * a2 - a1 * a1), 2 * a1 * a2 * a2)
