"""Tests for the mu(r,t) curve analysis.

Independent oracle: mpmath at 30 digits, differentiating the raw norm
expression numerically. Closed forms (r0 at t=2 and t=inf, the argmin
formula, the Holder minimum, the rational P at the special t) are
checked against exact arithmetic.
"""

import math
from fractions import Fraction

import mpmath as mp
import pytest

from nds import (
    CurveProfile,
    DomainError,
    Kind,
    NormParameter,
    NumericalSemigroup,
    argmin_mu,
    curve_profile,
    exact_special_p,
    inverse_r0,
    min_mu,
    mu,
    mu_point,
    mu_prime,
    mu_second,
    p_of_t,
    probe_T,
    r0_solve,
    special_t_value,
    taylor_k,
)

mp.mp.dps = 30

T_SPECIAL_27 = special_t_value(2, 7)
T_SPECIAL_35 = special_t_value(3, 5)


def mp_mu(S, t):
    tm = mp.mpf(t)

    def f(r):
        u = (1 - r) / S.a1
        v = r / S.a2
        return (u ** tm + v ** tm) ** (1 / tm)

    return f


# -------------------------------------------------------------- NormParameter


def test_norm_parameter_construction():
    assert NormParameter.of(1).kind is Kind.ONE
    assert NormParameter.of(math.inf).kind is Kind.INFINITY
    assert NormParameter.of(2.5).value == 2.5
    p = NormParameter.of(3.0)
    assert NormParameter.of(p) is p
    for bad in (0.0, 0.99, -2.0, math.nan):
        with pytest.raises(DomainError):
            NormParameter.of(bad)


def test_norm_parameter_str():
    assert str(NormParameter.of(1)) == "1"
    assert str(NormParameter.of(math.inf)) == "inf"
    assert str(NormParameter.of(2.0)) == "2"


# ------------------------------------------------------------------------- mu


def test_mu_endpoints(S27):
    for t in (1.0, 2.0, T_SPECIAL_27, math.inf):
        assert mu(S27, 0.0, t) == 0.5
        assert mu(S27, 1.0, t) == 1.0 / 7.0


def test_mu_special_point_is_one_over_a2(S27):
    # at the special t both coordinates coincide and mu(7/9) = 1/7
    assert abs(mu(S27, 7.0 / 9.0, T_SPECIAL_27) - 1.0 / 7.0) < 5e-16


def test_mu_rejects_r_outside(S27):
    with pytest.raises(DomainError):
        mu(S27, -0.1, 2.0)
    with pytest.raises(DomainError):
        mu(S27, 1.1, 2.0)


def test_mu_matches_mpmath(S27, S35):
    for S in (S27, S35):
        for t in (1.3, 2.0, math.e, 4.0, 20.0):
            f = mp_mu(S, t)
            for i in range(1, 20):
                r = i / 20.0
                ours = mu(S, r, t)
                ref = float(f(mp.mpf(r)))
                assert abs(ours - ref) <= 1e-14 * abs(ref)


def test_mu_monotone_in_t(S27, S35):
    # lp-norms decrease in p when both coordinates are nonzero
    for S in (S27, S35):
        for r in (0.3, 0.5, 0.8):
            vals = [mu(S, r, t) for t in (1.2, 2.0, 3.0, 10.0, 100.0)]
            assert all(b < a for a, b in zip(vals, vals[1:]))


# ---------------------------------------------------------------- derivatives


def test_mu_prime_endpoints_exact(S27, S35):
    for S in (S27, S35):
        for t in (1.5, 2.0, 7.0):
            assert mu_prime(S, 0.0, t) == -1.0 / S.a1
            assert mu_prime(S, 1.0, t) == 1.0 / S.a2


def test_mu_prime_matches_mpmath(S27, S35):
    for S in (S27, S35):
        for t in (1.4, 2.0, math.e, 5.0):
            f = mp_mu(S, t)
            for i in range(1, 10):
                r = i / 10.0
                ours = mu_prime(S, r, t)
                ref = float(mp.diff(f, mp.mpf(r)))
                assert abs(ours - ref) <= 1e-9 * max(1.0, abs(ref))


def test_mu_second_matches_mpmath(S27, S35):
    for S in (S27, S35):
        for t in (1.6, 2.0, math.e, 5.0):
            f = mp_mu(S, t)
            for i in range(1, 10):
                r = i / 10.0
                ours = mu_second(S, r, t)
                ref = float(mp.diff(f, mp.mpf(r), 2))
                assert abs(ours - ref) <= 1e-8 * max(1.0, abs(ref))


def test_mu_second_positive_and_prime_increasing(S27, S35):
    for S in (S27, S35):
        for j in range(1, 21):
            t = 1.0 + 0.35 * j
            prev = None
            for i in range(1, 20):
                r = i / 20.0
                assert mu_second(S, r, t) > 0.0
                d1 = mu_prime(S, r, t)
                if prev is not None:
                    assert d1 > prev
                prev = d1


def test_mu_second_rejects_endpoints(S27):
    with pytest.raises(DomainError):
        mu_second(S27, 0.0, 2.0)
    with pytest.raises(DomainError):
        mu_second(S27, 1.0, 2.0)


def test_mu_prime_finite_difference(S27, S35):
    h = 1e-6
    for S in (S27, S35):
        for t in (1.5, 2.0, 4.0):
            for i in range(1, 10):
                r = i / 10.0
                fd = (mu(S, r + h, t) - mu(S, r - h, t)) / (2.0 * h)
                assert abs(fd - mu_prime(S, r, t)) <= 1e-6


def test_mu_prime_large_t_limit(S27):
    # for r left of the crossing, mu' -> -1/a1 as t grows
    errs = [abs(mu_prime(S27, 0.5, t) + 0.5) for t in (5.0, 10.0, 20.0)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-9


def test_derivatives_reject_symbolic_t(S27):
    for t in (1.0, math.inf):
        with pytest.raises(DomainError):
            mu_prime(S27, 0.5, t)
        with pytest.raises(DomainError):
            mu_second(S27, 0.5, t)


# -------------------------------------------------------------- argmin / min


def test_argmin_golden(S27):
    assert abs(argmin_mu(S27, 2.0) - 49.0 / 53.0) < 1e-15


def test_argmin_matches_mpmath_root(S27, S35):
    # bracketed solver keeps the iterates real inside (0,1)
    for S in (S27, S35):
        for t in (1.7, 2.0, 3.5):
            f = mp_mu(S, t)
            ref = float(
                mp.findroot(
                    lambda r: mp.diff(f, r),
                    (mp.mpf("0.5"), mp.mpf("0.99")),
                    solver="anderson",
                )
            )
            assert abs(argmin_mu(S, t) - ref) < 1e-12


def test_min_mu_holder_identity(S27, S35):
    for S in (S27, S35):
        for t in (1.3, 2.0, math.e, 6.0):
            r_m = argmin_mu(S, t)
            assert abs(mu(S, r_m, t) - min_mu(S, t)) < 1e-15


def test_min_mu_is_global_minimum(S27, S35):
    for S in (S27, S35):
        for t in (1.5, 2.0, 4.0):
            lo = min_mu(S, t)
            grid_min = min(mu(S, i / 2000.0, t) for i in range(2001))
            assert grid_min >= lo - 1e-12
            assert grid_min <= lo + 1e-7


def test_min_mu_t2_closed_form(S27):
    assert abs(min_mu(S27, 2.0) - 1.0 / math.sqrt(53.0)) < 1e-16


# -------------------------------------------------------------------- r0 / P


def test_r0_infinity_exact(S27, S35):
    assert r0_solve(S27, math.inf) == 5.0 / 7.0
    assert r0_solve(S35, math.inf) == 2.0 / 5.0


def test_r0_t2_closed_form(S27, S35):
    # mu_2(r) = 1/a2 solves to r = (a2^2 - a1^2)/(a2^2 + a1^2)
    assert abs(r0_solve(S27, 2.0) - 45.0 / 53.0) < 1e-12
    assert abs(r0_solve(S35, 2.0) - 16.0 / 34.0) < 1e-12


def test_r0_special(S27, S35):
    assert abs(r0_solve(S27, T_SPECIAL_27) - 7.0 / 9.0) < 1e-9
    assert abs(r0_solve(S35, T_SPECIAL_35) - 5.0 / 8.0) < 1e-9


def test_r0_t1_degenerate(S27):
    with pytest.raises(DomainError):
        r0_solve(S27, 1.0)


def test_r0_monotone_decreasing_in_t(S27, S35):
    for S in (S27, S35):
        floor_r = (S.a2 - S.a1) / S.a2
        prev = 1.0
        for i in range(50):
            t = 1.05 + i * (8.0 / 49.0)
            r = r0_solve(S, t)
            assert floor_r < r < prev
            prev = r


def test_r0_matches_mpmath(S27, S35):
    for S in (S27, S35):
        for t in (1.5, 2.0, math.e, 4.0):
            f = mp_mu(S, t)
            bracket = (mp.mpf(0), mp.mpf(argmin_mu(S, t)))
            ref = float(
                mp.findroot(lambda r: f(r) - mp.mpf(1) / S.a2, bracket, solver="anderson")
            )
            assert abs(r0_solve(S, t) - ref) < 1e-11


def test_p_t2_magnitude(S27, S35):
    # |P(2)| = 1/a2 exactly
    assert abs(abs(p_of_t(S27, 2.0)) - 1.0 / 7.0) < 1e-10
    assert abs(abs(p_of_t(S35, 2.0)) - 1.0 / 5.0) < 1e-10


def test_p_special_exact_rational(S27, S35):
    assert exact_special_p(2, 7) == Fraction(-45, 196)
    assert abs(p_of_t(S27, T_SPECIAL_27) - float(Fraction(-45, 196))) < 1e-9
    ref35 = exact_special_p(3, 5)
    assert ref35 == Fraction(-8, 75)
    assert abs(p_of_t(S35, T_SPECIAL_35) - float(ref35)) < 1e-9


def test_p_negative_everywhere(S27):
    for t in (1.2, 2.0, 3.0, 8.0):
        assert p_of_t(S27, t) < 0.0


# ----------------------------------------------------------------- inverse_r0


def test_inverse_r0_round_trip(S27, S35):
    for S in (S27, S35):
        for t in (1.5, 2.0, math.e, 4.0, 8.0):
            t_back = inverse_r0(S, r0_solve(S, t))
            assert abs(t_back - t) < 1e-7 * max(1.0, t)


def test_inverse_r0_special(S27):
    assert abs(inverse_r0(S27, 7.0 / 9.0) - T_SPECIAL_27) < 1e-8


def test_inverse_r0_near_floor(S27):
    r = 5.0 / 7.0 + 1e-6
    t = inverse_r0(S27, r)
    assert abs(r0_solve(S27, t) - r) < 1e-9


def test_inverse_r0_domain(S27):
    for r in (5.0 / 7.0, 0.5, 1.0, 1.2, 0.0):
        with pytest.raises(DomainError):
            inverse_r0(S27, r)


# ------------------------------------------------------------------- taylor_k


def test_taylor_k_vs_mpmath_grid(S27):
    for t in (2.0, T_SPECIAL_27, 4.0):
        f = mp_mu(S27, t)
        grid = max(abs(float(mp.diff(f, mp.mpf(i) / 400, 2))) for i in range(1, 400))
        k = taylor_k(S27, t)
        assert k >= grid / 2.0 - 1e-9
        assert k <= grid / 2.0 * 1.001 + 1e-9


def test_taylor_k_special_pinned(S27):
    # numerical estimate, pinned as a regression value
    assert abs(taylor_k(S27, T_SPECIAL_27) - 1.2060204323443444) < 1e-8


def test_taylor_k_positive(S35):
    assert taylor_k(S35, 2.0) > 0.0
    assert taylor_k(S35, 3.0) > 0.0


# -------------------------------------------------------------------- probe_T


def grid_1p1_to(t_max, step=0.01):
    n = int(round((t_max - 1.1) / step))
    return [round(1.1 + i * step, 12) for i in range(n + 1)]


def test_probe_threshold(S27, S35):
    g = grid_1p1_to(10.0)
    assert abs(probe_T(S27, g) - 2.01) < 1e-9
    assert abs(probe_T(S35, g) - 2.01) < 1e-9


def test_probe_no_stabilization(S27):
    g = grid_1p1_to(1.5)
    assert probe_T(S27, g) is None


def test_probe_never_fails(S27):
    g = [3.0, 3.5, 4.0]
    assert probe_T(S27, g) == 3.0


# ------------------------------------------------------- profile / point APIs


def test_mu_point_fields(S27):
    p = mu_point(S27, 0.5, math.inf)
    assert p.mu_prime is None and p.mu_second is None
    p = mu_point(S27, 1.0, 4.0)
    assert p.mu_prime == 1.0 / 7.0 and p.mu_second is None
    p = mu_point(S27, 0.5, 2.0)
    assert p.mu_second is not None and p.mu_second > 0.0


def test_curve_profile(S27):
    prof = curve_profile(S27, 2.0)
    assert isinstance(prof, CurveProfile)
    assert abs(prof.r0 - 45.0 / 53.0) < 1e-11
    assert abs(prof.r_min - 49.0 / 53.0) < 1e-14
    assert abs(prof.P + 1.0 / 7.0) < 1e-10
    assert prof.k_t > 0.0
    assert 0.0 < prof.r0 < prof.r_min < 1.0


def test_injectivity_left_of_root(S27):
    # for l in (1/a2, 1/a1] the level set mu = l has one root r_l and
    # mu < l exactly to its right
    t = 2.5
    r_m = argmin_mu(S27, t)
    for level in (0.15, 0.2, 0.35, 0.5):
        lo, hi = 0.0, r_m
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if mu(S27, mid, t) > level:
                lo = mid
            else:
                hi = mid
        r_l = 0.5 * (lo + hi)
        for i in range(1001):
            r = i / 1000.0
            if abs(r - r_l) < 1e-6:
                continue
            assert (mu(S27, r, t) < level) == (r > r_l)


def test_special_t_value_golden():
    assert abs(T_SPECIAL_27 - 2.758087489450394) < 1e-14
    assert T_SPECIAL_27 == math.log(0.5) / math.log(7.0 / 9.0)
