"""Perspicacity certificates: (d, epsilon, x0) triples from a rational r0.

A parameter t with rational r0(t) = M/N and |a1*a2*P(t)| > a1 admits a
certified gap: enumerate the candidate set

    Lambda = { l1*|P(t)|/N + l2/a2 : l1, l2 nonnegative integers }

inside the interval (a1, |a1*a2*P(t)|), pick a gap between consecutive
points, center d in it, and set epsilon to a quarter of the smallest
clearance. Every t-delta-set gap of every x > x0 = ceil(k_t*(a1*a2)^2 /
epsilon) then avoids (d-epsilon, d+epsilon), which the scan harness can
check exhaustively below x0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Tuple

from . import jsonio
from .curve import p_of_t, r0_solve, special_t_value, taylor_k
from .errors import ConditionFailed, DomainError, EmptyInterval, WitnessInvalid
from .semigroup import NumericalSemigroup

WIDTH_TIE_TOL = 1e-9   # gap widths closer than this count as tied
DEDUP_TOL = 1e-12

STATUS_UNVERIFIED = "unverified"
STATUS_VERIFIED = "verified"
STATUS_REFUTED = "refuted"


@dataclass(frozen=True)
class RationalR0Witness:
    """Claim that r0(t) equals M/N exactly; validated numerically."""

    M: int
    N: int
    t: float

    def __post_init__(self):
        if math.gcd(self.M, self.N) != 1:
            raise WitnessInvalid(f"{self.M}/{self.N} is not in lowest terms")
        if not (0 < Fraction(self.M, self.N) < 1):
            raise WitnessInvalid(f"{self.M}/{self.N} outside (0,1)")

    def validate(self, S: NumericalSemigroup):
        err = abs(r0_solve(S, self.t) - self.M / self.N)
        if err >= 1e-9:
            raise WitnessInvalid(
                f"r0({self.t}) differs from {self.M}/{self.N} by {err:.3e}"
            )


@dataclass(frozen=True)
class Certificate:
    S: NumericalSemigroup
    t: float
    witness: RationalR0Witness
    P: float
    k_t: float
    interval: Tuple[float, float]
    lambda_lo: float
    lambda_hi: float
    d: float
    epsilon: float
    x0: int
    status: str = STATUS_UNVERIFIED

    def window(self) -> Tuple[float, float]:
        return self.d - self.epsilon, self.d + self.epsilon

    def to_json(self) -> str:
        return jsonio.dumps(
            {
                "a1": self.S.a1,
                "a2": self.S.a2,
                "t": self.t,
                "r0_num": self.witness.M,
                "r0_den": self.witness.N,
                "P": self.P,
                "k_t": self.k_t,
                "interval_lo": self.interval[0],
                "interval_hi": self.interval[1],
                "lambda_gap_lo": self.lambda_lo,
                "lambda_gap_hi": self.lambda_hi,
                "d": self.d,
                "epsilon": self.epsilon,
                "x0": self.x0,
                "status": self.status,
            }
        )

    @staticmethod
    def from_json(text: str) -> "Certificate":
        obj = json.loads(text)
        S = NumericalSemigroup(int(obj["a1"]), int(obj["a2"]))
        wit = RationalR0Witness(int(obj["r0_num"]), int(obj["r0_den"]), float(obj["t"]))
        return Certificate(
            S,
            float(obj["t"]),
            wit,
            float(obj["P"]),
            float(obj["k_t"]),
            (float(obj["interval_lo"]), float(obj["interval_hi"])),
            float(obj["lambda_gap_lo"]),
            float(obj["lambda_gap_hi"]),
            float(obj["d"]),
            float(obj["epsilon"]),
            int(obj["x0"]),
            str(obj["status"]),
        )

    def with_status(self, status: str) -> "Certificate":
        return replace(self, status=status)


def special_t(S: NumericalSemigroup) -> Tuple[float, RationalR0Witness]:
    """The t with r0(t) = a2/(a1+a2), always rational and in lowest terms.

    t = log(1/2) / log(a2/(a1+a2)): at r = a2/(a1+a2) both coordinates
    of the mu argument equal 1/(a1+a2), so mu = (2)^(1/t)/(a1+a2) and
    the choice of t turns that into exactly 1/a2... the witness is
    validated against the solver rather than trusted.
    """
    t = special_t_value(S.a1, S.a2)
    wit = RationalR0Witness(S.a2, S.a1 + S.a2, t)
    wit.validate(S)
    return t, wit


def lambda_points(
    S: NumericalSemigroup,
    t: float,
    witness: RationalR0Witness,
    interval: Tuple[float, float],
) -> List[float]:
    """Ascending Lambda values near the interval, deduplicated at 1e-12.

    Both terms use |P|, so the enumeration is finite: each term is capped
    at interval_hi + 1 and only sums in [interval_lo - 1, interval_hi + 1]
    are kept.
    """
    lo, hi = interval
    if not (hi > lo):
        raise EmptyInterval(f"interval ({lo}, {hi}) is empty")
    step1 = abs(p_of_t(S, t)) / witness.N
    step2 = 1.0 / S.a2
    vals = []
    max1 = int(math.floor((hi + 1.0) / step1))
    max2 = int(math.floor((hi + 1.0) / step2))
    for l1 in range(max1 + 1):
        base = l1 * step1
        if base > hi + 1.0:
            break
        for l2 in range(max2 + 1):
            v = base + l2 * step2
            if v > hi + 1.0:
                break
            if v >= lo - 1.0:
                vals.append(v)
    vals.sort()
    out = []
    for v in vals:
        if out and v - out[-1] <= DEDUP_TOL:
            continue
        out.append(v)
    return out


def _candidate_gaps(points: List[float], lo: float, hi: float):
    """Consecutive point pairs whose midpoint lies strictly inside (lo, hi)."""
    for a, b in zip(points, points[1:]):
        mid = 0.5 * (a + b)
        if lo < mid < hi:
            yield a, b


def build_certificate(
    S: NumericalSemigroup,
    t: float,
    witness: RationalR0Witness,
    k_override: Optional[float] = None,
) -> Certificate:
    """Pick the widest Lambda gap and derive (d, epsilon, x0).

    Ties on width (the Example semigroup produces a perfectly uniform
    Lambda lattice, so every gap ties) break by larger epsilon, then by
    midpoint nearest the interval center, then by the larger midpoint;
    the survivor is the gap farthest from both interval walls.
    """
    witness.validate(S)
    P = p_of_t(S, t)
    hi = abs(S.a1 * S.a2 * P)
    lo = float(S.a1)
    if not (hi > lo):
        raise ConditionFailed(
            f"|a1*a2*P| = {hi:.6g} does not exceed a1 = {S.a1}; t not certifiable"
        )
    points = lambda_points(S, t, witness, (lo, hi))
    cands = list(_candidate_gaps(points, lo, hi))
    if not cands:
        raise EmptyInterval("no Lambda gap with midpoint inside the interval")
    center = 0.5 * (lo + hi)
    scored = []
    for a, b in cands:
        d = 0.5 * (a + b)
        eps = 0.25 * min(d - lo, hi - d, min(d - a, b - d))
        scored.append((b - a, eps, a, b, d))
    # each comparison tolerates float noise: widths and epsilons within
    # 1e-9 are ties, real differences are orders of magnitude larger
    w_max = max(s[0] for s in scored)
    scored = [s for s in scored if s[0] >= w_max - WIDTH_TIE_TOL]
    e_max = max(s[1] for s in scored)
    scored = [s for s in scored if s[1] >= e_max - WIDTH_TIE_TOL]
    dist_min = min(abs(s[4] - center) for s in scored)
    scored = [s for s in scored if abs(s[4] - center) <= dist_min + 1e-12]
    _, epsilon, gap_lo, gap_hi, d = max(scored, key=lambda s: s[4])
    k_t = float(k_override) if k_override is not None else taylor_k(S, t)
    if k_t <= 0.0:
        raise DomainError(f"k_t must be positive, got {k_t}")
    x0 = math.ceil(k_t * (S.a1 * S.a2) ** 2 / epsilon)
    return Certificate(
        S, t, witness, P, k_t, (lo, hi), gap_lo, gap_hi, d, epsilon, x0
    )


CLASSIFY_CERTIFIED = "certified_perspicacious"
CLASSIFY_CONDITION_FAILS = "condition_fails"
CLASSIFY_UNKNOWN = "unknown"


def classify_t(
    S: NumericalSemigroup, t: float, witness: Optional[RationalR0Witness] = None
) -> str:
    """Sort t into certified / condition-fails / unknown.

    Rationality of r0(t) cannot be decided numerically, so without a
    witness the best possible verdicts are condition_fails or unknown.
    """
    margin = abs(p_of_t(S, t)) - 1.0 / S.a2
    if margin <= 1e-9:
        return CLASSIFY_CONDITION_FAILS
    if witness is None:
        return CLASSIFY_UNKNOWN
    try:
        witness.validate(S)
    except WitnessInvalid:
        return CLASSIFY_UNKNOWN
    return CLASSIFY_CERTIFIED
