"""Exact factorization arithmetic for two-generator numerical semigroups.

S = <a1, a2> with 1 < a1 < a2 and gcd(a1, a2) = 1. An element x has
factorization set Z(x) = {(m, n) : m*a1 + n*a2 = x, m, n >= 0}; its
t-length set is the sorted distinct lp-norm values ||(m,n)||_t and the
t-delta set collects the gaps between consecutive lengths.

Enumeration never scans: n is congruent to x * a2^(-1) mod a1, so the
whole of Z(x) is n0, n0+a1, n0+2*a1, ... while n*a2 <= x, giving
O(x/(a1*a2)) factorizations after one modular inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .curve import Kind, NormParameter
from .errors import DomainError, NotInSemigroup


@dataclass(frozen=True)
class NumericalSemigroup:
    a1: int
    a2: int

    def __post_init__(self):
        if not (isinstance(self.a1, int) and isinstance(self.a2, int)):
            raise DomainError("generators must be integers")
        if not (1 < self.a1 < self.a2):
            raise DomainError(f"need 1 < a1 < a2, got ({self.a1}, {self.a2})")
        if math.gcd(self.a1, self.a2) != 1:
            raise DomainError(f"generators must be coprime, got ({self.a1}, {self.a2})")

    def __str__(self):
        return f"<{self.a1},{self.a2}>"


@dataclass(frozen=True)
class Factorization:
    """One point (m, n) of Z(x): m copies of a1, n copies of a2."""

    m: int
    n: int

    def element(self, S: NumericalSemigroup) -> int:
        return self.m * S.a1 + self.n * S.a2

    def r_param(self, S: NumericalSemigroup) -> Fraction:
        # exact rational n*a2/x; divisibility of x*r matters downstream
        x = self.element(S)
        if x <= 0:
            raise DomainError("r parameter needs x > 0")
        return Fraction(self.n * S.a2, x)


@dataclass(frozen=True)
class GapRecord:
    """One gap between consecutive lengths of the same element."""

    x: int
    lo: float
    hi: float
    gap: float


@dataclass(frozen=True)
class LengthSet:
    """Sorted distinct t-lengths of x, each with its source factorization.

    Dedup is exact float equality: genuinely equal norms (t=1, t=inf
    ties) merge, while distinct values a hair apart stay distinct so no
    small gap is silently swallowed.
    """

    x: int
    t: NormParameter
    lengths: Tuple[float, ...]
    factorizations: Tuple[Factorization, ...]


def norm_value(m: int, n: int, t: NormParameter) -> float:
    """||(m,n)||_t, exponent-stable; t=1 and t=inf are exact integer results."""
    if t.kind is Kind.ONE:
        return float(m + n)
    if t.kind is Kind.INFINITY:
        return float(m if m > n else n)
    hi, lo = (m, n) if m > n else (n, m)
    if lo == 0:
        return float(hi)
    z = lo / hi
    return hi * (1.0 + z ** t.value) ** (1.0 / t.value)


def factorizations(S: NumericalSemigroup, x: int) -> List[Factorization]:
    """All of Z(x) ordered by ascending n; empty exactly when x is not in S."""
    if x < 0:
        return []
    n0 = (x * pow(S.a2, -1, S.a1)) % S.a1
    if n0 * S.a2 > x:
        return []
    out = []
    n = n0
    while n * S.a2 <= x:
        out.append(Factorization((x - n * S.a2) // S.a1, n))
        n += S.a1
    return out


def length_set(S: NumericalSemigroup, x: int, t) -> LengthSet:
    tp = NormParameter.of(t)
    facs = factorizations(S, x)
    if not facs:
        raise NotInSemigroup(f"{x} has no factorization in {S}")
    # stable sort keyed on the value alone: ties keep ascending-n order
    pairs = sorted(((norm_value(f.m, f.n, tp), f) for f in facs), key=lambda p: p[0])
    lengths, reps = [], []
    for val, f in pairs:
        if lengths and val == lengths[-1]:
            continue
        lengths.append(val)
        reps.append(f)
    return LengthSet(x, tp, tuple(lengths), tuple(reps))


def delta_set_of_element(S: NumericalSemigroup, x: int, t) -> List[GapRecord]:
    ls = length_set(S, x, t)
    return [
        GapRecord(x, ls.lengths[i], ls.lengths[i + 1], ls.lengths[i + 1] - ls.lengths[i])
        for i in range(len(ls.lengths) - 1)
    ]


def sorted_lengths_unimodal(S: NumericalSemigroup, x: int, t) -> LengthSet:
    """Same output as length_set, built by a two-run merge instead of a sort.

    In n-ascending order the lengths x*mu_t(r) fall strictly to the
    minimum of mu_t and then rise, so splitting at the argmin leaves two
    monotone runs that merge in O(k). This is the reference
    implementation of the scan kernels' inner loop.
    """
    tp = NormParameter.of(t)
    if not tp.finite:
        raise DomainError("unimodal merge requires finite t > 1")
    facs = factorizations(S, x)
    if not facs:
        raise NotInSemigroup(f"{x} has no factorization in {S}")
    vals = [norm_value(f.m, f.n, tp) for f in facs]
    k = len(vals)
    imin = min(range(k), key=vals.__getitem__)
    lengths = [vals[imin]]
    reps = [facs[imin]]
    ia, ib = imin - 1, imin + 1
    while ia >= 0 or ib < k:
        if ib >= k or (ia >= 0 and vals[ia] <= vals[ib]):
            cur, rep = vals[ia], facs[ia]
            ia -= 1
        else:
            cur, rep = vals[ib], facs[ib]
            ib += 1
        if cur != lengths[-1]:
            lengths.append(cur)
            reps.append(rep)
    return LengthSet(x, tp, tuple(lengths), tuple(reps))
