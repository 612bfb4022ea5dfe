"""Exact arithmetic on SL(2,Z): matrices, Dedekind sums, the branch cocycle, fixed points.

All operations are pure functions on immutable values.  Python integers are
arbitrary precision, so the "overflow must be detected" contract is satisfied
vacuously; the resource caps live in the enumeration layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import NonPositiveModulus, NotHyperbolic, NumericalAmbiguity

__all__ = [
    "Mat2",
    "IDENTITY",
    "T",
    "S",
    "QuadraticIrrational",
    "FixedPointPair",
    "mat_mul",
    "sawtooth",
    "dedekind_sum",
    "dedekind_sum_direct",
    "omega",
    "fixed_points",
    "geodesic_length",
    "sign0",
]


def sign0(x) -> int:
    """Sign with sign0(0) = 0."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True)
class Mat2:
    """Unimodular integer 2x2 matrix (a b; c d) with det = 1, checked on construction."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant is not 1: {self}")

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def power(self, n: int) -> "Mat2":
        if n < 0:
            return self.inverse().power(-n)
        result = IDENTITY
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_hyperbolic(self) -> bool:
        return abs(self.trace) > 2

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


IDENTITY = Mat2(1, 0, 0, 1)
T = Mat2(1, 1, 0, 1)
S = Mat2(0, -1, 1, 0)


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    return x @ y


def sawtooth(x: Fraction) -> Fraction:
    """((x)) = x - floor(x) - 1/2 for non-integral x, 0 on integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """Dedekind sum by direct summation of sum_mu ((mu/k))((h mu/k)).

    O(k); kept as the independent oracle for the reciprocity recursion.
    """
    if k < 1:
        raise NonPositiveModulus(f"k = {k}")
    total = Fraction(0)
    for mu in range(1, k):
        total += sawtooth(Fraction(mu, k)) * sawtooth(Fraction(h * mu, k))
    return total


def dedekind_sum(h: int, k: int) -> Fraction:
    """Dedekind sum s(h, k), exact rational, via the reciprocity recursion.

    Depends only on h mod k.  Falls back to direct summation when
    gcd(h, k) > 1 (never hit on SL(2,Z) inputs, where gcd(d, c) = 1).
    """
    if k < 1:
        raise NonPositiveModulus(f"k = {k}")
    h %= k
    if k == 1 or h == 0:
        return Fraction(0)
    if gcd(h, k) != 1:
        return dedekind_sum_direct(h, k)
    # s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12  and  s(k,h) = s(k mod h, h)
    s = Fraction(0)
    sign = 1
    while h:
        s += sign * (Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12)
        sign = -sign
        h, k = k % h, h
    return s


def _j_exact(g: Mat2, z_re: Fraction, z_im: Fraction) -> tuple:
    """j(g, z) = c z + d evaluated with exact rational real/imaginary parts."""
    return (g.c * z_re + g.d, g.c * z_im)


def _phase(re: Fraction, im: Fraction) -> float:
    # atan2(+0.0, x<0) = pi, matching arg in (-pi, pi].
    return math.atan2(float(im), float(re))


def omega(g: Mat2, h: Mat2) -> int:
    """Branch cocycle (arg j(g,hz) + arg j(h,z) - arg j(gh,z)) / 2pi at z = i.

    The value is z-independent and lies in {-1, 0, 1}; the real/imaginary
    parts of every j are computed as exact rationals so the principal-branch
    decision is never made from a rounded sign.
    """
    # h(i) = (b d' + a c' + i) / (c'^2 + d'^2) with h = (a b; c' d')
    den = h.c * h.c + h.d * h.d
    hz_re = Fraction(h.a * h.c + h.b * h.d, den)
    hz_im = Fraction(1, den)
    arg_g = _phase(*_j_exact(g, hz_re, hz_im))
    arg_h = _phase(*_j_exact(h, Fraction(0), Fraction(1)))
    arg_gh = _phase(*_j_exact(g @ h, Fraction(0), Fraction(1)))
    value = (arg_g + arg_h - arg_gh) / (2.0 * math.pi)
    n = round(value)
    if abs(value - n) > 1e-6:
        raise NumericalAmbiguity(f"omega residual {value - n} for {g}, {h}")
    if n not in (-1, 0, 1):
        raise NumericalAmbiguity(f"omega out of range: {n}")
    return n


@dataclass(frozen=True)
class QuadraticIrrational:
    """Exact real algebraic number p + q*sqrt(D) with rational p, q and non-square D > 0."""

    p: Fraction
    q: Fraction
    D: int

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(self.D)


@dataclass(frozen=True)
class FixedPointPair:
    """Attracting (alpha) and repelling (alpha_bar) boundary fixed points of a hyperbolic matrix."""

    alpha: QuadraticIrrational
    alpha_bar: QuadraticIrrational


def fixed_points(gamma: Mat2) -> FixedPointPair:
    """Exact fixed points (a - d +- sqrt(tr^2 - 4)) / (2c), attracting one first."""
    t = gamma.trace
    if abs(t) <= 2 or gamma.c == 0:
        raise NotHyperbolic(f"{gamma} has trace {t}, c = {gamma.c}")
    D = t * t - 4
    p = Fraction(gamma.a - gamma.d, 2 * gamma.c)
    q = Fraction(1, 2 * gamma.c)
    plus = QuadraticIrrational(p, q, D)
    minus = QuadraticIrrational(p, -q, D)
    # c alpha + d is the eigenvalue at alpha; it exceeds 1 in modulus (attracting)
    # for the + root iff trace > 2.
    if t > 2:
        return FixedPointPair(plus, minus)
    return FixedPointPair(minus, plus)


def geodesic_length(trace: int) -> float:
    """Length 2*arccosh(|t|/2) of the closed geodesic with matrix trace t."""
    if abs(trace) <= 2:
        raise NotHyperbolic(f"trace {trace}")
    return 2.0 * math.acosh(abs(trace) / 2.0)


def floor_quadratic(P: int, Q: int, sqrt_floor: int) -> int:
    """floor((P + sqrt(D)) / Q) for non-square D with isqrt(D) = sqrt_floor."""
    if Q > 0:
        return (P + sqrt_floor) // Q
    # floor(-x) = -ceil(x); ceil is floor + 1 since sqrt(D) is irrational
    return -((P + sqrt_floor) // (-Q) + 1)


def isqrt_checked(D: int) -> int:
    s = isqrt(D)
    if s * s == D:
        raise ValueError(f"{D} is a perfect square")
    return s
