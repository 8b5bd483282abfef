"""Gamma function (Lanczos), exact Pochhammer symbols and terminating 2F1."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

# Lanczos approximation, g = 7, nine coefficients (the widely published set).
LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_SQRT_2PI = math.sqrt(2 * math.pi)


def _lanczos_sum(z: float) -> float:
    s = LANCZOS_COEFFS[0]
    for i in range(1, len(LANCZOS_COEFFS)):
        s += LANCZOS_COEFFS[i] / (z + i)
    return s


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"ln_gamma domain error: x = {x!r} must be positive")
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def gamma(x: float) -> float:
    """Gamma(x) for x > 0; evaluated without a log/exp round trip when it fits."""
    if not x > 0:
        raise ValueError(f"gamma domain error: x = {x!r} must be positive")
    if x > 140:
        return math.exp(ln_gamma(x))
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(z)


RationalLike = Union[int, Fraction]


def pochhammer_exact(z: RationalLike, k: int) -> Fraction:
    """Rising factorial z (z+1) ... (z+k-1), exactly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    z = Fraction(z)
    out = Fraction(1)
    for j in range(k):
        out *= z + j
    return out


def binomial_exact(top: RationalLike, k: int) -> Fraction:
    """Generalized binomial coefficient C(top, k); zero for negative k."""
    if k < 0:
        return Fraction(0)
    top = Fraction(top)
    return pochhammer_exact(top - k + 1, k) / math.factorial(k)


def hyp2f1_terminating(m_neg: int, b: RationalLike, c: RationalLike, z: RationalLike) -> Fraction:
    """2F1(-m_neg, b; c; z) as an exact finite sum of m_neg + 1 terms."""
    if m_neg < 0:
        raise ValueError("m_neg must be non-negative")
    b, c, z = Fraction(b), Fraction(c), Fraction(z)
    total = Fraction(1)
    term = Fraction(1)
    for k in range(m_neg):
        if c + k == 0:
            raise ZeroDivisionError(f"lower parameter c + {k} vanishes")
        term = term * (k - m_neg) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


@dataclass(frozen=True)
class SeriesBases:
    """Series coefficients at l = 0 and l = 1 for the integrand exponent n and power m.

    Each is a transcendental constant times an exact rational::

        c0 = k0 * r0,   k0 = Gamma(1+v) Gamma(1-v),          r0 = (1-v)_m / m!
        c1 = k1 * r1,   k1 = -Gamma(1/2+v) Gamma(3/2-v) / 2, r1 = (3/2-v)_m / m!

    with v = 1/(2n). ``ratio`` is k1/k0, exact when it is rational.
    """

    n: int
    m: int
    k0: float
    k1: float
    r0: Fraction
    r1: Fraction
    ratio: Union[float, Fraction]

    @property
    def c0(self) -> float:
        return self.k0 * float(self.r0)

    @property
    def c1(self) -> float:
        return self.k1 * float(self.r1)


def series_bases(n: int, m: int) -> SeriesBases:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if m < 0:
        raise ValueError("m must be non-negative")
    v = Fraction(1, 2 * n)
    r0 = pochhammer_exact(1 - v, m) / math.factorial(m)
    r1 = pochhammer_exact(Fraction(3, 2) - v, m) / math.factorial(m)
    pv = math.pi * float(v)
    # Reflection: Gamma(1+v)Gamma(1-v) = pi v / sin(pi v) and
    # Gamma(1/2+v)Gamma(3/2-v) = (1/2 - v) pi / cos(pi v).
    k0 = pv / math.sin(pv)
    if n == 1:
        k1 = -0.5
        ratio: Union[float, Fraction] = -1 / math.pi
    elif n == 2:
        # tan(pi/4) = 1, so k1/k0 = -(1/2)(1/2 - v) tan(pi v) / v is rational.
        ratio = -Fraction(1, 2) * (Fraction(1, 2) - v) / v
        k1 = k0 * float(ratio)
    else:
        k1 = -0.5 * float(Fraction(1, 2) - v) * math.pi / math.cos(pv)
        ratio = k1 / k0
    return SeriesBases(n=n, m=m, k0=k0, k1=k1, r0=r0, r1=r1, ratio=ratio)
