"""Evaluate the quartic integral and its generalizations three ways.

    I(n, alpha, m, a) = int_0^oo dx / (x^(2n) + alpha a x^n + 1)^(m+1)

* quadrature on the folded interval [0, 1],
* the power series in a, with exact coefficients from the operator recurrence,
* the terminating hypergeometric closed form (n = alpha = 2 only).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple, Union

import numpy as np

from .arith import MultiPoly
from .certificates import series_recurrence
from .quadrature import QuadratureError, adaptive_gk15
from .special import binomial_exact, hyp2f1_terminating, ln_gamma, pochhammer_exact, series_bases

Number = Union[int, float, Fraction]


class DomainError(ValueError):
    pass


class SeriesDivergence(DomainError):
    pass


class BudgetExceeded(ArithmeticError):
    pass


def as_fraction(v: Union[Number, str]) -> Fraction:
    """Exact conversion; floats keep their binary value, strings may be '3/4' or '0.5'."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError(f"non-finite parameter {v!r}")
        return Fraction(v)
    return Fraction(v)


@dataclass(frozen=True)
class IntegralParams:
    n: int
    alpha: Fraction
    m: int
    a: Fraction

    def __init__(self, n: int, alpha: Union[Number, str], m: int, a: Union[Number, str]):
        if int(n) != n or n < 1:
            raise DomainError(f"n must be a positive integer, got {n!r}")
        if int(m) != m or m < 0:
            raise DomainError(f"m must be a non-negative integer, got {m!r}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "alpha", as_fraction(alpha))
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "a", as_fraction(a))

    @property
    def alpha_a(self) -> Fraction:
        return self.alpha * self.a

    def check_positivity(self):
        if not self.alpha_a > -2:
            raise DomainError(
                f"alpha*a = {float(self.alpha_a)} <= -2: the kernel vanishes on (0, oo)"
            )

    def check_series(self):
        if not abs(self.alpha_a) < 2:
            raise SeriesDivergence(f"|alpha*a| = {float(abs(self.alpha_a))} >= 2: series diverges")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    tail_bound: float


def integrand(params: IntegralParams, x: float) -> float:
    params.check_positivity()
    if not x > 0:
        raise DomainError("x must be positive")
    n, aa = params.n, float(params.alpha_a)
    xn = x ** n
    return (xn * xn + aa * xn + 1.0) ** (-(params.m + 1))


def _folded(params: IntegralParams):
    n, m, aa = params.n, params.m, float(params.alpha_a)
    p = -(m + 1)
    k = 2 * n * (m + 1) - 2

    def f(x: float) -> float:
        xn = x ** n
        return (1.0 + x ** k) * (xn * xn + aa * xn + 1.0) ** p

    return f


def integral_quadrature(
    params: IntegralParams, tol: float = 1e-12, max_evals: int = 10**6
) -> QuadResult:
    """Integral over (0, oo) folded onto [0, 1] by x -> 1/x."""
    params.check_positivity()
    if tol < 1e-13:
        raise DomainError("tolerance below 1e-13 is not attainable in double precision")
    try:
        value, err, evals = adaptive_gk15(_folded(params), 0.0, 1.0, tol, max_evals=max_evals)
    except QuadratureError as exc:
        raise BudgetExceeded(str(exc)) from None
    return QuadResult(value, err, evals)


# -- series ----------------------------------------------------------------------


@lru_cache(maxsize=256)
def _recurrence_ratio(n: int, m: int) -> Tuple[MultiPoly, MultiPoly]:
    """(P, S) with c_{l+2} = P(l)/S(l) * c_l for the alpha = n series."""
    rec = series_recurrence().subs({"m": m, "u": Fraction(1, n)})
    if sorted(rec.coeffs) != [0, 2]:
        raise ArithmeticError(f"unexpected recurrence shape {sorted(rec.coeffs)}")
    return -rec.coeffs[0], rec.coeffs[2]


def series_multipliers(n: int, m: int, count: int) -> List[Fraction]:
    """Exact q_l (l < count) with c_l = q_l * c_{l mod 2} for alpha = n."""
    P, S = _recurrence_ratio(n, m)
    q = [Fraction(1)] * min(2, count)
    for l in range(count - 2):
        s = S.evaluate({"l": l})
        if s == 0:
            raise ArithmeticError(f"leading recurrence coefficient vanishes at l = {l}")
        q.append(q[l] * P.evaluate({"l": l}) / s)
    return q


def series_coefficients(params: IntegralParams, count: int) -> List[Fraction]:
    """Exact multipliers w_l = q_l (alpha/n)^l of the bases in the series in a."""
    scale = params.alpha / params.n
    return [q * scale ** l for l, q in enumerate(series_multipliers(params.n, params.m, count))]


def _poly_coeffs_l(p: MultiPoly) -> List[float]:
    by_l = p.coeffs_in("l")
    deg = max(by_l) if by_l else 0
    return [float(by_l[k].constant_term()) if k in by_l else 0.0 for k in range(deg, -1, -1)]


class _RatioSup:
    """sup over real l >= t of |P(l)/S(l)|, with critical points found once."""

    def __init__(self, P: MultiPoly, S: MultiPoly):
        self.pc = _poly_coeffs_l(P)
        self.sc = _poly_coeffs_l(S)
        pc, sc = np.array(self.pc), np.array(self.sc)
        dp, ds = len(pc) - 1, len(sc) - 1
        self.poles = [r.real for r in (np.roots(sc) if ds > 0 else []) if abs(r.imag) < 1e-12]
        if dp > ds:
            self.limit = math.inf
        else:
            self.limit = abs(pc[0] / sc[0]) if dp == ds else 0.0
        crit = np.trim_zeros(
            np.polysub(np.polymul(np.polyder(pc), sc), np.polymul(pc, np.polyder(sc))), "f"
        )
        roots = np.roots(crit) if len(crit) > 1 else []
        self.crit = [r.real for r in roots if abs(r.imag) < 1e-12]

    def at(self, l: float) -> float:
        return abs(_horner(self.pc, l) / _horner(self.sc, l))

    def __call__(self, t: float) -> float:
        if any(r >= t - 1e-9 for r in self.poles):
            return math.inf
        return max([self.at(t), self.limit] + [self.at(c) for c in self.crit if c > t])


def _horner(coeffs: List[float], x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _parity_sum(P: MultiPoly, S: MultiPoly, y: Fraction, parity: int, last: int) -> Fraction:
    """Exact sum of q_l y^l over l = parity, parity+2, ..., <= last.

    Backward Horner in integers: no gcd until the final Fraction.
    """
    if last < parity:
        return Fraction(0)
    y2 = y * y
    N, D = 1, 1
    for l in range(last - 2 - (last - parity) % 2, parity - 1, -2):
        p, s = P.evaluate({"l": l}), S.evaluate({"l": l})
        num = p.numerator * s.denominator * y2.numerator
        den = p.denominator * s.numerator * y2.denominator
        N, D = den * D + num * N, den * D
    lead = y if parity else Fraction(1)
    return lead * Fraction(N, D)


def series_sum(params: IntegralParams, tol: float = 1e-12, max_terms: int = 20000) -> SeriesResult:
    """Sum the power series in a.

    The truncation point comes from float term magnitudes and a rigorous
    geometric tail bound. Each parity class is then summed exactly (its terms
    share a sign) and the two classes are combined with the bases once.
    """
    params.check_series()
    n, m = params.n, params.m
    bases = series_bases(n, m)
    P, S = _recurrence_ratio(n, m)
    y = params.alpha_a / n
    y2f = float(y * y)
    sup = _RatioSup(P, S)
    abs_base = (abs(bases.c0), abs(bases.c1))

    mags = [1.0, abs(float(y))]  # |q_l y^l|

    def mag(l: int) -> float:
        while len(mags) <= l:
            k = len(mags) - 2
            mags.append(mags[k] * sup.at(k) * y2f)
        return mags[l]

    fsums = [bases.c0, 0.0]
    sign_y = -1.0 if y < 0 else 1.0
    tail = math.inf
    used = 1
    for N in range(max_terms):
        if N >= 1:
            fsums[N % 2] += abs_base[N % 2] * mag(N)
            used = N + 1
        nxt = mag(N + 1) * abs_base[(N + 1) % 2] + mag(N + 2) * abs_base[N % 2]
        if nxt == 0.0:
            tail = 0.0
            break
        approx = abs(fsums[0] - sign_y * fsums[1])
        # cheap necessary condition before the rigorous supremum
        if nxt <= tol * approx * (1.0 - min(sup.limit * y2f, 0.999)):
            rho = sup(N + 1) * y2f
            if rho < 1:
                tail = nxt / (1.0 - rho)
                if tail <= tol * approx:
                    break
    else:
        raise BudgetExceeded(f"series did not reach tol={tol} within {max_terms} terms")

    E = bases.r0 * _parity_sum(P, S, y, 0, used - 1)
    O = bases.r1 * _parity_sum(P, S, y, 1, used - 1)
    if isinstance(bases.ratio, Fraction):
        value = bases.k0 * float(E + bases.ratio * O)
    else:
        value = bases.k0 * (float(E) + bases.ratio * float(O))
    return SeriesResult(value, used, float(tail))


# -- closed form and the polynomial P_m -------------------------------------------


def closed_form_t1(m: int, a: Number) -> float:
    """pi/2 * C(2m,m)/4^m * (2(a+1))^(-m-1/2) * 2F1(-m, m+1; 1/2-m; (a+1)/2)."""
    if m < 0:
        raise DomainError("m must be non-negative")
    a = as_fraction(a)
    if not a > -1:
        raise DomainError(f"closed form needs a > -1, got {float(a)}")
    F = hyp2f1_terminating(m, m + 1, Fraction(1, 2) - m, (a + 1) / 2)
    two_a1 = 2 * (a + 1)
    rational = Fraction(math.comb(2 * m, m), 4 ** m) * F / two_a1 ** m
    return float(rational) * (math.pi / 2) / math.sqrt(two_a1)


@dataclass(frozen=True)
class PolyCoeffs:
    m: int
    coeffs: Tuple[Fraction, ...]

    def __call__(self, a: Number) -> Fraction:
        a = as_fraction(a)
        return sum((c * a ** k for k, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def positive(self) -> bool:
        return all(c > 0 for c in self.coeffs)

    @property
    def log_concave(self) -> bool:
        d = self.coeffs
        return all(d[k] ** 2 >= d[k - 1] * d[k + 1] for k in range(1, len(d) - 1))


def boros_moll_coeffs(m: int) -> PolyCoeffs:
    """Exact coefficients of P_m(a) = C(2m,m)/4^m 2F1(-m, m+1; 1/2-m; (a+1)/2)."""
    if m < 0:
        raise DomainError("m must be non-negative")
    coeffs = [Fraction(0)] * (m + 1)
    c = Fraction(1, 2) - m
    for k in range(m + 1):
        tk = (
            pochhammer_exact(-m, k) * pochhammer_exact(m + 1, k)
            / (pochhammer_exact(c, k) * math.factorial(k))
            / 2 ** k
        )
        for j in range(k + 1):
            coeffs[j] += tk * math.comb(k, j)
    pre = Fraction(math.comb(2 * m, m), 4 ** m)
    return PolyCoeffs(m, tuple(pre * c for c in coeffs))


def _display_term(m: int, l: int) -> float:
    """|2^l (l/2-3/4)! (m+l/2-1/4)! / (l! m!)|, factorials read as Gamma(z+1)."""
    return math.exp(
        l * math.log(2.0)
        + ln_gamma(l / 2 + 0.25)
        + ln_gamma(m + l / 2 + 0.75)
        - ln_gamma(l + 1.0)
        - ln_gamma(m + 1.0)
    )


@dataclass(frozen=True)
class PolypartReport:
    m: int
    a: Fraction
    exact: float
    series_side: float
    deviation: float
    truncation: int


def polypart_check(m: int, a: Number, truncation: int = 400) -> PolypartReport:
    """Compare P_m(a) with 2^(m+3/2) (a+1)^(m+1/2) / (4 pi) times the n = 2 display sum."""
    a = as_fraction(a)
    if not abs(a) < 1:
        raise SeriesDivergence("the display sum converges only for |a| < 1")
    af = float(a)
    terms = [1.0 * _display_term(m, 0)]
    if af != 0.0:
        for l in range(1, truncation + 1):
            terms.append((-1) ** l * _display_term(m, l) * af ** l)
    total = math.fsum(terms)
    rhs = 2 ** (m + 1.5) * (1 + af) ** (m + 0.5) / (4 * math.pi) * total
    exact = float(boros_moll_coeffs(m)(a))
    return PolypartReport(m, a, exact, rhs, abs(rhs - exact) / abs(exact), truncation)


def dn_convolution(n_idx: int, m: int, truncation: int = None, reading: str = "printed") -> float:
    """Coefficient of a^n_idx in P_m(a) from the binomial-times-series convolution.

    reading="printed" sums l = 0..n_idx. reading="extended" sums l = 0..truncation
    (default n_idx + 40) with C(m+1/2, k) = 0 for k < 0.
    """
    if n_idx < 0:
        raise DomainError("coefficient index must be non-negative")
    if reading == "printed":
        top = n_idx
    elif reading == "extended":
        top = n_idx + 40 if truncation is None else truncation
    else:
        raise ValueError(f"unknown reading {reading!r}")
    half = Fraction(2 * m + 1, 2)
    terms = []
    for l in range(top + 1):
        b = binomial_exact(half, n_idx - l)
        if b:
            terms.append(float(b) * (-1) ** l * _display_term(m, l))
    return 2 ** (m + 1.5) / (4 * math.pi) * math.fsum(terms)


def dn_readings(m: int, truncation: int = 60) -> Dict[str, object]:
    """Check both readings of the d_n(m) display against exact P_m coefficients."""
    exact = boros_moll_coeffs(m).coeffs
    out: Dict[str, object] = {}
    for reading in ("printed", "extended"):
        worst = 0.0
        for k in range(m + 3):
            want = float(exact[k]) if k <= m else 0.0
            got = dn_convolution(k, m, truncation, reading)
            worst = max(worst, abs(got - want))
        out[reading] = worst
    return out


# -- cross-validation -------------------------------------------------------------


def crosscheck_row(n: int, alpha: Number, m: int, a: Number, tol: float = 1e-12) -> Dict[str, object]:
    """Every applicable method at one grid point, plus the worst relative deviation."""
    p = IntegralParams(n, alpha, m, a)
    quad = integral_quadrature(p, tol).value
    series = series_sum(p, tol).value if abs(p.alpha_a) < 2 else None
    closed = closed_form_t1(m, p.a) if (p.n == 2 and p.alpha == 2 and p.a > -1) else None
    others = [v for v in (series, closed) if v is not None]
    dev = max((abs(v - quad) / abs(quad) for v in others), default=0.0)
    return {
        "n": p.n,
        "alpha": float(p.alpha),
        "m": m,
        "a": float(p.a),
        "quad": quad,
        "series": series,
        "closed": closed,
        "max_rel_dev": dev,
    }
