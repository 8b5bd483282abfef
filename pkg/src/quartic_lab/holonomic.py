"""Annihilating operators, telescoping certificates and coefficient recurrences.

The integrand F = Q^e * x^g (e = -(m+1), g = u-1 or 0) is never formed.
Every derivative is carried as D^i F = G_i * F with G_i an exact rational
function, so all identities reduce to polynomial identities in (x, a, m, u).
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import DenominatorVanishes, MultiPoly, RatFunc

X = MultiPoly.var("x")
A = MultiPoly.var("a")
M = MultiPoly.var("m")
U = MultiPoly.var("u")
L = MultiPoly.var("l")
ONE = MultiPoly.const(1)

DEFAULT_SEED = 42
SEED_ENV = "QUARTIC_LAB_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, DEFAULT_SEED))


@dataclass(frozen=True)
class CertifiedIntegrand:
    """F = kernel^main_exponent * x^x_exponent, described but never evaluated."""

    kernel: MultiPoly
    main_exponent: MultiPoly = field(default_factory=lambda: -(M + 1))
    x_exponent: MultiPoly = field(default_factory=MultiPoly)

    def __post_init__(self):
        at_zero = self.kernel.subs({"x": 0})
        if at_zero.is_zero() or at_zero.variables() & {"x", "a"}:
            raise ValueError(f"kernel {self.kernel} must have a nonzero a-free constant term in x")
        for e in (self.main_exponent, self.x_exponent):
            if e.variables() - {"m", "u"}:
                raise ValueError("exponents may only depend on the parameters m and u")

    def log_derivative(self, var: str) -> RatFunc:
        """D_var F / F."""
        Q = self.kernel
        if var == "a":
            return RatFunc(self.main_exponent * Q.diff("a"), Q)
        if var == "x":
            return RatFunc(self.x_exponent * Q + self.main_exponent * X * Q.diff("x"), X * Q)
        raise ValueError(f"unknown variable {var!r}")

    def subs(self, assignment) -> "CertifiedIntegrand":
        return CertifiedIntegrand(
            self.kernel.subs(assignment),
            self.main_exponent.subs(assignment),
            self.x_exponent.subs(assignment),
        )


def logderiv_tower(F: CertifiedIntegrand, var: str, order: int) -> List[RatFunc]:
    """[G_0, ..., G_order] with D_var^i F = G_i F.

    G_i is kept over the denominator Q^i (var = a) or x^i Q^i (var = x).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    Q, e, g = F.kernel, F.main_exponent, F.x_exponent
    out = [RatFunc(ONE)]
    N = ONE
    if var == "a":
        Qa = Q.diff("a")
        for i in range(order):
            N = N.diff("a") * Q + (e - i) * N * Qa
            out.append(RatFunc(N, Q ** (i + 1)))
    elif var == "x":
        Qx = Q.diff("x")
        for i in range(order):
            N = N.diff("x") * X * Q + (g - i) * N * Q + (e - i) * N * X * Qx
            out.append(RatFunc(N, (X * Q) ** (i + 1)))
    else:
        raise ValueError(f"unknown variable {var!r}")
    return out


class DiffOp:
    """sum_i coeffs[i] * D_a^i with polynomial coefficients in (a, m, u)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[MultiPoly]):
        cs = [MultiPoly._lift(c) for c in coeffs] or [MultiPoly()]
        for c in cs:
            if "x" in c.variables() or "l" in c.variables():
                raise ValueError("operator coefficients must not involve x or l")
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs: list(cs) + [MultiPoly()] * (n - len(cs))
        return DiffOp([p + q for p, q in zip(pad(self.coeffs), pad(other.coeffs))])

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + DiffOp([-c for c in other.coeffs])

    def scale(self, c) -> "DiffOp":
        return DiffOp([p * c for p in self.coeffs])

    def subs(self, assignment) -> "DiffOp":
        return DiffOp([c.subs(assignment) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero() and self.order:
                continue
            d = "" if i == 0 else ("*D_a" if i == 1 else f"*D_a^{i}")
            parts.append(f"({c}){d}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp({self})"


@dataclass(frozen=True)
class Certificate:
    R: RatFunc

    def admissible(self, kernel: MultiPoly) -> bool:
        """True when the denominator divides kernel^k * x^j for some k, j."""
        den = self.R.den
        if den.is_constant():
            return True
        top = den.degree() + 1
        for k in range(top + 1):
            Qk = kernel ** k
            for j in range(top + 1):
                if (Qk * X ** j).exact_div(den) is not None:
                    return True
        return False

    def perturbed(self, extra: RatFunc) -> "Certificate":
        return Certificate(self.R + extra)


def telescoping_residual(L: DiffOp, R: Certificate, F: CertifiedIntegrand) -> RatFunc:
    """(L F - D_x(R F)) / F as an exact rational function."""
    G = logderiv_tower(F, "a", L.order)
    lhs = RatFunc(MultiPoly())
    for p, g in zip(L.coeffs, G):
        if not p.is_zero():
            lhs = lhs + RatFunc(p * g.num, g.den)
    rhs = R.R.diff("x") + R.R * F.log_derivative("x")
    return lhs - rhs


@dataclass
class SpotCheck:
    point: Dict[str, Fraction]
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class VerificationReport:
    verified: bool
    residual: RatFunc
    spot_checks: List[SpotCheck]
    denominator_admissible: bool

    @property
    def residual_text(self) -> str:
        return str(self.residual.num)

    @property
    def spot_checks_pass(self) -> bool:
        return all(s.ok for s in self.spot_checks)


def random_point(rng: random.Random, variables=("x", "a", "m", "u"), bound: int = 10**4):
    return {
        v: Fraction(rng.randrange(-bound + 1, bound), rng.randrange(1, bound)) for v in variables
    }


def _spot_check(L, R, F, rng, tries=50) -> SpotCheck:
    """Evaluate both sides of L F = D_x(R F), divided by F, at one random point.

    The pieces are evaluated separately so this does not reuse the expanded
    residual.
    """
    G = logderiv_tower(F, "a", L.order)
    Rx = R.R.diff("x")
    lam = F.log_derivative("x")
    for _ in range(tries):
        pt = random_point(rng)
        try:
            lhs = sum((p.evaluate(pt) * g.evaluate(pt) for p, g in zip(L.coeffs, G)), Fraction(0))
            rhs = Rx.evaluate(pt) + R.R.evaluate(pt) * lam.evaluate(pt)
        except DenominatorVanishes:
            continue
        return SpotCheck(pt, lhs, rhs)
    raise RuntimeError("could not find a regular point for the spot check")


def verify_certificate(
    L: DiffOp, R: Certificate, F: CertifiedIntegrand, seed: Optional[int] = None, points: int = 5
) -> VerificationReport:
    residual = telescoping_residual(L, R, F)
    rng = random.Random(default_seed() if seed is None else seed)
    checks = [_spot_check(L, R, F, rng) for _ in range(points)]
    return VerificationReport(
        verified=residual.is_zero(),
        residual=residual,
        spot_checks=checks,
        denominator_admissible=R.admissible(F.kernel),
    )


# -- operator -> recurrence ----------------------------------------------------


@dataclass(frozen=True)
class Recurrence:
    """sum_j coeffs[j](l) * c_{l+j} = 0, valid for l >= valid_from.

    Coefficients are polynomials in (l, m, u).
    """

    coeffs: Dict[int, MultiPoly]
    valid_from: int = 0

    @property
    def order(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def subs(self, assignment) -> "Recurrence":
        cs = {j: c.subs(assignment) for j, c in self.coeffs.items()}
        return Recurrence({j: c for j, c in cs.items() if not c.is_zero()}, self.valid_from)

    def __str__(self):
        if not self.coeffs:
            return "0 = 0"
        terms = []
        for j in sorted(self.coeffs):
            idx = "l" if j == 0 else f"l+{j}"
            terms.append(f"({self.coeffs[j]})*c[{idx}]")
        return " + ".join(terms) + " = 0"


def _falling(base: MultiPoly, k: int) -> MultiPoly:
    out = ONE
    for t in range(k):
        out = out * (base - t)
    return out


def ode_to_recurrence(op: DiffOp) -> Recurrence:
    """Recurrence for the Taylor coefficients (in a, at a = 0) of solutions of op."""
    contrib: List[Tuple[int, int, MultiPoly]] = []
    for i, p in enumerate(op.coeffs):
        for j, phi in p.coeffs_in("a").items():
            contrib.append((i, j, phi))
    if not contrib:
        return Recurrence({})
    shift = min(i - j for i, j, _ in contrib)
    out: Dict[int, MultiPoly] = {}
    for i, j, phi in contrib:
        d = i - j - shift
        # a^j D^i (a^k) = k(k-1)...(k-i+1) a^(k-i+j), with k = l + d
        term = phi * _falling(L + d, i)
        out[d] = out.get(d, MultiPoly()) + term
    return Recurrence({d: c for d, c in out.items() if not c.is_zero()}, valid_from=shift)


class RecurrenceError(ArithmeticError):
    def __init__(self, l, msg="leading recurrence coefficient vanishes"):
        super().__init__(f"{msg} at l = {l}")
        self.l = l


@dataclass
class CoefficientStream:
    """c_l = q[l] * base[l % stride]; base values are supplied elsewhere."""

    q: List[Fraction]
    stride: int

    def parity(self, l: int) -> int:
        return l % self.stride

    def __len__(self):
        return len(self.q)


def unroll(rec: Recurrence, m: int, u, count: int) -> CoefficientStream:
    """Exact multipliers from a two-term recurrence c_{l+r} = rho(l) c_l."""
    if m < 0:
        raise ValueError("m must be non-negative")
    u = Fraction(u)
    if not 0 < u <= 1:
        raise ValueError("u = 1/n must lie in (0, 1]")
    if rec.valid_from > 0:
        raise ValueError("recurrence holds only from l = %d; cannot unroll from 0" % rec.valid_from)
    inst = rec.subs({"m": m, "u": u})
    offsets = sorted(rec.coeffs)
    if len(offsets) != 2 or offsets[0] != 0:
        raise ValueError(f"expected a two-term recurrence with offsets {{0, r}}, got {offsets}")
    r = offsets[1]
    low = inst.coeffs.get(0, MultiPoly())
    lead = inst.coeffs.get(r, MultiPoly())
    q = [Fraction(1)] * min(r, count)
    for l in range(count - r):
        lc = lead.evaluate({"l": l})
        if lc == 0:
            raise RecurrenceError(l)
        q.append(-low.evaluate({"l": l}) / lc * q[l])
    return CoefficientStream(q, r)


# -- certificate search --------------------------------------------------------


class CertificateNotFound(ArithmeticError):
    pass


def _over_common(fs: Sequence[RatFunc]) -> Tuple[List[MultiPoly], MultiPoly]:
    den = fs[0].den
    for f in fs[1:]:
        if den.exact_div(f.den) is not None:
            continue
        if f.den.exact_div(den) is not None:
            den = f.den
        else:
            den = den * f.den
    nums = []
    for f in fs:
        q = den.exact_div(f.den)
        nums.append(f.num * q)
    return nums, den


def _bareiss_solve(M: List[List[MultiPoly]], b: List[MultiPoly]) -> List[RatFunc]:
    """Solve M p = b over Q(a) by fraction-free elimination; free unknowns are 0."""
    rows = [list(r) + [rhs] for r, rhs in zip(M, b)]
    nrows, ncols = len(rows), len(M[0]) if M else 0
    prev = ONE
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols + 1):
                v = rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]
                q = v.exact_div(prev)
                if q is None:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                rows[i][j] = q
            rows[i][c] = MultiPoly()
        prev = rows[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if not rows[i][ncols].is_zero():
            raise CertificateNotFound("linear system is inconsistent at this degree bound")
    sol = [RatFunc(MultiPoly()) for _ in range(ncols)]
    for i in reversed(range(r)):
        c = pivots[i]
        acc = RatFunc(rows[i][ncols])
        for j in range(c + 1, ncols):
            if not rows[i][j].is_zero() and not sol[j].is_zero():
                acc = acc - sol[j] * RatFunc(rows[i][j])
        sol[c] = acc / RatFunc(rows[i][c]) if not acc.is_zero() else RatFunc(MultiPoly())
    return sol


def certificate_solve(
    op: DiffOp, F: CertifiedIntegrand, m: int, n: int, degree_bound: int
) -> Certificate:
    """Find R = x P(x) / Q with deg P <= degree_bound at fixed m and u = 1/n."""
    inst = {"m": m, "u": Fraction(1, n)}
    L_ = op.subs(inst)
    F_ = F.subs(inst)
    if L_.is_zero():
        return Certificate(RatFunc(MultiPoly()))
    Q = F_.kernel
    G = logderiv_tower(F_, "a", L_.order)
    lam = F_.log_derivative("x")
    lhs = RatFunc(MultiPoly())
    for p, g in zip(L_.coeffs, G):
        lhs = lhs + RatFunc(p * g.num, g.den)
    cols = []
    for k in range(degree_bound + 1):
        Rk = RatFunc(X ** (k + 1), Q)
        cols.append(-(Rk.diff("x") + Rk * lam))
    nums, _ = _over_common([lhs] + cols)
    A_num, B_nums = nums[0], nums[1:]
    for p in nums:
        if p.variables() - {"x", "a"}:
            raise ValueError("parameters left after instantiation: %s" % (p.variables() - {"x", "a"}))
    A_by_x = A_num.coeffs_in("x")
    B_by_x = [b.coeffs_in("x") for b in B_nums]
    powers = sorted(set(A_by_x).union(*[set(b) for b in B_by_x]))
    matrix = [[b.get(j, MultiPoly()) for b in B_by_x] for j in powers]
    rhs = [-A_by_x.get(j, MultiPoly()) for j in powers]
    sol = _bareiss_solve(matrix, rhs)
    R = RatFunc(MultiPoly())
    for k, pk in enumerate(sol):
        if not pk.is_zero():
            R = R + pk * RatFunc(X ** (k + 1))
    return Certificate(R / RatFunc(Q) if not R.is_zero() else R)
