"""Exact sparse multivariate polynomials and rational functions over Q.

Rationals are :class:`fractions.Fraction`. Polynomials live over the fixed
variable order ``VARS``; ``l`` is only used for recurrence coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

Rational = Fraction

VARS = ("x", "a", "m", "u", "l")
NVARS = len(VARS)
_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_EXP = (0,) * NVARS

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def _exp_of(var: str, power: int = 1) -> Monomial:
    e = [0] * NVARS
    e[_INDEX[var]] = power
    return tuple(e)


class MultiPoly:
    """Sparse polynomial: map from exponent vector to nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != NVARS or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp!r}")
                c = Fraction(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        if name not in _INDEX:
            raise ValueError(f"unknown variable {name!r}; expected one of {VARS}")
        return cls({_exp_of(name, power): 1})

    @classmethod
    def _lift(cls, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = MultiPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = MultiPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = MultiPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    # -- comparisons --------------------------------------------------------
    def __eq__(self, other):
        other = MultiPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(_ZERO_EXP, Fraction(0))

    # -- structure ----------------------------------------------------------
    def variables(self) -> set:
        return {VARS[i] for e in self.terms for i, k in enumerate(e) if k}

    def degree(self, var: Optional[str] = None) -> int:
        """Total degree, or degree in ``var``. The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = _INDEX[var]
        return max(e[i] for e in self.terms)

    def coeffs_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """Split into ``{k: coefficient of var^k}``."""
        i = _INDEX[var]
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: MultiPoly._raw(t) for k, t in out.items()}

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        """Leading term in lexicographic order on ``VARS``."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    def diff(self, var: str) -> "MultiPoly":
        if var not in ("x", "a"):
            raise ValueError(f"cannot differentiate with respect to parameter {var!r}")
        i = _INDEX[var]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly._raw(out)

    def subs(self, assignment: Mapping[str, Union[Scalar, "MultiPoly"]]) -> "MultiPoly":
        """Substitute rationals or polynomials for variables."""
        idx = {_INDEX[k]: MultiPoly._lift(v) for k, v in assignment.items()}
        powers: Dict[Tuple[int, int], MultiPoly] = {}
        result = MultiPoly()
        for e, c in self.terms.items():
            kept = list(e)
            term = MultiPoly.const(c)
            for i, val in idx.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in powers:
                        powers[key] = val ** e[i]
                    term = term * powers[key]
                    kept[i] = 0
            result = result + term * MultiPoly._raw({tuple(kept): Fraction(1)})
        return result

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        missing = self.variables() - set(assignment)
        if missing:
            raise ValueError(f"no value for variables {sorted(missing)}")
        vals = [Fraction(assignment.get(v, 0)) for v in VARS]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def exact_div(self, d: "MultiPoly") -> Optional["MultiPoly"]:
        """Quotient ``self / d`` if ``d`` divides ``self`` exactly, else None."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_exp, lt_c = d.leading_term()
        rem = self
        quot: Dict[Monomial, Fraction] = {}
        while rem.terms:
            e, c = rem.leading_term()
            shift = tuple(i - j for i, j in zip(e, lt_exp))
            if any(s < 0 for s in shift):
                return None
            q = c / lt_c
            quot[shift] = q
            rem = rem - d * MultiPoly._raw({shift: q})
        return MultiPoly._raw(quot)

    # -- rendering ----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                VARS[i] if k == 1 else f"{VARS[i]}^{k}" for i, k in enumerate(exp) if k
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_rational(mag)}*{mono}"
            else:
                body = _fmt_rational(mag)
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class DenominatorVanishes(ZeroDivisionError):
    """Raised when a rational function is evaluated at a pole."""


class RatFunc:
    """Quotient of two MultiPoly. Never gcd-reduced; equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = MultiPoly._lift(num)
        den = MultiPoly.const(1) if den is None else MultiPoly._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def _lift(cls, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (MultiPoly, int, Fraction)):
            return cls(other)
        return NotImplemented

    def _common(self, other: "RatFunc"):
        # Denominators in this package are products of powers of a few
        # polynomials, so trying exact division first keeps degrees small.
        if self.den == other.den:
            return self.num, other.num, self.den
        q = self.den.exact_div(other.den)
        if q is not None:
            return self.num, other.num * q, self.den
        q = other.den.exact_div(self.den)
        if q is not None:
            return self.num * q, other.num, other.den
        return self.num * other.den, other.num * self.den, self.den * other.den

    def __add__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        n1, n2, d = self._common(other)
        return RatFunc(n1 + n2, d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc._lift(other) / self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def equals(self, other) -> bool:
        other = RatFunc._lift(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def diff(self, var: str) -> "RatFunc":
        if self.den.is_constant():
            return RatFunc(self.num.diff(var), self.den)
        return RatFunc(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def subs(self, assignment) -> "RatFunc":
        return RatFunc(self.num.subs(assignment), self.den.subs(assignment))

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(assignment)
        if d == 0:
            raise DenominatorVanishes(f"denominator vanishes at {dict(assignment)}")
        return self.num.evaluate(assignment) / d

    def __str__(self):
        if self.den == MultiPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def ratfunc_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    ops = {"add": f.__add__, "sub": f.__sub__, "mul": f.__mul__, "div": f.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown rational-function operation {op!r}")
    return ops[op](g)


def symbols(names: Iterable[str] = VARS):
    """Convenience: ``x, a, m, u = symbols("xamu")``."""
    return tuple(MultiPoly.var(n) for n in names)
