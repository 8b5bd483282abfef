"""Text grammar for kernels, operators and certificates.

Expressions use the variables ``x, a, m, u``, integer literals, ``+ - * / ^``
and parentheses. Operators may additionally contain the marker ``D_a`` (or
``D_x``), written in normal form with coefficients to the left, e.g.::

    -4*m - 3 - 4*a*(2*m+3)*D_a - 4*(a^2-1)*D_a^2

Division is allowed by any expression free of ``D`` markers. ``^`` takes a
non-negative integer literal exponent.
"""
from __future__ import annotations

import ast
import configparser
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict

from .arith import MultiPoly, RatFunc

ALLOWED_NAMES = ("x", "a", "m", "u")
MARKERS = ("D_a", "D_x")


class GrammarError(ValueError):
    pass


# An expression evaluates to {(marker, power): RatFunc}; marker is None for
# D-free parts.
_Expr = Dict[tuple, RatFunc]


def _const(c) -> _Expr:
    return {(None, 0): RatFunc(MultiPoly.const(c))}


def _mul(p: _Expr, q: _Expr) -> _Expr:
    out: _Expr = {}
    for (m1, k1), v1 in p.items():
        for (m2, k2), v2 in q.items():
            if m1 and m2 and m1 != m2:
                raise GrammarError("D_a and D_x cannot appear in the same operator")
            if k1 and not (v2.num.is_constant() and v2.den.is_constant()):
                raise GrammarError("coefficients must stand to the left of D markers")
            key = (m1 or m2, k1 + k2)
            out[key] = out[key] + v1 * v2 if key in out else v1 * v2
    return out


def _eval(node) -> _Expr:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return _const(node.value)
    if isinstance(node, ast.Name):
        if node.id in ALLOWED_NAMES:
            return {(None, 0): RatFunc(MultiPoly.var(node.id))}
        if node.id in MARKERS:
            return {(node.id, 1): RatFunc(MultiPoly.const(1))}
        raise GrammarError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _eval(node.operand)
        if isinstance(node.op, ast.USub):
            return {k: -v for k, v in inner.items()}
        return inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
                    and node.right.value >= 0):
                raise GrammarError("exponents must be non-negative integer literals")
            base = _eval(node.left)
            k = node.right.value
            if set(base) == {(None, 0)}:
                f = base[(None, 0)]
                return {(None, 0): RatFunc(f.num ** k, f.den ** k)}
            if len(base) == 1:
                (marker, power), coeff = next(iter(base.items()))
                if coeff.num == MultiPoly.const(1) and coeff.den == MultiPoly.const(1):
                    return {(marker, power * k): coeff}
            raise GrammarError("only plain D markers or D-free expressions may be raised to a power")
        left, right = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return _merge(left, right, 1)
        if isinstance(node.op, ast.Sub):
            return _merge(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return _mul(left, right)
        if isinstance(node.op, ast.Div):
            if set(right) != {(None, 0)}:
                raise GrammarError("cannot divide by an expression containing D markers")
            return {k: v / right[(None, 0)] for k, v in left.items()}
    raise GrammarError(f"unsupported syntax: {ast.dump(node)}")


def _merge(p: _Expr, q: _Expr, sign: int) -> _Expr:
    out = dict(p)
    for k, v in q.items():
        v = v if sign > 0 else -v
        out[k] = out[k] + v if k in out else v
    return out


def _parse(text: str) -> _Expr:
    src = text.replace("^", "**").replace("−", "-")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise GrammarError(f"cannot parse {text!r}: {exc.msg}") from None
    parsed = _eval(tree)
    # normalise D^0 to the plain part
    out: _Expr = {}
    for (marker, k), v in parsed.items():
        key = (marker if k else None, k)
        out[key] = out[key] + v if key in out else v
    return out


def parse_ratfunc(text: str) -> RatFunc:
    parsed = _parse(text)
    if any(marker for marker, _ in parsed):
        raise GrammarError(f"unexpected D marker in {text!r}")
    return parsed.get((None, 0), RatFunc(MultiPoly()))


def parse_poly(text: str) -> MultiPoly:
    f = parse_ratfunc(text)
    if not f.den.is_constant():
        raise GrammarError(f"{text!r} is not a polynomial")
    return f.num * MultiPoly.const(1 / f.den.constant_term())


def parse_operator(text: str):
    """Parse to ``(marker, [p0, p1, ...])`` with polynomial coefficients."""
    parsed = _parse(text)
    markers = {m for m, _ in parsed if m}
    if len(markers) > 1:
        raise GrammarError("operator mixes D_a and D_x")
    marker = markers.pop() if markers else "D_a"
    order = max(k for _, k in parsed)
    coeffs = []
    for i in range(order + 1):
        f = parsed.get((marker if i else None, i))
        if f is None:
            coeffs.append(MultiPoly())
            continue
        if not f.den.is_constant():
            raise GrammarError("operator coefficients must be polynomials")
        coeffs.append(f.num * MultiPoly.const(Fraction(1) / f.den.constant_term()))
    return marker, coeffs


@dataclass(frozen=True)
class TripleSpec:
    """One (kernel, operator, certificate) entry of a data file."""

    name: str
    kernel: str
    x_exponent: str
    operator: str
    certificate: str
    printed: str = ""
    typos: str = ""
    note: str = ""


def load_triples(filename: str) -> Dict[str, TripleSpec]:
    """Load the built-in INI data file ``filename`` from the package data."""
    text = resources.files("quartic_lab.data").joinpath(filename).read_text()
    return parse_triples(text)


def parse_triples(text: str) -> Dict[str, TripleSpec]:
    cp = configparser.ConfigParser(interpolation=None)
    cp.read_string(text)
    out = {}
    for name in cp.sections():
        sec = cp[name]
        out[name] = TripleSpec(
            name=name,
            kernel=sec["kernel"],
            x_exponent=sec.get("x_exponent", "0"),
            operator=sec["operator"],
            certificate=sec["certificate"],
            printed=sec.get("printed", "").strip(),
            typos=sec.get("typos", "").strip(),
            note=sec.get("note", "").strip(),
        )
    return out
