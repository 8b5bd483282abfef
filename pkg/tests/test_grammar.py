from fractions import Fraction

import pytest

from quartic_lab.arith import MultiPoly, symbols
from quartic_lab.grammar import (
    GrammarError,
    load_triples,
    parse_operator,
    parse_poly,
    parse_ratfunc,
    parse_triples,
)

x, a, m, u = symbols("xamu")


def test_parse_poly():
    assert parse_poly("x^4 + 2*a*x^2 + 1") == x**4 + 2 * a * x**2 + 1
    assert parse_poly("(x+1)^2/2") == (x**2 + 2 * x + 1) * Fraction(1, 2)


def test_parse_operator_quartic():
    marker, cs = parse_operator("-4*m - 3 - 4*a*(2*m+3)*D_a - 4*(a^2-1)*D_a^2")
    assert marker == "D_a"
    assert cs == [-4 * m - 3, -4 * a * (2 * m + 3), -4 * (a**2 - 1)]


def test_parse_operator_without_marker():
    assert parse_operator("1") == ("D_a", [MultiPoly.const(1)])


@pytest.mark.parametrize(
    "text",
    ["D_a*a", "x/D_a", "y + 1", "x^-1", "x**a", "D_a*D_x", "import os", "x^(1/2)", "1.5*x"],
)
def test_rejects(text):
    with pytest.raises(GrammarError):
        parse_operator(text)


def test_parse_ratfunc_not_poly():
    with pytest.raises(GrammarError):
        parse_poly("1/x")
    assert parse_ratfunc("1/x").equals(parse_ratfunc("x/x^2"))


def test_builtin_files_load():
    t2 = load_triples("quartic.ini")
    t3 = load_triples("general_n.ini")
    assert list(t2) == ["printed"]
    assert list(t3) == ["printed", "kernel", "operator", "corrected"]


def test_parse_triples_inline():
    text = """
[v]
kernel = x^2 + 1
operator = D_a
certificate = 0
"""
    t = parse_triples(text)["v"]
    assert t.x_exponent == "0"
    assert parse_poly(t.kernel) == x**2 + 1
