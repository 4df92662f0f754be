"""Parser and exact Taylor expansion of germ expressions."""

from fractions import Fraction

import pytest

from germforge.germexpr import (
    GermSyntaxError,
    NonUnitDivisorError,
    UnknownVariableError,
    expr_to_string,
    parse_and_expand,
    parse_germ,
)
from germforge.jets import Jet

V = ("x", "lam")


def j(text, k=None):
    return parse_and_expand(text, V, k)


def test_basic_polynomials():
    x = Jet.variable("x", V)
    lam = Jet.variable("lam", V)
    assert j("x^2 + lam") == x * x + lam
    assert j("3/2*x - lam^3") == x.scale(Fraction(3, 2)) - lam ** 3
    assert j("-x") == x.scale(-1)
    assert j("(x + lam)^2") == (x + lam) ** 2


def test_precedence_and_whitespace():
    assert j(" 2 * x + lam * x ") == j("2*x+lam*x")
    assert j("2*x^3") == j("2*(x^3)")
    assert j("x - lam - lam") == j("x - 2*lam")


def test_rational_literals():
    assert j("1/2*x").terms[(1, 0)] == Fraction(1, 2)
    assert j("7*x").terms[(1, 0)] == 7


def test_series_expansions():
    # sin u = u - u^3/6 + ..., cos u = 1 - u^2/2 + ..., exp u = 1 + u + ...
    assert j("sin(x)", 5) == j("x - 1/6*x^3 + 1/120*x^5", 5)
    assert j("cos(x)", 4) == j("1 - 1/2*x^2 + 1/24*x^4", 4)
    assert j("exp(lam)", 3) == j("1 + lam + 1/2*lam^2 + 1/6*lam^3", 3)
    assert j("sin(x^3 + lam)", 4) == j("lam + x^3 - 1/6*lam^3", 4)


def test_unit_division():
    assert j("1/(1 + x)", 3) == j("1 - x + x^2 - x^3", 3)
    assert j("x/(1 - lam)", 3) == j("x + x*lam + x*lam^2", 3)


def test_nonunit_division_rejected():
    with pytest.raises(NonUnitDivisorError):
        j("1/x", 4)
    with pytest.raises(NonUnitDivisorError):
        j("lam/(x + lam)", 4)


def test_function_argument_must_vanish():
    with pytest.raises(NonUnitDivisorError):
        j("sin(1 + x)", 4)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        j("x + y")


def test_syntax_errors_carry_position():
    with pytest.raises(GermSyntaxError) as e:
        j("x + ")
    assert e.value.position == 4
    with pytest.raises(GermSyntaxError):
        j("x^lam")
    with pytest.raises(GermSyntaxError):
        j("(x + lam")


def test_roundtrip_through_strings():
    for text in ["x^2 + lam", "sin(x^3) - 1", "x*(1 + lam)^2", "1/2 - x/(1+lam)"]:
        tree = parse_germ(text, V)
        again = parse_germ(expr_to_string(tree), V)
        k = 6
        from germforge.germexpr import taylor_expand

        assert taylor_expand(tree, V, k) == taylor_expand(again, V, k)
