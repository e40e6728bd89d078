from fractions import Fraction as F

import pytest

from qpfaff.algebra import (
    ONE, Add, AffineExp, Div, Mono, Monomial, Mul, Poch, Point, as_rational, expr_symbols,
    format_rational, mono_eval, parse_affine, parse_monomial,
)
from qpfaff.errors import DivisionByZero, InadmissiblePoint, NegativePochLength, UnboundSymbol


def pt(n=0, base="q", **values):
    return Point.of({k: F(v) for k, v in values.items()}, n, base)


def test_identity_monomial_is_one():
    assert mono_eval(ONE, pt(q="1/3", z="5/7")) == 1
    assert mono_eval(Monomial.build(), pt(q="2")) == 1


def test_rationalized_monomial_example():
    # d^2 q^(n+1) with q = t^2 becomes d^2 t^(2n+2)
    m = parse_monomial("d^2 q^(n+1)", {"q": "t"})
    assert m.exponent("t") == AffineExp(2, 2)
    assert mono_eval(m, pt(n=1, base="t", d=3, t="1/2")) == F(9, 16)


def test_negative_root_monomial_example():
    m = parse_monomial("-q sqrt(a)", {"a": "A"})
    for n in (0, 3):
        assert mono_eval(m, pt(n=n, q="1/3", A=2)) == F(-2, 3)


def test_parse_monomial_forms():
    m = parse_monomial("3 a^2 q^(-n+1) / b c")
    assert m.coefficient == 3
    assert m.exponent("a") == AffineExp(2, 0)
    assert m.exponent("q") == AffineExp(1, -1)
    assert m.exponent("b") == AffineExp(-1, 0)
    assert m.exponent("c") == AffineExp(-1, 0)
    assert parse_monomial("b^n").exponent("b") == AffineExp(0, 1)
    assert parse_monomial("1") == ONE
    assert parse_monomial("a / a") == ONE


def test_monomial_algebra():
    a = parse_monomial("2 a q^n")
    b = parse_monomial("a^-1 q")
    assert a * b == parse_monomial("2 q^(n+1)")
    assert (a / a) == ONE
    assert (-a).coefficient == -2
    assert a**2 == parse_monomial("4 a^2 q^(2n)")
    assert parse_monomial("b").power_affine(AffineExp(1, 1)) == parse_monomial("b b^n")
    with pytest.raises(ValueError):
        a.power_affine(AffineExp(0, 1))


def test_parse_affine():
    assert parse_affine("2n-3") == AffineExp(-3, 2)
    assert parse_affine("-n") == AffineExp(0, -1)
    assert parse_affine("4") == AffineExp(4, 0)
    assert AffineExp(-3, 2).at(5) == 7
    assert str(AffineExp(1, -1)) == "-n+1"


def test_unbound_symbol():
    with pytest.raises(UnboundSymbol) as err:
        mono_eval(parse_monomial("a b"), pt(a=1, q="1/2"))
    assert "b" in str(err.value)


def test_point_rejects_inadmissible_values():
    with pytest.raises(InadmissiblePoint):
        pt(q=0)
    with pytest.raises(InadmissiblePoint):
        pt(q=-1)
    with pytest.raises(InadmissiblePoint):
        pt(n=-1, q="1/2")


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert format_rational(F(4, 2)) == "2/1"
    assert format_rational(F(-3, 6)) == "-1/2"


def test_expression_examples():
    p = pt(n=1, q="1/2", z="1/4")
    one_minus_z = Add((Mono(ONE), Mono(parse_monomial("-z"))))
    assert one_minus_z.evaluate(p) == F(3, 4)
    # (z q^-n; q)_n at z=1/3, q=1/2, n=1
    poch = Poch(parse_monomial("z q^(-n)"), 1, AffineExp(0, 1))
    assert poch.evaluate(pt(n=1, q="1/2", z="1/3")) == F(1, 3)
    assert expr_symbols(poch) == {"z", "q"}


def test_div_by_zero_names_subtree():
    e = Div(Mono(ONE), Add((Mono(ONE), Mono(parse_monomial("-z")))))
    with pytest.raises(DivisionByZero) as err:
        e.evaluate(pt(q="1/2", z=1))
    assert "z" in str(err.value)
    assert isinstance(err.value, ZeroDivisionError)


def test_negative_length_pochhammer_in_expression():
    e = Poch(parse_monomial("z"), 1, AffineExp(-2, 1))
    with pytest.raises(NegativePochLength):
        e.evaluate(pt(n=1, q="1/2", z="1/3"))


def test_poch_base_exponent_uses_root():
    # (d; sqrt(q))_2 with sqrt(q) = t = 1/2
    e = Poch(parse_monomial("d"), 1, AffineExp(2, 0))
    assert e.evaluate(pt(base="t", t="1/2", d=3)) == (1 - 3) * (1 - F(3, 2))
    e2 = Poch(parse_monomial("d"), 2, AffineExp(2, 0))
    assert e2.evaluate(pt(base="t", t="1/2", d=3)) == (1 - 3) * (1 - F(3, 4))


def test_mul_evaluates_product():
    e = Mul((Mono(parse_monomial("2")), Mono(parse_monomial("z"))))
    assert e.evaluate(pt(q="1/2", z=5)) == 10
