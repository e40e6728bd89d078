from fractions import Fraction as F

import pytest

import oracle
from qpfaff.algebra import AffineExp, Mul, Point, Poch, parse_monomial
from qpfaff.catalog import (
    CATALOG, IDENTITY_IDS, all_recurrences, get_identity, lhs_value, parameter_values,
    point_from_parameters, resolve_constraints, rhs_value,
)
from qpfaff.errors import InadmissiblePoint, UnboundSymbol, UnknownIdentity

EXPECTED_IDS = ["T1.1", "T1.2", "T1.3", "T1.4", "T1.5", "T1.6a", "T1.6b", "T1.7", "T1.8",
                "T1.9a", "T1.9b"]


def test_catalog_ids():
    assert list(CATALOG) == EXPECTED_IDS
    assert list(IDENTITY_IDS) == EXPECTED_IDS


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_identity("T2.1")


def test_q_binomial_shape():
    lhs = get_identity("T1.1").lhs
    assert lhs.numerator == (parse_monomial("q^(-n)"),)
    assert lhs.argument == parse_monomial("z")
    assert lhs.base_exponent == 1


def test_jackson_constraint():
    rec = get_identity("T1.8")
    (c,) = rec.constraints
    assert c.left == parse_monomial("a^2 q", rec.roots)
    assert c.right == parse_monomial("b c d e q^(-n)", rec.roots)
    assert c.solve_for == "e"


def test_andrews_first_member_product_side():
    rec = get_identity("T1.6a")
    factors = rec.rhs.num.factors
    assert parse_monomial("b^n", {"q": "t"}) in [getattr(f, "m", None) for f in factors]
    pochs = [f for f in factors + rec.rhs.den.factors if isinstance(f, Poch)]
    assert pochs and all(p.base_exponent == 1 and p.length == AffineExp(0, 1) for p in pochs)
    assert rec.base == "t" and rec.roots == {"q": "t"}


def test_andrews_first_member_value():
    p = Point.of({"b": F(2), "d": F(3), "t": F(1, 2)}, 1, "t")
    expected, _ = oracle.t16a(F(2), F(3), F(1, 2), 1)
    assert lhs_value("T1.6a", p) == expected == rhs_value("T1.6a", p)


def test_constraint_solution_example():
    p = point_from_parameters("T1.8", {"a": F(4), "b": F(2), "c": F(3), "d": F(5), "q": F(1, 2)}, 2)
    assert p["e"] == F(1, 15)
    v = parameter_values("T1.8", p)
    a, b, c, d, e, q = (v[s] for s in "abcdeq")
    assert a * a * q == 8 == b * c * d * e * q**-2


def test_constraint_is_resolved_per_n():
    p = point_from_parameters("T1.8", {"a": F(4, 9), "b": F(3), "c": F(-5, 2), "d": F(7),
                                       "q": F(1, 3)}, 1)
    for n in range(5):
        pn = resolve_constraints("T1.8", p.with_n(n))
        e, lhs, rhs = oracle.t18(F(4, 9), F(3), F(-5, 2), F(7), F(1, 3), n)
        assert pn["e"] == e
        assert lhs_value("T1.8", pn) == lhs == rhs == rhs_value("T1.8", pn)


def test_no_constraints_returns_point_unchanged():
    p = Point.of({"q": F(1, 2), "z": F(1, 3)}, 2, "q")
    assert resolve_constraints("T1.1", p) is p


def test_square_root_substitutions():
    p = point_from_parameters("T1.9a", {"a": F(4), "k": F(9), "q": F(1, 4)}, 2)
    assert (p["A"], p["K"], p["t"]) == (2, 3, F(1, 2))
    params = parameter_values("T1.9a", p)
    assert (params["a"], params["k"], params["q"]) == (4, 9, F(1, 4))
    # k/(a q) and k q^n built from the substitution table
    assert parse_monomial("k / a q", {"a": "A", "k": "K", "q": "t"}).evaluate(p) == 9
    assert parse_monomial("k q^n", {"a": "A", "k": "K", "q": "t"}).evaluate(p) == F(9, 16)


def test_non_square_parameter_rejected():
    with pytest.raises(InadmissiblePoint):
        point_from_parameters("T1.9a", {"a": F(2), "k": F(9), "q": F(1, 4)}, 1)
    with pytest.raises(UnboundSymbol):
        point_from_parameters("T1.1", {"q": F(1, 2)}, 1)
    with pytest.raises(UnboundSymbol):
        point_from_parameters("T1.1", {"q": F(1, 2), "z": F(1, 3), "w": F(1)}, 1)


def test_point_values_examples():
    p = Point.of({"q": F(1, 2), "z": F(1, 3)}, 1, "q")
    assert lhs_value("T1.1", p) == F(1, 3) == rhs_value("T1.1", p)
    p = Point.of({"a": F(2), "c": F(3), "q": F(1, 2)}, 1, "q")
    assert lhs_value("T1.2", p) == F(1, 2) == rhs_value("T1.2", p)


ORACLE_POINTS = {
    "T1.1": ({"q": F(-2, 3), "z": F(5, 7)}, lambda v, n: oracle.t11(v["q"], v["z"], n)),
    "T1.2": ({"a": F(2), "c": F(-3, 4), "q": F(1, 3)},
             lambda v, n: oracle.t12(v["a"], v["c"], v["q"], n)),
    "T1.3": ({"a": F(2), "b": F(3), "c": F(5), "q": F(1, 2)},
             lambda v, n: oracle.t13(v["a"], v["b"], v["c"], v["q"], n)),
    "T1.5": ({"a": F(1, 5), "c": F(-2), "q": F(2, 3)},
             lambda v, n: oracle.t15(v["a"], v["c"], v["q"], n)),
    "T1.6b": ({"b": F(5, 2), "d": F(3), "t": F(1, 2)},
              lambda v, n: oracle.t16b(v["b"], v["d"], v["t"], n)),
    "T1.9a": ({"A": F(3, 5), "K": F(-4, 7), "t": F(2, 3)},
              lambda v, n: oracle.t19(v["A"], v["K"], v["t"], n)),
    "T1.9b": ({"A": F(3, 5), "K": F(-4, 7), "t": F(2, 3)},
              lambda v, n: oracle.t19(v["A"], v["K"], v["t"], n, second=True)),
}


@pytest.mark.parametrize("rid", sorted(ORACLE_POINTS))
def test_sides_match_direct_summation(rid):
    values, ref = ORACLE_POINTS[rid]
    rec = get_identity(rid)
    for n in range(5):
        p = Point.of(values, n, rec.base)
        lhs, rhs = ref(values, n)
        assert lhs == rhs
        assert lhs_value(rec, p) == lhs
        assert rhs_value(rec, p) == rhs


@pytest.mark.parametrize("rid", EXPECTED_IDS)
def test_n0_gives_one(rid):
    from qpfaff.sampler import SamplerConfig, sample_point

    rec = get_identity(rid)
    p = sample_point(rec, SamplerConfig(n_max=0, seed=7), 0).with_n(0)
    assert lhs_value(rec, p) == 1 == rhs_value(rec, p)


def test_twenty_recurrences_with_mirrors():
    recs = all_recurrences()
    assert len(recs) == 20
    for rid, rec in recs.items():
        assert recs[rec.mirror].mirror == rid
        assert {rec.side, recs[rec.mirror].side} == {"lhs", "rhs"}
    unproven = sorted(r for r, rec in recs.items() if not rec.derivation_given)
    assert unproven == ["T1.6:prod:A-B", "T1.6:sum:A-B", "T1.9:prod:B-A", "T1.9:sum:B-A"]


def test_psi_prime_is_grouped_product():
    assert isinstance(all_recurrences()["T1.9:prod:A-B"].multiplier, Mul)
