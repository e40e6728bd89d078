"""Randomized checks of the algebraic laws the evaluators rely on."""


from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qpfaff.algebra import Point, mono_eval, parse_monomial
from qpfaff.catalog import CATALOG, get_identity
from qpfaff.errors import EVALUATION_ERRORS
from qpfaff.qseries import phi_partial_sum, phi_terminating_eval, qpoch

small = st.fractions(min_value=-8, max_value=8, max_denominator=8).filter(lambda x: x != 0)
base = small.filter(lambda x: abs(x) != 1)
length = st.integers(min_value=-6, max_value=6)


def _safe(f, *args):
    try:
        return f(*args)
    except ZeroDivisionError:
        assume(False)


@given(small, base, length, length)
def test_pochhammer_addition(a, q, n, m):
    lhs = _safe(qpoch, a, q, n + m)
    rhs = _safe(qpoch, a, q, n) * _safe(qpoch, a * q**n, q, m)
    assert lhs == rhs


@given(small, base, length)
def test_pochhammer_reciprocal(a, q, n):
    lhs = _safe(qpoch, a, q, -n)
    rhs = _safe(lambda: (-q / a) ** n * q ** (n * (n - 1) // 2) / qpoch(q / a, q, n))
    assert lhs == rhs


@given(base, small, small, st.integers(0, 5))
def test_monomial_evaluation_is_multiplicative(q, a, b, n):
    p = Point.of({"q": q, "a": a, "b": b}, n, "q")
    m1, m2 = parse_monomial("2 a^2 q^(n-1)"), parse_monomial("-3 b / a q^(2n)")
    assert mono_eval(m1 * m2, p) == mono_eval(m1, p) * mono_eval(m2, p)
    assert mono_eval(m1.inverse(), p) == 1 / mono_eval(m1, p)


ids = st.sampled_from([r for r in CATALOG if not get_identity(r).constraints])


@settings(max_examples=60, deadline=None)
@given(ids, st.data(), st.integers(0, 4), st.integers(1, 4))
def test_termination_extends(rid, data, n, extra):
    rec = get_identity(rid)
    values = {s: data.draw(small) for s in rec.sampled_symbols}
    assume(abs(values[rec.base]) != 1)
    p = Point.of(values, n, rec.base)
    try:
        full = phi_terminating_eval(rec.lhs, p)
        longer = phi_partial_sum(rec.lhs, p, rec.lhs.termination_bound(n) + extra)
    except EVALUATION_ERRORS:
        assume(False)
    assert full == longer
