"""Built-in identities: nine terminating q-series sum/product formulas.

Parameters are written in the conventional notation and rationalized on
construction: an identity that needs ``sqrt(a)`` declares a symbol ``A`` with
``a = A^2``, and ``sqrt(q)`` becomes the base symbol ``t`` with ``q = t^2``.
Square roots are always taken on the branch ``sqrt(a) = A``.

The parameter lists below follow the printed statements item by item; when a
check fails the engine reports the discrepancy instead of correcting it here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import BASE, Add, Div, Mono, Monomial, Mul, Poch, Point, Symbol, parse_affine, parse_monomial
from .errors import InadmissiblePoint, UnboundSymbol, UnknownIdentity
from .qseries import SeriesSpec, phi_terminating_eval
from .records import LHS, RHS, Constraint, IdentityRecord, RecurrenceSpec, SeqRef


class _Encoder:
    """Shorthand builders bound to one identity's symbol table."""

    def __init__(self, symbols: Iterable[Symbol]):
        self.symbols = tuple(symbols)
        self.base = next(s.name for s in self.symbols if s.role == BASE)
        self.roots = {s.square_of: s.name for s in self.symbols if s.square_of}
        # exponent of the base symbol that represents one power of q
        self.q_units = 2 if self.roots.get("q") == self.base else 1

    def m(self, text: str) -> Monomial:
        return parse_monomial(text, self.roots)

    def mono(self, text: str) -> Mono:
        return Mono(self.m(text))

    def lin(self, *terms: str) -> Add:
        return Add(tuple(self.mono(t) for t in terms))

    def one_minus(self, text: str) -> Add:
        return Add((Mono(Monomial()), Mono(-self.m(text))))

    def base_exponent(self, base: str) -> int:
        return {"q": self.q_units, "q^2": 2 * self.q_units, "sqrt(q)": 1}[base]

    def poch(self, arg: str, base: str = "q", length: str = "n") -> Poch:
        if base == "sqrt(q)" and self.q_units != 2:
            raise ValueError("sqrt(q)-based factor needs q declared as a square")
        return Poch(self.m(arg), self.base_exponent(base), parse_affine(length))

    def frac(self, num, den) -> Div:
        return Div(Mul(tuple(num)), Mul(tuple(den)))

    def series(self, num, den, argument, base="q", terminating="q^(-n)") -> SeriesSpec:
        return SeriesSpec(
            base_exponent=self.base_exponent(base),
            numerator=tuple(self.m(x) for x in num),
            denominator=tuple(self.m(x) for x in den),
            argument=self.m(argument),
            terminating_index=list(num).index(terminating),
            base=self.base,
        )

    def shift(self, **changes: str) -> tuple[tuple[str, Monomial], ...]:
        return tuple((s, self.m(t)) for s, t in changes.items())


def _rec(id, side, target, subtract, shifted, multiplier, shift, name="M", mirror=None,
         derivation_given=True, subtract_offset=-1):
    return RecurrenceSpec(
        id=id,
        side=side,
        target=SeqRef(target, 0),
        subtract=SeqRef(subtract, subtract_offset),
        shifted=SeqRef(shifted, -1),
        multiplier=multiplier,
        shift=shift,
        multiplier_name=name,
        mirror=mirror,
        derivation_given=derivation_given,
    )


def _simple_pair(id, sum_m, prod_m, shift, name="M"):
    """Sum-side and product-side first-order recurrences of one identity."""
    return (
        _rec(f"{id}:sum", LHS, id, id, id, sum_m, shift, name, mirror=f"{id}:prod"),
        _rec(f"{id}:prod", RHS, id, id, id, prod_m, shift, name + "'", mirror=f"{id}:sum"),
    )


def _t11() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("z")])
    # S_n = (1 - z q^-n) S_(n-1), i.e. a zero shift with multiplier -z q^-n
    mult = lambda: E.mono("-z q^(-n)")
    return IdentityRecord(
        id="T1.1",
        name="q-binomial theorem",
        reference="Gasper-Rahman (II.4)",
        symbols=E.symbols,
        lhs=E.series(["q^(-n)"], [], "z"),
        rhs=E.poch("z q^(-n)"),
        recurrences=_simple_pair("T1.1", mult(), mult(), ()),
    )


def _t12() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("a"), Symbol("c")])
    mult = lambda: E.frac([E.mono("-q^(-n+1)"), E.one_minus("a")], [E.one_minus("c")])
    return IdentityRecord(
        id="T1.2",
        name="q-Chu-Vandermonde",
        reference="Gasper-Rahman (II.6)",
        symbols=E.symbols,
        lhs=E.series(["a", "q^(-n)"], ["c"], "q"),
        rhs=E.frac([E.poch("c / a"), E.mono("a^n")], [E.poch("c")]),
        recurrences=_simple_pair("T1.2", mult(), mult(), E.shift(a="a q", c="c q")),
    )


def _t13() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("a"), Symbol("b"), Symbol("c")])
    mult = lambda: E.frac(
        [E.mono("-q^(-n+1)"), E.one_minus("a"), E.one_minus("b"), E.one_minus("a b q / c")],
        [E.one_minus("c"), E.one_minus("a b q^(-n+1) / c"), E.one_minus("a b q^(-n+2) / c")],
    )
    return IdentityRecord(
        id="T1.3",
        name="q-Pfaff-Saalschutz",
        reference="Gasper-Rahman (II.12)",
        symbols=E.symbols,
        lhs=E.series(["a", "b", "q^(-n)"], ["c", "a b q^(-n+1) / c"], "q"),
        rhs=E.frac([E.poch("c / a"), E.poch("c / b")], [E.poch("c"), E.poch("c / a b")]),
        recurrences=_simple_pair(
            "T1.3", mult(), mult(), E.shift(a="a q", b="b q", c="c q")
        ),
    )


def _t14() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("A", square_of="a"), Symbol("b")])
    mult = lambda: E.frac(
        [E.mono("-1"), E.one_minus("sqrt(a)"), E.lin("1", "q sqrt(a)"), E.one_minus("a q"),
         E.one_minus("b"), E.mono("q^n sqrt(a) / b")],
        [E.one_minus("a q / b"), E.one_minus("a q^n"), E.one_minus("a q^(n+1)")],
    )
    return IdentityRecord(
        id="T1.4",
        name="q-Dixon",
        reference="Gasper-Rahman (II.14)",
        symbols=E.symbols,
        lhs=E.series(
            ["a", "-q sqrt(a)", "b", "q^(-n)"],
            ["-sqrt(a)", "a q / b", "a q^(n+1)"],
            "q^(n+1) sqrt(a) / b",
        ),
        rhs=E.frac([E.poch("a q"), E.poch("q sqrt(a) / b")],
                   [E.poch("q sqrt(a)"), E.poch("a q / b")]),
        # a -> a q^2 means sqrt(a) -> sqrt(a) q
        recurrences=_simple_pair("T1.4", mult(), mult(), E.shift(A="sqrt(a) q", b="b q")),
    )


def _t15() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("a"), Symbol("c")])
    return IdentityRecord(
        id="T1.5",
        name="quadratic-base 4phi3 (Gasper-Rahman Ex. 3.34)",
        reference="Gasper-Rahman p. 110, Ex. 3.34",
        symbols=E.symbols,
        lhs=E.series(
            ["q^(-2n)", "c^2", "a", "a q"],
            ["a^2 q^2", "c q^(-n)", "c q^(-n+1)"],
            "q^2",
            base="q^2",
            terminating="q^(-2n)",
        ),
        rhs=E.frac([E.poch("-q"), E.poch("a q / c")], [E.poch("-a q"), E.poch("q / c")]),
        notes="certified by direct equality and the Singh quadratic-transformation chain",
        extra_checks=("singh",),
    )


def singh_stages(record: IdentityRecord | None = None):
    """The four equal quantities of the base-change reduction of ``T1.5``.

    Returns ``(name, evaluator)`` pairs; each evaluator takes a point in the
    ``T1.5`` symbol table.  The middle stages come from Singh's quadratic
    transformation with ``(a, b, c, d) -> (sqrt(a), sqrt(aq), -c, q^-n)``,
    then cancelling the ``aq`` pair; the last is the q-Pfaff-Saalschutz
    product with ``(a, b, c) -> (a, -c, -aq)``.
    """
    record = record or get_identity("T1.5")
    E = _Encoder(record.symbols)
    stage2 = E.series(["a", "a q", "-c", "q^(-n)"], ["a q", "-a q", "c q^(-n)"], "q")
    stage3 = E.series(["a", "-c", "q^(-n)"], ["-a q", "c q^(-n)"], "q")
    closed = E.frac([E.poch("-q"), E.poch("a q / c")], [E.poch("-a q"), E.poch("q / c")])
    return (
        ("base q^2 4phi3", lambda p: phi_terminating_eval(record.lhs, p)),
        ("base q 4phi3", lambda p: phi_terminating_eval(stage2, p)),
        ("base q 3phi2", lambda p: phi_terminating_eval(stage3, p)),
        ("closed form", closed.evaluate),
    )


def _t16() -> tuple[IdentityRecord, IdentityRecord]:
    syms = [Symbol("t", BASE, square_of="q"), Symbol("b"), Symbol("d")]
    E = _Encoder(syms)
    shared_den = lambda: [E.lin("1", "b"), E.lin("1", "b sqrt(q)"), E.one_minus("d q"),
                          E.one_minus("d sqrt(q)")]
    b_minus_a = lambda: E.frac(
        [E.mono("-q"), E.lin("b^2", "-d^2 q^n"), E.one_minus("q^(-n)")], shared_den()
    )
    a_minus_b = lambda: E.frac(
        [E.mono("q"), E.one_minus("d^2 q^n"), E.lin("b^2", "-q^(-n)")], shared_den()
    )
    shift = E.shift(b="b q", d="d q")
    recs = (
        _rec("T1.6:sum:B-A", LHS, "T1.6b", "T1.6a", "T1.6a", b_minus_a(), shift, "M1",
             "T1.6:prod:B-A", subtract_offset=0),
        _rec("T1.6:sum:A-B", LHS, "T1.6a", "T1.6b", "T1.6a", a_minus_b(), shift, "M2",
             "T1.6:prod:A-B", derivation_given=False),
        _rec("T1.6:prod:B-A", RHS, "T1.6b", "T1.6a", "T1.6a", b_minus_a(), shift, "M1'",
             "T1.6:sum:B-A", subtract_offset=0),
        _rec("T1.6:prod:A-B", RHS, "T1.6a", "T1.6b", "T1.6a", a_minus_b(), shift, "M2'",
             "T1.6:sum:A-B", derivation_given=False),
    )
    h = "sqrt(q)"
    a = IdentityRecord(
        id="T1.6a",
        name="Andrews / Li-Chu 4phi3, first member",
        reference="Andrews (1996) eq. (7.7); Li-Chu (2019) eq. (2)",
        symbols=E.symbols,
        lhs=E.series(["q^(-n)", "b", "b sqrt(q)", "d^2 q^n"], ["d q", "d sqrt(q)", "b^2"], "q"),
        rhs=E.frac(
            [E.mono("b^n"), E.one_minus("d"), E.poch("-sqrt(q)", h), E.poch("d sqrt(q) / b", h)],
            [E.one_minus("q^n d"), E.poch("-b", h), E.poch("d", h)],
        ),
        recurrences=recs,
        family="T1.6",
    )
    b = IdentityRecord(
        id="T1.6b",
        name="Andrews / Li-Chu 4phi3, second member",
        reference="Andrews (1996) eq. (7.6); Li-Chu (2019) eq. (3)",
        symbols=E.symbols,
        lhs=E.series(["q^(-n)", "b", "b sqrt(q)", "d^2 q^(n+1)"],
                     ["d q", "d sqrt(q)", "b^2 q"], "q"),
        rhs=E.frac(
            [E.mono("b^n"), E.poch("-sqrt(q)", h), E.poch("d sqrt(q) / b", h)],
            [E.poch("-b sqrt(q)", h), E.poch("d sqrt(q)", h)],
        ),
        recurrences=recs,
        family="T1.6",
    )
    return a, b


def _t17() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("A", square_of="a"), Symbol("b"), Symbol("c")])
    mult = lambda: E.frac(
        [E.mono("-1"), E.one_minus("a q"), E.one_minus("a q^2"), E.one_minus("b"),
         E.one_minus("c"), E.mono("a q^n / b c")],
        [E.one_minus("a q^n"), E.one_minus("a q^(n+1)"), E.one_minus("a q / b"),
         E.one_minus("a q / c")],
    )
    return IdentityRecord(
        id="T1.7",
        name="Rogers 6phi5",
        reference="Gasper-Rahman (II.21)",
        symbols=E.symbols,
        lhs=E.series(
            ["a", "q sqrt(a)", "-q sqrt(a)", "b", "c", "q^(-n)"],
            ["sqrt(a)", "-sqrt(a)", "a q / b", "a q / c", "a q^(n+1)"],
            "a q^(n+1) / b c",
        ),
        rhs=E.frac([E.poch("a q"), E.poch("a q / b c")], [E.poch("a q / b"), E.poch("a q / c")]),
        recurrences=_simple_pair(
            "T1.7", mult(), mult(), E.shift(A="sqrt(a) q", b="b q", c="c q")
        ),
    )


def _t18() -> IdentityRecord:
    E = _Encoder([Symbol("q", BASE), Symbol("A", square_of="a"), Symbol("b"), Symbol("c"),
                  Symbol("d"), Symbol("e")])
    phi = lambda: E.frac(
        [E.mono("-q"), E.one_minus("a q"), E.one_minus("a q^2"), E.one_minus("b"),
         E.one_minus("c"), E.one_minus("d"),
         E.lin("q^(-n)", "-a^2 q^n / b c d", "a q^n", "-b c d q^(-n) / a")],
        [E.one_minus("a q^n"), E.one_minus("a q^(n+1)"), E.one_minus("a q / b"),
         E.one_minus("a q / c"), E.one_minus("a q / d"), E.one_minus("b c d q^(-n) / a"),
         E.one_minus("b c d q^(-n+1) / a")],
    )
    return IdentityRecord(
        id="T1.8",
        name="Jackson 8phi7",
        reference="Gasper-Rahman (II.22)",
        symbols=E.symbols,
        lhs=E.series(
            ["a", "q sqrt(a)", "-q sqrt(a)", "b", "c", "d", "e", "q^(-n)"],
            ["sqrt(a)", "-sqrt(a)", "a q / b", "a q / c", "a q / d", "a q / e", "a q^(n+1)"],
            "q",
        ),
        rhs=E.frac(
            [E.poch("a q"), E.poch("a q / b c"), E.poch("a q / b d"), E.poch("a q / c d")],
            [E.poch("a q / b"), E.poch("a q / c"), E.poch("a q / d"), E.poch("a q / b c d")],
        ),
        constraints=(Constraint(E.m("a^2 q"), E.m("b c d e q^(-n)"), "e"),),
        recurrences=_simple_pair(
            "T1.8", phi(), phi(), E.shift(A="sqrt(a) q", b="b q", c="c q", d="d q"), "phi_n"
        ),
    )


# printed term by term, in order
CHI_TILDE_TERMS = (
    "-k^2 q^(n-2) / a^2",
    "-k^2 q^(n-1) / a^2",
    "k^4 q^(2n-3) / a^4",
    "-a q^n",
    "k^2 q^(2n-1) / a",
    "-k^4 q^(3n-3) / a^3",
    "-sqrt(k)",
    "k^2 q^(n-2) sqrt(k) / a^2",
    "-k^4 q^(2n-3) sqrt(k) / a^4",
    "a q^n sqrt(k)",
    "-k^2 q^(2n-2) sqrt(k) / a",
    "-k^2 q^(2n-1) sqrt(k) / a",
    "k q^(n-1) / a",
    "k^2 / a^2 q",
    "-k^3 q^(n-2) / a^3",
    "k q^(n-1)",
    "-k^3 q^(n-2) / a^2",
    "k^4 q^(2n-3) / a^3",
    "q^n sqrt(k)",
    "-k q^(2n-1) sqrt(k) / a",
    "k^3 q^(2n-2) sqrt(k) / a^3",
    "-k q^(2n-1) sqrt(k)",
    "k^2 q^(3n-2) sqrt(k) / a",
    "k^3 q^(2n-2) sqrt(k) / a^2",
)


def _t19() -> tuple[IdentityRecord, IdentityRecord]:
    syms = [Symbol("t", BASE, square_of="q"), Symbol("A", square_of="a"),
            Symbol("K", square_of="k")]
    E = _Encoder(syms)
    bracket = lambda: E.lin("sqrt(k)", "-a^2 q / k", "a / sqrt(k)", "-k / a q")
    psi = E.frac(
        [E.mono("q"), E.one_minus("a q"), E.one_minus("a q^2"), E.one_minus("k q^n"),
         E.one_minus("q^(-n)"), bracket()],
        [E.one_minus("k"), E.one_minus("k q"), E.one_minus("q sqrt(k)"),
         E.one_minus("a q / sqrt(k)"), E.one_minus("a q^(-n+1) / k"), E.one_minus("a q^(n+1)")],
    )
    # same factors, grouped as printed for the closed-form side
    psi_prime = Mul((
        E.frac([E.mono("q"), E.one_minus("a q"), E.one_minus("a q^2"), E.one_minus("k q^n"),
                E.one_minus("q^(-n)")],
               [E.one_minus("k"), E.one_minus("k q"), E.one_minus("q sqrt(k)"),
                E.one_minus("a q / sqrt(k)")]),
        E.frac([bracket()], [E.one_minus("a q^(-n+1) / k"), E.one_minus("a q^(n+1)")]),
    ))
    chi = lambda: Mul((
        E.frac([E.one_minus("a q"), E.one_minus("a q^2"), E.one_minus("k q^n")],
               [E.one_minus("k"), E.one_minus("q sqrt(k)"), E.one_minus("k q"),
                E.one_minus("a q^n"), E.one_minus("a q^(n+1)")]),
        E.frac([E.lin(*CHI_TILDE_TERMS)],
               [E.one_minus("k^2 q^(n-2) / a^2"), E.one_minus("k q^(n-1) / a")]),
    ))
    # (a, k) -> (a q^2, k q^2)
    shift = E.shift(A="sqrt(a) q", K="sqrt(k) q")
    recs = (
        _rec("T1.9:sum:A-B", LHS, "T1.9a", "T1.9b", "T1.9b", psi, shift, "psi_n",
             "T1.9:prod:A-B", subtract_offset=0),
        _rec("T1.9:sum:B-A", LHS, "T1.9b", "T1.9a", "T1.9b", chi(), shift, "chi_n",
             "T1.9:prod:B-A", derivation_given=False),
        _rec("T1.9:prod:A-B", RHS, "T1.9a", "T1.9b", "T1.9b", psi_prime, shift, "psi_n'",
             "T1.9:sum:A-B", subtract_offset=0),
        _rec("T1.9:prod:B-A", RHS, "T1.9b", "T1.9a", "T1.9b", chi(), shift, "chi_n'",
             "T1.9:sum:B-A", derivation_given=False),
    )
    a = IdentityRecord(
        id="T1.9a",
        name="Andrews-Berkovich 10W9, first member",
        reference="Andrews-Berkovich (2002) eq. (3.1)",
        symbols=E.symbols,
        lhs=E.series(
            ["a", "q sqrt(a)", "-q sqrt(a)", "a sqrt(q) / sqrt(k)", "-a sqrt(q) / sqrt(k)",
             "a q / sqrt(k)", "-a q / sqrt(k)", "k / a q", "k q^n", "q^(-n)"],
            ["sqrt(a)", "-sqrt(a)", "sqrt(k) sqrt(q)", "-sqrt(k) sqrt(q)", "sqrt(k)",
             "-sqrt(k)", "a^2 q^2 / k", "a q^(-n+1) / k", "a q^(n+1)"],
            "q",
        ),
        rhs=E.frac([E.poch("a q"), E.poch("k^2 / a^2 q")], [E.poch("k"), E.poch("k / a")]),
        recurrences=recs,
        family="T1.9",
    )
    b = IdentityRecord(
        id="T1.9b",
        name="Andrews-Berkovich 10W9, second member",
        reference="Andrews-Berkovich (2002) eq. (3.2)",
        symbols=E.symbols,
        lhs=E.series(
            ["a", "q sqrt(a)", "-q sqrt(a)", "a sqrt(q) / sqrt(k)", "-a sqrt(q) / sqrt(k)",
             "a / sqrt(k)", "-a q / sqrt(k)", "k / a", "k q^n", "q^(-n)"],
            ["sqrt(a)", "-sqrt(a)", "sqrt(k) sqrt(q)", "-sqrt(k) sqrt(q)", "q sqrt(k)",
             "-sqrt(k)", "a^2 q / k", "a q^(-n+1) / k", "a q^(n+1)"],
            "q",
        ),
        rhs=E.frac([E.poch("a q"), E.poch("sqrt(k)"), E.poch("k^2 / a^2")],
                   [E.poch("k"), E.poch("k / a"), E.poch("q sqrt(k)")]),
        recurrences=recs,
        family="T1.9",
    )
    return a, b


def _build() -> dict[str, IdentityRecord]:
    records = [_t11(), _t12(), _t13(), _t14(), _t15(), *_t16(), _t17(), _t18(), *_t19()]
    return {r.id: r for r in records}


CATALOG: Mapping[str, IdentityRecord] = _build()
IDENTITY_IDS = tuple(CATALOG)


def get_identity(id: str, registry: Mapping[str, IdentityRecord] | None = None) -> IdentityRecord:
    registry = CATALOG if registry is None else registry
    try:
        return registry[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def all_recurrences(registry: Mapping[str, IdentityRecord] | None = None) -> dict[str, RecurrenceSpec]:
    registry = CATALOG if registry is None else registry
    out: dict[str, RecurrenceSpec] = {}
    for record in registry.values():
        for rec in record.recurrences:
            out.setdefault(rec.id, rec)
    return out


def get_recurrence(rec_id: str, registry=None) -> RecurrenceSpec:
    try:
        return all_recurrences(registry)[rec_id]
    except KeyError:
        raise UnknownIdentity(rec_id) from None


def _record(id_or_record, registry=None) -> IdentityRecord:
    if isinstance(id_or_record, IdentityRecord):
        return id_or_record
    return get_identity(id_or_record, registry)


def resolve_constraints(id_or_record, partial: Point, registry=None) -> Point:
    """Fill in every constrained symbol from the others at ``partial.n``.

    Dependent symbols are always recomputed, so a point can be moved to a
    different ``n`` and resolved again.
    """
    record = _record(id_or_record, registry)
    if not record.constraints:
        return partial
    values = partial.as_dict()
    for c in record.constraints:
        values.pop(c.solve_for, None)
    p = Point.of(values, partial.n, partial.base)
    for c in record.constraints:
        p = p.updated({c.solve_for: c.solve(p)})
    return p


def parameter_values(id_or_record, p: Point, registry=None) -> dict[str, Fraction]:
    """Values of the conventional parameters (``a``, ``k``, ``q`` ...) at ``p``."""
    record = _record(id_or_record, registry)
    out = p.as_dict()
    for original, root in record.roots.items():
        if root in out:
            out[original] = out[root] ** 2
    return out


def point_from_parameters(id_or_record, values: Mapping[str, Fraction], n: int,
                          registry=None) -> Point:
    """Build a point from user-facing values, taking positive square roots.

    ``a=4`` for an identity declaring ``a = A^2`` sets ``A = 2``; values that
    are not perfect squares must be given through the root symbol directly.
    """
    import math

    record = _record(id_or_record, registry)
    roots = record.roots
    known = set(record.symbol_names)
    out: dict[str, Fraction] = {}
    for name, v in values.items():
        v = Fraction(v)
        if name in known:
            out[name] = v
        elif name in roots:
            num, den = math.isqrt(abs(v.numerator)), math.isqrt(v.denominator)
            if v < 0 or num * num != v.numerator or den * den != v.denominator:
                raise InadmissiblePoint(
                    f"{name}={v} is not a rational square; assign {roots[name]} instead"
                )
            out[roots[name]] = Fraction(num, den)
        else:
            raise UnboundSymbol(name)
    missing = [s for s in record.sampled_symbols if s not in out]
    if missing:
        raise UnboundSymbol(missing[0])
    return resolve_constraints(record, Point.of(out, n, record.base))


def lhs_value(id_or_record, p: Point, registry=None) -> Fraction:
    record = _record(id_or_record, registry)
    return phi_terminating_eval(record.lhs, resolve_constraints(record, p))


def rhs_value(id_or_record, p: Point, registry=None) -> Fraction:
    record = _record(id_or_record, registry)
    return record.rhs.evaluate(resolve_constraints(record, p))


def side_value(id_or_record, side: str, p: Point, registry=None) -> Fraction:
    return (lhs_value if side == LHS else rhs_value)(id_or_record, p, registry)
