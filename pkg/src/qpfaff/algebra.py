"""Symbols, n-affine Laurent monomials and small expression trees.

Everything evaluates to :class:`fractions.Fraction`; there is no floating
point anywhere in the package.  Exponents are affine in the summation-length
index ``n`` so that parameters such as ``a q^(n+1)`` or prefactors such as
``b^n`` share one representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .errors import DivisionByZero, InadmissiblePoint, NegativePochLength, UnboundSymbol

Rational = Fraction

BASE = "base"
FREE = "free"


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class AffineExp:
    const: int = 0
    n: int = 0

    def at(self, n: int) -> int:
        return self.const + self.n * n

    def __add__(self, other: "AffineExp") -> "AffineExp":
        return AffineExp(self.const + other.const, self.n + other.n)

    def __neg__(self) -> "AffineExp":
        return AffineExp(-self.const, -self.n)

    def scale(self, k: int) -> "AffineExp":
        return AffineExp(self.const * k, self.n * k)

    def __bool__(self) -> bool:
        return bool(self.const or self.n)

    def __str__(self) -> str:
        if not self.n:
            return str(self.const)
        lead = {1: "n", -1: "-n"}.get(self.n, f"{self.n}n")
        if not self.const:
            return lead
        return f"{lead}{self.const:+d}"


@dataclass(frozen=True)
class Symbol:
    name: str
    role: str = FREE
    # name of the parameter this symbol is the positive square root of, e.g.
    # Symbol("A", square_of="a") declares a = A^2
    square_of: str | None = None

    def __post_init__(self):
        if self.role not in (BASE, FREE):
            raise ValueError(f"unknown symbol role {self.role!r}")


@dataclass(frozen=True)
class Point:
    """Values for the declared symbols together with the length index ``n``.

    ``values`` is kept as a sorted tuple so that points hash and compare by
    value; use :meth:`of` to build one from a mapping.
    """

    values: tuple[tuple[str, Fraction], ...]
    n: int
    base: str

    def __post_init__(self):
        for name, v in self.values:
            if v == 0:
                raise InadmissiblePoint(f"symbol {name!r} is assigned zero")
        if self.n < 0:
            raise InadmissiblePoint(f"negative length index n={self.n}")
        tau = self.get(self.base)
        if tau is not None and abs(tau.numerator) == tau.denominator:
            raise InadmissiblePoint(f"base symbol {self.base!r}={tau} is a root of unity")

    @classmethod
    def of(cls, values: Mapping[str, object], n: int = 0, base: str = "q") -> "Point":
        items = tuple(sorted((k, as_rational(v)) for k, v in values.items()))
        return cls(items, n, base)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.values)

    def get(self, name: str, default=None):
        for k, v in self.values:
            if k == name:
                return v
        return default

    def __getitem__(self, name: str) -> Fraction:
        v = self.get(name)
        if v is None:
            raise UnboundSymbol(name)
        return v

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    @property
    def tau(self) -> Fraction:
        return self[self.base]

    def with_n(self, n: int) -> "Point":
        return Point(self.values, n, self.base)

    def updated(self, changes: Mapping[str, Fraction], n: int | None = None) -> "Point":
        d = self.as_dict()
        d.update(changes)
        return Point.of(d, self.n if n is None else n, self.base)


@dataclass(frozen=True)
class Monomial:
    """``coefficient * prod(symbol ** exponent(n))`` with a nonzero coefficient."""

    coefficient: Fraction = Fraction(1)
    exponents: tuple[tuple[str, AffineExp], ...] = ()

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("a Monomial never represents zero")
        object.__setattr__(self, "coefficient", as_rational(self.coefficient))
        cleaned = tuple(sorted((s, e) for s, e in self.exponents if e))
        object.__setattr__(self, "exponents", cleaned)

    @classmethod
    def build(cls, coefficient=1, exponents: Mapping[str, object] | None = None) -> "Monomial":
        exps = []
        for s, e in (exponents or {}).items():
            if isinstance(e, int):
                e = AffineExp(e, 0)
            elif isinstance(e, tuple):
                e = AffineExp(*e)
            exps.append((s, e))
        return cls(as_rational(coefficient), tuple(exps))

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(s for s, _ in self.exponents)

    def exponent(self, name: str) -> AffineExp:
        for s, e in self.exponents:
            if s == name:
                return e
        return AffineExp()

    def __mul__(self, other: "Monomial") -> "Monomial":
        exps = dict(self.exponents)
        for s, e in other.exponents:
            exps[s] = exps.get(s, AffineExp()) + e
        return Monomial(self.coefficient * other.coefficient, tuple(exps.items()))

    def inverse(self) -> "Monomial":
        return Monomial(1 / self.coefficient, tuple((s, -e) for s, e in self.exponents))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __neg__(self) -> "Monomial":
        return Monomial(-self.coefficient, self.exponents)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.coefficient**k, tuple((s, e.scale(k)) for s, e in self.exponents))

    def power_affine(self, e: AffineExp) -> "Monomial":
        """Raise to an n-dependent power; only sign-free unit coefficients allowed."""
        if not e.n:
            return self ** e.const
        if self.coefficient != 1:
            raise ValueError("n-dependent power of a monomial with a non-unit coefficient")
        out = {}
        for s, x in self.exponents:
            if x.n:
                raise ValueError("exponent would be quadratic in n")
            out[s] = AffineExp(x.const * e.const, x.const * e.n)
        return Monomial(Fraction(1), tuple(out.items()))

    def evaluate(self, p: Point) -> Fraction:
        value = self.coefficient
        for s, e in self.exponents:
            value *= p[s] ** e.at(p.n)
        return value

    def __str__(self) -> str:
        parts = []
        for s, e in self.exponents:
            if e == AffineExp(1, 0):
                parts.append(s)
            elif e.n or e.const < 0:
                parts.append(f"{s}^({e})")
            else:
                parts.append(f"{s}^{e}")
        body = " ".join(parts)
        c = self.coefficient
        if not body:
            return str(c)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{c} {body}"


ONE = Monomial()


def mono_eval(m: Monomial, p: Point) -> Fraction:
    return m.evaluate(p)


# --- monomial shorthand -------------------------------------------------------

_FACTOR = re.compile(
    r"^(?:sqrt\((?P<root>[A-Za-z_]\w*)\)|(?P<name>[A-Za-z_]\w*))"
    r"(?:\^(?P<exp>-?\d+|n|\([^)]*\)))?$"
)
_AFFINE = re.compile(r"^\s*(?:(?P<nc>[+-]?\d*)n)?\s*(?P<c>[+-]?\s*\d+)?\s*$")


def parse_affine(text: str) -> AffineExp:
    """Parse ``"2n-3"``, ``"-n+1"``, ``"n"``, ``"4"`` style exponents."""
    t = text.strip().replace(" ", "")
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    m = _AFFINE.match(t)
    if not t or not m:
        raise ValueError(f"bad exponent {text!r}")
    nc = m.group("nc")
    n_coef = 0
    if nc is not None:
        n_coef = {"": 1, "+": 1, "-": -1}.get(nc)
        if n_coef is None:
            n_coef = int(nc)
    const = int(m.group("c").replace(" ", "")) if m.group("c") else 0
    return AffineExp(const, n_coef)


def parse_monomial(text: str, roots: Mapping[str, str] | None = None) -> Monomial:
    """Parse a whitespace-separated monomial such as ``"-a q^(n+1) / b c"``.

    Everything after ``/`` is in the denominator, mirroring how such
    parameters are usually typeset.  ``roots`` maps a parameter to the fresh
    symbol standing for its square root: with ``{"a": "A"}`` the token ``a``
    becomes ``A^2`` and ``sqrt(a)`` becomes ``A``.  An optional leading sign
    and integer coefficient are accepted.
    """
    roots = roots or {}
    text = text.replace("*", " ").replace("/", " / ")
    tokens = text.split()
    coefficient = Fraction(1)
    if tokens and tokens[0] in ("-", "+"):
        coefficient = Fraction(-1 if tokens.pop(0) == "-" else 1)
    elif tokens and tokens[0].startswith("-"):
        coefficient = Fraction(-1)
        tokens[0] = tokens[0][1:]
    result = Monomial(coefficient)
    denominator = False
    for tok in tokens:
        if tok == "/":
            if denominator:
                raise ValueError(f"more than one '/' in {text!r}")
            denominator = True
            continue
        if re.fullmatch(r"\d+", tok):
            factor = Monomial(Fraction(int(tok)))
        else:
            m = _FACTOR.match(tok)
            if not m:
                raise ValueError(f"bad factor {tok!r} in {text!r}")
            if m.group("root"):
                name = m.group("root")
                if name not in roots:
                    raise ValueError(f"sqrt({name}) used but {name} has no declared root symbol")
                factor = Monomial(Fraction(1), ((roots[name], AffineExp(1)),))
            else:
                name = m.group("name")
                if name in roots:
                    factor = Monomial(Fraction(1), ((roots[name], AffineExp(2)),))
                else:
                    factor = Monomial(Fraction(1), ((name, AffineExp(1)),))
            if m.group("exp"):
                factor = factor.power_affine(parse_affine(m.group("exp")))
        result = result / factor if denominator else result * factor
    return result


# --- expression trees ---------------------------------------------------------


@dataclass(frozen=True)
class Mono:
    m: Monomial

    def evaluate(self, p: Point) -> Fraction:
        return self.m.evaluate(p)

    def __str__(self):
        return str(self.m)


@dataclass(frozen=True)
class Add:
    terms: tuple["Expr", ...]

    def evaluate(self, p: Point) -> Fraction:
        return sum((t.evaluate(p) for t in self.terms), Fraction(0))

    def __str__(self):
        return "(" + " + ".join(str(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class Mul:
    factors: tuple["Expr", ...]

    def evaluate(self, p: Point) -> Fraction:
        value = Fraction(1)
        for f in self.factors:
            value *= f.evaluate(p)
        return value

    def __str__(self):
        return " * ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Div:
    num: "Expr"
    den: "Expr"

    def evaluate(self, p: Point) -> Fraction:
        d = self.den.evaluate(p)
        if d == 0:
            raise DivisionByZero(self.den)
        return self.num.evaluate(p) / d

    def __str__(self):
        return f"[{self.num}] / [{self.den}]"


@dataclass(frozen=True)
class Poch:
    """``(arg; tau^base_exponent)_length`` with ``length`` affine in n."""

    arg: Monomial
    base_exponent: int = 1
    length: AffineExp = field(default_factory=lambda: AffineExp(0, 1))

    def evaluate(self, p: Point) -> Fraction:
        from .qseries import qpoch

        k = self.length.at(p.n)
        if k < 0:
            raise NegativePochLength(f"length {self.length} is {k} at n={p.n} in {self}")
        return qpoch(self.arg.evaluate(p), p.tau**self.base_exponent, k)

    def __str__(self):
        return f"({self.arg}; tau^{self.base_exponent})_{{{self.length}}}"


Expr = Union[Mono, Add, Mul, Div, Poch]


def expr_eval(e: Expr, p: Point) -> Fraction:
    return e.evaluate(p)


def expr_symbols(e: Expr) -> frozenset[str]:
    if isinstance(e, Mono):
        return e.m.symbols
    if isinstance(e, Poch):
        return e.arg.symbols
    if isinstance(e, Add):
        kids = e.terms
    elif isinstance(e, Mul):
        kids = e.factors
    else:
        kids = (e.num, e.den)
    out: frozenset[str] = frozenset()
    for k in kids:
        out |= expr_symbols(k)
    return out
