"""q-shifted factorials and terminating basic hypergeometric series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import AffineExp, Monomial, Point
from .errors import NotTerminating, PoleError


def qpoch(a: Fraction, q: Fraction, n: int) -> Fraction:
    """The q-shifted factorial ``(a; q)_n`` for any integer ``n``.

    For negative lengths ``(a; q)_{-m} = 1 / (a q^{-m}; q)_m``.

    >>> qpoch(Fraction(1, 2), Fraction(1, 2), 2)
    Fraction(3, 8)
    >>> qpoch(Fraction(2), Fraction(3), -1)
    Fraction(3, 1)
    """
    a = Fraction(a)
    q = Fraction(q)
    if n >= 0:
        value = Fraction(1)
        qk = Fraction(1)
        for _ in range(n):
            value *= 1 - a * qk
            qk *= q
        return value
    m = -n
    den = qpoch(a * q**n, q, m)
    if den == 0:
        raise PoleError(f"({a}; {q})_{n} has a vanishing reciprocal factor")
    return 1 / den


def qpoch_product(args, q: Fraction, n: int) -> Fraction:
    value = Fraction(1)
    for a in args:
        value *= qpoch(a, q, n)
    return value


@dataclass(frozen=True)
class SeriesSpec:
    """A terminating ``r+1 phi r`` series in base ``tau^base_exponent``.

    The implicit ``(q; q)_j`` in the denominator is not listed.  The numerator
    parameter at ``terminating_index`` must be a pure non-positive power of the
    series base; its exponent fixes the number of terms.
    """

    base_exponent: int
    numerator: tuple[Monomial, ...]
    denominator: tuple[Monomial, ...]
    argument: Monomial
    terminating_index: int | None
    base: str = "q"

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if len(self.numerator) != len(self.denominator) + 1:
            raise ValueError(
                f"an r+1 phi r needs one more numerator than denominator parameter, "
                f"got {len(self.numerator)} and {len(self.denominator)}"
            )
        if self.base_exponent == 0:
            raise ValueError("series base exponent must be nonzero")

    @property
    def rank(self) -> tuple[int, int]:
        return len(self.numerator), len(self.denominator)

    def termination_exponent(self) -> AffineExp | None:
        """Number of terms minus one, as an affine function of n, or None."""
        if self.terminating_index is None:
            return None
        if not 0 <= self.terminating_index < len(self.numerator):
            return None
        m = self.numerator[self.terminating_index]
        if m.coefficient != 1 or m.symbols - {self.base}:
            return None
        e = m.exponent(self.base)
        if e.const % self.base_exponent or e.n % self.base_exponent:
            return None
        bound = AffineExp(-e.const // self.base_exponent, -e.n // self.base_exponent)
        if bound.const < 0 or bound.n < 0:
            return None
        return bound

    def termination_bound(self, n: int) -> int:
        bound = self.termination_exponent()
        if bound is None:
            raise NotTerminating(
                "no numerator parameter of the form base^(-m) is declared as terminating"
            )
        return bound.at(n)


@lru_cache(maxsize=65536)
def phi_terminating_eval(spec: SeriesSpec, p: Point) -> Fraction:
    """Exact value of a terminating series at ``p``.

    Terms are generated by their ratio, so a vanishing denominator factor
    ``1 - b q^k`` with ``k`` below the termination bound raises
    :class:`PoleError` carrying ``j = k + 1`` and the offending parameter.
    """
    upper = spec.termination_bound(p.n)
    q = p[spec.base] ** spec.base_exponent
    nums = [m.evaluate(p) for m in spec.numerator]
    dens = [m.evaluate(p) for m in spec.denominator]
    z = spec.argument.evaluate(p)
    total = term = Fraction(1)
    qk = Fraction(1)
    for k in range(upper):
        num = z
        for a in nums:
            num *= 1 - a * qk
        den = 1 - q * qk
        for i, b in enumerate(dens):
            factor = 1 - b * qk
            if factor == 0:
                raise PoleError(
                    f"denominator parameter {spec.denominator[i]} vanishes at term j={k + 1}",
                    j=k + 1,
                    factor=str(spec.denominator[i]),
                )
            den *= factor
        term = term * num / den
        total += term
        qk *= q
    return total


def phi_partial_sum(spec: SeriesSpec, p: Point, upper: int) -> Fraction:
    """Sum terms ``j = 0..upper`` straight from the Pochhammer definition."""
    q = p[spec.base] ** spec.base_exponent
    nums = [m.evaluate(p) for m in spec.numerator]
    dens = [m.evaluate(p) for m in spec.denominator]
    z = spec.argument.evaluate(p)
    total = Fraction(0)
    for j in range(upper + 1):
        d = qpoch(q, q, j) * qpoch_product(dens, q, j)
        if d == 0:
            raise PoleError(f"denominator vanishes at j={j}", j=j)
        total += qpoch_product(nums, q, j) / d * z**j
    return total


@dataclass(frozen=True)
class ClassificationFlags:
    terminating: bool
    balanced: bool
    well_poised: bool
    very_well_poised: bool

    def labels(self) -> list[str]:
        out = []
        if self.terminating:
            out.append("terminating")
        if self.balanced:
            out.append("balanced")
        if self.very_well_poised:
            out.append("very-well-poised")
        elif self.well_poised:
            out.append("well-poised")
        return out


def _product(ms) -> Monomial:
    out = Monomial()
    for m in ms:
        out = out * m
    return out


def classify(spec: SeriesSpec) -> ClassificationFlags:
    """Formal (point-free) classification by monomial identities.

    Well-poisedness takes the first numerator parameter as ``a0`` and looks
    for a pairing of the remaining numerators with the denominators such that
    each product equals ``q a0``; the very-well-poised test additionally asks
    for two remaining numerators ``m`` and ``-m`` with ``m^2 = q^2 a0``.
    """
    qm = Monomial(Fraction(1), ((spec.base, AffineExp(spec.base_exponent)),))
    terminating = spec.termination_exponent() is not None
    balanced = _product(spec.denominator) == qm * _product(spec.numerator)

    a0, *rest = spec.numerator
    target = qm * a0
    partners = list(spec.denominator)
    well_poised = True
    for a in rest:
        want = target / a
        if want in partners:
            partners.remove(want)
        else:
            well_poised = False
            break

    very = False
    if well_poised:
        square = qm * qm * a0
        very = any(m * m == square and -m in rest for m in rest)
    return ClassificationFlags(terminating, balanced, well_poised, very)
