"""Data types shared by the catalog, the recurrence engine and the file loader."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BASE, Expr, Monomial, Point, Symbol
from .errors import UnsolvableConstraint
from .qseries import SeriesSpec

LHS = "lhs"
RHS = "rhs"


@dataclass(frozen=True)
class Constraint:
    """``left == right`` as monomials, solved for the symbol ``solve_for``."""

    left: Monomial
    right: Monomial
    solve_for: str

    def power(self) -> int:
        k = self.left.exponent(self.solve_for) + (-self.right.exponent(self.solve_for))
        if k.n or abs(k.const) != 1:
            raise UnsolvableConstraint(
                f"{self.solve_for} must appear to the power +-1 with no n-dependence"
            )
        return k.const

    def solve(self, p: Point) -> Fraction:
        drop = Monomial(Fraction(1), ((self.solve_for, self.left.exponent(self.solve_for)),))
        rest_left = (self.left / drop).evaluate(p)
        drop = Monomial(Fraction(1), ((self.solve_for, self.right.exponent(self.solve_for)),))
        rest_right = (self.right / drop).evaluate(p)
        value = rest_right / rest_left
        if self.power() < 0:
            value = 1 / value
        if value == 0:
            raise UnsolvableConstraint(f"{self.solve_for} is forced to zero")
        return value

    def residual(self, p: Point) -> Fraction:
        return self.left.evaluate(p) - self.right.evaluate(p)

    def __str__(self):
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class SeqRef:
    """One sequence in a recurrence: an identity's side, at ``n + offset``."""

    identity: str
    offset: int = 0


@dataclass(frozen=True)
class RecurrenceSpec:
    """``target_n - subtract_(n+o) = multiplier * shifted_(n-1)`` at sigma(p).

    ``shift`` maps a symbol to the monomial giving its new value in terms of
    the unshifted point; unlisted symbols keep their values.  ``side``
    selects whether the sequences are sum sides or closed-form sides.
    """

    id: str
    side: str
    target: SeqRef
    subtract: SeqRef
    shifted: SeqRef
    multiplier: Expr
    shift: tuple[tuple[str, Monomial], ...] = ()
    multiplier_name: str = "M"
    # counterpart recurrence on the other side, whose multiplier must agree
    mirror: str | None = None
    derivation_given: bool = True

    def __post_init__(self):
        if self.side not in (LHS, RHS):
            raise ValueError(f"side must be lhs or rhs, got {self.side!r}")
        if self.target.offset != 0 or self.subtract.offset not in (0, -1):
            raise ValueError("target must be at n and subtract at n or n-1")
        if self.shifted.offset != -1:
            raise ValueError("the shifted sequence is always taken at n-1")
        object.__setattr__(self, "shift", tuple(sorted(self.shift)))

    def apply_shift(self, p: Point) -> Point:
        changes = {s: m.evaluate(p) for s, m in self.shift}
        return p.updated(changes, n=p.n + self.shifted.offset)

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys((self.target.identity, self.subtract.identity,
                                    self.shifted.identity)))


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    name: str
    reference: str
    symbols: tuple[Symbol, ...]
    lhs: SeriesSpec
    rhs: Expr
    constraints: tuple[Constraint, ...] = ()
    recurrences: tuple[RecurrenceSpec, ...] = ()
    family: str | None = None
    notes: str = ""
    # named extra certification steps, currently only "singh"
    extra_checks: tuple[str, ...] = ()

    def __post_init__(self):
        bases = [s.name for s in self.symbols if s.role == BASE]
        if len(bases) != 1:
            raise ValueError(f"{self.id}: exactly one base symbol required, got {bases}")
        if self.lhs.base != bases[0]:
            raise ValueError(f"{self.id}: series base {self.lhs.base!r} is not the base symbol")

    @property
    def base(self) -> str:
        return next(s.name for s in self.symbols if s.role == BASE)

    @property
    def roots(self) -> dict[str, str]:
        return {s.square_of: s.name for s in self.symbols if s.square_of}

    @property
    def dependent(self) -> tuple[str, ...]:
        return tuple(c.solve_for for c in self.constraints)

    @property
    def sampled_symbols(self) -> tuple[str, ...]:
        """Symbols that must be chosen by the caller (base included)."""
        dep = set(self.dependent)
        return tuple(s.name for s in self.symbols if s.name not in dep)

    @property
    def symbol_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)
