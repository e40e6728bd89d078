"""Seeded rejection sampling of admissible rational evaluation points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import Point
from .catalog import lhs_value, resolve_constraints, rhs_value
from .errors import EVALUATION_ERRORS, SamplingExhausted, UnsolvableConstraint
from .records import IdentityRecord


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 42
    bound: int = 8
    retry_budget: int = 1000
    n_max: int = 8

    def __post_init__(self):
        if self.bound < 1 or self.retry_budget < 1 or self.n_max < 0:
            raise ValueError(f"invalid sampler configuration {self}")


def _draw(rng: random.Random, bound: int) -> Fraction:
    num = rng.choice([k for k in range(-bound, bound + 1) if k])
    return Fraction(num, rng.randint(1, bound))


def candidate(record: IdentityRecord, cfg: SamplerConfig, index: int, attempt: int) -> Point | None:
    """The ``attempt``-th raw candidate for point ``index``, before screening.

    Each candidate has its own string-seeded generator, so any candidate can
    be recomputed without replaying the stream.  Returns None when the draw
    for the base symbol is a root of unity.
    """
    rng = random.Random(f"{cfg.seed}:{record.id}:{cfg.bound}:{index}:{attempt}")
    values = {name: _draw(rng, cfg.bound) for name in record.sampled_symbols}
    tau = values[record.base]
    if abs(tau.numerator) == tau.denominator:
        return None
    return Point.of(values, cfg.n_max, record.base)


def default_screen(record: IdentityRecord, p: Point, n_max: int) -> None:
    for n in range(n_max + 1):
        lhs_value(record, p.with_n(n))
        rhs_value(record, p.with_n(n))


Screen = Callable[[IdentityRecord, Point, int], None]


def sample_point(record: IdentityRecord, cfg: SamplerConfig, index: int,
                 screen: Screen | None = None) -> Point:
    """The ``index``-th admissible point for ``record``.

    ``screen`` is called with a candidate and must raise one of the
    evaluation errors if the candidate is unusable; by default both sides
    are evaluated for every ``n <= cfg.n_max``.  The returned point sits at
    ``n = cfg.n_max`` with constrained symbols resolved.
    """
    screen = screen or default_screen
    for attempt in range(cfg.retry_budget):
        p = candidate(record, cfg, index, attempt)
        if p is None:
            continue
        try:
            p = resolve_constraints(record, p)
            screen(record, p, cfg.n_max)
        except (*EVALUATION_ERRORS, UnsolvableConstraint):
            continue
        return p
    raise SamplingExhausted(
        f"{record.id}: no admissible point among {cfg.retry_budget} candidates "
        f"(index {index}, bound {cfg.bound})"
    )


def sample_points(record: IdentityRecord, cfg: SamplerConfig, count: int,
                  screen: Screen | None = None) -> list[Point]:
    return [sample_point(record, cfg, i, screen) for i in range(count)]
