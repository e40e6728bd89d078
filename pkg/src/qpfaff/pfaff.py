"""Certification by Pfaff's method.

Two sequences that start at 1 and obey the same first-order recurrence agree
for every n.  Each catalog identity carries parameter-shifting recurrences
for its sum side and its closed-form side; this module evaluates their
residuals at exact rational points, checks that the paired multipliers
coincide, rebuilds sequences from the recurrences alone, and bundles all of
it into a per-identity report.

Shifted sub-evaluations such as ``S_{n-1}(aq, bq, cq)`` are always computed
by direct summation at the shifted point, never by further recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import Point, format_rational
from .catalog import (
    CATALOG,
    get_identity,
    get_recurrence,
    resolve_constraints,
    side_value,
    singh_stages,
)
from .errors import EVALUATION_ERRORS, InadmissiblePoint, ShiftInadmissible
from .records import IdentityRecord, RecurrenceSpec, SeqRef
from .sampler import SamplerConfig, sample_point


def _registry(registry):
    return CATALOG if registry is None else registry


def sequence_value(ref: SeqRef, side: str, p: Point, registry=None) -> Fraction:
    """Value of ``ref`` (one identity's side) at ``p`` moved to ``n + offset``."""
    record = get_identity(ref.identity, _registry(registry))
    return side_value(record, side, p.with_n(p.n + ref.offset))


def delta(id_or_record, side: str, p: Point, registry=None) -> Fraction:
    if p.n < 1:
        raise ValueError("delta needs n >= 1")
    record = id_or_record if isinstance(id_or_record, IdentityRecord) else get_identity(
        id_or_record, _registry(registry))
    return side_value(record, side, p) - side_value(record, side, p.with_n(p.n - 1))


def shifted_point(rec: RecurrenceSpec, p: Point) -> Point:
    try:
        return rec.apply_shift(p)
    except InadmissiblePoint as exc:
        raise ShiftInadmissible(f"{rec.id}: shifted point is inadmissible ({exc})") from exc


def multiplier_value(rec: RecurrenceSpec, p: Point, registry=None) -> Fraction:
    record = get_identity(rec.target.identity, _registry(registry))
    return rec.multiplier.evaluate(resolve_constraints(record, p))


@dataclass(frozen=True)
class RecurrenceTerms:
    target: Fraction
    subtract: Fraction
    multiplier: Fraction
    shifted: Fraction

    @property
    def residual(self) -> Fraction:
        return self.target - self.subtract - self.multiplier * self.shifted


def recurrence_terms(rec: RecurrenceSpec, p: Point, registry=None) -> RecurrenceTerms:
    if p.n < 1:
        raise ValueError("recurrences are checked for n >= 1")
    sp = shifted_point(rec, p)
    return RecurrenceTerms(
        target=sequence_value(rec.target, rec.side, p, registry),
        subtract=sequence_value(rec.subtract, rec.side, p, registry),
        multiplier=multiplier_value(rec, p, registry),
        shifted=sequence_value(SeqRef(rec.shifted.identity, 0), rec.side, sp, registry),
    )


def check_recurrence(rec: RecurrenceSpec | str, p: Point, registry=None) -> Fraction:
    """Residual ``target - subtract - M * shifted``; zero when the relation holds."""
    if isinstance(rec, str):
        rec = get_recurrence(rec, _registry(registry))
    return recurrence_terms(rec, p, registry).residual


def multiplier_agreement(rec: RecurrenceSpec | str, p: Point, registry=None) -> tuple[Fraction, Fraction]:
    """Values of a recurrence's multiplier and of its mirror's at the same point."""
    registry = _registry(registry)
    if isinstance(rec, str):
        rec = get_recurrence(rec, registry)
    if rec.mirror is None:
        raise ValueError(f"{rec.id} has no mirrored recurrence")
    other = get_recurrence(rec.mirror, registry)
    return multiplier_value(rec, p, registry), multiplier_value(other, p, registry)


def family_recurrences(record: IdentityRecord, side: str) -> tuple[RecurrenceSpec, ...]:
    return tuple(r for r in record.recurrences if r.side == side)


def reconstruct(record: IdentityRecord, side: str, p: Point, n_max: int,
                registry=None) -> dict[str, list[Fraction]]:
    """Rebuild every member sequence from ``1`` using only the recurrences.

    At each n the relations are applied in an order where the subtracted
    sequence is already known: relations against ``n-1`` first, then those
    against ``n``.  For a coupled pair this interleaves the two members.
    Returns ``{identity id: [value at n=0, ..., n_max]}``.
    """
    recs = family_recurrences(record, side)
    if not recs:
        raise ValueError(f"{record.id} has no {side} recurrences")
    members = list(dict.fromkeys(m for r in recs for m in r.members))
    values = {m: [Fraction(1)] for m in members}
    for n in range(1, n_max + 1):
        pn = p.with_n(n)
        known: dict[str, Fraction] = {}
        pending = list(recs)
        while pending:
            progressed = False
            for rec in list(pending):
                if rec.target.identity in known:
                    pending.remove(rec)
                    continue
                sub = rec.subtract.identity
                if rec.subtract.offset == -1:
                    base = values[sub][n - 1]
                elif sub in known:
                    base = known[sub]
                else:
                    continue
                shifted = sequence_value(
                    SeqRef(rec.shifted.identity, 0), side, shifted_point(rec, pn), registry
                )
                known[rec.target.identity] = base + multiplier_value(rec, pn, registry) * shifted
                pending.remove(rec)
                progressed = True
            if not progressed and pending:
                raise ValueError(f"recurrences of {record.id} do not determine the sequences")
        missing = [m for m in members if m not in known]
        if missing:
            raise ValueError(f"no recurrence defines {missing} at n={n}")
        for m in members:
            values[m].append(known[m])
    return values


def singh_stage_values(p: Point, record: IdentityRecord | None = None) -> list[Fraction]:
    record = record or get_identity("T1.5")
    return [f(p) for _, f in singh_stages(record)]


def singh_reduction_check(p: Point, record: IdentityRecord | None = None) -> bool:
    values = singh_stage_values(p, record)
    return all(v == values[0] for v in values)


# --- certification ----------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    residual: Fraction | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "pass": self.passed}
        if self.residual is not None:
            out["residual"] = format_rational(self.residual)
        out.update(self.detail)
        return out


@dataclass
class SampleResult:
    identity: str
    index: int
    point: Point
    checks: list[Check]
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "id": self.identity,
            "index": self.index,
            "point": {k: format_rational(v) for k, v in self.point.values},
            "checks": [c.to_json() for c in self.checks],
            "info": self.info,
        }


@dataclass
class CertReport:
    identity: str
    seed: int
    n_max: int
    bound: int
    samples: list[SampleResult]
    recurrences: list[str] = field(default_factory=list)
    stated_without_derivation: list[str] = field(default_factory=list)

    @property
    def checks(self) -> list[Check]:
        return [c for s in self.samples for c in s.checks]

    @property
    def failures(self) -> list[tuple[int, Check]]:
        return [(s.index, c) for s in self.samples for c in s.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def point_checks(record: IdentityRecord, p: Point, n_max: int, registry=None) -> list[Check]:
    """All certification checks at one parameter point, for ``0 <= n <= n_max``.

    Raises an evaluation error (pole, inadmissible shift) rather than
    recording it, which is what lets the sampler use this as its screen.
    """
    from .catalog import lhs_value, rhs_value

    checks = []
    s0, t0 = lhs_value(record, p.with_n(0)), rhs_value(record, p.with_n(0))
    checks.append(Check("initial", s0 == 1 and t0 == 1,
                        detail={"lhs": format_rational(s0), "rhs": format_rational(t0)}))
    for rec in record.recurrences:
        for n in range(1, n_max + 1):
            r = check_recurrence(rec, p.with_n(n), registry)
            checks.append(Check(f"recurrence[{rec.id}][n={n}]", r == 0, r))
    for n in range(n_max + 1):
        pn = p.with_n(n)
        diff = lhs_value(record, pn) - rhs_value(record, pn)
        checks.append(Check(f"equal[n={n}]", diff == 0, diff))
    if "singh" in record.extra_checks:
        for n in range(n_max + 1):
            stages = singh_stage_values(p.with_n(n), record)
            checks.append(Check(
                f"singh[n={n}]",
                all(v == stages[0] for v in stages),
                detail={"stages": [format_rational(v) for v in stages]},
            ))
    return checks


def branch_flips(record: IdentityRecord, p: Point, n_max: int) -> dict[str, str]:
    """Whether the identity survives negating each declared square-root symbol.

    Informational only; the catalog fixes the positive branch.
    """
    from .catalog import lhs_value, rhs_value

    out = {}
    for root in sorted(record.roots.values()):
        flipped = p.updated({root: -p[root]})
        try:
            same = all(
                lhs_value(record, flipped.with_n(n)) == rhs_value(record, flipped.with_n(n))
                for n in range(n_max + 1)
            )
            out[root] = "holds" if same else "fails"
        except EVALUATION_ERRORS:
            out[root] = "pole"
    return out


def certify_identity(id_or_record, n_max: int = 8, samples: int = 25, seed: int = 42,
                     bound: int = 8, retry_budget: int = 1000, registry: Mapping | None = None,
                     with_branch_flips: bool = True) -> CertReport:
    """Sample admissible points and run :func:`point_checks` at each of them.

    Points are screened with the same checks, so a returned report never
    contains evaluation errors; it fails only on a nonzero residual or an
    unequal pair of sides.
    """
    registry = _registry(registry)
    record = id_or_record if isinstance(id_or_record, IdentityRecord) else get_identity(
        id_or_record, registry)
    if n_max < 0 or samples < 1:
        raise ValueError("need n_max >= 0 and samples >= 1")
    cfg = SamplerConfig(seed=seed, bound=bound, retry_budget=retry_budget, n_max=n_max)

    def screen(rec, p, horizon):
        point_checks(rec, p, horizon, registry)

    results = []
    for i in range(samples):
        p = sample_point(record, cfg, i, screen)
        checks = point_checks(record, p, n_max, registry)
        info = {"branch_flip": branch_flips(record, p, n_max)} if (
            with_branch_flips and record.roots) else {}
        results.append(SampleResult(record.id, i, p, checks, info))
    return CertReport(
        identity=record.id,
        seed=seed,
        n_max=n_max,
        bound=bound,
        samples=results,
        recurrences=[r.id for r in record.recurrences],
        stated_without_derivation=[r.id for r in record.recurrences if not r.derivation_given],
    )


def certify_recurrence(rec_id: str, n_max: int = 8, samples: int = 25, seed: int = 42,
                       bound: int = 8, retry_budget: int = 1000,
                       registry: Mapping | None = None) -> CertReport:
    """Residual and multiplier-agreement checks for one recurrence."""
    registry = _registry(registry)
    rec = get_recurrence(rec_id, registry)
    record = get_identity(rec.target.identity, registry)
    cfg = SamplerConfig(seed=seed, bound=bound, retry_budget=retry_budget, n_max=n_max)

    def run(p):
        checks = []
        for n in range(1, n_max + 1):
            pn = p.with_n(n)
            terms = recurrence_terms(rec, pn, registry)
            checks.append(Check(f"residual[n={n}]", terms.residual == 0, terms.residual))
            if rec.mirror:
                m1, m2 = multiplier_agreement(rec, pn, registry)
                checks.append(Check(f"multiplier_agrees[{rec.mirror}][n={n}]", m1 == m2, m1 - m2))
        return checks

    results = []
    for i in range(samples):
        p = sample_point(record, cfg, i, lambda _r, q, _h: run(q))
        results.append(SampleResult(record.id, i, p, run(p)))
    return CertReport(
        identity=rec_id, seed=seed, n_max=n_max, bound=bound, samples=results,
        recurrences=[rec.id],
        stated_without_derivation=[] if rec.derivation_given else [rec.id],
    )


def certify_singh(n_max: int = 6, samples: int = 20, seed: int = 42, bound: int = 8,
                  retry_budget: int = 1000) -> CertReport:
    record = get_identity("T1.5")
    cfg = SamplerConfig(seed=seed, bound=bound, retry_budget=retry_budget, n_max=n_max)

    def run(p):
        out = []
        for n in range(n_max + 1):
            stages = singh_stage_values(p.with_n(n), record)
            out.append(Check(f"singh[n={n}]", all(v == stages[0] for v in stages),
                             detail={"stages": [format_rational(v) for v in stages]}))
        return out

    results = []
    for i in range(samples):
        p = sample_point(record, cfg, i, lambda _r, q, _h: run(q))
        results.append(SampleResult(record.id, i, p, run(p)))
    return CertReport("T1.5", seed, n_max, bound, results)
