"""JSON form of identity records, used for user files and catalog export.

A file holds one identity object or ``{"identities": [...]}``.  Monomials are
``{"coefficient": "p/q", "exponents": {"a": {"const": 1, "n": 0}}}`` and
expression nodes are single-key objects tagged ``mono``, ``add``, ``mul``,
``div`` (a two-element list) or ``poch``.  Rationals always travel as
``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import (
    BASE,
    FREE,
    Add,
    AffineExp,
    Div,
    Expr,
    Mono,
    Monomial,
    Mul,
    Poch,
    Symbol,
    expr_symbols,
    format_rational,
)
from .errors import SpecFileError, UnboundSymbol
from .qseries import SeriesSpec
from .records import LHS, RHS, Constraint, IdentityRecord, RecurrenceSpec, SeqRef

# --- to JSON ------------------------------------------------------------------


def affine_to_json(e: AffineExp) -> dict:
    return {"const": e.const, "n": e.n}


def mono_to_json(m: Monomial) -> dict:
    return {
        "coefficient": format_rational(m.coefficient),
        "exponents": {s: affine_to_json(e) for s, e in m.exponents},
    }


def expr_to_json(e: Expr) -> dict:
    if isinstance(e, Mono):
        return {"mono": mono_to_json(e.m)}
    if isinstance(e, Add):
        return {"add": [expr_to_json(t) for t in e.terms]}
    if isinstance(e, Mul):
        return {"mul": [expr_to_json(f) for f in e.factors]}
    if isinstance(e, Div):
        return {"div": [expr_to_json(e.num), expr_to_json(e.den)]}
    if isinstance(e, Poch):
        return {"poch": {"arg": mono_to_json(e.arg), "base_exponent": e.base_exponent,
                         "length": affine_to_json(e.length)}}
    raise TypeError(f"not an expression node: {e!r}")


def series_to_json(s: SeriesSpec) -> dict:
    return {
        "base_exponent": s.base_exponent,
        "num": [mono_to_json(m) for m in s.numerator],
        "den": [mono_to_json(m) for m in s.denominator],
        "arg": mono_to_json(s.argument),
        "terminating_index": s.terminating_index,
    }


def recurrence_to_json(r: RecurrenceSpec) -> dict:
    ref = lambda x: {"identity": x.identity, "offset": x.offset}
    return {
        "id": r.id,
        "side": r.side,
        "target": ref(r.target),
        "subtract": ref(r.subtract),
        "shifted": ref(r.shifted),
        "multiplier": expr_to_json(r.multiplier),
        "multiplier_name": r.multiplier_name,
        "shift": {s: mono_to_json(m) for s, m in r.shift},
        "mirror": r.mirror,
        "derivation_given": r.derivation_given,
    }


def record_to_json(r: IdentityRecord) -> dict:
    syms = []
    for s in r.symbols:
        d: dict[str, Any] = {"name": s.name, "role": s.role}
        if s.square_of:
            d["square_of"] = s.square_of
        syms.append(d)
    return {
        "id": r.id,
        "name": r.name,
        "reference": r.reference,
        "symbols": syms,
        "lhs": series_to_json(r.lhs),
        "rhs": expr_to_json(r.rhs),
        "constraints": [
            {"left": mono_to_json(c.left), "right": mono_to_json(c.right), "solve_for": c.solve_for}
            for c in r.constraints
        ],
        "recurrences": [recurrence_to_json(x) for x in r.recurrences],
        "family": r.family,
        "extra_checks": list(r.extra_checks),
        "notes": r.notes,
    }


def dumps(records) -> str:
    records = list(records)
    doc: Any = record_to_json(records[0]) if len(records) == 1 else {
        "identities": [record_to_json(r) for r in records]}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- from JSON ----------------------------------------------------------------


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise SpecFileError("expected an object", where)
    if key not in obj:
        raise SpecFileError(f"missing field {key!r}", where)
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or (kind is int and isinstance(value, bool))):
        raise SpecFileError(f"field {key!r} has the wrong type", f"{where}.{key}" if where else key)
    return value


def _int(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecFileError("expected an integer", where)
    return value


def _rational(value, where) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SpecFileError("expected a rational as \"p/q\"", where)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SpecFileError(f"bad rational {value!r}", where) from None


def affine_from_json(obj, where) -> AffineExp:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return AffineExp(obj, 0)
    if not isinstance(obj, dict) or set(obj) - {"const", "n"}:
        raise SpecFileError("exponent must be an integer or {const, n}", where)
    return AffineExp(_int(obj.get("const", 0), f"{where}.const"), _int(obj.get("n", 0), f"{where}.n"))


def mono_from_json(obj, where, declared: set[str]) -> Monomial:
    coefficient = _rational(_need(obj, "coefficient", where), f"{where}.coefficient")
    if coefficient == 0:
        raise SpecFileError("monomial coefficient must be nonzero", f"{where}.coefficient")
    exps = obj.get("exponents", {})
    if not isinstance(exps, dict):
        raise SpecFileError("exponents must be an object", f"{where}.exponents")
    out = []
    for s, e in exps.items():
        if s not in declared:
            raise UnboundSymbol(s, f"{where}.exponents")
        out.append((s, affine_from_json(e, f"{where}.exponents.{s}")))
    return Monomial(coefficient, tuple(out))


def expr_from_json(obj, where, declared: set[str]) -> Expr:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SpecFileError("expression node must be an object with exactly one tag", where)
    (tag, body), = obj.items()
    here = f"{where}.{tag}"
    if tag == "mono":
        return Mono(mono_from_json(body, here, declared))
    if tag in ("add", "mul"):
        if not isinstance(body, list) or not body:
            raise SpecFileError("expected a non-empty list", here)
        kids = tuple(expr_from_json(x, f"{here}[{i}]", declared) for i, x in enumerate(body))
        return Add(kids) if tag == "add" else Mul(kids)
    if tag == "div":
        if not isinstance(body, list) or len(body) != 2:
            raise SpecFileError("div takes [numerator, denominator]", here)
        return Div(expr_from_json(body[0], f"{here}[0]", declared),
                   expr_from_json(body[1], f"{here}[1]", declared))
    if tag == "poch":
        return Poch(
            mono_from_json(_need(body, "arg", here), f"{here}.arg", declared),
            _int(body.get("base_exponent", 1), f"{here}.base_exponent"),
            affine_from_json(body.get("length", {"const": 0, "n": 1}), f"{here}.length"),
        )
    raise SpecFileError(f"unknown node tag {tag!r}", where)


def _symbols_from_json(obj, where) -> tuple[Symbol, ...]:
    if not isinstance(obj, list) or not obj:
        raise SpecFileError("symbols must be a non-empty list", where)
    out = []
    for i, s in enumerate(obj):
        w = f"{where}[{i}]"
        name = _need(s, "name", w, str)
        role = s.get("role", FREE)
        if role not in (BASE, FREE):
            raise SpecFileError(f"role must be {BASE!r} or {FREE!r}", f"{w}.role")
        sq = s.get("square_of")
        if sq is not None and not isinstance(sq, str):
            raise SpecFileError("square_of must be a parameter name", f"{w}.square_of")
        out.append(Symbol(name, role, sq))
    names = [s.name for s in out]
    if len(set(names)) != len(names):
        raise SpecFileError("duplicate symbol names", where)
    if sum(s.role == BASE for s in out) != 1:
        raise SpecFileError("exactly one symbol must have role 'base'", where)
    return tuple(out)


def _ref(obj, where) -> SeqRef:
    return SeqRef(_need(obj, "identity", where, str), _int(obj.get("offset", 0), f"{where}.offset"))


def recurrence_from_json(obj, where, declared) -> RecurrenceSpec:
    side = _need(obj, "side", where, str)
    if side not in (LHS, RHS):
        raise SpecFileError("side must be 'lhs' or 'rhs'", f"{where}.side")
    shift = obj.get("shift", {})
    if not isinstance(shift, dict):
        raise SpecFileError("shift must be an object", f"{where}.shift")
    for s in shift:
        if s not in declared:
            raise UnboundSymbol(s, f"{where}.shift")
    try:
        return RecurrenceSpec(
            id=_need(obj, "id", where, str),
            side=side,
            target=_ref(_need(obj, "target", where), f"{where}.target"),
            subtract=_ref(_need(obj, "subtract", where), f"{where}.subtract"),
            shifted=_ref(_need(obj, "shifted", where), f"{where}.shifted"),
            multiplier=expr_from_json(_need(obj, "multiplier", where), f"{where}.multiplier", declared),
            shift=tuple((s, mono_from_json(m, f"{where}.shift.{s}", declared))
                        for s, m in shift.items()),
            multiplier_name=obj.get("multiplier_name", "M"),
            mirror=obj.get("mirror"),
            derivation_given=bool(obj.get("derivation_given", True)),
        )
    except ValueError as exc:
        if isinstance(exc, SpecFileError):
            raise
        raise SpecFileError(str(exc), where) from None


def record_from_json(obj, where="") -> IdentityRecord:
    symbols = _symbols_from_json(_need(obj, "symbols", where), f"{where}symbols")
    declared = {s.name for s in symbols}
    base = next(s.name for s in symbols if s.role == BASE)
    lw = f"{where}lhs"
    lhs_obj = _need(obj, "lhs", where)
    num = _need(lhs_obj, "num", lw, list)
    den = _need(lhs_obj, "den", lw, list)
    term = lhs_obj.get("terminating_index")
    try:
        lhs = SeriesSpec(
            base_exponent=_int(_need(lhs_obj, "base_exponent", lw), f"{lw}.base_exponent"),
            numerator=tuple(mono_from_json(m, f"{lw}.num[{i}]", declared) for i, m in enumerate(num)),
            denominator=tuple(mono_from_json(m, f"{lw}.den[{i}]", declared) for i, m in enumerate(den)),
            argument=mono_from_json(_need(lhs_obj, "arg", lw), f"{lw}.arg", declared),
            terminating_index=None if term is None else _int(term, f"{lw}.terminating_index"),
            base=base,
        )
    except ValueError as exc:
        if isinstance(exc, SpecFileError):
            raise
        raise SpecFileError(str(exc), lw) from None
    rhs = expr_from_json(_need(obj, "rhs", where), f"{where}rhs", declared)
    constraints = []
    for i, c in enumerate(obj.get("constraints", [])):
        cw = f"{where}constraints[{i}]"
        solve_for = _need(c, "solve_for", cw, str)
        if solve_for not in declared:
            raise UnboundSymbol(solve_for, cw)
        constraints.append(Constraint(mono_from_json(_need(c, "left", cw), f"{cw}.left", declared),
                                      mono_from_json(_need(c, "right", cw), f"{cw}.right", declared),
                                      solve_for))
    recs = tuple(recurrence_from_json(r, f"{where}recurrences[{i}]", declared)
                 for i, r in enumerate(obj.get("recurrences", [])))
    undeclared = expr_symbols(rhs) - declared
    if undeclared:
        raise UnboundSymbol(sorted(undeclared)[0], f"{where}rhs")
    return IdentityRecord(
        id=_need(obj, "id", where, str),
        name=obj.get("name", ""),
        reference=obj.get("reference", ""),
        symbols=symbols,
        lhs=lhs,
        rhs=rhs,
        constraints=tuple(constraints),
        recurrences=recs,
        family=obj.get("family"),
        notes=obj.get("notes", ""),
        extra_checks=tuple(obj.get("extra_checks", ())),
    )


def loads(text: str) -> list[IdentityRecord]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if isinstance(doc, dict) and "identities" in doc:
        items = doc["identities"]
        if not isinstance(items, list) or not items:
            raise SpecFileError("identities must be a non-empty list", "identities")
        return [record_from_json(x, f"identities[{i}].") for i, x in enumerate(items)]
    return [record_from_json(doc)]


def load_spec_file(path) -> list[IdentityRecord]:
    return loads(Path(path).read_text(encoding="utf-8"))


def ingest_spec_file(path) -> IdentityRecord:
    """Load a file and return its first identity; see :func:`load_spec_file`."""
    return load_spec_file(path)[0]
