"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 the sampler ran out
of candidates, 3 bad input (unknown id, malformed file or point, pole at a
user-supplied point).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import format_rational
from .catalog import CATALOG, all_recurrences, get_identity, lhs_value, point_from_parameters, rhs_value
from .errors import EVALUATION_ERRORS, QPfaffError, SamplingExhausted
from .pfaff import CertReport, certify_identity, certify_recurrence, certify_singh, singh_stage_values
from .qseries import classify
from .schema import dumps, load_spec_file

EXIT_PASS, EXIT_FAIL, EXIT_EXHAUSTED, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _registry(spec_file: str | None):
    registry = dict(CATALOG)
    loaded = []
    if spec_file:
        loaded = load_spec_file(spec_file)
        registry.update({r.id: r for r in loaded})
    return registry, loaded


def _parse_assignment(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise InputError(f"--at expects symbol=rational, got {text!r}")
    try:
        return name.strip(), Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--at {text!r}: {value!r} is not a rational") from None


def _write_json(path: str | None, doc: dict) -> None:
    if not path:
        return
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _echo(args, fields) -> str:
    """A normalized command echo; the report path is left out on purpose."""
    parts = [args.command]
    for f in fields:
        v = getattr(args, f, None)
        if v is None or v is False or v == []:
            continue
        flag = "--" + f.replace("_", "-")
        if v is True:
            parts.append(flag)
        elif f in ("ids", "rec_id"):
            parts.extend(v if isinstance(v, list) else [v])
        else:
            parts.extend([flag, str(v)])
    return " ".join(parts)


def _report_doc(args, fields, ident, reports: list[CertReport], millis):
    samples = [s.to_json() for r in reports for s in r.samples]
    verdict = "pass" if all(r.passed for r in reports) else "fail"
    return {
        "version": __version__,
        "command": _echo(args, fields),
        "id": ident,
        "identities": [r.identity for r in reports],
        "seed": args.seed,
        "n_max": args.n_max,
        "bound": args.bound,
        "samples": samples,
        "stated_without_derivation": sorted({x for r in reports for x in r.stated_without_derivation}),
        "checks": sum(len(r.checks) for r in reports),
        "failed": sum(len(r.failures) for r in reports),
        "verdict": verdict,
        "millis": millis,
    }


def _print_report(r: CertReport, out) -> None:
    total, bad = len(r.checks), len(r.failures)
    print(f"{r.identity:8s} {r.verdict:4s}  {total - bad}/{total} checks  "
          f"({len(r.samples)} points, n <= {r.n_max}, seed {r.seed})", file=out)
    for index, check in r.failures[:10]:
        res = f" residual {format_rational(check.residual)}" if check.residual is not None else ""
        print(f"    point {index}: {check.name} FAILED{res}", file=out)
    if r.stated_without_derivation:
        print(f"    stated without derivation in the source: "
              f"{', '.join(r.stated_without_derivation)}", file=out)


# --- commands -----------------------------------------------------------------


def run_list(args) -> int:
    registry, _ = _registry(args.file)
    rows = []
    for rid, rec in registry.items():
        flags = classify(rec.lhs)
        rows.append({
            "id": rid,
            "name": rec.name,
            "reference": rec.reference,
            "flags": flags.labels(),
            "recurrences": [r.id for r in rec.recurrences],
        })
        print(f"{rid:7s} {rec.name:42s} [{', '.join(flags.labels())}]  {rec.reference}")
    _write_json(args.json, {"version": __version__, "identities": rows})
    return EXIT_PASS


def run_evaluate(args) -> int:
    registry, loaded = _registry(None)
    source = args.source
    if Path(source).is_file():
        registry, loaded = _registry(source)
        source = args.id or loaded[0].id
    record = get_identity(source, registry)
    values = dict(_parse_assignment(a) for a in args.at)
    p = point_from_parameters(record, values, args.n)
    lhs, rhs = lhs_value(record, p), rhs_value(record, p)
    print(f"lhs {format_rational(lhs)}")
    print(f"rhs {format_rational(rhs)}")
    _write_json(args.json, {
        "version": __version__, "id": record.id, "n": args.n,
        "point": {k: format_rational(v) for k, v in p.values},
        "lhs": format_rational(lhs), "rhs": format_rational(rhs), "equal": lhs == rhs,
    })
    return EXIT_PASS if lhs == rhs else EXIT_FAIL


VERIFY_FIELDS = ("ids", "all", "file", "n_max", "samples", "seed", "bound")


def run_verify(args) -> int:
    registry, loaded = _registry(args.file)
    if args.all:
        ids = list(CATALOG)
    elif args.ids:
        ids = args.ids
    elif loaded:
        ids = [r.id for r in loaded]
    else:
        raise InputError("verify needs identity ids, --all, or --file")
    for i in ids:
        get_identity(i, registry)
    start = time.perf_counter()
    reports = [
        certify_identity(i, args.n_max, args.samples, args.seed, args.bound,
                         registry=registry, with_branch_flips=not args.no_branch_flips)
        for i in ids
    ]
    elapsed = round((time.perf_counter() - start) * 1000)
    for r in reports:
        _print_report(r, sys.stdout)
        if "singh" in registry[r.identity].extra_checks:
            last = r.samples[0]
            stages = next(c for c in reversed(last.checks) if c.name.startswith("singh"))
            print(f"    singh chain at point 0, n={r.n_max}: {' = '.join(stages.detail['stages'])}")
    ident = "all" if args.all else ",".join(ids)
    doc = _report_doc(args, VERIFY_FIELDS, ident, reports, elapsed if args.timing else None)
    _write_json(args.json, doc)
    print(f"verdict: {doc['verdict']} ({doc['checks'] - doc['failed']}/{doc['checks']} checks, "
          f"{elapsed} ms)")
    return EXIT_PASS if doc["verdict"] == "pass" else EXIT_FAIL


RECURRENCE_FIELDS = ("rec_id", "file", "n_max", "samples", "seed", "bound")


def run_recurrence(args) -> int:
    registry, _ = _registry(args.file)
    if args.rec_id == "list":
        for rid, rec in all_recurrences(registry).items():
            note = "" if rec.derivation_given else "  (stated without derivation)"
            print(f"{rid:16s} {rec.side}  {rec.multiplier_name}{note}")
        return EXIT_PASS
    start = time.perf_counter()
    report = certify_recurrence(args.rec_id, args.n_max, args.samples, args.seed, args.bound,
                                registry=registry)
    elapsed = round((time.perf_counter() - start) * 1000)
    _print_report(report, sys.stdout)
    doc = _report_doc(args, RECURRENCE_FIELDS, args.rec_id, [report],
                      elapsed if args.timing else None)
    _write_json(args.json, doc)
    return EXIT_PASS if report.passed else EXIT_FAIL


SINGH_FIELDS = ("n_max", "samples", "seed", "bound")


def run_singh(args) -> int:
    record = get_identity("T1.5")
    if args.at:
        values = dict(_parse_assignment(a) for a in args.at)
        ok = True
        for n in range(args.n_max + 1):
            p = point_from_parameters(record, values, n)
            stages = singh_stage_values(p, record)
            same = all(v == stages[0] for v in stages)
            ok &= same
            print(f"n={n}: {' | '.join(format_rational(v) for v in stages)}  "
                  f"{'equal' if same else 'DIFFER'}")
        return EXIT_PASS if ok else EXIT_FAIL
    start = time.perf_counter()
    report = certify_singh(args.n_max, args.samples, args.seed, args.bound)
    elapsed = round((time.perf_counter() - start) * 1000)
    _print_report(report, sys.stdout)
    _write_json(args.json, _report_doc(args, SINGH_FIELDS, "T1.5", [report],
                                       elapsed if args.timing else None))
    return EXIT_PASS if report.passed else EXIT_FAIL


def run_export(args) -> int:
    ids = args.ids or list(CATALOG)
    text = dumps(get_identity(i) for i in ids)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# --- parser -------------------------------------------------------------------


def _sampling_flags(p: argparse.ArgumentParser, n_max=8, samples=25) -> None:
    p.add_argument("--n-max", type=int, default=n_max)
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--bound", type=int, default=8,
                   help="numerators and denominators are drawn from [-B, B] without 0")
    p.add_argument("--json", metavar="PATH", help="write a machine-readable report ('-' for stdout)")
    p.add_argument("--timing", action="store_true",
                   help="record wall-clock millis in the report (breaks byte-stability)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpfaff", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list the identity catalog")
    p.add_argument("--file", help="also list identities from this file")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=run_list)

    p = sub.add_parser("evaluate", help="evaluate both sides at one point")
    p.add_argument("source", help="catalog id or path to an identity file")
    p.add_argument("--id", help="identity to pick from a multi-identity file")
    p.add_argument("--at", action="append", default=[], metavar="SYM=P/Q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=run_evaluate)

    p = sub.add_parser("verify", help="certify identities at sampled points")
    p.add_argument("ids", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--file", help="identity file; its entries join the catalog")
    p.add_argument("--no-branch-flips", action="store_true",
                   help="skip the informational negated-root checks")
    _sampling_flags(p)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("recurrence", help="check one recurrence ('list' to show ids)")
    p.add_argument("rec_id")
    p.add_argument("--file")
    _sampling_flags(p, n_max=6, samples=10)
    p.set_defaults(func=run_recurrence)

    p = sub.add_parser("singh", help="check the quadratic-transformation chain for T1.5")
    p.add_argument("--at", action="append", default=[], metavar="SYM=P/Q")
    _sampling_flags(p, n_max=6, samples=20)
    p.set_defaults(func=run_singh)

    p = sub.add_parser("export", help="write catalog entries in the identity-file schema")
    p.add_argument("ids", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(func=run_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SamplingExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (InputError, QPfaffError, *EVALUATION_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
