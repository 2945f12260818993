"""Command-line entry point: ``snspec <command> --n N [--set SELECTOR] ...``.

Exit codes: 0 success, 1 a checked property was violated, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from math import factorial

from . import oracle
from .characters import cached_character_table, check_lemma25, dimension
from .connection_sets import derangements, parse_selector, set_size
from .errors import InvalidInputError
from .partitions import Partition
from .spectra import (
    ab_gap,
    aldous_check,
    derangement_min_eigenvalue,
    format_fraction,
    gap_polynomial,
    lemma22_findings,
    scan_theorem1,
    sign_eigenvalue_closed_form,
    spectrum,
    standard_eigenvalue_closed_form,
    strictly_second_largest,
)

COMMANDS = (
    "spectrum", "aldous", "verify", "scan-theorem1", "scan-lemma22",
    "check-lemma25", "report-derangement", "gap-table",
)
NEEDS_SET = {"spectrum", "aldous", "verify"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        if name in NEEDS_SET:
            p.add_argument("--set", dest="selector", required=True,
                           help="class:3,1,1 | TI:2,5 | Tk:4 | F:2 | D | custom:3,1;2,2")
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--threads", type=int,
                       default=int(os.environ.get("SNSPEC_THREADS", "1")))
        p.add_argument("--cache-dir", default=os.environ.get("SNSPEC_CACHE_DIR"))
        if name == "verify":
            p.add_argument("--tol", type=float, default=None,
                           help="absolute tolerance; default 1e-6 * max(1, degree)")
            p.add_argument("--dump-csv", default=None, help="write the numeric spectrum here")
    return parser


def _spectrum_problems(spec_) -> list[str]:
    problems = []
    total = sum(l.multiplicity for l in spec_.lines)
    if total != factorial(spec_.n):
        problems.append(f"multiplicities sum to {total}, not n!")
    top = spec_.lines[0]
    if top.value != spec_.degree or top.multiplicity != spec_.index_t:
        problems.append("top eigenvalue is not the degree with multiplicity index_t")
    if sum(l.value * l.multiplicity for l in spec_.lines) != 0:
        problems.append("trace is not zero")
    if sum(l.value ** 2 * l.multiplicity for l in spec_.lines) != factorial(spec_.n) * spec_.degree:
        problems.append("sum of squared eigenvalues is not n! * degree")
    return problems


def _cmd_spectrum(args):
    spec_ = spectrum(parse_selector(args.selector, args.n), args.threads)
    problems = _spectrum_problems(spec_)
    doc = spec_.to_dict()
    if problems:
        doc["violations"] = problems
    return doc, (1 if problems else 0), spec_


def _cmd_aldous(args):
    spec = parse_selector(args.selector, args.n)
    report = aldous_check(spec, args.threads)
    doc = {"command": "aldous", "n": args.n, "set": spec.selector, **report.to_dict()}
    return doc, 0, None


def _cmd_verify(args):
    spec = parse_selector(args.selector, args.n)
    if args.n > oracle.MAX_N:
        raise InvalidInputError(f"verify needs n <= {oracle.MAX_N}")
    exact = spectrum(spec, args.threads)
    tol = args.tol if args.tol is not None else 1e-6 * max(1, exact.degree)
    report = oracle.compare_spectra(exact, oracle.numeric_spectrum(spec, args.dump_csv), tol)
    components = oracle.component_count(spec)
    expanded = len(oracle.expand_set(spec))
    ok = report.match and components == exact.index_t and expanded == exact.degree
    doc = {
        "command": "verify",
        "n": args.n,
        "set": spec.selector,
        "match": report.match,
        "max_dev": report.max_deviation,
        "tolerance": tol,
        "first_mismatch": report.first_mismatch,
        "components": components,
        "index_t": exact.index_t,
        "expanded_size": str(expanded),
        "degree": str(exact.degree),
        "report": str(report),
        "passed": ok,
    }
    return doc, (0 if ok else 1), None


def _cmd_scan_theorem1(args):
    rows = scan_theorem1(args.n, args.threads)
    bad = [r for r in rows if r.violates]
    doc = {"command": "scan-theorem1", "n": args.n,
           "rows": [r.to_dict() for r in rows], "violations": [str(r.gamma) for r in bad]}
    return doc, (1 if bad else 0), None


def _cmd_scan_lemma22(args):
    findings = lemma22_findings(args.n)
    doc = {"command": "scan-lemma22", "n": args.n, "conclusion_holds": not findings,
           "rows": [f.to_dict() for f in findings]}
    return doc, 0, None


def _cmd_check_lemma25(args):
    bad = check_lemma25(args.n)
    doc = {"command": "check-lemma25", "n": args.n, "exponent": "41/20",
           "violations": [{"zeta": str(z), "dimension": str(dimension(z))} for z in bad]}
    return doc, (1 if bad else 0), None


def _cmd_report_derangement(args):
    n = args.n
    value, achievers = derangement_min_eigenvalue(n, args.threads)
    spec = derangements(n)
    size = set_size(spec)
    expected = Fraction(-size, n - 1)
    second, second_by = strictly_second_largest(spectrum(spec, args.threads))
    standard = Partition((n - 1, 1))
    unique = achievers == (standard,)
    problems = []
    if value != expected:
        problems.append("minimum eigenvalue differs from -|D_n|/(n-1)")
    if n >= 5 and not unique:
        problems.append("minimum is not attained uniquely by (n-1,1)")
    doc = {
        "command": "report-derangement",
        "n": n,
        "degree": str(size),
        "min_value": format_fraction(value),
        "expected_min": format_fraction(expected),
        "min_achievers": [str(p) for p in achievers],
        "unique_standard": unique,
        "strictly_second": format_fraction(second),
        "second_achievers": [str(p) for p in second_by],
        "aldous_holds": standard in second_by,
        "violations": problems,
    }
    return doc, (1 if problems else 0), None


def _cmd_gap_table(args):
    n = args.n
    if n < 4:
        raise InvalidInputError("gap-table needs n >= 4")
    asserted = n >= 7
    base = n * (n - 2)
    rows, problems = [], []
    for t in range(2, n - 1):
        gap = ab_gap(n, t)
        f_value = gap_polynomial(n, t) if t >= 5 else None
        rows.append({
            "t": t,
            "A": format_fraction(standard_eigenvalue_closed_form(n, [t])),
            "B": str(sign_eigenvalue_closed_form(n, [t])),
            "gap": format_fraction(gap),
            "f": None if f_value is None else str(f_value),
            "asserted": asserted,
        })
        if asserted:
            if t != 3 and gap < base:
                problems.append(f"gap({t}) < n(n-2)")
            if t >= 5 and f_value <= 0:
                problems.append(f"f({t}) <= 0")
    if asserted:
        expected = {2: base, 3: -base, 4: Fraction(base * (n - 3) * (n - 4), 2)}
        for t, want in expected.items():
            if t <= n - 2 and ab_gap(n, t) != want:
                problems.append(f"gap({t}) != closed form")
        fs = [gap_polynomial(n, t) for t in range(5, n - 1)]
        if fs and (min(fs) != gap_polynomial(n, n - 2) or min(fs) != n - 3):
            problems.append("min f is not f(n-2) = n-3")
    doc = {"command": "gap-table", "n": n, "rows": rows, "violations": problems}
    return doc, (1 if problems else 0), None


HANDLERS = {
    "spectrum": _cmd_spectrum,
    "aldous": _cmd_aldous,
    "verify": _cmd_verify,
    "scan-theorem1": _cmd_scan_theorem1,
    "scan-lemma22": _cmd_scan_lemma22,
    "check-lemma25": _cmd_check_lemma25,
    "report-derangement": _cmd_report_derangement,
    "gap-table": _cmd_gap_table,
}


def _csv_cell(value):
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    if value is None:
        return ""
    return str(value)


def render(doc: dict, fmt: str, spectrum_obj=None) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if spectrum_obj is not None:
        return spectrum_obj.to_csv()
    rows = doc.get("rows")
    if rows is None:
        rows = [{k: v for k, v in doc.items() if k != "rows"}]
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else ["n"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
    return buf.getvalue()


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, execute, write one document to ``stdout``; return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.n < 1:
            raise InvalidInputError(f"--n must be positive, got {args.n}")
        if args.threads < 1:
            raise InvalidInputError(f"--threads must be positive, got {args.threads}")
        if args.cache_dir:
            cached_character_table(args.n, args.cache_dir)
        doc, code, spectrum_obj = HANDLERS[args.command](args)
    except InvalidInputError as exc:
        stderr.write(f"snspec: error: {exc}\n")
        return 2
    stdout.write(render(doc, args.output, spectrum_obj))
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="snspec: %(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
