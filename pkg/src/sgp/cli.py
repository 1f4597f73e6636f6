"""Command-line interface: print tables, classify subgroups, audit, write atlases.

Grammar::

    sgp <command> <family> <n|a..b> [--format text|json|csv] [--out PATH]
        [--max-order N] [--fail-on-discrepancy]

Commands: table, classify, audit, atlas.  Exit codes: 0 success, 1 usage
or failed --fail-on-discrepancy, 2 internal consistency, 3 table
validation.  The subgroup-enumeration bound defaults to 256 and can be
overridden with --max-order or the SGP_MAX_ORDER environment variable.
All output is deterministic: identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import re
import sys
from pathlib import Path

from . import chars, gelfand, groups
from .errors import InternalConsistencyError, SgpError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_VALIDATION = 3

ATLAS_SCHEMA_VERSION = 1

_RANGE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="sgp", description="Exact character tables and "
                     "strong-Gelfand classification for cyclic, dihedral and "
                     "dicyclic groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    command_help = {
        "table": "print the character table of a family group",
        "classify": "classify every subgroup as (strong) Gelfand or not",
        "audit": "diff the brute-force classification against the closed-form rules",
        "atlas": "write one JSON atlas file per group in the range",
    }
    for name, help_text in command_help.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("family", choices=["cyclic", "dihedral", "dicyclic"])
        p.add_argument("n", metavar="n|a..b", help="single n or inclusive range a..b")
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        p.add_argument("--out", default=None, help="write output here instead of stdout"
                       if name != "atlas" else "output directory (required)")
        p.add_argument("--max-order", type=int, default=None,
                       help="override the subgroup-enumeration order bound")
        if name == "audit":
            p.add_argument("--fail-on-discrepancy", action="store_true",
                           help="exit nonzero when any discrepancy is reported")
    return parser


def _parse_range(text: str) -> list[int]:
    m = _RANGE.match(text.strip())
    if not m:
        raise _UsageError(f"cannot parse n or range {text!r} (expected e.g. 5 or 3..10)")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 1 or hi < lo:
        raise _UsageError(f"invalid range {text!r}: need 1 <= a <= b")
    return list(range(lo, hi + 1))


def _max_order(args) -> int:
    if args.max_order is not None:
        return args.max_order
    env = os.environ.get("SGP_MAX_ORDER")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _UsageError(f"SGP_MAX_ORDER must be an integer, got {env!r}") from exc
    return groups.DEFAULT_MAX_ORDER


def _emit(text: str, out: str | None) -> None:
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")


def _json_dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


# -- table ----------------------------------------------------------------------


def _cmd_table(args) -> int:
    chunks = []
    for n in _parse_range(args.n):
        g = groups.build_group(args.family, n)
        table = chars.family_table(g)
        check = chars.validate_table(table)
        if not check.passed:
            for failure in check.failures:
                print(f"table validation failed: {failure}", file=sys.stderr)
            return EXIT_VALIDATION
        if args.format == "text":
            chunks.append(chars.table_to_text(table))
        elif args.format == "json":
            chunks.append(_json_dumps(chars.table_to_json(table)))
        else:
            doc = chars.table_to_json(table)
            rows = [[r["name"], *r["values"]] for r in doc["rows"]]
            chunks.append(_csv_text(["name", *doc["classes"]], rows))
    _emit("\n\n".join(chunks), args.out)
    return EXIT_OK


# -- classify ---------------------------------------------------------------------


def _classification_text(report) -> str:
    g = report.group
    lines = [f"Subgroups of {g.name}: {len(report.records)} total"]
    for r in report.records:
        line = (f"  {r.descriptor:<12} order={r.order:<4} index={r.index:<4} "
                f"gelfand={'yes' if r.gelfand else 'no':<4} "
                f"strong_gelfand={'yes' if r.strong_gelfand else 'no'}")
        if r.witness is not None:
            line += f"  witness <{r.witness.psi}, {r.witness.chi}> = {r.witness.mult}"
        lines.append(line)
    return "\n".join(lines)


def _classification_csv(report) -> str:
    rows = []
    for r in report.records:
        w = r.witness
        rows.append([
            report.group.name, r.descriptor, r.order, r.index,
            r.gelfand, r.strong_gelfand,
            w.psi if w else "", w.chi if w else "", w.mult if w else "",
        ])
    return _csv_text(
        ["group", "desc", "order", "index", "gelfand", "strong_gelfand",
         "witness_psi", "witness_chi", "witness_mult"],
        rows,
    )


def _cmd_classify(args) -> int:
    bound = _max_order(args)
    chunks = []
    for n in _parse_range(args.n):
        g = groups.build_group(args.family, n)
        report = gelfand.classify_subgroups(g, bound)
        if args.format == "text":
            chunks.append(_classification_text(report))
        elif args.format == "json":
            chunks.append(_json_dumps(gelfand.classification_to_json(report)))
        else:
            chunks.append(_classification_csv(report))
    _emit("\n\n".join(chunks), args.out)
    return EXIT_OK


# -- audit ------------------------------------------------------------------------


def _audit_text(report) -> str:
    lines = []
    for ga in report.audits:
        lines.append(f"{ga.family} n={ga.n} ({ga.group_name}): subgroups={ga.total} "
                     f"agree={ga.agree} disagree={ga.disagree}")
        for d in ga.discrepancies:
            line = (f"  {d.descriptor} (order {d.order}): predicted_strong_gelfand="
                    f"{d.predicted} computed={d.computed}")
            if d.witness is not None:
                line += f" witness <{d.witness.psi}, {d.witness.chi}> = {d.witness.mult}"
            lines.append(line)
    return "\n".join(lines)


def _audit_csv(report) -> str:
    rows = []
    for ga in report.audits:
        for e in ga.entries:
            r, w = e.record, e.record.witness
            rows.append([
                ga.family, ga.n, r.descriptor, r.order, r.gelfand,
                r.strong_gelfand, e.predicted, e.agrees,
                w.psi if w else "", w.chi if w else "", w.mult if w else "",
            ])
    return _csv_text(
        ["family", "n", "desc", "order", "gelfand", "strong_gelfand",
         "predicted_strong_gelfand", "agree",
         "witness_psi", "witness_chi", "witness_mult"],
        rows,
    )


def _cmd_audit(args) -> int:
    report = gelfand.audit(args.family, _parse_range(args.n), _max_order(args))
    if args.format == "text":
        _emit(_audit_text(report), args.out)
    elif args.format == "json":
        _emit(_json_dumps([gelfand.group_audit_to_json(a) for a in report.audits]),
              args.out)
    else:
        _emit(_audit_csv(report), args.out)
    if args.fail_on_discrepancy and report.total_discrepancies:
        print(f"{report.total_discrepancies} discrepancies found", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


# -- atlas ------------------------------------------------------------------------


def _atlas_document(family: str, n: int, bound: int) -> dict:
    g = groups.build_group(family, n)
    table = chars.family_table(g)
    check = chars.validate_table(table)
    if not check.passed:
        raise InternalConsistencyError(
            "family table failed validation: " + "; ".join(check.failures)
        )
    ga = gelfand.audit_group(family, n, bound)
    doc = {"schema_version": ATLAS_SCHEMA_VERSION}
    doc.update(gelfand.group_audit_to_json(ga))
    doc["order"] = g.order
    doc["table"] = chars.table_to_json(table)
    return doc


def _cmd_atlas(args) -> int:
    if args.out is None:
        raise _UsageError("atlas requires --out DIRECTORY")
    bound = _max_order(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = []
    for n in _parse_range(args.n):
        doc = _atlas_document(args.family, n, bound)
        payload = (_json_dumps(doc) + "\n").encode("utf-8")
        filename = f"{args.family}_{n}.json"
        (out_dir / filename).write_bytes(payload)
        manifest.append({"file": filename, "sha256": hashlib.sha256(payload).hexdigest()})
    manifest_text = _json_dumps(manifest) + "\n"
    (out_dir / "manifest.json").write_text(manifest_text, encoding="utf-8")
    print(manifest_text, end="")
    return EXIT_OK


# -- entry point ------------------------------------------------------------------


_COMMANDS = {
    "table": _cmd_table,
    "classify": _cmd_classify,
    "audit": _cmd_audit,
    "atlas": _cmd_atlas,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"sgp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"sgp: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SgpError as exc:
        print(f"sgp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sgp: i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
