"""Command-line interface: ``absorbing <command> ...``.

Exit codes: 0 success, 1 counterexample or internal error during ``verify``,
2 usage, parse, build or configuration error.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import sys

from .errors import AbsorbingError, InternalError, ParseError
from .ideals import ideal_generated
from .lattice import enumerate_ideals
from .predicates import PREDICATE_NAMES, classify
from .ring import CAP_ENV, default_cap, is_local, nilradical, validate_ring
from .spec import build_spec
from .theorems import (
    MIN_PRIMES_ID,
    SuiteConfig,
    default_corpus,
    load_corpus,
    run_suite,
    search_open_question,
    search_profiles,
    suite_exit_code,
)
from .theorems.corpus import CorpusEntry

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _as_tuple(x):
    return tuple(_as_tuple(v) for v in x) if isinstance(x, (list, tuple)) else x


def _label(x) -> str:
    return str(_as_tuple(x)).replace(" ", "")


def _set_text(labels) -> str:
    return "{" + ", ".join(_label(x) for x in labels) + "}"


class _Out:
    """Single writer for everything the CLI prints or saves."""

    def __init__(self, path: str | None):
        self.path = path

    def emit(self, text: str) -> None:
        if not text.endswith("\n"):
            text += "\n"
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _cap(args) -> int:
    return args.cap if args.cap is not None else default_cap()


# ------------------------------------------------------------------ commands


def cmd_ring_info(args) -> int:
    ring = build_spec(args.spec, cap=_cap(args), validate=False)
    report = validate_ring(ring)
    local, m = is_local(ring)
    lat = enumerate_ideals(ring, _cap(args))
    maximal = [i for i, mx in zip(lat.ideals, lat.maximal) if mx]
    info = {
        "spec": ring.label,
        "order": ring.order,
        "units": len(ring.units),
        "nilradical": nilradical(ring).to_json(),
        "local": local,
        "maximal_ideals": [i.to_json() for i in maximal],
        "ideals": len(lat),
        "valid": report.valid,
        "validation": report.to_json()["failures"],
    }
    if args.format == "json":
        args.out.emit(_dump(info))
    else:
        lines = [
            f"ring        {ring.label}",
            f"order       {ring.order}",
            f"units       {len(ring.units)}",
            f"nilradical  {_set_text(nilradical(ring).labels())}",
            f"local       {'yes' if local else 'no'}",
            f"maximal     {len(maximal)}: " + "  ".join(_set_text(i.labels()) for i in maximal),
            f"ideals      {len(lat)}",
            f"valid       {'yes' if report.valid else 'no'}",
        ]
        lines += [f"  fails {axiom} at {w}" for axiom, w in report.failures]
        args.out.emit("\n".join(lines))
    return EXIT_OK if report.valid else EXIT_USAGE


def cmd_ideals_list(args) -> int:
    ring = build_spec(args.spec, cap=_cap(args))
    lat = enumerate_ideals(ring, _cap(args))
    if args.format == "json":
        args.out.emit(_dump(lat.to_json()))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["members", "proper", "maximal", "prime"])
        for i, mx, pr in zip(lat.ideals, lat.maximal, lat.prime):
            w.writerow([";".join(map(str, i.members)), i.proper, mx, pr])
        args.out.emit(buf.getvalue())
    else:
        lines = [f"{ring.label}: {len(lat)} ideals"]
        for i, mx, pr in zip(lat.ideals, lat.maximal, lat.prime):
            tags = [t for t, on in (("maximal", mx), ("prime", pr), ("improper", not i.proper)) if on]
            lines.append(f"  {_set_text(i.labels())}  {' '.join(tags)}".rstrip())
        args.out.emit("\n".join(lines))
    return EXIT_OK


def _parse_element(ring, token: str) -> int:
    try:
        value = ast.literal_eval(token)
    except (ValueError, SyntaxError):
        raise ParseError(f"cannot read element {token!r}", 1, 0) from None
    return ring.index_of(value)


def cmd_classify(args) -> int:
    ring = build_spec(args.spec, cap=_cap(args))
    if args.gens:
        ideals = [ideal_generated(ring, [_parse_element(ring, g) for g in args.gens])]
    else:
        ideals = list(enumerate_ideals(ring, _cap(args)).ideals)
    rows = []
    for i in ideals:
        profile = classify(i)
        rows.append({
            "ideal": i.to_json(),
            "labels": [_jsonable(x) for x in i.labels()],
            "proper": i.proper,
            "profile": profile.flags(),
            "witnesses": {
                k: {"elements": list(v), "labels": [_jsonable(ring.label_of(x)) for x in v]}
                for k, v in profile.witnesses.items()
            },
        })
    if args.format == "json":
        args.out.emit(_dump({"ring": ring.label, "rows": rows}))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ideal", *PREDICATE_NAMES, "witnesses"])
        for row in rows:
            wit = " ".join(
                f"{k}=" + ";".join(_label(x) for x in v["labels"]) for k, v in row["witnesses"].items()
            )
            w.writerow([";".join(_label(x) for x in row["labels"]), *row["profile"].values(), wit])
        args.out.emit(buf.getvalue())
    else:
        lines = [f"{ring.label}"]
        for row in rows:
            on = [k for k, v in row["profile"].items() if v]
            lines.append(f"{_set_text(row['labels'])}")
            lines.append(f"  holds: {', '.join(on) if on else '(none)'}")
            for k, v in row["witnesses"].items():
                lines.append(f"  not {k}: ({', '.join(_label(x) for x in v['labels'])})")
        args.out.emit("\n".join(lines))
    return EXIT_OK


def _jsonable(x):
    return [_jsonable(v) for v in x] if isinstance(x, tuple) else x


def _entries(args) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    if getattr(args, "corpus", None):
        entries += load_corpus(args.corpus)
    entries += [CorpusEntry(s) for s in getattr(args, "spec", None) or []]
    if not entries and not getattr(args, "corpus", None):
        entries = default_corpus(_cap(args))
    return entries


def _flatten_witness(w) -> str:
    if not w:
        return ""
    parts = []
    for key, value in w.items():
        if isinstance(value, dict) and "labels" in value:
            parts.append(f"{key}=" + ";".join(_label(x) for x in value["labels"]))
        elif key == "part":
            parts.append(f"part={value}")
    return " ".join(parts)


def cmd_verify(args) -> int:
    inline = bool(args.corpus or args.spec)
    explicit = bool(args.check) and args.check in MIN_PRIMES_ID
    config = SuiteConfig(
        cap=_cap(args),
        slow=args.slow,
        check=args.check,
        parallel=args.parallel,
        timing=not args.no_timing,
        constructions=explicit or not inline,
    )
    report = run_suite(_entries(args), config)
    if args.format == "json":
        args.out.emit(_dump(report))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "ring", "outcome", "instances_checked", "millis", "witness"])
        for r in report["results"]:
            w.writerow([r["check_id"], r["ring"], r["outcome"], r["instances_checked"], r.get("millis", ""),
                        _flatten_witness(r.get("witness"))])
        args.out.emit(buf.getvalue())
    else:
        lines = [
            f"{r['outcome']:<15} {r['check_id']:<36} {r['ring']}  ({r['instances_checked']} instances)"
            for r in report["results"]
        ]
        lines += [f"BUILD ERROR     {e['spec']}: {e['error']}" for e in report["build_errors"]]
        s = report["summary"]
        lines.append(
            f"verified {s['verified']}, vacuous {s['vacuous']}, counterexamples {s['counterexamples']}, "
            f"errors {s['errors']}, build errors {s['build_errors']}"
        )
        v = report["vacuity"]
        if v["never_verified"]:
            lines.append("never verified: " + ", ".join(v["never_verified"]))
        for cid, why in v["provably_vacuous"].items():
            lines.append(f"provably vacuous: {cid}: {why}")
        args.out.emit("\n".join(lines))
    return suite_exit_code(report)


def cmd_search(args) -> int:
    report = search_profiles(args.expr, _entries(args), cap=_cap(args))
    if args.format == "json":
        args.out.emit(_dump(report))
    else:
        lines = [f"{h['ring']}  {_set_text(h['ideal']['labels'])}" for h in report["hits"]]
        lines.append(f"{len(report['hits'])} hits over {report['ideals_scanned']} ideals")
        args.out.emit("\n".join(lines))
    return EXIT_USAGE if report["build_errors"] else EXIT_OK


def cmd_open_question(args) -> int:
    report = search_open_question(_entries(args), cap=_cap(args))
    if args.format == "json":
        args.out.emit(_dump(report))
    else:
        s = report["summary"]
        lines = [
            report["question"],
            f"instances checked: {report['instances_checked']}",
            f"hits: {s['hits']} ({s['hits_without_triple_zero']} with no triple-zero in I1 x I2 x I3)",
        ]
        for h in report["hits"][: args.limit]:
            trip = " ".join(_set_text(t["labels"]) for t in h["triple"])
            tz = "free" if h["free"] else "triple-zero (" + ", ".join(_label(x) for x in h["triple_zero"]["labels"]) + ")"
            lines.append(f"  {h['ring']}  I={_set_text(h['ideal']['labels'])}  {trip}  {tz}")
        args.out.emit("\n".join(lines))
    return EXIT_USAGE if report["build_errors"] else EXIT_OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help=f"ring order cap (default 256, or ${CAP_ENV})")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", "-o", default=None, help="write the report to this file")

    parser = argparse.ArgumentParser(
        prog="absorbing",
        description="Finite commutative rings and the weakly 1-absorbing prime hierarchy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="ring-level queries")
    ring_sub = ring.add_subparsers(dest="action", required=True)
    p = ring_sub.add_parser("info", parents=[common], help="order, units, nilradical, maximal ideals")
    p.add_argument("spec")
    p.set_defaults(func=cmd_ring_info)

    ideals = sub.add_parser("ideals", help="ideal lattice")
    ideals_sub = ideals.add_subparsers(dest="action", required=True)
    p = ideals_sub.add_parser("list", parents=[common], help="every ideal with proper/maximal/prime flags")
    p.add_argument("spec")
    p.set_defaults(func=cmd_ideals_list)

    p = sub.add_parser("classify", parents=[common], help="classification profiles with witnesses")
    p.add_argument("spec")
    p.add_argument("--gens", nargs="+", help="generators: element indices or labels such as (1,0,1)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run the theorem suite over a corpus")
    p.add_argument("--corpus", help="corpus file (default: built-in corpus)")
    p.add_argument("--spec", action="append", help="inline ring spec (repeatable)")
    p.add_argument("--check", help="only checks whose id contains this text")
    p.add_argument("--slow", action="store_true", help="include slow-tier rings and the n=3 construction")
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="omit millis and timestamp")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="ideals whose profile satisfies a flag expression")
    p.add_argument("expr")
    p.add_argument("--corpus")
    p.add_argument("--spec", action="append")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("open-question", parents=[common], help="search ideal triples escaping the conclusion")
    p.add_argument("--corpus")
    p.add_argument("--spec", action="append")
    p.add_argument("--limit", type=int, default=20, help="hits shown in text output")
    p.set_defaults(func=cmd_open_question)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out = _Out(args.output)
    if args.cap is not None and args.cap < 2:
        parser.error("--cap must be at least 2")
    if getattr(args, "parallel", 1) < 1:
        parser.error("--parallel must be at least 1")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error at token {exc.token}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except AbsorbingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
