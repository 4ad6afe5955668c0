"""Command-line driver: derive | verify | symmetrize | gauge-check | dump.

Exit codes: 0 all pass, 2 known discrepancies only, 1 unexpected
failure, 3 usage error.  JSON-lines output is byte-deterministic for a
fixed configuration unless --timings is given.
"""

from __future__ import annotations

import argparse
import json
import sys

from .geomring import FUNCTION_NAMES
from .minilang import ParseError, format_scalar, parse_scalar
from .builders import (GeneralScalarSpec, PotentialSpec, build_gauge_matrix,
                       build_general_scalar, build_hamiltonian,
                       build_integral, build_scalar_basis,
                       gauge_conjugated_scalar_hamiltonian,
                       gauge_induced_spec, printed_general_scalar)
from .catalog import (ENTRY_IDS, all_entries, classify, get_entry,
                      verify_all, verify_entry)
from .determining import derive_system, match_reference_sets
from .spinalg import label_name

DEFAULT_SEED = 1729

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DISCREPANCY = 2
EXIT_USAGE = 3


def format_operator(op):
    """Deterministic text rendering of a normal-ordered operator."""
    lines = []
    for d, mat in sorted(op.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]),
                         reverse=True):
        for label in sorted(mat.coeffs):
            g = mat.coeffs[label]
            if g.is_zero():
                continue
            dtxt = "".join(f"d{ax}" * e for ax, e in zip("xyz", d))
            head = f"{label_name(label)}{' ' + dtxt if dtxt else ''}"
            lines.append(f"  [{head:14s}] {format_scalar(g)}")
    return "\n".join(lines) if lines else "  0"


def _parse_sets(pairs):
    subs = {}
    for item in pairs or ():
        name, sep, expr = item.partition("=")
        name = name.strip()
        if not sep or name not in FUNCTION_NAMES:
            raise SystemExit(_usage(f"bad --set binding {item!r}"))
        subs[name] = expr.strip()
    return subs


def _usage(message):
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _emit_records(records, report, timings):
    worst = EXIT_OK
    for r in records:
        verdict = r["verdict"]
        if verdict == "failure":
            worst = EXIT_FAILURE
        elif verdict == "discrepancy" and worst == EXIT_OK:
            worst = EXIT_DISCREPANCY
        if report == "json":
            payload = {
                "id": r["id"],
                "integral": r["integral"],
                "mode": r["check"] + ("" if r["branch"] == "sym"
                                      else f"[{r['branch']}]"),
                "verdict": verdict,
                "residual_terms": r["residual_terms"],
                "wall_time_ms": r["wall_time_ms"] if timings else 0,
            }
            if r.get("diagnosis"):
                payload["diagnosis"] = r["diagnosis"]
            print(json.dumps(payload, sort_keys=True))
        else:
            extra = ""
            if r.get("diagnosis"):
                extra = f"  [{r['diagnosis']}]"
            branch = "" if r["branch"] == "sym" else f" {r['branch']}"
            print(f"{r['id']:>3} {r['integral']:<12} {r['check']}{branch}: "
                  f"{verdict}{extra}")
            for term in r["residual_terms"][:3]:
                print(f"      residual: {term}")
    return worst


def cmd_derive(args):
    subs = _parse_sets(args.set)
    try:
        system = derive_system(order_filter=args.order,
                               substitutions=subs or None)
    except ParseError as exc:
        return _usage(str(exc))
    for eq in system:
        if args.report == "json":
            print(json.dumps({
                "order": eq.order,
                "expression": format_scalar(eq.expression),
                "sources": len(eq.provenance),
            }, sort_keys=True))
        else:
            print(f"[order {eq.order}] {format_scalar(eq.expression)}")
    print(f"# {len(system)} equations", file=sys.stderr)
    if args.reference:
        worst = EXIT_OK
        for ident, verdict in match_reference_sets():
            print(f"# reference {ident}: {verdict}", file=sys.stderr)
            if verdict != "matched":
                worst = EXIT_DISCREPANCY
        return worst
    return EXIT_OK


def _selector_entries(case):
    if case in (None, "all"):
        return all_entries()
    if "-" in case and case not in ENTRY_IDS:
        lo, _, hi = case.partition("-")
        if lo.isdigit() and hi.isdigit():
            wanted = [str(i) for i in range(int(lo), int(hi) + 1)]
            return [get_entry(i) for i in wanted]
        raise KeyError(case)
    return [get_entry(case)]


def cmd_verify(args):
    try:
        entries = _selector_entries(None if args.all else args.case)
    except KeyError as exc:
        return _usage(f"unknown case {exc}")
    records = []
    if args.all or args.case in (None, "all"):
        records = verify_all(mode=args.mode, eps=args.eps, seed=args.seed,
                             jobs=args.jobs)
    else:
        for e in entries:
            records.extend(verify_entry(e, mode=args.mode, eps=args.eps,
                                        seed=args.seed))
    return _emit_records(records, args.report, args.timings)


def cmd_symmetrize(args):
    subs = _parse_sets(args.set)
    if args.weights:
        try:
            with open(args.weights, "r", encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    name, sep, expr = line.partition("=")
                    if not sep:
                        return _usage(f"{args.weights}:{lineno}: expected "
                                      "name = expression")
                    subs[name.strip()] = expr.strip()
        except OSError as exc:
            return _usage(str(exc))
    if args.symbolic or not subs:
        op = build_general_scalar(GeneralScalarSpec.symbolic())
    else:
        try:
            entries = {name: parse_scalar(expr) for name, expr in subs.items()
                       if name.startswith("f")}
        except ParseError as exc:
            return _usage(str(exc))
        op = build_general_scalar(GeneralScalarSpec(entries,
                                                    default_zero=True))
    print(format_operator(op))
    return EXIT_OK


def cmd_gauge_check(args):
    worst = EXIT_OK
    u = build_gauge_matrix()
    from .spinalg import TwoSpinMatrix
    ok = (u.adjoint() * u) == TwoSpinMatrix.identity()
    print(f"unitarity U+U = I: {'pass' if ok else 'FAIL'}")
    if not ok:
        worst = EXIT_FAILURE
    ht = gauge_conjugated_scalar_hamiltonian()
    spec = gauge_induced_spec()
    ok = ht == build_hamiltonian(spec)
    print(f"conjugated scalar Hamiltonian matches the induced display: "
          f"{'pass' if ok else 'FAIL'}")
    if not ok:
        worst = EXIT_FAILURE
    for name in ("V1", "V2", "V3", "V4", "V5"):
        print(f"  induced {name} = {format_scalar(spec[name])}")
    for ident in ("G1", "G2"):
        recs = verify_entry(get_entry(ident), mode="symbolic")
        cls = classify(recs)
        nbr = sum(1 for r in recs if r["check"] == "bracket")
        print(f"{ident}: {len(recs) - nbr} integral checks, {nbr} bracket "
              f"checks: {cls}")
        if cls == "failure":
            worst = EXIT_FAILURE
        elif cls == "discrepancy" and worst == EXIT_OK:
            worst = EXIT_DISCREPANCY
    return worst


def cmd_dump(args):
    what = args.what
    try:
        if what.startswith("integral:"):
            op = build_integral(what.split(":", 1)[1])
        elif what.startswith("hamiltonian:"):
            op = build_hamiltonian(
                get_entry(what.split(":", 1)[1]).potential_spec())
        elif what == "hamiltonian":
            op = build_hamiltonian(PotentialSpec.symbolic())
        elif what.startswith("scalar-basis:"):
            op = build_scalar_basis(int(what.split(":", 1)[1]))
        elif what == "gauge-matrix":
            m = build_gauge_matrix()
            for label in sorted(m.coeffs):
                print(f"  [{label_name(label):8s}] "
                      f"{format_scalar(m.coeffs[label])}")
            return EXIT_OK
        elif what == "general-scalar":
            op = build_general_scalar(GeneralScalarSpec.symbolic())
        elif what == "general-scalar-printed":
            op = printed_general_scalar()
        else:
            return _usage(f"unknown dump target {what!r}")
    except (KeyError, ValueError) as exc:
        return _usage(str(exc))
    print(format_operator(op))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spincheck",
        description="exact verification engine for two-spin first-order "
                    "scalar integrals of motion")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="print the determining system")
    p.add_argument("--order", type=int, choices=(0, 1, 2, 3), default=None)
    p.add_argument("--set", action="append", metavar="NAME=EXPR")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--reference", action="store_true",
                   help="also match the transcribed reference equations")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="verify catalog entries")
    p.add_argument("--case", default=None,
                   help="entry id, id range lo-hi, or 'all'")
    p.add_argument("--all", action="store_true")
    p.add_argument("--mode", choices=("symbolic", "oracle", "both"),
                   default="both")
    p.add_argument("--eps", choices=("+1", "-1", "both"), default="both")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true",
                   help="emit measured wall times (breaks byte determinism)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("symmetrize",
                       help="print the symmetrized scalar operator")
    p.add_argument("--weights", metavar="FILE", default=None,
                   help="file of 'fj = expression' lines")
    p.add_argument("--set", action="append", metavar="NAME=EXPR")
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("gauge-check", help="verify the gauge sector")
    p.set_defaults(func=cmd_gauge_check)

    p = sub.add_parser("dump", help="print a named operator canonically")
    p.add_argument("what",
                   help="integral:ID | hamiltonian[:CASE] | scalar-basis:J"
                        " | gauge-matrix | general-scalar"
                        " | general-scalar-printed")
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
