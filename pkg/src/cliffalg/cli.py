"""Command-line surface.

Subcommands: eval, verify, bench, table.  Exit codes: 0 success,
2 syntax errors (expressions, flags, malformed inputs), 3 precondition
violations (bad signature/route/split), 4 verification or route-
agreement failures, 5 I/O and table-file errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .algebra import Multivector, signature_form
from .bench import WORKLOAD_NAMES, named_workload, render_records, render_text, run_workload
from .climatrix import build_basis_table, load_table, save_table
from .errors import (
    ParseError,
    PreconditionError,
    TableError,
    VerificationError,
)
from .routes import ROUTES, make_product
from .tensor import TensorElement, _context_for_form
from .textio import (
    blade_token,
    evaluate,
    multivector_text,
    parse_expr,
    read_form_file,
    scalar_text,
    tensor_text,
)
from .verify import SUITE_NAMES, run_suite

__all__ = ["main"]


def _signature(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("signature must be 'p,q'")
    try:
        p, q = (int(s.strip()) for s in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("signature must be 'p,q' with integers")
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("signature components must be nonnegative")
    return (p, q)


def _route_list(text):
    routes = tuple(s.strip() for s in text.split(",") if s.strip())
    for r in routes:
        if r not in ROUTES:
            raise argparse.ArgumentTypeError(
                f"unknown route {r!r}; choose from {', '.join(ROUTES)}"
            )
    if not routes:
        raise argparse.ArgumentTypeError("empty route list")
    return routes


def _add_context_flags(sp):
    group = sp.add_mutually_exclusive_group()
    group.add_argument(
        "--signature", type=_signature, metavar="p,q",
        help="diagonal form with p entries +1 and q entries -1",
    )
    group.add_argument(
        "--form", metavar="FILE",
        help="explicit n x n bilinear form, one row per line",
    )


def _add_output_flags(sp):
    sp.add_argument(
        "--format", choices=("text", "records"), default="text",
        help="text (canonical, default) or records (JSON lines)",
    )
    sp.add_argument("--out", metavar="PATH", help="write output to a file")


def _build_context(args):
    if args.signature is not None:
        p, q = args.signature
        return _context_for_form(signature_form(p, q).form)
    if args.form is not None:
        return _context_for_form(read_form_file(args.form))
    raise PreconditionError("an algebra is required: pass --signature p,q or --form FILE")


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _records_text(records):
    return "\n".join(json.dumps(r, sort_keys=True) for r in records)


# -- eval ----------------------------------------------------------------


def _value_record(value):
    if isinstance(value, Multivector):
        return {
            "kind": "multivector",
            "terms": [
                {"blade": blade_token(m), "coeff": scalar_text(c)}
                for m, c in sorted(value.terms.items())
            ],
            "text": multivector_text(value),
        }
    if isinstance(value, TensorElement):
        return {
            "kind": "tensor",
            "terms": [
                {
                    "left": blade_token(a),
                    "right": blade_token(b),
                    "coeff": scalar_text(value.terms[(a, b)]),
                }
                for a, b in sorted(value.terms)
            ],
            "text": tensor_text(value),
        }
    return {"kind": "scalar", "text": scalar_text(value)}


def _cmd_eval(args):
    ctx = _build_context(args)
    table = None
    if args.table is not None:
        table = load_table(args.table)
    product = make_product(args.route, ctx, table=table)
    tree = parse_expr(args.expr, ctx)
    value = evaluate(tree, ctx, product)
    if args.format == "records":
        _emit(args, _records_text([_value_record(value)]))
        return 0
    if isinstance(value, Multivector):
        _emit(args, multivector_text(value))
    elif isinstance(value, TensorElement):
        _emit(args, tensor_text(value))
    else:
        _emit(args, scalar_text(value))
    return 0


# -- verify --------------------------------------------------------------


def _cmd_verify(args):
    checks = run_suite(args.suite, args.seed)
    failed = [c for c in checks if not c.ok]
    if args.format == "records":
        records = [
            {
                "kind": "check",
                "suite": args.suite,
                "name": c.name,
                "ok": c.ok,
                "detail": c.detail,
                "counterexample": c.counterexample,
            }
            for c in checks
        ]
        _emit(args, _records_text(records))
    else:
        lines = []
        for c in checks:
            tag = "PASS" if c.ok else "FAIL"
            detail = f"  ({c.detail})" if c.detail else ""
            lines.append(f"{tag}  {c.name}{detail}")
            if not c.ok and c.counterexample:
                for k, v in c.counterexample.items():
                    lines.append(f"      {k} = {v}")
        lines.append(
            f"{args.suite}: {len(checks) - len(failed)}/{len(checks)} checks passed"
        )
        _emit(args, "\n".join(lines))
    return 4 if failed else 0


# -- bench ---------------------------------------------------------------


def _cmd_bench(args):
    names = [args.workload] if args.workload else list(WORKLOAD_NAMES)
    blocks = []
    records = []
    for name in names:
        workload = named_workload(name, args.seed)
        if args.route is not None:
            routes = tuple(r for r in workload.routes if r in args.route)
            if not routes:
                raise PreconditionError(
                    f"workload {name} supports routes {', '.join(workload.routes)}"
                )
            workload = dataclasses.replace(workload, routes=routes)
        reports = run_workload(workload)
        blocks.append(render_text(workload, reports))
        records.extend(render_records(workload, reports))
    if args.format == "records":
        _emit(args, _records_text(records))
    else:
        _emit(args, "\n\n".join(blocks))
    return 0


# -- table ---------------------------------------------------------------


def _cmd_table_build(args):
    table = build_basis_table(args.p, args.q)
    if args.out_file:
        save_table(table, args.out_file)
        where = f", written to {args.out_file}"
    else:
        where = ""
    p1, q1 = table.signature
    print(
        f"table for Cl({p1},{q1}) over Cl({args.p},{args.q}): "
        f"{len(table.entries)} entries{where}"
    )
    return 0


def _cmd_table_load(args):
    table = load_table(args.file)
    p1, q1 = table.signature
    print(
        f"ok: table for Cl({p1},{q1}), {len(table.entries)} entries, "
        f"rep eq8, revalidated"
    )
    return 0


def _cmd_table_info(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TableError("empty table file")
    header = lines[0]
    parts = dict(
        kv.split("=", 1) for kv in header.split()[2:] if "=" in kv
    )
    if not header.startswith("clifftable v1 ") or set(parts) != {"p", "q", "rep"}:
        raise TableError(f"malformed table header: {header!r}")
    checksum = ""
    if lines[-1].startswith("checksum "):
        checksum = lines[-1].split(" ", 1)[1]
    print(f"header: {header}")
    print(f"signature: ({parts['p']},{parts['q']})  rep: {parts['rep']}")
    print(f"entries: {len(lines) - 2 if checksum else len(lines) - 1}")
    print(f"checksum: {checksum or '(missing)'}")
    return 0


# -- parser --------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cliffalg",
        description="Exact Clifford algebra computations with interchangeable "
        "product routes (direct, graded tensor, ungraded tensor, matrix).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="evaluate an expression in a chosen algebra")
    sp.add_argument("expr", help="expression, e.g. 'cmul(e1,e2) + 2*Id'")
    _add_context_flags(sp)
    sp.add_argument("--route", choices=ROUTES, default="direct")
    sp.add_argument("--table", metavar="PATH", help="basis table file (matrix route)")
    _add_output_flags(sp)
    sp.set_defaults(fn=_cmd_eval)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=SUITE_NAMES)
    sp.add_argument("--seed", type=int, default=0)
    _add_output_flags(sp)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("bench", help="compare product routes on a seeded workload")
    sp.add_argument("workload", nargs="?", choices=WORKLOAD_NAMES)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument(
        "--route", type=_route_list, default=None, metavar="R1,R2",
        help="restrict to a comma-separated route list",
    )
    _add_output_flags(sp)
    sp.set_defaults(fn=_cmd_bench)

    sp = sub.add_parser("table", help="basis-table management")
    tsub = sp.add_subparsers(dest="table_command", required=True)

    tb = tsub.add_parser("build", help="build the table for base Cl(p,q)")
    tb.add_argument("p", type=int)
    tb.add_argument("q", type=int)
    tb.add_argument("-o", "--out", dest="out_file", metavar="FILE")
    tb.set_defaults(fn=_cmd_table_build)

    ts = tsub.add_parser("save", help="build and write the table for base Cl(p,q)")
    ts.add_argument("p", type=int)
    ts.add_argument("q", type=int)
    ts.add_argument("-o", "--out", dest="out_file", metavar="FILE", required=True)
    ts.set_defaults(fn=_cmd_table_build)

    tl = tsub.add_parser("load", help="load and revalidate a table file")
    tl.add_argument("file")
    tl.set_defaults(fn=_cmd_table_load)

    ti = tsub.add_parser("info", help="echo a table file's header")
    ti.add_argument("file")
    ti.set_defaults(fn=_cmd_table_info)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 4
    except TableError as exc:
        print(f"table error: {exc}", file=sys.stderr)
        return 5
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
