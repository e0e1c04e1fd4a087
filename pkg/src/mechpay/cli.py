"""Command-line interface.

Subcommands read an instance from a path or stdin (``-``) and write one
JSON (or CSV) document to ``--out`` or stdout.  Handled failures are a
single JSON object on stderr; exit codes: 0 success, 2 the requested
object does not exist (for example payments on a graph with a negative
cycle), 3 malformed input or flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .cycles import classify
from .fixtures import example_names, gen_example
from .graph import build_graph, export_arcs, shift_graph
from .model import (
    DEFAULT_TOLERANCE,
    InstanceFormatError,
    InstanceValidationError,
    load_instance,
    serialize_instance,
)
from .partition import PartitionPreconditionError, TrustPartition, partition_payments
from .payments import (
    NegativeCycleError,
    PaymentCoverageError,
    PaymentTable,
    compute_payments,
    verify_payments,
)
from .tradeoff import AxisInfeasibleError, pareto_frontier

EXIT_OK = 0
EXIT_NO_OBJECT = 2
EXIT_INPUT = 3


class _CliInputError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _CliInputError(f"cannot read {path}: {e.strerror}") from e


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(args, doc: dict) -> None:
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")


def _fail(code: int, error: str, message: str, **extra) -> int:
    doc = {"error": error, "message": message}
    doc.update(extra)
    sys.stderr.write(json.dumps(doc, indent=2) + "\n")
    return code


def _load(args):
    inst = load_instance(_read_text(args.input), tolerance=args.tolerance)
    return inst


def _maybe_export(args, graph) -> None:
    if getattr(args, "export_graph", None):
        with open(args.export_graph, "w", encoding="utf-8") as fh:
            fh.write(export_arcs(graph))


def _parse_trusted(raw: str, num_agents: int) -> TrustPartition:
    raw = raw.strip()
    if raw in ("", "none"):
        agents: list[int] = []
    else:
        try:
            agents = [int(tok) for tok in raw.split(",")]
        except ValueError as e:
            raise _CliInputError(
                f"--trusted expects comma-separated 1-based agents, got {raw!r}"
            ) from e
    for a in agents:
        if not 1 <= a <= num_agents:
            raise _CliInputError(
                f"--trusted agent {a} out of range 1..{num_agents}"
            )
    return TrustPartition.of(num_agents, (a - 1 for a in agents))


def _parse_params(pairs: list[str]) -> dict:
    params = {}
    for pair in pairs:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise _CliInputError(f"--param expects key=value, got {pair!r}")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args) -> int:
    inst = _load(args)
    _maybe_export(args, build_graph(inst))
    _emit_json(args, classify(inst).to_json_dict())
    return EXIT_OK


def _cmd_payments(args) -> int:
    inst = _load(args)
    g = build_graph(inst)
    _maybe_export(args, g)
    c_ef, c_ic = args.shift
    if c_ef or c_ic:
        g = shift_graph(g, c_ef, c_ic)
    try:
        table = compute_payments(g)
    except NegativeCycleError as e:
        return _fail(
            EXIT_NO_OBJECT,
            "negative-cycle",
            str(e),
            witness=e.witness.to_json_dict(),
        )
    if args.format == "csv":
        _write_text(args.out, table.to_csv())
    else:
        _emit_json(args, table.to_json_dict())
    return EXIT_OK


def _cmd_frontier(args) -> int:
    inst = _load(args)
    g = build_graph(inst)
    _maybe_export(args, g)
    try:
        frontier = pareto_frontier(g)
    except AxisInfeasibleError as e:
        return _fail(
            EXIT_NO_OBJECT,
            "axis-infeasible",
            str(e),
            axis=e.axis.lower(),
            witness=e.witness.to_json_dict(),
        )
    if args.format == "csv":
        _write_text(args.out, frontier.to_csv())
    else:
        _emit_json(args, frontier.to_json_dict())
    return EXIT_OK


def _cmd_partition(args) -> int:
    inst = _load(args)
    part = _parse_trusted(args.trusted, inst.num_agents)
    _maybe_export(args, build_graph(inst))
    try:
        table, report = partition_payments(inst, part)
    except PartitionPreconditionError as e:
        return _fail(
            EXIT_NO_OBJECT,
            "partition-precondition",
            str(e),
            kind=e.kind.lower(),
            witness=e.witness.to_json_dict(),
        )
    doc = report.to_json_dict()
    doc["payments"] = table.to_json_dict()["payments"]
    _emit_json(args, doc)
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = _load(args)
    try:
        doc = json.loads(_read_text(args.payments))
    except json.JSONDecodeError as e:
        raise _CliInputError(f"payments file is not valid JSON: {e}") from e
    try:
        table = PaymentTable.from_json_dict(doc)
    except ValueError as e:
        raise _CliInputError(str(e)) from e
    report = verify_payments(inst, table)
    _emit_json(args, report.to_json_dict())
    return EXIT_OK


def _cmd_gen_example(args) -> int:
    params = _parse_params(args.param)
    params.setdefault("tolerance", args.tolerance)
    try:
        inst = gen_example(args.name, **params)
    except TypeError as e:
        raise _CliInputError(f"bad example parameters: {e}") from e
    _write_text(args.out, serialize_instance(inst))
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so flag errors become JSON on stderr."""

    def error(self, message):
        raise _CliInputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mechpay",
        description=(
            "Decide whether payments can make a tabulated allocation "
            "mechanism envy-free, truthful, or both; synthesize and audit "
            "payments; explore the relaxation frontier."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            p.add_argument(
                "input",
                nargs="?",
                default="-",
                help="instance JSON path, or - for stdin (default)",
            )
        p.add_argument(
            "--tolerance",
            type=float,
            default=DEFAULT_TOLERANCE,
            help="comparison tolerance (default %(default)g)",
        )
        p.add_argument("--out", default=None, help="output path (default stdout)")

    def graph_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--export-graph",
            default=None,
            metavar="PATH",
            help="also dump the constraint graph arcs to PATH",
        )

    p = sub.add_parser("check", help="classify implementability")
    common(p)
    graph_flags(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("payments", help="synthesize feasible payments")
    common(p)
    graph_flags(p)
    p.add_argument(
        "--shift",
        nargs=2,
        type=float,
        default=(0.0, 0.0),
        metavar=("C_EF", "C_IC"),
        help="relax EF and IC constraints by these amounts",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_payments)

    p = sub.add_parser("frontier", help="Pareto frontier of correcting shifts")
    common(p)
    graph_flags(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_frontier)

    p = sub.add_parser("partition", help="payments for a trusted/untrusted split")
    common(p)
    graph_flags(p)
    p.add_argument(
        "--trusted",
        required=True,
        help="comma-separated 1-based trusted agents (empty string for none)",
    )
    p.set_defaults(fn=_cmd_partition)

    p = sub.add_parser("verify", help="audit a payment table against an instance")
    common(p)
    p.add_argument(
        "--payments", required=True, help="payment table JSON path, or - for stdin"
    )
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("gen-example", help="emit a pinned example instance")
    p.add_argument("name", help="example id or short alias")
    common(p, with_input=False)
    p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="generator parameter, value parsed as JSON (repeatable)",
    )
    p.set_defaults(fn=_cmd_gen_example)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit as e:
        # --help prints and exits 0; treat anything else as input error.
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    except (InstanceFormatError, InstanceValidationError) as e:
        return _fail(EXIT_INPUT, "invalid-instance", str(e))
    except PaymentCoverageError as e:
        return _fail(EXIT_INPUT, "invalid-payments", str(e))
    except _CliInputError as e:
        return _fail(EXIT_INPUT, "invalid-input", str(e))
    except ValueError as e:
        return _fail(EXIT_INPUT, "invalid-input", str(e))


if __name__ == "__main__":
    sys.exit(main())
