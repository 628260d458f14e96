#!/usr/bin/python3
# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Command line front end: generate, simulate, verify and cost the arithmetic circuits.

Primary output goes to stdout or to --out; logs and error messages go to stderr. The
exit code is 0 on success, 1 when verification or a formula cross-check fails and 2 on
usage errors.
"""

import argparse
import io
import json
import logging
import os
import sys
from typing import List, Optional, Tuple

from bennett import bennett_design
from circuit import Circuit, Design, parse, serialize
from clifford_t import expand_toffolis
from constants import (
    VALID_LOG_LEVELS,
    DesignKind,
    ExitCode,
    InvariantViolationError,
    NetlistFormat,
    QarithError,
    TableId,
    VerifyMode,
)
from ctrl_add import ctrl_add_tcount
from multiplier import multiplier_tcount
from resources import report, reproduce_table, write_csv
from simulate import BasisState, encode_inputs, run_reversible, run_statevector
from verify import design_for, verify

logger = logging.getLogger("qarith")


class UsageError(QarithError):
    """Bad command line input that argparse cannot catch."""


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    parent = os.path.dirname(out)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(out, "w") as f:
        f.write(text)
    logger.info("wrote %s", out)


def _netlist_format(path: str, fmt: Optional[str]) -> NetlistFormat:
    if fmt is not None:
        return NetlistFormat(fmt)
    return NetlistFormat.QASM if path.endswith(".qasm") else NetlistFormat.JSON


def _read_netlist(path: str, fmt: Optional[str]) -> Circuit:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    return parse(text, _netlist_format(path, fmt))


def _load_target(args) -> Tuple[Circuit, Optional[Design]]:
    """Resolve the positional target to a circuit, applying --wrap and --expand."""
    if args.target in {kind.value for kind in DesignKind}:
        if args.n is None:
            raise UsageError(f"{args.target} needs --n")
        design = design_for(DesignKind(args.target), args.n)
        if getattr(args, "wrap", False):
            design = bennett_design(design)
        circuit = design.circuit
    else:
        if getattr(args, "wrap", False):
            raise UsageError("--wrap needs a generated target (adder or mult), not a file")
        design = None
        circuit = _read_netlist(args.target, getattr(args, "input_format", None))
    if getattr(args, "expand", False):
        circuit = expand_toffolis(circuit)
    return circuit, design


def cmd_gen(args) -> int:
    """Serialize a generated circuit."""
    design = design_for(DesignKind(args.kind), args.n)
    if args.wrap:
        design = bennett_design(design)
    circuit = design.circuit
    if args.expand:
        circuit = expand_toffolis(circuit)
    _emit(serialize(circuit, NetlistFormat(args.format)), args.out)
    return ExitCode.SUCCESS


def cmd_verify(args) -> int:
    """Compare a generated circuit with its arithmetic oracle."""
    summary = verify(
        DesignKind(args.kind),
        args.n,
        mode=VerifyMode(args.mode),
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    _emit(summary.render(), args.out)
    return ExitCode.SUCCESS if summary.ok else ExitCode.VERIFICATION_FAILED


def _formula(kind: DesignKind, n: int) -> int:
    return ctrl_add_tcount(n) if kind == DesignKind.ADDER else multiplier_tcount(n)


def cmd_resources(args) -> int:
    """Print the resource report; builder targets are expanded and checked against the formula."""
    if args.target in {kind.value for kind in DesignKind}:
        args.expand = True
    circuit, design = _load_target(args)
    result = report(circuit, design)
    payload = result.dict()
    if design is not None:
        formula = _formula(design.kind, design.n) * (2 if args.wrap else 1)
        payload["formula_t_count"] = formula
        payload["agreement"] = "AGREE" if formula == result.t_count else "DISAGREE"

    if args.json:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [
            f"width: {result.width}",
            f"ancillae: {result.ancillae}",
            f"garbage: {result.garbage}",
            f"toffoli_count_pre_expansion: {result.toffoli_count_pre_expansion}",
        ]
        lines += [f"count {kind}: {count}" for kind, count in result.counts.items()]
        lines += [f"block {name}: {t}" for name, t in result.block_t_counts.items()]
        lines.append(f"t_count: {result.t_count}")
        if design is not None:
            lines.append(f"formula: {payload['formula_t_count']} {payload['agreement']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if payload.get("agreement") == "DISAGREE":
        logger.warning("counted T-count %d disagrees with the formula", result.t_count)
        return ExitCode.VERIFICATION_FAILED
    return ExitCode.SUCCESS


def cmd_tables(args) -> int:
    """Write one reproduced comparison table as CSV."""
    table = reproduce_table(args.id, cross_check_max_n=args.cross_check_max_n)
    buffer = io.StringIO()
    write_csv(table, buffer)
    _emit(buffer.getvalue(), args.out)
    return ExitCode.SUCCESS


def _parse_assignments(assignments: List[str]) -> dict:
    values = {}
    for item in assignments:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        try:
            values[name] = int(value, 0)
        except ValueError:
            raise UsageError(f"register {name!r} value {value!r} is not an integer")
    return values


def cmd_simulate(args) -> int:
    """Run one basis input through a circuit."""
    circuit, _ = _load_target(args)
    if args.input is not None and args.set:
        raise UsageError("give either --input or --set, not both")
    if args.input is not None:
        try:
            state = BasisState.from_string(args.input)
        except ValueError as e:
            raise UsageError(str(e))
    else:
        [index] = encode_inputs(circuit, [_parse_assignments(args.set or [])])
        state = BasisState.from_int(index, circuit.width)

    if args.statevector:
        vector = run_statevector(circuit, state)
        lines = []
        for index, amplitude in vector.nonzero():
            bits = BasisState.from_int(index, circuit.width)
            lines.append(f"{bits} {amplitude.real:+.6f}{amplitude.imag:+.6f}j")
        text = "\n".join(lines) + "\n"
    else:
        output = run_reversible(circuit, state)
        registers = circuit.registers.unpack(output.to_int())
        text = f"{output}\n" + "".join(f"{name}={value}\n" for name, value in registers.items())
    _emit(text, args.out)
    return ExitCode.SUCCESS


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    parser = argparse.ArgumentParser(
        prog="qarith",
        description="T-count optimized quantum Ctrl-Add and multiplier circuits.",
    )
    parser.add_argument("--log-level", choices=VALID_LOG_LEVELS, default="info")
    subparsers = parser.add_subparsers(dest="command", required=True)
    kinds = [kind.value for kind in DesignKind]
    formats = [fmt.value for fmt in NetlistFormat]

    gen = subparsers.add_parser("gen", help="Generate a circuit netlist.")
    gen.add_argument("kind", choices=kinds)
    gen.add_argument("--n", type=int, required=True, help="Operand width, at least 2.")
    gen.add_argument("--expand", action="store_true", help="Expand Toffolis into Clifford+T.")
    gen.add_argument("--wrap", action="store_true", help="Apply the Bennett wrap.")
    gen.add_argument("--format", choices=formats, default=NetlistFormat.JSON.value)
    gen.add_argument("--out", type=str)
    gen.set_defaults(func=cmd_gen)

    ver = subparsers.add_parser("verify", help="Check a circuit against its oracle.")
    ver.add_argument("kind", choices=kinds)
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument(
        "--mode", choices=[mode.value for mode in VerifyMode], default=VerifyMode.EXHAUSTIVE.value
    )
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--workers", type=int, help="Worker processes (default QARITH_WORKERS).")
    ver.add_argument("--out", type=str)
    ver.set_defaults(func=cmd_verify)

    res = subparsers.add_parser("resources", help="Report the resources of a circuit.")
    res.add_argument("target", help="adder, mult, or the path of a netlist file.")
    res.add_argument("--n", type=int)
    res.add_argument("--wrap", action="store_true", help="Bennett wrap; generated targets only.")
    res.add_argument("--input-format", choices=formats)
    res.add_argument("--json", action="store_true", help="Emit the report as JSON.")
    res.add_argument("--out", type=str)
    res.set_defaults(func=cmd_resources, expand=False)

    tab = subparsers.add_parser("tables", help="Reproduce a comparison table as CSV.")
    tab.add_argument("--id", required=True, help="One of " + ", ".join(t.value for t in TableId))
    tab.add_argument("--cross-check-max-n", type=int, default=64)
    tab.add_argument("--out", type=str)
    tab.set_defaults(func=cmd_tables)

    sim = subparsers.add_parser("simulate", help="Run one basis input through a circuit.")
    sim.add_argument("target", help="adder, mult, or the path of a netlist file.")
    sim.add_argument("--n", type=int)
    sim.add_argument("--expand", action="store_true")
    sim.add_argument("--wrap", action="store_true", help="Bennett wrap; generated targets only.")
    sim.add_argument("--input-format", choices=formats)
    sim.add_argument("--input", type=str, help="Binary string, wire 0 first.")
    sim.add_argument("--set", action="append", metavar="REG=VALUE")
    sim.add_argument("--statevector", action="store_true")
    sim.add_argument("--out", type=str)
    sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run main method."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return int(args.func(args))
    except InvariantViolationError as e:
        logger.debug("cross-check failed", exc_info=True)
        print(f"qarith: check failed: {e}", file=sys.stderr)
        return int(ExitCode.VERIFICATION_FAILED)
    except QarithError as e:
        logger.debug("command failed", exc_info=True)
        print(f"qarith: error: {e}", file=sys.stderr)
        return int(ExitCode.USAGE)


if __name__ == "__main__":
    sys.exit(main())
