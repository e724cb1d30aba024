# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
Command-line access to chevwidth. Available as ``chevwidth`` when this
package is installed with pip.

Exit codes: 0 on success, 1 for usage errors and invalid input, 2 when a
verification fails; failures are written as a JSON report naming the
violated invariant.

Example usage: ::

    chevwidth roots info A3
    chevwidth verify commutator --system C2 --ring F5
    chevwidth k2 class --ring "F3(t)" --f "t^2+1" --g t
    chevwidth factor --ring "F3[t]" --system A2 --sample 500 --histogram widths.csv
    chevwidth tavgen --target A3 --field 2 --subsystems A2,A2 --N 4 --exhaustive
    chevwidth suite acceptance --seed 7
"""

import argparse
import logging
import pathlib
import sys

import orjson
import polars as pl

from chevwidth.acceptance import CHECKS, run_acceptance
from chevwidth.algebra.rings import (
    RingDescriptor,
    element_from_dict,
    parse_element,
    parse_ring,
)
from chevwidth.algebra.roots import RootSystem, parse_system
from chevwidth.config import OUTPUT_FORMATS, RunConfig, get_config
from chevwidth.errors import ChevwidthError, ParseError, VerificationFailure
from chevwidth.groups.chevalley import (
    GroupElement,
    Representation,
    a1_relation_holds,
    commutator_sweep,
    default_representation,
    representation,
    symplectic_form,
)
from chevwidth.groups.factor import (
    factor,
    reference_lines,
    sample_factorizations,
    width_histogram,
)
from chevwidth.groups.steinberg import (
    SymbolExpr,
    collect_unipotent,
    k2_witness,
    load_word,
    symbol_word,
    word_eval,
)
from chevwidth.groups.unitriangular import (
    TavgenLift,
    default_subsystems,
    random_element_of,
    unitriangular_membership,
)
from chevwidth.ktheory.reports import k2_of_ring, verify_exact_sequence
from chevwidth.ktheory.symbols import SymbolPair, k2_class
from chevwidth.utils.output import (
    failure_report,
    load_constants,
    write_json,
    write_records,
    write_table,
)

logger = logging.getLogger(__name__)


class CommandFailed(Exception):
    """A verification failed; carries the failure report."""

    def __init__(self, report: dict):
        super().__init__(report["invariant"])
        self.report = report


class ChevwidthParser(argparse.ArgumentParser):
    """Argument parser that exits with status 1 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


# input helpers


def load_matrix(path: pathlib.Path, ring: RingDescriptor) -> list[list]:
    """Rows of ring elements from a JSON array of rows; entries are element
    text or element JSON objects.

    :raises: ParseError
    """
    try:
        rows = orjson.loads(path.read_bytes())
    except orjson.JSONDecodeError as err:
        raise ParseError(f"Cannot parse matrix file {path}: {err}") from err
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ParseError(f"Matrix file {path} must contain a JSON array of rows")
    return [
        [
            element_from_dict(entry, ring) if isinstance(entry, dict) else parse_element(ring, str(entry))
            for entry in row
        ]
        for row in rows
    ]


def _representation(system: RootSystem, kind: str | None) -> Representation:
    if kind is None:
        return default_representation(system)
    return representation(system, kind)


def _output(args: argparse.Namespace, config: RunConfig, data, table: pl.DataFrame | None = None):
    if table is not None and config.format == "csv":
        write_table(table, args.out)
    else:
        write_json(data, args.out)


def _check(passed: bool, invariant: str, failures: list):
    if not passed:
        raise CommandFailed(failure_report(invariant, failures))


# commands


def cmd_roots_info(args, config: RunConfig):
    _output(args, config, parse_system(args.system).to_dict())


def cmd_constants(args, config: RunConfig):
    system = parse_system(args.system)
    constants = load_constants(system, config.cache_dir, config.disable_progress)
    data = {"system": system.label, "hash": constants.content_hash(), "rows": constants.rows()}
    _output(args, config, data, constants.to_dataframe())


def cmd_verify_commutator(args, config: RunConfig):
    system = parse_system(args.system)
    ring = parse_ring(args.ring)
    rep = _representation(system, args.rep)
    constants = load_constants(system, config.cache_dir, config.disable_progress)
    report = commutator_sweep(
        rep, ring, args.trials, config.rng(), constants, disable_progress=config.disable_progress
    )
    _check(report.passed, "commutator formula", report.failures)
    _output(args, config, dict(report.to_dict(), status="passed"))


def cmd_verify_a1(args, config: RunConfig):
    ring = RingDescriptor.finite(args.field)
    failures = [
        {"u": str(u), "r": str(r)}
        for u in ring.units()
        for r in ring.elements()
        if not a1_relation_holds(ring, u, r)
    ]
    _check(not failures, "A1 relation", failures)
    _output(args, config, {"ring": str(ring), "status": "passed", "checked": (ring.q - 1) * ring.q})


def cmd_verify_symbols(args, config: RunConfig):
    system = parse_system(args.system)
    ring = RingDescriptor.finite(args.field)
    rep = _representation(system, args.rep)
    if not rep.is_faithful:
        raise ChevwidthError(f"Symbol triviality needs a faithful representation, not {rep}")
    failures = []
    units = ring.units()
    for root in system.simple_roots:
        for u in units:
            for v in units:
                symbol = SymbolExpr(system, root, u, v)
                if not word_eval(symbol_word(symbol), rep).is_identity():
                    failures.append(str(symbol))
    _check(not failures, "symbol triviality", failures)
    checked = len(system.simple_roots) * len(units) ** 2
    _output(args, config, {"system": system.label, "ring": str(ring), "status": "passed", "checked": checked})


def cmd_groups_form(args, config: RunConfig):
    system = parse_system(args.system)
    rep = representation(system, "sp")
    data = {"system": system.label, "form": symplectic_form(system.rank).tolist()}
    if args.matrix:
        ring = parse_ring(args.ring)
        g = rep.from_rows(load_matrix(args.matrix, ring), ring)
        data["preserves_form"] = g.preserves_form()
    _output(args, config, data)


def cmd_steinberg_eval(args, config: RunConfig):
    system = parse_system(args.system)
    ring = parse_ring(args.ring)
    word = load_word(args.file, system, ring)
    rep = _representation(system, args.rep)
    image = word_eval(word, rep)
    _output(args, config, dict(image.to_dict(), letters=len(word), k2_witness=str(k2_witness(word))))


def cmd_steinberg_collect(args, config: RunConfig):
    system = parse_system(args.system)
    ring = parse_ring(args.ring)
    word = load_word(args.file, system, ring)
    collected = collect_unipotent(word)
    rep = _representation(system, args.rep)
    _check(
        word_eval(collected, rep) == word_eval(word, rep),
        "collection preserves evaluation",
        [str(word)],
    )
    _output(args, config, {"system": system.label, "ring": str(ring), "word": collected.to_records()})


def cmd_k2_class(args, config: RunConfig):
    field = parse_ring(args.ring)
    pair = SymbolPair(parse_element(field, args.f), parse_element(field, args.g))
    _output(args, config, {"symbol": str(pair), "residues": k2_class(pair).to_dict()})


def cmd_k2_ring(args, config: RunConfig):
    report = k2_of_ring(parse_ring(args.ring))
    _check(report.passed, "K2 certificates", report.certificates)
    _output(args, config, report.to_dict())


def cmd_k2_sequence(args, config: RunConfig):
    report = verify_exact_sequence(
        parse_ring(args.ring),
        config.rng(),
        max_degree=args.max_degree,
        budget=args.budget,
        disable_progress=config.disable_progress,
    )
    failed = [entry for entry in report.surjectivity if not entry["passed"]]
    if not report.kernel["passed"]:
        failed.append(report.kernel)
    _check(report.passed, "localization sequence", failed)
    _output(args, config, report.to_dict())


def cmd_factor(args, config: RunConfig):
    system = parse_system(args.system)
    ring = parse_ring(args.ring)
    rep = representation(system, "sl")
    if args.matrix is not None:
        g = rep.from_rows(load_matrix(args.matrix, ring), ring)
        result = factor(g)
        _output(args, config, dict(result.to_dict(), reference_lines=reference_lines(system, ring)))
        return
    results = sample_factorizations(
        rep, ring, args.sample, config.rng(), degree=args.degree, disable_progress=config.disable_progress
    )
    histogram = width_histogram(results)
    if args.histogram is not None:
        write_table(histogram, args.histogram)
    if args.records is not None:
        write_records((result.to_dict() for result in results), args.records)
    summary = {
        "system": system.label,
        "ring": str(ring),
        "samples": len(results),
        "max_width": max((result.width for result in results), default=0),
        "histogram": histogram.rows(named=True),
        "reference_lines": reference_lines(system, ring),
    }
    _output(args, config, summary, histogram)


def cmd_unitriangular(args, config: RunConfig):
    system = parse_system(args.system)
    ring = parse_ring(args.ring)
    rep = _representation(system, args.rep)
    g: GroupElement = rep.from_rows(load_matrix(args.matrix, ring), ring)
    form = unitriangular_membership(g, args.N, args.first_sign)
    data = {"system": system.label, "ring": str(ring), "length": args.N, "member": form is not None}
    if form is not None:
        data["form"] = form.to_dict()
    _output(args, config, data)


def cmd_tavgen(args, config: RunConfig):
    system = parse_system(args.target)
    ring = RingDescriptor.finite(args.field)
    labels = [label.strip() for label in args.subsystems.split(",")] if args.subsystems else None
    subsystems = default_subsystems(system, labels)
    lift = TavgenLift(
        default_representation(system),
        ring,
        subsystems,
        length=args.N,
        disable_progress=config.disable_progress,
    )
    if args.exhaustive:
        report = lift.exhaustive(disable_progress=config.disable_progress)
        _check(report.passed, "lifted forms evaluate to their targets", [report.to_dict()])
        _output(args, config, report.to_dict())
        return
    rng = config.rng()
    forms = [lift(random_element_of(lift, rng)) for _ in range(args.samples)]
    _output(
        args,
        config,
        {
            "system": system.label,
            "ring": str(ring),
            "length": args.N,
            "subsystems": [sub.source.label for sub in subsystems],
            "samples": len(forms),
            "widths": [form.width for form in forms],
        },
    )


def cmd_suite_acceptance(args, config: RunConfig):
    reports = run_acceptance(config, args.check)
    failures = [report.to_dict() for report in reports if not report.passed]
    _check(not failures, "acceptance", failures)
    _output(args, config, {"status": "passed", "checks": [report.to_dict() for report in reports]})


# parser


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Seed for all randomness (default 0)")
    common.add_argument("--cache-dir", type=pathlib.Path, help="Directory for cached tables")
    common.add_argument(
        "--expensive",
        help="Enable expensive suites",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format for tables")
    common.add_argument(
        "--progress",
        help="Show progress",
        action=argparse.BooleanOptionalAction,
        default=None,
    )
    common.add_argument("-v", "--verbose", help="Log progress details", action="store_true")
    common.add_argument("--out", type=pathlib.Path, help="Write output to this file instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = ChevwidthParser(
        prog="chevwidth",
        description="Exact computations in Chevalley and Steinberg groups",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ChevwidthParser)

    def add(subparsers, name: str, handler, help: str) -> argparse.ArgumentParser:
        command = subparsers.add_parser(name, help=help, parents=[common])
        command.set_defaults(handler=handler)
        return command

    def system_args(command, rep: bool = True):
        command.add_argument("--system", required=True, help="Root system, such as A2 or G2")
        if rep:
            command.add_argument("--rep", choices=("sl", "sp", "adjoint"), help="Representation")

    roots = commands.add_parser("roots", help="Root system data").add_subparsers(
        dest="action", required=True, parser_class=ChevwidthParser
    )
    info = add(roots, "info", cmd_roots_info, "Roots, Cartan matrix and Weyl group order")
    info.add_argument("system", help="Root system, such as A3")

    constants = add(commands, "constants", cmd_constants, "Structure constants table")
    constants.add_argument("system", help="Root system, such as G2")

    verify = commands.add_parser("verify", help="Relation checks").add_subparsers(
        dest="action", required=True, parser_class=ChevwidthParser
    )
    commutator = add(verify, "commutator", cmd_verify_commutator, "Commutator formula sweep")
    system_args(commutator)
    commutator.add_argument("--ring", required=True, help="Ring, such as F5 or Z")
    commutator.add_argument("--trials", type=int, default=25, help="Parameter pairs per root pair")
    a1 = add(verify, "a1", cmd_verify_a1, "The extra A1 relation in SL2")
    a1.add_argument("--field", type=int, required=True, help="Field order q")
    symbols = add(verify, "symbols", cmd_verify_symbols, "Steinberg symbols evaluate to 1")
    system_args(symbols)
    symbols.add_argument("--field", type=int, required=True, help="Field order q")

    groups = commands.add_parser("groups", help="Group data").add_subparsers(
        dest="action", required=True, parser_class=ChevwidthParser
    )
    form = add(groups, "form", cmd_groups_form, "The fixed symplectic form")
    system_args(form, rep=False)
    form.add_argument("--matrix", type=pathlib.Path, help="Check that this matrix preserves the form")
    form.add_argument("--ring", default="Z", help="Ring of the matrix entries")

    steinberg = commands.add_parser("steinberg", help="Steinberg words").add_subparsers(
        dest="action", required=True, parser_class=ChevwidthParser
    )
    for name, handler, help in (
        ("eval", cmd_steinberg_eval, "Evaluate a word"),
        ("collect", cmd_steinberg_collect, "Collect a unipotent word"),
    ):
        command = add(steinberg, name, handler, help)
        system_args(command)
        command.add_argument("--ring", required=True, help="Ring of the parameters")
        command.add_argument("--file", type=pathlib.Path, required=True, help="Word file (JSON)")

    k2 = commands.add_parser("k2", help="K2 computations").add_subparsers(
        dest="action", required=True, parser_class=ChevwidthParser
    )
    k2_class_cmd = add(k2, "class", cmd_k2_class, "Residues of a symbol {f, g}")
    k2_class_cmd.add_argument("--ring", required=True, help="Rational function field, such as F3(t)")
    k2_class_cmd.add_argument("--f", required=True)
    k2_class_cmd.add_argument("--g", required=True)
    k2_ring = add(k2, "ring", cmd_k2_ring, "K2 of F_q[t] or F_q[t,t^-1]")
    k2_ring.add_argument("--ring", required=True)
    sequence = add(k2, "sequence", cmd_k2_sequence, "Localization sequence evidence for F_q[t]")
    sequence.add_argument("--ring", required=True)
    sequence.add_argument("--max-degree", type=int, default=3)
    sequence.add_argument("--budget", type=int, default=256, help="Most symbols per witness")

    factor_cmd = add(commands, "factor", cmd_factor, "Elementary factorization in SL_n")
    system_args(factor_cmd, rep=False)
    factor_cmd.add_argument("--ring", required=True)
    source = factor_cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--matrix", type=pathlib.Path, help="Matrix file (JSON rows)")
    source.add_argument("--sample", type=int, help="Factor this many random elements")
    factor_cmd.add_argument("--degree", type=int, default=2, help="Parameter degree for sampling")
    factor_cmd.add_argument("--histogram", type=pathlib.Path, help="Width histogram CSV")
    factor_cmd.add_argument("--records", type=pathlib.Path, help="Sampled factorizations (JSONL)")

    unitriangular = add(commands, "unitriangular", cmd_unitriangular, "Exhaustive unitriangular membership")
    system_args(unitriangular)
    unitriangular.add_argument("--ring", required=True)
    unitriangular.add_argument("--matrix", type=pathlib.Path, required=True)
    unitriangular.add_argument("--N", type=int, default=4, help="Number of blocks")
    unitriangular.add_argument("--first-sign", type=int, choices=(1, -1), default=1)

    tavgen = add(commands, "tavgen", cmd_tavgen, "Unitriangular forms from Levi subsystems")
    tavgen.add_argument("--target", required=True, help="Target root system")
    tavgen.add_argument("--field", type=int, required=True, help="Field order q")
    tavgen.add_argument("--subsystems", help="Comma-separated subsystem types, such as A2,A2")
    tavgen.add_argument("--N", type=int, default=4, help="Number of blocks")
    tavgen.add_argument("--exhaustive", action="store_true", help="Lift every group element")
    tavgen.add_argument("--samples", type=int, default=20, help="Random elements to lift")

    suite = commands.add_parser("suite", help="Test suites").add_subparsers(
        dest="action", required=True, parser_class=ChevwidthParser
    )
    acceptance = add(suite, "acceptance", cmd_suite_acceptance, "Run the acceptance battery")
    acceptance.add_argument("--check", action="append", choices=list(CHECKS), help="Run only these checks")
    return parser


def main(argv: list[str] | None = None):
    """Command-line entry point; exits with the status described above."""
    parser = build_parser()
    args = parser.parse_args(argv)
    args.log_level = "INFO" if args.verbose else None
    try:
        config = RunConfig.from_sources(get_config(), args)
    except ValueError as err:
        print(f"Error: {err}", file=sys.stderr)
        sys.exit(1)
    logging.basicConfig(encoding="utf-8", level=config.log_level)

    try:
        args.handler(args, config)
    except CommandFailed as failed:
        write_json(failed.report, args.out)
        sys.exit(2)
    except VerificationFailure as err:
        write_json(failure_report("round trip", [str(err)]), args.out)
        sys.exit(2)
    except (ChevwidthError, FileNotFoundError) as err:
        print(f"{err.__class__.__name__}: {err}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
