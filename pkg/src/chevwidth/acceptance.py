# Copyright (c) 2025, Center for Digital Humanities, Princeton University
# SPDX-License-Identifier: Apache-2.0

"""
The acceptance battery: exact relation checks, exhaustive small-group
checks and the closed-form ``K2`` computations, run in a fixed order from
one seeded generator.

Checks gated behind ``expensive`` (F4 commutators, exhaustive ``SL_4(F_2)``
and the E-type constants tables) are reported as skipped unless enabled.

Example usage: ::

    >>> reports = run_acceptance(RunConfig(seed=7), checks=["a1-relation"])
    >>> reports[0].passed
    True
"""

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from chevwidth.algebra.liealg import (
    build_chevalley_basis,
    constant_violations,
    jacobi_violations,
)
from chevwidth.algebra.rings import RingDescriptor
from chevwidth.algebra.roots import build_root_system
from chevwidth.config import RunConfig
from chevwidth.errors import VerificationFailure
from chevwidth.groups.chevalley import (
    a1_relation_holds,
    commutator_sweep,
    default_representation,
    representation,
)
from chevwidth.groups.factor import (
    reference_lines,
    sample_factorizations,
    width_histogram,
)
from chevwidth.groups.steinberg import SymbolExpr, symbol_word, word_eval
from chevwidth.groups.unitriangular import product_set_table, tavgen_lift
from chevwidth.ktheory.reports import k2_of_ring
from chevwidth.ktheory.symbols import reciprocity_product, symbol_class
from chevwidth.utils.output import load_constants
from chevwidth.utils.sampling import random_nonzero_polynomial

logger = logging.getLogger(__name__)


@dataclass(kw_only=True)
class CheckReport:
    """Outcome of one acceptance criterion."""

    name: str
    passed: bool = True
    #: parts left out because they need --expensive
    skipped: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "passed" if self.passed else "failed"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "details": self.details,
            "skipped": self.skipped,
            "failures": self.failures,
        }


def sl_order(n: int, q: int) -> int:
    """Order of ``SL_n(F_q)``."""
    order = q ** (n * (n - 1) // 2)
    for k in range(2, n + 1):
        order *= q**k - 1
    return order


def check_commutators(config: RunConfig, rng: random.Random, trials: int = 25) -> CheckReport:
    report = CheckReport(name="commutator-formula")
    labels = ["A2", "A3", "C2", "C3", "D4", "G2"]
    if config.expensive:
        labels.append("F4")
    rings = [RingDescriptor.prime_field(5), RingDescriptor.prime_field(7), RingDescriptor.integers()]
    for label in labels:
        system = build_root_system(label[0], int(label[1:]))
        rep = default_representation(system)
        constants = load_constants(system, config.cache_dir, config.disable_progress)
        for ring in rings:
            sweep = commutator_sweep(
                rep, ring, trials, rng, constants, disable_progress=config.disable_progress
            )
            report.details[f"{label}/{ring}"] = {"pairs": sweep.pairs, "trials": sweep.trials}
            report.failures.extend(
                dict(failure, system=label, ring=str(ring)) for failure in sweep.failures
            )
    if not config.expensive:
        report.skipped.append("F4")
    report.passed = not report.failures
    return report


def check_a1_relation(config: RunConfig, rng: random.Random) -> CheckReport:
    report = CheckReport(name="a1-relation")
    for q in (2, 3, 4, 5, 7, 9):
        ring = RingDescriptor.finite(q)
        checked = 0
        for u in ring.units():
            for r in ring.elements():
                checked += 1
                if not a1_relation_holds(ring, u, r):
                    report.failures.append({"ring": str(ring), "u": str(u), "r": str(r)})
        report.details[str(ring)] = checked
    report.passed = not report.failures
    return report


def check_symbols(config: RunConfig, rng: random.Random) -> CheckReport:
    report = CheckReport(name="symbol-triviality")
    systems = [("A", 1), ("A", 2), ("C", 2)]
    for q in (2, 3, 5, 7, 9):
        ring = RingDescriptor.finite(q)
        units = ring.units()
        for type_label, rank in systems:
            system = build_root_system(type_label, rank)
            rep = default_representation(system)
            checked = 0
            for root in system.simple_roots:
                for u in units:
                    for v in units:
                        checked += 1
                        symbol = SymbolExpr(system, root, u, v)
                        if not word_eval(symbol_word(symbol), rep).is_identity():
                            report.failures.append(
                                {"system": system.label, "ring": str(ring), "symbol": str(symbol)}
                            )
            report.details[f"{system.label}/{ring}"] = checked
    report.passed = not report.failures
    return report


def check_unitriangular(config: RunConfig, rng: random.Random) -> CheckReport:
    report = CheckReport(name="unitriangular-length-4")
    ring = RingDescriptor.prime_field(3)
    rep = representation(build_root_system("A", 2), "sl")
    table = product_set_table(rep, ring, 4)
    expected = sl_order(3, 3)
    report.details["SL3(F3)"] = {"sizes": table.sizes, "group_order": expected}
    if table.sizes[-1] != expected:
        report.failures.append({"group": "SL3(F3)", "covered": table.sizes[-1], "order": expected})
    if any(a > b for a, b in zip(table.sizes, table.sizes[1:])):
        report.failures.append({"group": "SL3(F3)", "sizes": table.sizes, "problem": "decreasing"})
    if config.expensive:
        lift = tavgen_lift(
            build_root_system("A", 3),
            RingDescriptor.prime_field(2),
            length=4,
            disable_progress=config.disable_progress,
        )
        lifted = lift.exhaustive(disable_progress=config.disable_progress)
        expected = sl_order(4, 2)
        report.details["SL4(F2)"] = dict(lifted.to_dict(), group_order=expected)
        if not lifted.passed or lifted.elements != expected:
            report.failures.append({"group": "SL4(F2)", "lifted": lifted.elements, "order": expected})
    else:
        report.skipped.append("SL4(F2)")
    report.passed = not report.failures
    return report


def _random_function(field_ring: RingDescriptor, rng: random.Random, degree: int):
    numerator = random_nonzero_polynomial(field_ring, rng, degree)
    denominator = random_nonzero_polynomial(field_ring, rng, degree)
    return numerator / denominator


def check_k2_model(config: RunConfig, rng: random.Random, samples: int = 200) -> CheckReport:
    report = CheckReport(name="k2-residue-model")
    for q in (2, 3, 5):
        field_ring = RingDescriptor.rational(RingDescriptor.prime_field(q))
        for _ in range(samples):
            f1, f2, g = (_random_function(field_ring, rng, 3) for _ in range(3))
            ring = str(field_ring)
            if symbol_class(f1 * f2, g) != symbol_class(f1, g) + symbol_class(f2, g):
                report.failures.append(
                    {"ring": ring, "law": "bimultiplicative", "f": [str(f1), str(f2)], "g": str(g)}
                )
            if not (symbol_class(f1, g) + symbol_class(g, f1)).is_zero:
                report.failures.append({"ring": ring, "law": "antisymmetric", "f": str(f1), "g": str(g)})
            if not f1.is_one and not symbol_class(f1, 1 - f1).is_zero:
                report.failures.append({"ring": ring, "law": "steinberg", "f": str(f1)})
            if reciprocity_product(f1, g) != 1:
                report.failures.append({"ring": ring, "law": "reciprocity", "f": str(f1), "g": str(g)})
        report.details[str(field_ring)] = {"samples": samples}
    report.passed = not report.failures
    return report


def check_k2_rings(config: RunConfig, rng: random.Random) -> CheckReport:
    report = CheckReport(name="k2-of-rings")
    for q in (2, 3, 5):
        base = RingDescriptor.prime_field(q)
        for ring, expected in ((RingDescriptor.poly(base), 1), (RingDescriptor.laurent(base), q - 1)):
            result = k2_of_ring(ring)
            report.details[str(ring)] = {"order": result.order, "passed": result.passed}
            if result.order != expected or not result.passed:
                report.failures.append(result.to_dict())
    report.passed = not report.failures
    return report


def check_factorizations(config: RunConfig, rng: random.Random, samples: int = 500) -> CheckReport:
    report = CheckReport(name="factorization-round-trips")
    rings = [
        RingDescriptor.poly(RingDescriptor.prime_field(2)),
        RingDescriptor.poly(RingDescriptor.prime_field(3)),
        RingDescriptor.laurent(RingDescriptor.prime_field(2)),
    ]
    for rank in (1, 2):
        system = build_root_system("A", rank)
        rep = representation(system, "sl")
        for ring in rings:
            # every factorization is verified as it is built
            results = sample_factorizations(
                rep, ring, samples, rng, disable_progress=config.disable_progress
            )
            histogram = width_histogram(results)
            report.details[f"SL{rank + 1}/{ring}"] = {
                "samples": len(results),
                "histogram": histogram.rows(named=True),
                "reference_lines": reference_lines(system, ring),
            }
    return report


def check_constants(config: RunConfig, rng: random.Random) -> CheckReport:
    report = CheckReport(name="structure-constants")
    labels = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"]
    if config.expensive:
        labels += ["E6", "E7", "E8"]
    else:
        report.skipped.extend(["E6", "E7", "E8"])
    magnitudes = {}
    for label in labels:
        system = build_root_system(label[0], int(label[1:]))
        constants = load_constants(system, config.cache_dir, config.disable_progress)
        problems = constant_violations(constants)
        report.failures.extend({"system": label, "problem": problem} for problem in problems)
        magnitudes[label] = sorted({abs(value) for value in constants.table.values()})
        report.details[label] = {"constants": len(constants.table), "magnitudes": magnitudes[label]}
    if 3 not in magnitudes["G2"]:
        report.failures.append({"system": "G2", "problem": "no constant of magnitude 3"})
    if 2 not in magnitudes["F4"]:
        report.failures.append({"system": "F4", "problem": "no constant of magnitude 2"})
    for label in ("A2", "G2"):
        system = build_root_system(label[0], int(label[1:]))
        violations = jacobi_violations(build_chevalley_basis(system))
        report.failures.extend(
            {"system": label, "problem": f"Jacobi identity fails on basis triple {triple}"}
            for triple in violations
        )
    report.passed = not report.failures
    return report


#: acceptance checks in run order
CHECKS: dict[str, Callable[[RunConfig, random.Random], CheckReport]] = {
    "commutator-formula": check_commutators,
    "a1-relation": check_a1_relation,
    "symbol-triviality": check_symbols,
    "unitriangular-length-4": check_unitriangular,
    "k2-residue-model": check_k2_model,
    "k2-of-rings": check_k2_rings,
    "factorization-round-trips": check_factorizations,
    "structure-constants": check_constants,
}


def run_acceptance(config: RunConfig, checks: list[str] | None = None) -> list[CheckReport]:
    """Run the named checks (default all) in their fixed order.

    :raises: ValueError for unknown check names
    """
    names = list(CHECKS) if checks is None else checks
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown acceptance checks: {', '.join(unknown)}")
    rng = config.rng()
    reports = []
    for name in CHECKS:
        if name not in names:
            continue
        start = time.perf_counter()
        try:
            report = CHECKS[name](config, rng)
        except VerificationFailure as err:
            report = CheckReport(name=name, passed=False, failures=[str(err)])
        report.elapsed = time.perf_counter() - start
        logger.info(f"{name}: {report.status} in {report.elapsed:.1f}s")
        reports.append(report)
    return reports
