"""Acceptance gate: every structural claim at its stated scale, exact.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion, or ``quatfact verify`` for the same content as JSON.
"""

import time

import pytest

from quatfact.verify import CHECKS, VerifyConfig, _Context

# (criterion number, check id, wall-clock budget in seconds)
BUDGETS = {
    "min-delta-witness": (1, 10),
    "unique-factorization-off-radical": (2, 60),
    "atom-classification": (3, 300),
    "canonical-associate-completeness": (4, 120),
    "radical-min-length": (5, 300),
    "catenary-delta-bounds": (6, 300),
    "elasticity-witnesses": (7, 120),
    "distance-axioms": (8, 120),
    "clifford-identities": (9, 60),
    "radical-case-table": (10, 120),
    "noneichler-nilpotent-atoms": (11, 180),
    "intersection-in-radical": (12, 120),
}


@pytest.fixture(scope="module")
def suite():
    """Run all checks once, in order, recording results and durations."""
    ctx = _Context(VerifyConfig(seed=1789, sample_scale=1.0))
    results = {}
    start = time.time()
    for fn in CHECKS:
        t0 = time.time()
        result = fn(ctx)
        results[result.check_id] = (result, time.time() - t0)
    results["__total__"] = time.time() - start
    return results


def _report(suite, check_id):
    result, elapsed = suite[check_id]
    number, budget = BUDGETS[check_id]
    status = "PASS" if result.passed else "FAIL"
    print(
        f"{status} criterion {number}: {check_id} "
        f"({result.instances} instances, {elapsed:.2f}s, budget {budget}s)"
    )
    assert result.passed, (
        f"criterion {number} ({check_id}) failed; counterexample: {result.counterexample}"
    )
    assert elapsed < budget, f"criterion {number} exceeded its {budget}s budget ({elapsed:.1f}s)"


def test_criterion_01_min_delta_witness(suite):
    _report(suite, "min-delta-witness")


def test_criterion_02_unique_factorization_off_radical(suite):
    _report(suite, "unique-factorization-off-radical")


def test_criterion_03_atom_classification(suite):
    _report(suite, "atom-classification")


def test_criterion_04_canonical_associate_completeness(suite):
    _report(suite, "canonical-associate-completeness")


def test_criterion_05_radical_min_length(suite):
    _report(suite, "radical-min-length")


def test_criterion_06_catenary_delta_bounds(suite):
    _report(suite, "catenary-delta-bounds")


def test_criterion_07_elasticity_witnesses(suite):
    _report(suite, "elasticity-witnesses")


def test_criterion_08_distance_axioms(suite):
    _report(suite, "distance-axioms")


def test_criterion_09_clifford_identities(suite):
    _report(suite, "clifford-identities")


def test_criterion_10_radical_case_table(suite):
    _report(suite, "radical-case-table")


def test_criterion_11_noneichler_nilpotent_atoms(suite):
    _report(suite, "noneichler-nilpotent-atoms")


def test_criterion_12_intersection_in_radical(suite):
    _report(suite, "intersection-in-radical")


def test_full_suite_under_budget(suite):
    total = suite["__total__"]
    print(f"full acceptance suite wall time: {total:.2f}s (budget 900s)")
    assert total < 900
