"""Acceptance criteria, each at its stated tolerance (exact) and runtime budget.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion; the same suite is available as ``shuffle-lab verify --profile full``.
"""

import pytest

from shuffle_lab import acceptance

# seconds, per criterion
BUDGETS = {
    "dimension_formula": 30,
    "counterexample_s_equals_p": 1,
    "radford_triangularity": 10,
    "single_letter_structure": 5,
    "unipotent_exponent": 60,
    "filtration_lemma": 300,
    "binomial_lemmas": 5,
    "magnus_properties": 30,
    "shuffle_relation": 60,
    "lyndon_count": 1,
}

_lines = []


def test_every_criterion_has_a_budget():
    assert set(BUDGETS) == set(acceptance.CRITERIA)


@pytest.mark.slow
@pytest.mark.parametrize("name", list(acceptance.CRITERIA))
def test_criterion(name):
    result = acceptance.run_criterion(name, "full", seed=20260101)
    line = result.line()
    _lines.append(line)
    print(f"\n{line}")
    assert result.passed, result.details
    assert result.seconds < BUDGETS[name], f"{name} took {result.seconds:.1f}s (budget {BUDGETS[name]}s)"


def test_summary():
    # runs last in file order; the lines are also echoed in the terminal summary
    assert all(line.startswith("[PASS]") for line in _lines)
