"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the table, or
``raaghom report`` for the same results from the command line.
"""

from __future__ import annotations

import pytest

from raaghom import acceptance


@pytest.mark.parametrize(
    "number,name",
    [(num, name) for num, name, _, _ in acceptance.CRITERIA],
    ids=[f"{num:02d}-{name}" for num, name, _, _ in acceptance.CRITERIA],
)
def test_criterion(number, name):
    result = acceptance.run(numbers=[number], seed=0)[0]
    status = "PASS" if result.passed else "FAIL"
    print(f"ACCEPTANCE {result.number:02d} {result.name}: {status}  {result.detail}")
    assert result.passed, f"criterion {number} ({name}): {result.detail}"
