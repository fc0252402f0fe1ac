"""The numbered acceptance criteria, one test each, with a pass/fail line per criterion."""

from __future__ import annotations

import pytest

import conftest
from qpoly.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [num for num, _, _ in CRITERIA], ids=lambda n: f"criterion-{n:02d}")
def test_criterion(number):
    result = run_criterion(number)
    conftest.ACCEPTANCE_LINES.append(result.line())
    print(result.line())
    assert result.passed, result.detail
