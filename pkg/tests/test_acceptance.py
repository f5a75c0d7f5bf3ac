"""Acceptance criteria 1-11, one test and one PASS/FAIL line each.

Run `pytest tests/test_acceptance.py -v` (lines appear in the summary) or
`python tests/test_acceptance.py` to print them directly.
"""

from __future__ import annotations

import pytest

from liga.acceptance import CHECKS, run_check


@pytest.mark.parametrize("number", list(CHECKS), ids=[f"criterion_{n}" for n in CHECKS])
def test_criterion(number):
    from conftest import record_acceptance
    res = run_check(number)
    print(res.line())
    record_acceptance(res.line())
    assert res.ok, res.detail


if __name__ == "__main__":
    from liga.acceptance import run_all
    run_all()
