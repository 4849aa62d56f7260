"""Acceptance suite: one test per criterion, each printing its own verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` for the per-row lines,
or reproduce the same rows from the command line with
``sumchoice verify-tables``.
"""

import pytest

from sumchoice.acceptance import CRITERIA


@pytest.mark.parametrize("row_id,title,runner", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance_row(row_id, title, runner):
    ok, detail = runner()
    print(f"CRITERION {row_id} {'PASS' if ok else 'FAIL'} ({title}): {detail}")
    assert ok, f"criterion {row_id} failed: {detail}"
