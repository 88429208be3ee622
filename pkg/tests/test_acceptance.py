"""Acceptance criteria 1 to 11, one test each, run through the shared suite."""

import pytest

from awdelta.suite import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda k: f"criterion_{k:02d}")
def test_criterion(number, capsys):
    res = CRITERIA[number]()
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
    assert res.elapsed < res.limit, f"took {res.elapsed:.1f}s, limit {res.limit:g}s"
