"""Acceptance gate: every criterion of the self-check suite must pass
within its time budget.  Results are computed once per session; each
test prints the one-line verdict for its criterion so the full report
appears in the pytest output (run with -s or look at captured stdout).
"""

import pytest

from enriques_gw import selfcheck


@pytest.fixture(scope="module")
def results():
    res = selfcheck.run_all()
    print()
    print(selfcheck.format_results(res))
    return {r.number: r for r in res}


def test_suite_is_complete(results):
    assert len(selfcheck.ALL_CRITERIA) == 9
    assert sorted(results) == list(range(1, 10))


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(results, number):
    result = results[number]
    print(result.line())
    assert result.passed, result.line()
    assert result.seconds <= result.budget, result.line()
