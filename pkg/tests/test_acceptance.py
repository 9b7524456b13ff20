"""One test per acceptance criterion; each prints its pass/fail line.

The lines are also collected and repeated at the end of the pytest run.
"""
import pytest

from quarticlines.verify import CRITERIA, VerifyConfig

CFG = VerifyConfig()
RESULTS: list[str] = []


def _run(number: int):
    res = CRITERIA[number - 1](CFG)
    res.number = number
    line = res.line()
    print(line)
    RESULTS.append(line)
    return res


@pytest.mark.parametrize("number", range(1, 11), ids=[f"criterion_{i:02d}" for i in range(1, 11)])
def test_acceptance(number):
    res = _run(number)
    assert res.passed, res.line()
