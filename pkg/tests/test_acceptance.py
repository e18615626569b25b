"""One test per acceptance criterion at desk scale; each prints its pass/fail line."""

import pytest

from kuragenus.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = CRITERIA[number](seed=0, scale="desk")
    with capsys.disabled():
        print("\n" + result.line())
    assert result.checks > 0
    assert result.passed, "; ".join(result.failures[:5])
