"""The release acceptance matrix, one test per criterion.

Each criterion is implemented in eulerlab.acceptance and shared with the
`eulerlab selftest` command; the assertions here are exact, with no
tolerances.
"""

import pytest

from eulerlab.acceptance import ALL_CRITERIA


@pytest.mark.parametrize(
    "criterion", ALL_CRITERIA, ids=[fn.__name__ for fn in ALL_CRITERIA]
)
def test_criterion(criterion):
    outcome = criterion()
    status = "PASS" if outcome.passed else "FAIL"
    print(f"[{outcome.number:2d}] {status}  {outcome.title}")
    for line in outcome.details:
        print(f"      {line}")
    assert outcome.passed, "\n".join(outcome.details)
