import pytest
from pydantic import ValidationError

from ontomatch.domain.match_task import MatchRunReport


def test_report_defaults_to_zero():
    assert MatchRunReport().dict() == {
        "tasks": 0,
        "repaired": 0,
        "invalid": 0,
        "final_cells": 0,
        "duplicates_removed": 0,
        "dropped": 0,
    }


def test_invalid_cannot_exceed_tasks():
    with pytest.raises(ValidationError, match="invalid cannot exceed tasks"):
        MatchRunReport(tasks=1, invalid=2)


@pytest.mark.parametrize("field", ["duplicates_removed", "dropped", "repaired", "final_cells"])
def test_counters_are_not_negative(field):
    with pytest.raises(ValidationError, match=f"{field} must be >= 0"):
        MatchRunReport(tasks=1, **{field: -1})
