import pytest
from pydantic import ValidationError

from ontomatch.domain.eval_report import CellSimilarity, Scores, f_measure


@pytest.mark.parametrize(
    "precision, recall, expected",
    [
        (1.0, 1.0, 1.0),
        (0.0, 0.0, 0.0),
        (1.0, 0.5, 2 / 3),
    ],
)
def test_f_measure(precision, recall, expected):
    assert f_measure(precision, recall) == pytest.approx(expected)


def test_scores_from_precision_recall():
    scores = Scores.from_precision_recall(0.5, 1.0)

    assert scores.f1 == pytest.approx(2 / 3)


def test_scores_stay_in_unit_interval():
    with pytest.raises(ValidationError, match=r"precision must lie in \[0, 1\]"):
        Scores(precision=1.2, recall=1.0, f1=1.0)


@pytest.mark.parametrize("value", [-0.01, 1.01])
def test_cell_similarity_bounds(value):
    with pytest.raises(ValueError, match="must lie in"):
        CellSimilarity(value)
