from dataclasses import dataclass

from pydantic import BaseModel, validator


@dataclass(frozen=True)
class CellSimilarity:
    value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"A cell similarity must lie in [0, 1], got {self.value}")


def f_measure(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


class Scores(BaseModel):
    precision: float
    recall: float
    f1: float

    @validator("precision", "recall", "f1")
    def in_unit_interval(cls, value, field):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{field.name} must lie in [0, 1]")
        return value

    @classmethod
    def from_precision_recall(cls, precision: float, recall: float) -> "Scores":
        return cls(precision=precision, recall=recall, f1=f_measure(precision, recall))


class EvalCounts(BaseModel):
    ref_simple: int = 0
    ref_complex: int = 0
    sys_simple: int = 0
    sys_complex: int = 0


class EvalReport(BaseModel):
    simple: Scores
    complex: Scores
    counts: EvalCounts = EvalCounts()
