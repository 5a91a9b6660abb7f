from dataclasses import dataclass
from typing import Optional, Tuple

from pydantic import BaseModel, validator

from ontomatch.domain.alignment import Alignment
from ontomatch.domain.chat import ChatMessage
from ontomatch.domain.ontology_module import OntologyModule
from ontomatch.domain.repair_report import RepairReport


@dataclass(frozen=True)
class MatchTask:
    index: int
    source_module: OntologyModule
    target_module: OntologyModule
    prompt: Tuple[ChatMessage, ...]
    token_estimate: int
    hops: int


@dataclass(frozen=True)
class TaskOutcome:
    task: MatchTask
    response: str
    alignment: Optional[Alignment]
    report: Optional[RepairReport]
    error: str = ""

    @property
    def is_valid(self) -> bool:
        return self.alignment is not None

    @property
    def was_repaired(self) -> bool:
        return self.report is not None and self.report.has_fixes()


class MatchRunReport(BaseModel):
    tasks: int = 0
    repaired: int = 0
    invalid: int = 0
    final_cells: int = 0
    duplicates_removed: int = 0
    dropped: int = 0

    @validator("invalid")
    def invalid_within_tasks(cls, value, values):
        if value > values.get("tasks", 0):
            raise ValueError("invalid cannot exceed tasks")
        return value

    @validator("duplicates_removed", "dropped", "repaired", "final_cells")
    def not_negative(cls, value, field):
        if value < 0:
            raise ValueError(f"{field.name} must be >= 0")
        return value


@dataclass(frozen=True)
class TaskPlan:
    tasks: Tuple[MatchTask, ...]
    dropped: int = 0
