from dataclasses import dataclass
from typing import List, Optional, Tuple

from pydantic import BaseModel, validator

from ontomatch.common.utilities import BaseEnum
from ontomatch.domain.alignment import Alignment
from ontomatch.domain.chat import ChatMessage, ChatRole
from ontomatch.domain.repair_report import RepairReport


class RecordKind(BaseEnum):
    POSITIVE = "positive"
    EMPTY = "empty"


class SynthRecord(BaseModel):
    messages: List[ChatMessage]
    target: str
    kind: RecordKind
    valid: bool
    seed: int = 0
    reason: str = ""

    class Config:
        use_enum_values = True

    def to_training_example(self) -> dict:
        conversation = [message.dict() for message in self.messages]
        conversation.append(
            ChatMessage(role=ChatRole.ASSISTANT, content=self.target).dict()
        )
        return {"messages": conversation}


class CorpusManifest(BaseModel):
    total: int
    positives: int
    empties: int
    emitted: int
    valid_rate: float
    seed_range: Tuple[int, int]

    @validator("empties")
    def total_is_sum_of_kinds(cls, empties, values):
        if values.get("total") != values.get("positives", 0) + empties:
            raise ValueError("total must equal positives + empties")
        return empties

    @validator("valid_rate")
    def rate_in_unit_interval(cls, value):
        if not 0.0 <= value <= 1.0:
            raise ValueError("valid_rate must lie in [0, 1]")
        return value


@dataclass(frozen=True)
class FilledAlignment:
    response: str
    alignment: Optional[Alignment] = None
    report: Optional[RepairReport] = None
    reason: str = ""

    @property
    def valid(self) -> bool:
        return self.alignment is not None
