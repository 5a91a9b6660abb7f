from dataclasses import dataclass
from typing import Tuple

from ontomatch.common.utilities import BaseEnum
from ontomatch.domain.alignment import Alignment

MASK_PREFIX = "MASK_"


def mask_name(slot: int) -> str:
    return f"{MASK_PREFIX}{slot}"


class Side(BaseEnum):
    ENTITY1 = "entity1"
    ENTITY2 = "entity2"


@dataclass(frozen=True)
class ProductionRule:
    lhs: str
    name: str
    rhs: Tuple[str, ...]
    weight: float = 1.0

    def __post_init__(self):
        if self.weight <= 0:
            raise ValueError(f"Rule [{self.lhs}:{self.name}] needs a positive weight")


@dataclass(frozen=True)
class SlotPosition:
    slot: int
    cell_index: int
    side: Side
    path: Tuple[int, ...]


@dataclass(frozen=True)
class AlignmentTemplate:
    skeleton: Alignment
    slot_count: int
    seed: int
    max_depth: int
    fired_rules: Tuple[str, ...] = ()
