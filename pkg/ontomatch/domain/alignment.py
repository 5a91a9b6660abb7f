from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from ontomatch.common.config.constants import DEFAULT_ALIGNMENT_LEVEL
from ontomatch.common.utilities import BaseEnum
from ontomatch.domain.edoal_expression import (
    EdoalExpression,
    atoms,
    canonical_text,
    normalize,
)


class Relation(BaseEnum):
    EQUIVALENCE = "="
    SUBSUMED_BY = "<"
    SUBSUMES = ">"


class CellKind(BaseEnum):
    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class Correspondence:
    entity1: EdoalExpression
    entity2: EdoalExpression
    relation: Relation = Relation.EQUIVALENCE
    measure: float = 1.0

    def __post_init__(self):
        if self.entity1 is None or self.entity2 is None:
            raise ValueError("A correspondence relates two expressions")
        if not 0.0 <= self.measure <= 1.0:
            raise ValueError(f"Measure [{self.measure}] is outside [0, 1]")

    def normalized_key(self) -> Tuple[str, str, str]:
        return (
            canonical_text(normalize(self.entity1)),
            canonical_text(normalize(self.entity2)),
            self.relation.value,
        )

    def sort_key(self):
        return self.normalized_key() + (
            canonical_text(self.entity1),
            canonical_text(self.entity2),
            self.measure,
        )


@dataclass(frozen=True)
class Alignment:
    """
    An alignment document.

    Cells are kept in canonical order so that equal alignments compare and
    serialise identically whatever order they were built in. Prefixes only
    carry declarations beyond the standard alignment vocabularies and take no
    part in equality.
    """

    onto1: str = ""
    onto2: str = ""
    cells: Tuple[Correspondence, ...] = ()
    level: str = DEFAULT_ALIGNMENT_LEVEL
    prefixes: Tuple[Tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if (self.onto1 or self.onto2) and self.onto1 == self.onto2:
            raise ValueError(f"onto1 and onto2 are both [{self.onto1}]")
        object.__setattr__(
            self, "cells", tuple(sorted(self.cells, key=lambda cell: cell.sort_key()))
        )
        object.__setattr__(self, "prefixes", tuple(sorted(dict(self.prefixes).items())))

    @property
    def prefix_map(self) -> Dict[str, str]:
        return dict(self.prefixes)

    def is_empty(self) -> bool:
        return len(self.cells) == 0

    def with_cells(self, cells: Iterable[Correspondence]) -> "Alignment":
        return Alignment(self.onto1, self.onto2, tuple(cells), self.level, self.prefixes)

    def with_ontologies(self, onto1: str, onto2: str) -> "Alignment":
        return Alignment(onto1, onto2, self.cells, self.level, self.prefixes)

    def entity_iris(self) -> List[str]:
        found = set()
        for cell in self.cells:
            found.update(atoms(cell.entity1))
            found.update(atoms(cell.entity2))
        return sorted(found)
