from typing import Dict, List, Tuple

from ontomatch.common.config.constants import DEFAULT_ALIGNMENT_LEVEL
from ontomatch.common.custom_exceptions import ConflictingOntologiesError
from ontomatch.domain.alignment import Alignment, CellKind, Correspondence
from ontomatch.domain.edoal_expression import is_atomic, normalize


def normalize_cell(cell: Correspondence) -> Correspondence:
    return Correspondence(
        entity1=normalize(cell.entity1),
        entity2=normalize(cell.entity2),
        relation=cell.relation,
        measure=cell.measure,
    )


def normalize_alignment(alignment: Alignment) -> Alignment:
    return merge([alignment.with_cells(normalize_cell(cell) for cell in alignment.cells)])


def classify_cell(cell: Correspondence) -> CellKind:
    if is_atomic(cell.entity1) and is_atomic(cell.entity2):
        return CellKind.SIMPLE
    return CellKind.COMPLEX


def _shared_identity(values: List[str], name: str) -> str:
    identities = sorted({value for value in values if value})
    if len(identities) > 1:
        raise ConflictingOntologiesError(
            f"Partial alignments disagree on {name}: {', '.join(identities)}"
        )
    return identities[0] if identities else ""


def merge(partials: List[Alignment]) -> Alignment:
    """
    Union of the partial alignments.

    Cells whose normalised (entity1, entity2, relation) agree are duplicates;
    the one with the highest measure survives. Partials with empty ontology
    placeholders merge with any identity.
    """
    onto1 = _shared_identity([partial.onto1 for partial in partials], "onto1")
    onto2 = _shared_identity([partial.onto2 for partial in partials], "onto2")

    best: Dict[Tuple[str, str, str], Correspondence] = {}
    prefixes: Dict[str, str] = {}
    for partial in partials:
        prefixes.update(partial.prefix_map)
        for cell in partial.cells:
            key = cell.normalized_key()
            current = best.get(key)
            if current is None or (-cell.measure, cell.sort_key()) < (
                -current.measure,
                current.sort_key(),
            ):
                best[key] = cell

    level = partials[0].level if partials else DEFAULT_ALIGNMENT_LEVEL
    return Alignment(
        onto1=onto1,
        onto2=onto2,
        cells=tuple(best.values()),
        level=level,
        prefixes=tuple(prefixes.items()),
    )
