import json
from pathlib import Path
from typing import Dict, List, Mapping, Set, Tuple

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.application.services.alignment_service import classify_cell, normalize_cell
from ontomatch.application.services.edoal_serialization import parse_alignment
from ontomatch.common.custom_exceptions import AlignmentParseError, InputFileError
from ontomatch.domain.alignment import Alignment, CellKind, Correspondence
from ontomatch.domain.edoal_expression import atoms
from ontomatch.domain.eval_report import CellSimilarity, EvalCounts, EvalReport, Scores

METRIC_COLUMNS = ["s-p", "s-r", "s-f", "c-p", "c-r", "c-f"]
DATASET_COLUMN = "dataset"
AVERAGE_ROW = "average"


def _jaccard(first: Set[str], second: Set[str]) -> float:
    union = first | second
    if not union:
        return 1.0
    return len(first & second) / len(union)


def cell_similarity(first: Correspondence, second: Correspondence) -> CellSimilarity:
    """
    Relaxed similarity between two cells.

    Zero when the relations differ, otherwise the mean of the Jaccard overlaps
    of the atomic entities on each side. Cells that are equal once normalised
    score 1.
    """
    if first.relation != second.relation:
        return CellSimilarity(0.0)
    if first.normalized_key() == second.normalized_key():
        return CellSimilarity(1.0)
    value = 0.5 * _jaccard(atoms(first.entity1), atoms(second.entity1)) + 0.5 * _jaccard(
        atoms(first.entity2), atoms(second.entity2)
    )
    return CellSimilarity(min(1.0, value))


def _partition(alignment: Alignment) -> Dict[CellKind, List[Correspondence]]:
    partitions = {CellKind.SIMPLE: [], CellKind.COMPLEX: []}
    for cell in alignment.cells:
        normalized = normalize_cell(cell)
        partitions[classify_cell(normalized)].append(normalized)
    return partitions


def _best_matches(cells: List[Correspondence], against: List[Correspondence]) -> float:
    return sum(
        max(cell_similarity(cell, other).value for other in against) for cell in cells
    )


def _score_partition(system: List[Correspondence], reference: List[Correspondence]) -> Scores:
    if not system and not reference:
        return Scores.from_precision_recall(1.0, 1.0)
    if not system or not reference:
        return Scores.from_precision_recall(0.0, 0.0)
    precision = _best_matches(system, reference) / len(system)
    recall = _best_matches(reference, system) / len(reference)
    return Scores.from_precision_recall(min(1.0, precision), min(1.0, recall))


def score(system: Alignment, reference: Alignment) -> EvalReport:
    """Precision, recall and F-measure of simple and complex cells; measures are ignored."""
    system_cells = _partition(system)
    reference_cells = _partition(reference)
    return EvalReport(
        simple=_score_partition(system_cells[CellKind.SIMPLE], reference_cells[CellKind.SIMPLE]),
        complex=_score_partition(
            system_cells[CellKind.COMPLEX], reference_cells[CellKind.COMPLEX]
        ),
        counts=EvalCounts(
            ref_simple=len(reference_cells[CellKind.SIMPLE]),
            ref_complex=len(reference_cells[CellKind.COMPLEX]),
            sys_simple=len(system_cells[CellKind.SIMPLE]),
            sys_complex=len(system_cells[CellKind.COMPLEX]),
        ),
    )


def _metrics(report: EvalReport) -> List[float]:
    return [
        report.simple.precision,
        report.simple.recall,
        report.simple.f1,
        report.complex.precision,
        report.complex.recall,
        report.complex.f1,
    ]


def report_table(reports: Mapping[str, EvalReport]) -> str:
    names = sorted(reports)
    width = max([len(DATASET_COLUMN), len(AVERAGE_ROW)] + [len(name) for name in names])

    def row(label: str, values: List[str]) -> str:
        return " ".join([label.ljust(width)] + [value.rjust(5) for value in values]).rstrip()

    lines = [row(DATASET_COLUMN, METRIC_COLUMNS)]
    for name in names:
        lines.append(row(name, [f"{value:.2f}" for value in _metrics(reports[name])]))
    if names:
        columns = zip(*(_metrics(reports[name]) for name in names))
        averages = [sum(column) / len(names) for column in columns]
        lines.append(row(AVERAGE_ROW, [f"{value:.2f}" for value in averages]))
    return "\n".join(lines) + "\n"


def reports_to_json(reports: Mapping[str, EvalReport]) -> str:
    return json.dumps(
        {name: report.dict() for name, report in reports.items()}, indent=2, sort_keys=True
    ) + "\n"


def reports_from_json(text: str) -> Dict[str, EvalReport]:
    return {name: EvalReport.parse_obj(value) for name, value in json.loads(text).items()}


def load_eval_manifest(
    path: str, file_adapter: FileAdapter = FileAdapter()
) -> Dict[str, Tuple[str, str]]:
    """
    Reads a JSON manifest mapping each dataset to its system and reference files.

    Entries are either `{"system": ..., "reference": ...}` objects or
    `[system, reference]` pairs; relative paths resolve against the manifest's
    directory.
    """
    content = file_adapter.read_json(path)
    if not isinstance(content, dict):
        raise InputFileError(f"The manifest [{path}] must be a JSON object")
    base = Path(path).parent
    datasets = {}
    for name, entry in content.items():
        if isinstance(entry, dict) and {"system", "reference"} <= set(entry):
            system, reference = entry["system"], entry["reference"]
        elif isinstance(entry, list) and len(entry) == 2:
            system, reference = entry
        else:
            raise InputFileError(
                f"The manifest entry [{name}] needs a system and a reference path"
            )
        datasets[name] = (str(base / system), str(base / reference))
    return datasets


def load_alignment(path: str, file_adapter: FileAdapter = FileAdapter()) -> Alignment:
    try:
        return parse_alignment(file_adapter.read_text(path))
    except AlignmentParseError as error:
        raise AlignmentParseError(f"The alignment [{path}] is invalid: {error.message}")


def evaluate_manifest(
    path: str, file_adapter: FileAdapter = FileAdapter()
) -> Dict[str, EvalReport]:
    return {
        name: score(load_alignment(system, file_adapter), load_alignment(reference, file_adapter))
        for name, (system, reference) in load_eval_manifest(path, file_adapter).items()
    }
