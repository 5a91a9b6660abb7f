import json
from pathlib import Path
from typing import Dict, List, Set, Tuple

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.application.services.edoal_serialization import serialize_alignment
from ontomatch.application.services.module_extraction import (
    extract_module,
    module_file_name,
)
from ontomatch.application.services.ontology_store import ontology_iri, serialize_turtle
from ontomatch.application.services.synthesis_service import training_messages
from ontomatch.common.config.constants import (
    DEFAULT_HOPS,
    DEFAULT_SUPERCLASS_DEPTH,
    MODULE_PAIRS_FILE_NAME,
)
from ontomatch.common.custom_exceptions import EmptyResultError
from ontomatch.common.logger import AppLogger
from ontomatch.domain.alignment import Alignment, Correspondence
from ontomatch.domain.edoal_expression import atoms
from ontomatch.domain.ontology_graph import OntologyGraph
from ontomatch.domain.ontology_module import ModuleOrigin, ModulePair
from ontomatch.domain.rdf_terms import Iri
from ontomatch.domain.synth_record import RecordKind, SynthRecord


def reference_module_pairs(
    source: OntologyGraph,
    target: OntologyGraph,
    alignment: Alignment,
    hops: int = DEFAULT_HOPS,
    superclass_depth: int = DEFAULT_SUPERCLASS_DEPTH,
) -> List[ModulePair]:
    """
    One module pair per group of reference cells.

    Every cell anchors its source module on all atoms of entity1 and its target
    module on all atoms of entity2. Cells that share an anchor on either side
    would produce overlapping modules, so they are joined into one pair whose
    alignment holds all of them. Atoms the ontology never mentions are skipped.
    """
    anchored = []
    for cell in alignment.cells:
        source_anchors = _present_atoms(source, atoms(cell.entity1))
        target_anchors = _present_atoms(target, atoms(cell.entity2))
        if not source_anchors or not target_anchors:
            AppLogger.warning(
                f"Skipping a reference cell with no entity in the "
                f"{'source' if not source_anchors else 'target'} ontology"
            )
            continue
        anchored.append((cell, source_anchors, target_anchors))

    pairs = []
    for group in _join_overlapping(anchored):
        cells = [cell for cell, _, _ in group]
        source_anchors = sorted(set().union(*(anchors for _, anchors, _ in group)))
        target_anchors = sorted(set().union(*(anchors for _, _, anchors in group)))
        pairs.append(
            ModulePair(
                source=extract_module(
                    source,
                    [Iri(iri) for iri in source_anchors],
                    hops,
                    superclass_depth,
                    ModuleOrigin.SOURCE,
                ),
                target=extract_module(
                    target,
                    [Iri(iri) for iri in target_anchors],
                    hops,
                    superclass_depth,
                    ModuleOrigin.TARGET,
                ),
                alignment=alignment.with_cells(cells),
            )
        )
    AppLogger.info(
        f"Built {len(pairs)} module pairs from {len(alignment.cells)} reference cells"
    )
    return pairs


def module_pair_record(pair: ModulePair, onto1: str, onto2: str) -> SynthRecord:
    return SynthRecord(
        messages=training_messages(pair.source.graph, pair.target.graph, onto1, onto2),
        target=serialize_alignment(pair.alignment),
        kind=RecordKind.POSITIVE,
        valid=True,
    )


def write_module_pairs(
    pairs: List[ModulePair],
    source: OntologyGraph,
    target: OntologyGraph,
    alignment: Alignment,
    out_dir: str,
    file_adapter: FileAdapter = FileAdapter(),
) -> Path:
    """Writes the module files, each pair's reference and the pairs as corpus records."""
    if not pairs:
        raise EmptyResultError("No reference cell has entities in both ontologies")
    out = file_adapter.ensure_directory(out_dir)
    onto1 = alignment.onto1 or ontology_iri(source)
    onto2 = alignment.onto2 or ontology_iri(target)

    lines = []
    for index, pair in enumerate(pairs):
        for module in (pair.source, pair.target):
            file_adapter.write_text(
                out / module_file_name(module, index), serialize_turtle(module.graph)
            )
        file_adapter.write_text(
            out / f"reference_{index}.edoal", serialize_alignment(pair.alignment)
        )
        record = module_pair_record(pair, onto1, onto2)
        lines.append(json.dumps(record.to_training_example(), ensure_ascii=False))

    return file_adapter.write_text(
        out / MODULE_PAIRS_FILE_NAME, "".join(f"{line}\n" for line in lines)
    )


def _present_atoms(graph: OntologyGraph, iris: Set[str]) -> Set[str]:
    return {iri for iri in iris if graph.mentions(Iri(iri))}


def _join_overlapping(
    anchored: List[Tuple[Correspondence, Set[str], Set[str]]]
) -> List[List[Tuple[Correspondence, Set[str], Set[str]]]]:
    parent = list(range(len(anchored)))

    def find(index: int) -> int:
        while parent[index] != index:
            parent[index] = parent[parent[index]]
            index = parent[index]
        return index

    owners: Dict[Tuple[str, str], int] = {}
    for index, (_, source_anchors, target_anchors) in enumerate(anchored):
        for key in [("source", iri) for iri in source_anchors] + [
            ("target", iri) for iri in target_anchors
        ]:
            if key in owners:
                parent[find(index)] = find(owners[key])
            else:
                owners[key] = index

    groups: Dict[int, list] = {}
    for index, entry in enumerate(anchored):
        groups.setdefault(find(index), []).append(entry)
    # A group is keyed when its earliest cell is reached, so groups keep cell order
    return list(groups.values())
