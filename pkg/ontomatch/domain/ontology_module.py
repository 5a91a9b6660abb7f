from dataclasses import dataclass
from typing import Tuple

from ontomatch.common.utilities import BaseEnum
from ontomatch.domain.alignment import Alignment
from ontomatch.domain.ontology_graph import OntologyGraph
from ontomatch.domain.rdf_terms import Iri


class ModuleOrigin(BaseEnum):
    SOURCE = "source"
    TARGET = "target"


@dataclass(frozen=True)
class EntityScore:
    iri: Iri
    score: float


@dataclass(frozen=True)
class OntologyModule:
    graph: OntologyGraph
    anchors: Tuple[Iri, ...]
    origin: ModuleOrigin

    def __post_init__(self):
        missing = [anchor for anchor in self.anchors if not self.graph.mentions(anchor)]
        if missing:
            raise ValueError(
                f"Anchors {[anchor.value for anchor in missing]} are absent from the module"
            )


@dataclass(frozen=True)
class ModulePair:
    """Source and target modules holding every entity of their reference cells."""

    source: OntologyModule
    target: OntologyModule
    alignment: Alignment
