import re
from typing import Iterable, List, Mapping, Set

from ontomatch.application.services.ontology_store import is_standard_vocabulary
from ontomatch.common.config.constants import (
    DEFAULT_HOPS,
    DEFAULT_SUPERCLASS_DEPTH,
    RDF_TYPE,
    RDFS_COMMENT,
    RDFS_LABEL,
    RDFS_SUBCLASS_OF,
)
from ontomatch.common.custom_exceptions import AnchorNotFoundError, UserError
from ontomatch.common.value_transformers import local_name, safe_file_component
from ontomatch.domain.ontology_graph import OntologyGraph
from ontomatch.domain.ontology_module import ModuleOrigin, OntologyModule
from ontomatch.domain.rdf_terms import BlankNode, Iri, Literal, RdfTerm, Triple

TOKEN_REGEX = re.compile(r"\w+|[^\w\s]")
METADATA_PREDICATES = {RDF_TYPE, RDFS_LABEL, RDFS_COMMENT}


def estimate_tokens(text: str) -> int:
    return len(TOKEN_REGEX.findall(text))


def module_file_name(module: OntologyModule, index: int) -> str:
    anchor = safe_file_component(local_name(module.anchors[0].value))
    return f"{module.origin.value}_{anchor}_{index}.ttl"


def extract_module(
    graph: OntologyGraph,
    anchors: List[Iri],
    hops: int = DEFAULT_HOPS,
    superclass_depth: int = DEFAULT_SUPERCLASS_DEPTH,
    origin: ModuleOrigin = ModuleOrigin.SOURCE,
) -> OntologyModule:
    if not anchors:
        raise UserError("Module extraction needs at least one anchor")
    for anchor in anchors:
        if not graph.mentions(anchor):
            raise AnchorNotFoundError(
                f"The anchor [{anchor.value}] does not occur in the ontology"
            )

    selected: Set[Triple] = set()
    entities: Set[Iri] = set(anchors)

    _collect_neighbourhood(graph, anchors, hops, selected, entities)
    _collect_superclasses(graph, anchors, superclass_depth, selected, entities)
    for triple in list(selected):
        if isinstance(triple.predicate, Iri) and not is_standard_vocabulary(
            triple.predicate.value
        ):
            entities.add(triple.predicate)
    _copy_metadata(graph, entities, selected)

    for anchor in anchors:
        if not any(anchor in (triple.subject, triple.object) for triple in selected):
            selected.add(
                Triple(anchor, Iri(RDFS_LABEL), Literal(local_name(anchor.value)))
            )

    return OntologyModule(
        graph=OntologyGraph(selected, _used_prefixes(graph.prefixes, selected), graph.base),
        anchors=tuple(anchors),
        origin=origin,
    )


def _is_excluded(graph: OntologyGraph, term: RdfTerm) -> bool:
    if isinstance(term, BlankNode):
        return True
    if isinstance(term, Literal):
        return False
    return is_standard_vocabulary(term.value) and not graph.has_type(term)


def _collect_neighbourhood(
    graph: OntologyGraph,
    anchors: List[Iri],
    hops: int,
    selected: Set[Triple],
    entities: Set[Iri],
):
    frontier = list(anchors)
    visited = set(anchors)
    for _ in range(hops):
        next_frontier = []
        for node in frontier:
            for triple in graph.triples_about(node) + graph.triples_pointing_to(node):
                # Type assertions are metadata, not edges
                if triple.predicate.value == RDF_TYPE:
                    continue
                if isinstance(triple.subject, BlankNode) or triple.has_blank_object():
                    continue
                neighbour = triple.object if triple.subject == node else triple.subject
                if _is_excluded(graph, neighbour):
                    continue
                selected.add(triple)
                if isinstance(neighbour, Iri):
                    entities.add(neighbour)
                    if neighbour not in visited:
                        visited.add(neighbour)
                        next_frontier.append(neighbour)
        frontier = next_frontier


def _collect_superclasses(
    graph: OntologyGraph,
    anchors: List[Iri],
    depth: int,
    selected: Set[Triple],
    entities: Set[Iri],
):
    subclass_of = Iri(RDFS_SUBCLASS_OF)
    for anchor in anchors:
        level = [anchor]
        seen = {anchor}
        for _ in range(depth):
            next_level = []
            for current in level:
                for parent in graph.objects(current, RDFS_SUBCLASS_OF):
                    if not isinstance(parent, Iri) or _is_excluded(graph, parent):
                        continue
                    selected.add(Triple(current, subclass_of, parent))
                    entities.add(parent)
                    if parent not in seen:
                        seen.add(parent)
                        next_level.append(parent)
            level = next_level


def _copy_metadata(graph: OntologyGraph, entities: Iterable[Iri], selected: Set[Triple]):
    for entity in entities:
        for triple in graph.triples_about(entity):
            if triple.predicate.value not in METADATA_PREDICATES:
                continue
            if triple.has_blank_object():
                continue
            selected.add(triple)


def _used_prefixes(prefixes: Mapping[str, str], triples: Set[Triple]) -> Mapping[str, str]:
    iris = set()
    for triple in triples:
        for term in (triple.subject, triple.predicate, triple.object):
            if isinstance(term, Iri):
                iris.add(term.value)
            elif isinstance(term, Literal) and term.datatype is not None:
                iris.add(term.datatype.value)
    return {
        prefix: namespace
        for prefix, namespace in prefixes.items()
        if namespace and any(iri.startswith(namespace) for iri in iris)
    }
