import re
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple
from xml.sax import SAXParseException

import rdflib
from rdflib.compare import to_canonical_graph
from rdflib.plugins.parsers.notation3 import BadSyntax

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.common.config.constants import (
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_NAMED_INDIVIDUAL,
    OWL_NS,
    OWL_OBJECT_PROPERTY,
    OWL_ONTOLOGY,
    RDF_NS,
    RDF_TYPE,
    RDFS_CLASS,
    RDFS_COMMENT,
    RDFS_LABEL,
    STANDARD_VOCABULARY_PREFIXES,
)
from ontomatch.common.custom_exceptions import (
    InputFileError,
    InvalidIriError,
    OntologyParseError,
)
from ontomatch.common.logger import AppLogger
from ontomatch.common.value_transformers import local_name
from ontomatch.domain.ontology_graph import EntityInfo, EntityKind, OntologyGraph
from ontomatch.domain.rdf_terms import BlankNode, Iri, Literal, RdfTerm, Triple

# Lexical forms must survive a round trip untouched
rdflib.NORMALIZE_LITERALS = False

TURTLE_BASE_REGEX = re.compile(r"^\s*(?:@base|(?i:BASE))\s+<([^>]*)>", re.MULTILINE)
XML_NS = "http://www.w3.org/XML/1998/namespace"
XML_BASE_REGEX = re.compile(r"xml:base\s*=\s*[\"']([^\"']*)[\"']")
SAFE_LOCAL_NAME_REGEX = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")

TURTLE_EXTENSIONS = [".ttl", ".turtle", ".n3"]
RDFXML_EXTENSIONS = [".rdf", ".owl", ".xml"]

CLASS_TYPES = {OWL_CLASS, RDFS_CLASS}
OBJECT_PROPERTY_TYPES = {
    OWL_OBJECT_PROPERTY,
    OWL_NS + "TransitiveProperty",
    OWL_NS + "SymmetricProperty",
    OWL_NS + "InverseFunctionalProperty",
    RDF_NS + "Property",
}
DATA_PROPERTY_TYPES = {OWL_DATATYPE_PROPERTY}


def parse_turtle(text: str) -> OntologyGraph:
    if not text.strip():
        return OntologyGraph()
    graph = rdflib.Graph(bind_namespaces="none")
    try:
        graph.parse(data=text, format="turtle")
    except BadSyntax as error:
        line, column = _bad_syntax_position(error)
        raise OntologyParseError(f"Invalid Turtle: {error._why}", line, column)
    except Exception as error:
        raise OntologyParseError(f"Invalid Turtle: {error}")

    base_match = TURTLE_BASE_REGEX.search(text)
    base = base_match.group(1) if base_match else None
    return _to_ontology_graph(graph, _declared_prefixes(graph), base)


def parse_rdfxml(text: str) -> OntologyGraph:
    if not text.strip():
        raise OntologyParseError("Invalid RDF/XML: the document is empty")
    graph = rdflib.Graph(bind_namespaces="none")
    try:
        graph.parse(data=text, format="xml")
    except SAXParseException as error:
        raise OntologyParseError(
            f"Malformed XML: {error.getMessage()}",
            error.getLineNumber(),
            error.getColumnNumber(),
        )
    except Exception as error:
        raise OntologyParseError(f"Invalid RDF/XML: {error}")

    base_match = XML_BASE_REGEX.search(text)
    base = base_match.group(1) if base_match else None
    return _to_ontology_graph(graph, _declared_prefixes(graph), base)


def load_ontology(path: str, file_adapter: FileAdapter = FileAdapter()) -> OntologyGraph:
    text = file_adapter.read_text(path)
    extension = Path(path).suffix.lower()
    if extension in TURTLE_EXTENSIONS:
        graph = parse_turtle(text)
    elif extension in RDFXML_EXTENSIONS or text.lstrip().startswith("<"):
        graph = parse_rdfxml(text)
    else:
        graph = parse_turtle(text)
    AppLogger.info(f"Loaded {len(graph)} triples from {path}")
    return graph


def serialize_turtle(graph: OntologyGraph) -> str:
    prefixes = dict(graph.prefixes)
    lines = [
        f"@prefix {prefix}: <{namespace}> ." for prefix, namespace in prefixes.items()
    ]
    body = [
        f"{_render_term(triple.subject, prefixes)} "
        f"{_render_term(triple.predicate, prefixes)} "
        f"{_render_term(triple.object, prefixes)} ."
        for triple in graph.sorted_triples()
    ]
    if lines and body:
        lines.append("")
    lines.extend(body)
    return "\n".join(lines) + "\n" if lines else ""


def entity_index(graph: OntologyGraph) -> Dict[Iri, EntityInfo]:
    index = {}
    for subject in graph.subjects():
        if not isinstance(subject, Iri):
            continue
        types = {term.value for term in graph.types_of(subject)}
        index[subject] = EntityInfo(
            iri=subject,
            kind=_kind_from_types(types),
            labels=_unique_lexicals(graph.objects(subject, RDFS_LABEL)),
            comments=_unique_lexicals(graph.objects(subject, RDFS_COMMENT)),
        )
    return index


def label_of(graph: OntologyGraph, iri: Iri) -> str:
    labels = _unique_lexicals(graph.objects(iri, RDFS_LABEL))
    return labels[0] if labels else local_name(iri.value)


def ontology_iri(graph: OntologyGraph) -> str:
    declared = sorted(
        subject.value
        for subject in graph.subjects_with(RDF_TYPE, Iri(OWL_ONTOLOGY))
        if isinstance(subject, Iri)
    )
    if declared:
        return declared[0]
    return graph.base or ""


def with_triples(graph: OntologyGraph, triples: Iterable[Triple]) -> OntologyGraph:
    return graph.with_triples(triples)


def is_standard_vocabulary(iri: str) -> bool:
    return any(iri.startswith(prefix) for prefix in STANDARD_VOCABULARY_PREFIXES)


def _kind_from_types(types: set) -> EntityKind:
    if types & CLASS_TYPES:
        return EntityKind.CLASS
    if types & OBJECT_PROPERTY_TYPES:
        return EntityKind.OBJECT_PROPERTY
    if types & DATA_PROPERTY_TYPES:
        return EntityKind.DATA_PROPERTY
    if OWL_NAMED_INDIVIDUAL in types or any(
        not is_standard_vocabulary(value) for value in types
    ):
        return EntityKind.INDIVIDUAL
    return EntityKind.UNKNOWN


def _unique_lexicals(terms: List[RdfTerm]) -> Tuple[str, ...]:
    values = []
    for term in sorted(terms, key=lambda item: item.sort_key()):
        if isinstance(term, Literal) and term.lexical not in values:
            values.append(term.lexical)
    return tuple(values)


def _bad_syntax_position(error: BadSyntax) -> Tuple[Optional[int], Optional[int]]:
    try:
        text = error._str
        if isinstance(text, bytes):
            text = text.decode("utf-8", errors="replace")
        offset = error._i
        line_start = text.rfind("\n", 0, offset) + 1
        return text.count("\n", 0, offset) + 1, offset - line_start + 1
    except (AttributeError, TypeError):
        return getattr(error, "lines", -1) + 1 or None, None


def _declared_prefixes(graph: rdflib.Graph) -> Dict[str, str]:
    return {
        prefix: str(namespace)
        for prefix, namespace in graph.namespaces()
        if not (prefix == "xml" and str(namespace) == XML_NS)
    }


def _to_ontology_graph(
    graph: rdflib.Graph, prefixes: Mapping[str, str], base: Optional[str]
) -> OntologyGraph:
    canonical = list(to_canonical_graph(graph))
    blank_ids = sorted(
        {str(term) for triple in canonical for term in triple if isinstance(term, rdflib.BNode)}
    )
    relabel = {blank_id: f"b{position}" for position, blank_id in enumerate(blank_ids)}
    try:
        triples = [
            Triple(
                _convert_term(subject, relabel),
                _convert_term(predicate, relabel),
                _convert_term(obj, relabel),
            )
            for subject, predicate, obj in canonical
        ]
    except InvalidIriError as error:
        raise OntologyParseError(f"Invalid IRI in ontology: {error.message}")
    return OntologyGraph(triples, prefixes, base)


def _convert_term(term, relabel: Dict[str, str]) -> RdfTerm:
    if isinstance(term, rdflib.BNode):
        return BlankNode(relabel[str(term)])
    if isinstance(term, rdflib.Literal):
        return Literal(
            lexical=str(term),
            datatype=Iri(str(term.datatype)) if term.datatype is not None else None,
            language=term.language,
        )
    return Iri(str(term))


def _escape_literal(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def _compact(iri: str, prefixes: Mapping[str, str]) -> str:
    best = None
    for prefix, namespace in prefixes.items():
        if not namespace or not iri.startswith(namespace):
            continue
        name = iri[len(namespace) :]
        if SAFE_LOCAL_NAME_REGEX.match(name) and (
            best is None or len(namespace) > len(prefixes[best])
        ):
            best = prefix
    if best is None:
        return f"<{iri}>"
    return f"{best}:{iri[len(prefixes[best]):]}"


def _render_term(term: RdfTerm, prefixes: Mapping[str, str]) -> str:
    if isinstance(term, Iri):
        return _compact(term.value, prefixes)
    if isinstance(term, BlankNode):
        return f"_:{term.id}"
    rendered = f'"{_escape_literal(term.lexical)}"'
    if term.language:
        return f"{rendered}@{term.language}"
    if term.datatype is not None:
        return f"{rendered}^^{_compact(term.datatype.value, prefixes)}"
    return rendered
