import pytest

from ontomatch.application.services.module_extraction import (
    estimate_tokens,
    extract_module,
    module_file_name,
)
from ontomatch.application.services.ontology_store import load_ontology
from ontomatch.common.config.constants import (
    OWL_CLASS,
    OWL_NS,
    RDF_TYPE,
    RDFS_LABEL,
    RDFS_NS,
    RDFS_SUBCLASS_OF,
)
from ontomatch.common.custom_exceptions import AnchorNotFoundError, UserError
from ontomatch.domain.ontology_graph import OntologyGraph
from ontomatch.domain.ontology_module import ModuleOrigin
from ontomatch.domain.rdf_terms import BlankNode, Iri, Literal, Triple
from test.test_utils import SOURCE_NS, toy_path

E = "http://e.example.org/onto#"
RDFS_DOMAIN = RDFS_NS + "domain"


def _iri(name: str) -> Iri:
    return Iri(E + name)


def _declared(name: str):
    return [
        Triple(_iri(name), Iri(RDF_TYPE), Iri(OWL_CLASS)),
        Triple(_iri(name), Iri(RDFS_LABEL), Literal(name)),
    ]


def _chain(length: int) -> OntologyGraph:
    triples = []
    for index in range(length):
        triples.extend(_declared(f"C{index}"))
        if index:
            triples.append(
                Triple(_iri(f"C{index - 1}"), Iri(RDFS_SUBCLASS_OF), _iri(f"C{index}"))
            )
    return OntologyGraph(triples, {"e": E, "unused": "http://unused.example.org/"})


class TestEstimateTokens:
    @pytest.mark.parametrize(
        "text, expected",
        [("", 0), ("Paper accepted.", 3), ("e:Paper a owl:Class .", 8)],
    )
    def test_counts_words_and_punctuation(self, text, expected):
        assert estimate_tokens(text) == expected


class TestExtractModule:
    def test_superclass_chain_is_cut_at_depth(self):
        module = extract_module(_chain(8), [_iri("C0")], hops=0, superclass_depth=5)

        subjects = {triple.subject for triple in module.graph}
        assert _iri("C5") in subjects
        assert _iri("C6") not in subjects

    def test_keeps_labels_and_types_of_included_entities(self):
        module = extract_module(_chain(3), [_iri("C0")], hops=1, superclass_depth=0)

        assert Triple(_iri("C1"), Iri(RDFS_LABEL), Literal("C1")) in module.graph.triples
        assert Triple(_iri("C1"), Iri(RDF_TYPE), Iri(OWL_CLASS)) in module.graph.triples
        assert _iri("C2") not in module.graph.subjects()

    def test_only_used_prefixes_are_kept(self):
        module = extract_module(_chain(2), [_iri("C0")])

        assert dict(module.graph.prefixes) == {"e": E}

    def test_blank_neighbours_are_excluded(self):
        graph = OntologyGraph(
            _declared("Paper")
            + [
                Triple(_iri("Paper"), Iri(RDFS_SUBCLASS_OF), BlankNode("b0")),
                Triple(BlankNode("b0"), Iri(OWL_NS + "onProperty"), _iri("hasAuthor")),
            ]
        )

        module = extract_module(graph, [_iri("Paper")], hops=2)

        assert not any(isinstance(triple.object, BlankNode) for triple in module.graph)
        assert _iri("hasAuthor") not in module.graph.subjects()

    def test_untyped_vocabulary_neighbour_is_excluded(self):
        graph = OntologyGraph(
            _declared("Paper")
            + [Triple(_iri("Paper"), Iri(RDFS_SUBCLASS_OF), Iri(OWL_NS + "Thing"))]
        )

        module = extract_module(graph, [_iri("Paper")], hops=1)

        assert Iri(OWL_NS + "Thing") not in {triple.object for triple in module.graph}

    def test_untyped_domain_neighbour_is_included(self):
        graph = OntologyGraph(
            _declared("Paper") + [Triple(_iri("writes"), Iri(RDFS_DOMAIN), _iri("Paper"))]
        )

        module = extract_module(graph, [_iri("Paper")], hops=1)

        assert Triple(_iri("writes"), Iri(RDFS_DOMAIN), _iri("Paper")) in module.graph.triples

    def test_anchor_only_seen_as_object_gets_a_label(self):
        graph = OntologyGraph([Triple(_iri("writes"), Iri(RDFS_DOMAIN), _iri("Author"))])

        module = extract_module(graph, [_iri("Author")], hops=0, superclass_depth=0)

        assert Triple(_iri("Author"), Iri(RDFS_LABEL), Literal("Author")) in module.graph.triples
        assert module.anchors == (_iri("Author"),)

    def test_toy_module_of_paper(self):
        graph = load_ontology(toy_path("source.ttl"))

        module = extract_module(graph, [Iri(SOURCE_NS + "Paper")], origin=ModuleOrigin.TARGET)

        mentioned = module.graph.subjects()
        for name in ("Paper", "Document", "AcceptedPaper", "writes", "reviews", "hasTitle"):
            assert Iri(SOURCE_NS + name) in mentioned
        assert module.origin == ModuleOrigin.TARGET

    def test_absent_anchor(self):
        with pytest.raises(AnchorNotFoundError, match="Missing"):
            extract_module(_chain(2), [_iri("Missing")])

    def test_no_anchor(self):
        with pytest.raises(UserError, match="at least one anchor"):
            extract_module(_chain(2), [])


class TestModuleFileName:
    def test_uses_origin_anchor_and_index(self):
        module = extract_module(_chain(2), [_iri("C1")], origin=ModuleOrigin.SOURCE)

        assert module_file_name(module, 3) == "source_C1_3.ttl"
