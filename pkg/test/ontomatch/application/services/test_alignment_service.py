import pytest

from ontomatch.application.services.alignment_service import (
    classify_cell,
    merge,
    normalize_alignment,
    normalize_cell,
)
from ontomatch.common.custom_exceptions import ConflictingOntologiesError
from ontomatch.domain.alignment import Alignment, CellKind, Correspondence, Relation
from ontomatch.domain.edoal_expression import And, ClassId, Not, RelationId
from test.test_utils import (
    SOURCE_NS,
    SOURCE_ONTOLOGY,
    TARGET_NS,
    TARGET_ONTOLOGY,
    accepted_paper_cell,
    sample_alignment,
)

PAPER = ClassId(SOURCE_NS + "Paper")
ARTICLE = ClassId(TARGET_NS + "Article")
WRITER = ClassId(TARGET_NS + "Writer")


def _partial(*cells, onto1=SOURCE_ONTOLOGY, onto2=TARGET_ONTOLOGY) -> Alignment:
    return Alignment(onto1, onto2, tuple(cells))


class TestNormalize:
    def test_collapses_duplicate_operands_and_double_negation(self):
        cell = Correspondence(And((PAPER, PAPER)), Not(Not(ARTICLE)))

        assert normalize_cell(cell) == Correspondence(PAPER, ARTICLE)

    def test_alignment_drops_cells_equal_after_normalisation(self):
        alignment = _partial(
            Correspondence(PAPER, And((ARTICLE, WRITER)), measure=0.4),
            Correspondence(PAPER, And((WRITER, ARTICLE)), measure=0.9),
        )

        normalized = normalize_alignment(alignment)

        assert len(normalized.cells) == 1
        assert normalized.cells[0].measure == 0.9


class TestMerge:
    def test_union_keeps_the_highest_measure(self):
        merged = merge(
            [
                _partial(Correspondence(PAPER, ARTICLE, measure=0.3)),
                _partial(
                    Correspondence(PAPER, ARTICLE, measure=0.7),
                    Correspondence(ClassId(SOURCE_NS + "Author"), WRITER),
                ),
            ]
        )

        assert len(merged.cells) == 2
        assert Correspondence(PAPER, ARTICLE, measure=0.7) in merged.cells

    def test_different_relations_are_distinct_cells(self):
        merged = merge(
            [
                _partial(Correspondence(PAPER, ARTICLE)),
                _partial(Correspondence(PAPER, ARTICLE, Relation.SUBSUMED_BY)),
            ]
        )

        assert len(merged.cells) == 2

    def test_is_order_independent(self):
        first = _partial(Correspondence(PAPER, ARTICLE, measure=0.5))
        second = _partial(accepted_paper_cell(), Correspondence(PAPER, ARTICLE, measure=0.5))

        assert merge([first, second]) == merge([second, first])

    def test_placeholder_ontologies_merge_with_any_identity(self):
        merged = merge([_partial(onto1="", onto2=""), sample_alignment()])

        assert (merged.onto1, merged.onto2) == (SOURCE_ONTOLOGY, TARGET_ONTOLOGY)

    def test_conflicting_ontologies(self):
        with pytest.raises(ConflictingOntologiesError, match="onto2"):
            merge([sample_alignment(), _partial(onto2="http://other.example.org/onto")])

    def test_merging_nothing(self):
        merged = merge([])

        assert merged.cells == ()
        assert (merged.onto1, merged.onto2) == ("", "")

    def test_keeps_prefixes(self):
        partial = Alignment(SOURCE_ONTOLOGY, TARGET_ONTOLOGY, prefixes=(("conf", SOURCE_NS),))

        assert merge([partial]).prefix_map == {"conf": SOURCE_NS}


class TestClassifyCell:
    @pytest.mark.parametrize(
        "cell, kind",
        [
            (Correspondence(PAPER, ARTICLE), CellKind.SIMPLE),
            (
                Correspondence(
                    RelationId(SOURCE_NS + "writes"), RelationId(TARGET_NS + "authorOf")
                ),
                CellKind.SIMPLE,
            ),
            (accepted_paper_cell(), CellKind.COMPLEX),
            (Correspondence(Not(PAPER), ARTICLE), CellKind.COMPLEX),
        ],
    )
    def test_simple_cells_relate_two_identifiers(self, cell, kind):
        assert classify_cell(cell) == kind
