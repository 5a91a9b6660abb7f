import pytest

from ontomatch.domain.alignment import Alignment, Correspondence, Relation
from ontomatch.domain.edoal_expression import And, ClassId

PAPER = ClassId("http://s/Paper")
ARTICLE = ClassId("http://t/Article")
AUTHOR = ClassId("http://s/Author")
WRITER = ClassId("http://t/Writer")


class TestCorrespondence:
    @pytest.mark.parametrize("measure", [-0.1, 1.5])
    def test_measure_must_lie_in_unit_interval(self, measure):
        with pytest.raises(ValueError, match="outside"):
            Correspondence(PAPER, ARTICLE, Relation.EQUIVALENCE, measure)

    def test_normalized_key_ignores_operand_order_and_measure(self):
        first = Correspondence(PAPER, And((ARTICLE, WRITER)), measure=0.4)
        second = Correspondence(PAPER, And((WRITER, ARTICLE)), measure=0.9)

        assert first.normalized_key() == second.normalized_key()

    def test_relation_is_part_of_the_key(self):
        equivalent = Correspondence(PAPER, ARTICLE, Relation.EQUIVALENCE)
        subsumed = Correspondence(PAPER, ARTICLE, Relation.SUBSUMED_BY)

        assert equivalent.normalized_key() != subsumed.normalized_key()


class TestAlignment:
    def test_cells_are_kept_in_canonical_order(self):
        first = Correspondence(PAPER, ARTICLE)
        second = Correspondence(AUTHOR, WRITER)

        forwards = Alignment("http://s", "http://t", (first, second))
        backwards = Alignment("http://s", "http://t", (second, first))

        assert forwards == backwards
        assert forwards.cells[0] == second

    def test_prefixes_take_no_part_in_equality(self):
        plain = Alignment("http://s", "http://t")
        prefixed = Alignment("http://s", "http://t", prefixes=(("ex", "http://ex/"),))

        assert plain == prefixed
        assert prefixed.prefix_map == {"ex": "http://ex/"}

    def test_ontologies_must_differ(self):
        with pytest.raises(ValueError, match="onto1 and onto2 are both"):
            Alignment("http://s", "http://s")

    def test_empty_placeholders_are_allowed(self):
        assert Alignment().is_empty()

    def test_with_ontologies_keeps_cells(self):
        alignment = Alignment(cells=(Correspondence(PAPER, ARTICLE),))

        updated = alignment.with_ontologies("http://s", "http://t")

        assert updated.onto1 == "http://s"
        assert updated.cells == alignment.cells

    def test_entity_iris(self):
        alignment = Alignment(cells=(Correspondence(PAPER, And((ARTICLE, WRITER))),))

        assert alignment.entity_iris() == ["http://s/Paper", "http://t/Article", "http://t/Writer"]
