from collections import Counter

import pytest

from ontomatch.application.services.alignment_validation import is_valid
from ontomatch.application.services.edoal_serialization import serialize_alignment
from ontomatch.application.services.grammar_service import (
    BUILT_IN_RULES,
    derive_template,
    load_grammar,
    productive_nonterminals,
    slot_positions,
    substitute_slots,
    template_to_xml,
)
from ontomatch.common.custom_exceptions import ConfigurationError, UserError
from ontomatch.domain.alignment_template import ProductionRule, Side
from ontomatch.domain.edoal_expression import depth_of, is_atomic


def _iris(template):
    return {slot: f"http://x.example.org/e_{slot}" for slot in range(1, template.slot_count + 1)}


class TestLoadGrammar:
    def test_built_in_rules_with_unit_weights(self):
        rules = load_grammar()

        assert len(rules) == len(BUILT_IN_RULES)
        assert {rule.weight for rule in rules} == {1.0}

    def test_weights_by_name_and_by_position(self):
        rules = load_grammar({"ClassExpr:class_and": 2.0, "Cell:1": 3.0})

        weights = {f"{rule.lhs}:{rule.name}": rule.weight for rule in rules}
        assert weights["ClassExpr:class_and"] == 2.0
        assert weights["Cell:property_cell"] == 3.0

    def test_unknown_rule_names_are_rejected(self):
        with pytest.raises(ConfigurationError, match="ClassExpr:class_xor"):
            load_grammar({"ClassExpr:class_xor": 1.0})

    def test_non_positive_weights_are_rejected(self):
        with pytest.raises(ValueError, match="positive weight"):
            load_grammar({"Cell:class_cell": 0.0})


class TestProductiveNonterminals:
    def test_built_in_grammar_terminates_everywhere(self):
        assert "Cell" in productive_nonterminals(load_grammar())

    def test_left_recursion_alone_never_terminates(self):
        rules = [
            ProductionRule("Cell", "loop", ("ClassExpr", "Relation", "ClassExpr")),
            ProductionRule("ClassExpr", "nested", ("ClassExpr",)),
            ProductionRule("Relation", "equivalence", ("=",)),
        ]

        assert productive_nonterminals(rules) == {"Relation"}


class TestDeriveTemplate:
    def test_is_reproducible_per_seed(self):
        assert derive_template(5, cells=3) == derive_template(5, cells=3)

    def test_seeds_give_different_templates(self):
        skeletons = {derive_template(seed).skeleton for seed in range(20)}

        assert len(skeletons) > 1

    def test_depth_zero_gives_simple_cells(self):
        for seed in range(30):
            template = derive_template(seed, max_depth=0)

            cell = template.skeleton.cells[0]
            assert is_atomic(cell.entity1) and is_atomic(cell.entity2)
            assert template.slot_count == 2

    def test_depth_is_bounded(self):
        for seed in range(200):
            template = derive_template(seed, max_depth=2, cells=2)

            for cell in template.skeleton.cells:
                assert depth_of(cell.entity1) <= 3
                assert depth_of(cell.entity2) <= 3

    def test_slots_are_numbered_once(self):
        for seed in range(100):
            template = derive_template(seed, cells=2)

            slots = [position.slot for position in slot_positions(template)]
            assert slots == list(range(1, template.slot_count + 1))

    def test_heavy_weight_dominates(self):
        rules = load_grammar({"Cell:0": 1e9})

        for seed in range(50):
            assert derive_template(seed, rules=rules).fired_rules[0] == "Cell:class_cell"

    def test_every_rule_fires_somewhere(self):
        fired = Counter()
        for seed in range(1000):
            fired.update(derive_template(seed, cells=2).fired_rules)

        assert {f"{lhs}:{name}" for lhs, name, _ in BUILT_IN_RULES} <= set(fired)

    def test_substituted_templates_are_valid_alignments(self):
        for seed in range(1000):
            template = derive_template(seed, cells=1 + seed % 3)

            alignment = substitute_slots(
                template, _iris(template), "http://x.example.org/s", "http://x.example.org/t"
            )

            assert is_valid(serialize_alignment(alignment)), f"seed {seed}"

    @pytest.mark.parametrize("cells, max_depth", [(0, 3), (1, -1)])
    def test_rejects_bad_arguments(self, cells, max_depth):
        with pytest.raises(UserError):
            derive_template(1, max_depth=max_depth, cells=cells)


class TestSlots:
    def setup_method(self):
        self.template = derive_template(0, max_depth=0)

    def test_positions_record_side_and_cell(self):
        positions = slot_positions(self.template)

        assert [(position.cell_index, position.side) for position in positions] == [
            (0, Side.ENTITY1),
            (0, Side.ENTITY2),
        ]

    def test_substitution_keeps_expression_types(self):
        alignment = substitute_slots(self.template, _iris(self.template))

        cell = alignment.cells[0]
        skeleton_cell = self.template.skeleton.cells[0]
        assert type(cell.entity1) is type(skeleton_cell.entity1)
        assert cell.entity1.iri.startswith("http://x.example.org/e_")

    def test_missing_iri(self):
        with pytest.raises(UserError, match="No IRI supplied for MASK_2"):
            substitute_slots(self.template, {1: "http://x.example.org/e_1"})

    def test_skeleton_xml_shows_placeholders(self):
        xml = template_to_xml(self.template)

        assert 'rdf:about="MASK_1"' in xml
        assert 'rdf:about="MASK_2"' in xml
