import random
from collections import defaultdict
from typing import Dict, List, Mapping, Optional, Set, Tuple

from ontomatch.application.services.edoal_serialization import serialize_alignment
from ontomatch.common.config.constants import DEFAULT_MAX_DEPTH, EDOAL_NS, XSD_NS
from ontomatch.common.custom_exceptions import ConfigurationError, UserError
from ontomatch.domain.alignment import Alignment, Correspondence, Relation
from ontomatch.domain.alignment_template import (
    MASK_PREFIX,
    AlignmentTemplate,
    ProductionRule,
    Side,
    SlotPosition,
    mask_name,
)
from ontomatch.domain.edoal_expression import (
    And,
    AttributeDomainRestriction,
    AttributeOccurenceRestriction,
    AttributeTypeRestriction,
    AttributeValueRestriction,
    ClassId,
    Compose,
    EdoalExpression,
    EdoalLiteral,
    ExpressionContext,
    InstanceId,
    Inverse,
    Not,
    Or,
    PropertyId,
    RelationId,
    children,
)

MASK = "MASK"
START_SYMBOL = "Cell"
LITERAL_SEPARATOR = "^^"

NONTERMINALS = [
    "Cell",
    "ClassExpr",
    "PropertyExpr",
    "RelationExpr",
    "Relation",
    "Comparator",
    "Datatype",
    "LiteralValue",
    "InstanceValue",
    "Cardinality",
]

# Transcribed from the EDOAL grammar, restricted to the supported constructs
BUILT_IN_RULES: List[Tuple[str, str, Tuple[str, ...]]] = [
    ("Cell", "class_cell", ("ClassExpr", "Relation", "ClassExpr")),
    ("Cell", "property_cell", ("PropertyExpr", "Relation", "PropertyExpr")),
    ("Cell", "relation_cell", ("RelationExpr", "Relation", "RelationExpr")),
    ("ClassExpr", "class_mask", (MASK,)),
    ("ClassExpr", "class_and", ("ClassExpr", "ClassExpr")),
    ("ClassExpr", "class_or", ("ClassExpr", "ClassExpr")),
    ("ClassExpr", "class_not", ("ClassExpr",)),
    ("ClassExpr", "domain_restriction", ("RelationExpr", "ClassExpr")),
    ("ClassExpr", "type_restriction", ("PropertyExpr", "Datatype")),
    ("ClassExpr", "value_restriction", ("PropertyExpr", "Comparator", "LiteralValue")),
    ("ClassExpr", "instance_restriction", ("RelationExpr", "Comparator", "InstanceValue")),
    ("ClassExpr", "occurence_restriction", ("RelationExpr", "Comparator", "Cardinality")),
    ("PropertyExpr", "property_mask", (MASK,)),
    ("PropertyExpr", "property_and", ("PropertyExpr", "PropertyExpr")),
    ("PropertyExpr", "property_or", ("PropertyExpr", "PropertyExpr")),
    ("PropertyExpr", "property_not", ("PropertyExpr",)),
    ("PropertyExpr", "property_compose", ("RelationExpr", "PropertyExpr")),
    ("RelationExpr", "relation_mask", (MASK,)),
    ("RelationExpr", "relation_and", ("RelationExpr", "RelationExpr")),
    ("RelationExpr", "relation_or", ("RelationExpr", "RelationExpr")),
    ("RelationExpr", "relation_not", ("RelationExpr",)),
    ("RelationExpr", "relation_compose", ("RelationExpr", "RelationExpr")),
    ("RelationExpr", "relation_inverse", ("RelationExpr",)),
    ("Relation", "equivalence", ("=",)),
    ("Relation", "subsumed_by", ("<",)),
    ("Relation", "subsumes", (">",)),
    ("Comparator", "equals", (EDOAL_NS + "equals",)),
    ("Comparator", "lower_than", (EDOAL_NS + "lower-than",)),
    ("Comparator", "greater_than", (EDOAL_NS + "greater-than",)),
    ("Datatype", "string", (XSD_NS + "string",)),
    ("Datatype", "integer", (XSD_NS + "integer",)),
    ("Datatype", "date", (XSD_NS + "date",)),
    ("Datatype", "boolean", (XSD_NS + "boolean",)),
    ("LiteralValue", "string_value", (f"accepted{LITERAL_SEPARATOR}{XSD_NS}string",)),
    ("LiteralValue", "integer_value", (f"2{LITERAL_SEPARATOR}{XSD_NS}integer",)),
    ("LiteralValue", "boolean_value", (f"true{LITERAL_SEPARATOR}{XSD_NS}boolean",)),
    ("LiteralValue", "date_value", (f"2020-01-01{LITERAL_SEPARATOR}{XSD_NS}date",)),
    ("InstanceValue", "instance_mask", (MASK,)),
    ("Cardinality", "none", ("0",)),
    ("Cardinality", "one", ("1",)),
    ("Cardinality", "two", ("2",)),
    ("Cardinality", "three", ("3",)),
]


def _weight_for(
    weights: Mapping[str, float], lhs: str, index: int, name: str
) -> float:
    return weights.get(f"{lhs}:{index}", weights.get(f"{lhs}:{name}", 1.0))


def load_grammar(weights: Optional[Mapping[str, float]] = None) -> List[ProductionRule]:
    weights = weights or {}
    positions: Dict[str, int] = defaultdict(int)
    rules = []
    for lhs, name, rhs in BUILT_IN_RULES:
        index = positions[lhs]
        positions[lhs] += 1
        rules.append(ProductionRule(lhs, name, rhs, _weight_for(weights, lhs, index, name)))

    known_keys = {f"{rule.lhs}:{rule.name}" for rule in rules}
    known_keys.update(
        f"{lhs}:{index}" for lhs, count in positions.items() for index in range(count)
    )
    unknown = sorted(set(weights) - known_keys)
    if unknown:
        raise ConfigurationError(f"Unknown grammar rules in rule_weights: {unknown}")
    unproductive = set(NONTERMINALS) - productive_nonterminals(rules)
    if unproductive:
        raise ConfigurationError(f"Nonterminals {sorted(unproductive)} never terminate")
    return rules


def is_terminal_rule(rule: ProductionRule) -> bool:
    return not any(symbol in NONTERMINALS for symbol in rule.rhs)


def productive_nonterminals(rules: List[ProductionRule]) -> Set[str]:
    """Fixpoint of nonterminals that derive a terminal string."""
    productive: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.lhs in productive:
                continue
            if all(symbol not in NONTERMINALS or symbol in productive for symbol in rule.rhs):
                productive.add(rule.lhs)
                changed = True
    return productive


class _Derivation:
    def __init__(self, rules: List[ProductionRule], seed: int, max_depth: int):
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.slots = 0
        self.fired: List[str] = []
        self.by_lhs: Dict[str, List[ProductionRule]] = defaultdict(list)
        for rule in rules:
            self.by_lhs[rule.lhs].append(rule)

    def choose(self, lhs: str, depth: Optional[int]) -> ProductionRule:
        eligible = self.by_lhs[lhs]
        if depth is not None and depth >= self.max_depth:
            eligible = [rule for rule in eligible if is_terminal_rule(rule)]
        rule = self.rng.choices(eligible, weights=[rule.weight for rule in eligible])[0]
        self.fired.append(f"{rule.lhs}:{rule.name}")
        return rule

    def next_mask(self) -> str:
        self.slots += 1
        return mask_name(self.slots)

    def terminal(self, lhs: str) -> str:
        return self.choose(lhs, None).rhs[0]

    def cell(self) -> Correspondence:
        rule = self.choose(START_SYMBOL, None)
        entity1 = self.expression(rule.rhs[0], 0)
        relation = Relation(self.terminal("Relation"))
        entity2 = self.expression(rule.rhs[2], 0)
        return Correspondence(entity1, entity2, relation, 1.0)

    def expression(self, lhs: str, depth: int) -> EdoalExpression:
        rule = self.choose(lhs, depth)
        below = depth + 1
        name = rule.name

        if name == "class_mask":
            return ClassId(self.next_mask())
        if name == "property_mask":
            return PropertyId(self.next_mask())
        if name == "relation_mask":
            return RelationId(self.next_mask())

        context = {
            "ClassExpr": ExpressionContext.CLASS,
            "PropertyExpr": ExpressionContext.PROPERTY,
            "RelationExpr": ExpressionContext.RELATION,
        }[lhs]
        if name.endswith("_and") or name.endswith("_or"):
            operands = tuple(self.expression(symbol, below) for symbol in rule.rhs)
            return (And if name.endswith("_and") else Or)(operands, context)
        if name.endswith("_not"):
            return Not(self.expression(rule.rhs[0], below), context)
        if name.endswith("_compose"):
            operands = tuple(self.expression(symbol, below) for symbol in rule.rhs)
            return Compose(operands, context)
        if name == "relation_inverse":
            return Inverse(self.expression(rule.rhs[0], below))
        if name == "domain_restriction":
            return AttributeDomainRestriction(
                self.expression(rule.rhs[0], below), self.expression(rule.rhs[1], below)
            )
        if name == "type_restriction":
            return AttributeTypeRestriction(
                self.expression(rule.rhs[0], below), self.terminal("Datatype")
            )
        if name == "value_restriction":
            attribute = self.expression(rule.rhs[0], below)
            comparator = self.terminal("Comparator")
            value, datatype = self.terminal("LiteralValue").split(LITERAL_SEPARATOR)
            return AttributeValueRestriction(
                attribute, comparator, EdoalLiteral(value, datatype)
            )
        if name == "instance_restriction":
            attribute = self.expression(rule.rhs[0], below)
            comparator = self.terminal("Comparator")
            self.choose("InstanceValue", None)
            return AttributeValueRestriction(
                attribute, comparator, InstanceId(self.next_mask())
            )
        if name == "occurence_restriction":
            attribute = self.expression(rule.rhs[0], below)
            comparator = self.terminal("Comparator")
            return AttributeOccurenceRestriction(
                attribute, comparator, int(self.terminal("Cardinality"))
            )
        raise ConfigurationError(f"No derivation for rule [{rule.lhs}:{name}]")


def derive_template(
    seed: int,
    max_depth: int = DEFAULT_MAX_DEPTH,
    cells: int = 1,
    rules: Optional[List[ProductionRule]] = None,
) -> AlignmentTemplate:
    if cells < 1:
        raise UserError("A template needs at least one cell")
    if max_depth < 0:
        raise UserError("max_depth must be >= 0")
    derivation = _Derivation(rules or load_grammar(), seed, max_depth)
    correspondences = tuple(derivation.cell() for _ in range(cells))
    return AlignmentTemplate(
        skeleton=Alignment(cells=correspondences),
        slot_count=derivation.slots,
        seed=seed,
        max_depth=max_depth,
        fired_rules=tuple(derivation.fired),
    )


def _slot_of(expression: EdoalExpression) -> Optional[int]:
    iri = getattr(expression, "iri", None)
    if iri is None or not iri.startswith(MASK_PREFIX):
        return None
    suffix = iri[len(MASK_PREFIX):]
    return int(suffix) if suffix.isdigit() else None


def _walk_slots(expression: EdoalExpression, path: Tuple[int, ...]):
    slot = _slot_of(expression)
    if slot is not None:
        yield slot, path
    for position, child in enumerate(children(expression)):
        yield from _walk_slots(child, path + (position,))


def slot_positions(template: AlignmentTemplate) -> List[SlotPosition]:
    positions = []
    for cell_index, cell in enumerate(template.skeleton.cells):
        for side, expression in ((Side.ENTITY1, cell.entity1), (Side.ENTITY2, cell.entity2)):
            for slot, path in _walk_slots(expression, ()):
                positions.append(SlotPosition(slot, cell_index, side, path))
    return sorted(positions, key=lambda position: position.slot)


def _substitute(expression: EdoalExpression, iris: Mapping[int, str]) -> EdoalExpression:
    slot = _slot_of(expression)
    if slot is not None:
        if slot not in iris:
            raise UserError(f"No IRI supplied for {mask_name(slot)}")
        return type(expression)(iris[slot])
    if isinstance(expression, (And, Or, Compose)):
        operands = tuple(_substitute(operand, iris) for operand in expression.operands)
        return type(expression)(operands, expression.context)
    if isinstance(expression, Not):
        return Not(_substitute(expression.operand, iris), expression.context)
    if isinstance(expression, Inverse):
        return Inverse(_substitute(expression.operand, iris))
    if isinstance(expression, AttributeDomainRestriction):
        return AttributeDomainRestriction(
            _substitute(expression.on_attribute, iris),
            _substitute(expression.class_expression, iris),
        )
    if isinstance(expression, AttributeTypeRestriction):
        return AttributeTypeRestriction(
            _substitute(expression.on_attribute, iris), expression.datatype
        )
    if isinstance(expression, AttributeValueRestriction):
        value = expression.value
        if isinstance(value, InstanceId):
            value = _substitute(value, iris)
        return AttributeValueRestriction(
            _substitute(expression.on_attribute, iris), expression.comparator, value
        )
    if isinstance(expression, AttributeOccurenceRestriction):
        return AttributeOccurenceRestriction(
            _substitute(expression.on_attribute, iris),
            expression.comparator,
            expression.cardinality,
        )
    return expression


def substitute_slots(
    template: AlignmentTemplate,
    iris: Mapping[int, str],
    onto1: str = "",
    onto2: str = "",
) -> Alignment:
    cells = [
        Correspondence(
            _substitute(cell.entity1, iris),
            _substitute(cell.entity2, iris),
            cell.relation,
            cell.measure,
        )
        for cell in template.skeleton.cells
    ]
    return Alignment(onto1=onto1, onto2=onto2, cells=tuple(cells))


def template_to_xml(template: AlignmentTemplate) -> str:
    return serialize_alignment(template.skeleton)
