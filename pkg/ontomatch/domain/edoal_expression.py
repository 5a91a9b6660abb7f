from dataclasses import dataclass
from typing import Optional, Set, Tuple, Union

from ontomatch.common.utilities import BaseEnum


class ExpressionContext(BaseEnum):
    CLASS = "class"
    PROPERTY = "property"
    RELATION = "relation"
    INSTANCE = "instance"


@dataclass(frozen=True)
class ClassId:
    iri: str


@dataclass(frozen=True)
class PropertyId:
    iri: str


@dataclass(frozen=True)
class RelationId:
    iri: str


@dataclass(frozen=True)
class InstanceId:
    iri: str


@dataclass(frozen=True)
class EdoalLiteral:
    value: str
    datatype: Optional[str] = None


@dataclass(frozen=True)
class And:
    operands: Tuple["EdoalExpression", ...]
    context: ExpressionContext = ExpressionContext.CLASS

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("and needs at least two operands")


@dataclass(frozen=True)
class Or:
    operands: Tuple["EdoalExpression", ...]
    context: ExpressionContext = ExpressionContext.CLASS

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("or needs at least two operands")


@dataclass(frozen=True)
class Not:
    operand: "EdoalExpression"
    context: ExpressionContext = ExpressionContext.CLASS


@dataclass(frozen=True)
class Compose:
    operands: Tuple["EdoalExpression", ...]
    context: ExpressionContext = ExpressionContext.PROPERTY

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("compose needs at least two operands")


@dataclass(frozen=True)
class Inverse:
    operand: "EdoalExpression"


@dataclass(frozen=True)
class AttributeDomainRestriction:
    on_attribute: "EdoalExpression"
    class_expression: "EdoalExpression"


@dataclass(frozen=True)
class AttributeTypeRestriction:
    on_attribute: "EdoalExpression"
    datatype: str


@dataclass(frozen=True)
class AttributeValueRestriction:
    on_attribute: "EdoalExpression"
    comparator: str
    value: Union[EdoalLiteral, InstanceId]


@dataclass(frozen=True)
class AttributeOccurenceRestriction:
    on_attribute: "EdoalExpression"
    comparator: str
    cardinality: int

    def __post_init__(self):
        if self.cardinality < 0:
            raise ValueError("cardinality must be non-negative")


EntityId = Union[ClassId, PropertyId, RelationId, InstanceId]
Restriction = Union[
    AttributeDomainRestriction,
    AttributeTypeRestriction,
    AttributeValueRestriction,
    AttributeOccurenceRestriction,
]
EdoalExpression = Union[EntityId, And, Or, Not, Compose, Inverse, Restriction]

ENTITY_ID_TYPES = (ClassId, PropertyId, RelationId, InstanceId)
RESTRICTION_TYPES = (
    AttributeDomainRestriction,
    AttributeTypeRestriction,
    AttributeValueRestriction,
    AttributeOccurenceRestriction,
)


def is_atomic(expression: EdoalExpression) -> bool:
    return isinstance(expression, ENTITY_ID_TYPES)


def context_of(expression: EdoalExpression) -> ExpressionContext:
    if isinstance(expression, (ClassId,) + RESTRICTION_TYPES):
        return ExpressionContext.CLASS
    if isinstance(expression, PropertyId):
        return ExpressionContext.PROPERTY
    if isinstance(expression, (RelationId, Inverse)):
        return ExpressionContext.RELATION
    if isinstance(expression, InstanceId):
        return ExpressionContext.INSTANCE
    return expression.context


def children(expression: EdoalExpression) -> Tuple[EdoalExpression, ...]:
    """Sub-expressions in document order; literal values are not children."""
    if isinstance(expression, (And, Or, Compose)):
        return tuple(expression.operands)
    if isinstance(expression, (Not, Inverse)):
        return (expression.operand,)
    if isinstance(expression, AttributeDomainRestriction):
        return expression.on_attribute, expression.class_expression
    if isinstance(expression, AttributeValueRestriction):
        if isinstance(expression.value, InstanceId):
            return expression.on_attribute, expression.value
        return (expression.on_attribute,)
    if isinstance(expression, (AttributeTypeRestriction, AttributeOccurenceRestriction)):
        return (expression.on_attribute,)
    return ()


def atoms(expression: EdoalExpression) -> Set[str]:
    if is_atomic(expression):
        return {expression.iri}
    found = set()
    for child in children(expression):
        found.update(atoms(child))
    return found


def depth_of(expression: EdoalExpression) -> int:
    nested = children(expression)
    if not nested:
        return 1
    return 1 + max(depth_of(child) for child in nested)


def _literal_text(literal: EdoalLiteral) -> str:
    if literal.datatype:
        return f'"{literal.value}"^^<{literal.datatype}>'
    return f'"{literal.value}"'


def canonical_text(expression: EdoalExpression) -> str:
    """
    Total textual form of an expression.

    Two expressions are structurally equal iff their canonical texts are equal,
    which is what sorting and deduplication rely on.
    """
    if isinstance(expression, ClassId):
        return f"Class(<{expression.iri}>)"
    if isinstance(expression, PropertyId):
        return f"Property(<{expression.iri}>)"
    if isinstance(expression, RelationId):
        return f"Relation(<{expression.iri}>)"
    if isinstance(expression, InstanceId):
        return f"Instance(<{expression.iri}>)"
    if isinstance(expression, (And, Or, Compose)):
        name = type(expression).__name__
        inner = ",".join(canonical_text(child) for child in expression.operands)
        return f"{name}[{expression.context.value}]({inner})"
    if isinstance(expression, Not):
        return f"Not[{expression.context.value}]({canonical_text(expression.operand)})"
    if isinstance(expression, Inverse):
        return f"Inverse({canonical_text(expression.operand)})"
    if isinstance(expression, AttributeDomainRestriction):
        return (
            f"DomainRestriction({canonical_text(expression.on_attribute)},"
            f"{canonical_text(expression.class_expression)})"
        )
    if isinstance(expression, AttributeTypeRestriction):
        return (
            f"TypeRestriction({canonical_text(expression.on_attribute)},"
            f"<{expression.datatype}>)"
        )
    if isinstance(expression, AttributeValueRestriction):
        value = (
            canonical_text(expression.value)
            if isinstance(expression.value, InstanceId)
            else _literal_text(expression.value)
        )
        return (
            f"ValueRestriction({canonical_text(expression.on_attribute)},"
            f"<{expression.comparator}>,{value})"
        )
    if isinstance(expression, AttributeOccurenceRestriction):
        return (
            f"OccurenceRestriction({canonical_text(expression.on_attribute)},"
            f"<{expression.comparator}>,{expression.cardinality})"
        )
    raise ValueError(f"Unsupported expression {expression!r}")


def _normalized_operands(operands) -> Tuple[EdoalExpression, ...]:
    unique = {}
    for operand in operands:
        normalized = normalize(operand)
        unique.setdefault(canonical_text(normalized), normalized)
    return tuple(unique[key] for key in sorted(unique))


def normalize(expression: EdoalExpression) -> EdoalExpression:
    if isinstance(expression, (And, Or)):
        operands = _normalized_operands(expression.operands)
        if len(operands) == 1:
            return operands[0]
        return type(expression)(operands, expression.context)
    if isinstance(expression, Not):
        inner = normalize(expression.operand)
        if isinstance(inner, Not):
            return inner.operand
        return Not(inner, expression.context)
    if isinstance(expression, Inverse):
        inner = normalize(expression.operand)
        if isinstance(inner, Inverse):
            return inner.operand
        return Inverse(inner)
    if isinstance(expression, Compose):
        return Compose(
            tuple(normalize(operand) for operand in expression.operands),
            expression.context,
        )
    if isinstance(expression, AttributeDomainRestriction):
        return AttributeDomainRestriction(
            normalize(expression.on_attribute), normalize(expression.class_expression)
        )
    if isinstance(expression, AttributeTypeRestriction):
        return AttributeTypeRestriction(
            normalize(expression.on_attribute), expression.datatype
        )
    if isinstance(expression, AttributeValueRestriction):
        return AttributeValueRestriction(
            normalize(expression.on_attribute), expression.comparator, expression.value
        )
    if isinstance(expression, AttributeOccurenceRestriction):
        return AttributeOccurenceRestriction(
            normalize(expression.on_attribute),
            expression.comparator,
            expression.cardinality,
        )
    return expression
