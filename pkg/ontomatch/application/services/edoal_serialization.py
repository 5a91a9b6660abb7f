from typing import Dict, List, Optional, Tuple

from lxml import etree

from ontomatch.common.config.constants import (
    ALIGN_NS,
    DEFAULT_ALIGNMENT_LEVEL,
    DEFAULT_ALIGNMENT_TYPE,
    EDOAL_NS,
    EDOAL_NS_VARIANTS,
    KNOWN_ALIGNMENT_PREFIXES,
    RDF_NS,
    XSD_NS,
)
from ontomatch.common.custom_exceptions import AlignmentParseError
from ontomatch.domain.alignment import Alignment, Correspondence, Relation
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
)

RDF = f"{{{RDF_NS}}}"
ALIGN = f"{{{ALIGN_NS}}}"
EDOAL = f"{{{EDOAL_NS}}}"
RDF_ABOUT = RDF + "about"
RDF_RESOURCE = RDF + "resource"
RDF_DATATYPE = RDF + "datatype"
RDF_PARSE_TYPE = RDF + "parseType"

ID_TYPES = {
    "Class": (ClassId, ExpressionContext.CLASS),
    "Property": (PropertyId, ExpressionContext.PROPERTY),
    "Relation": (RelationId, ExpressionContext.RELATION),
    "Instance": (InstanceId, ExpressionContext.INSTANCE),
}
CONTEXT_ELEMENTS = {
    ExpressionContext.CLASS: "Class",
    ExpressionContext.PROPERTY: "Property",
    ExpressionContext.RELATION: "Relation",
}


def _xml_parser() -> etree.XMLParser:
    return etree.XMLParser(resolve_entities=False, no_network=True, remove_comments=True)


# Serialisation ~~~~~~~~~~~~~~~~~~~~~~~~~~~~


def serialize_alignment(alignment: Alignment) -> str:
    nsmap = {
        prefix: namespace
        for prefix, namespace in alignment.prefixes
        if prefix and prefix not in KNOWN_ALIGNMENT_PREFIXES
    }
    nsmap.update(KNOWN_ALIGNMENT_PREFIXES)

    root = etree.Element(RDF + "RDF", nsmap=nsmap)
    document = etree.SubElement(root, ALIGN + "Alignment")
    etree.SubElement(document, ALIGN + "xml").text = "yes"
    etree.SubElement(document, ALIGN + "level").text = alignment.level
    etree.SubElement(document, ALIGN + "type").text = DEFAULT_ALIGNMENT_TYPE
    for tag, iri in (("onto1", alignment.onto1), ("onto2", alignment.onto2)):
        holder = etree.SubElement(document, ALIGN + tag)
        etree.SubElement(holder, ALIGN + "Ontology", {RDF_ABOUT: iri})

    for cell in alignment.cells:
        cell_element = etree.SubElement(
            etree.SubElement(document, ALIGN + "map"), ALIGN + "Cell"
        )
        _write_expression(etree.SubElement(cell_element, ALIGN + "entity1"), cell.entity1)
        _write_expression(etree.SubElement(cell_element, ALIGN + "entity2"), cell.entity2)
        etree.SubElement(cell_element, ALIGN + "relation").text = cell.relation.value
        measure = etree.SubElement(
            cell_element, ALIGN + "measure", {RDF_DATATYPE: XSD_NS + "float"}
        )
        measure.text = repr(float(cell.measure))

    return etree.tostring(
        root, pretty_print=True, xml_declaration=True, encoding="utf-8"
    ).decode("utf-8")


def _write_expression(parent: etree._Element, expression: EdoalExpression):
    for name, (id_type, _) in ID_TYPES.items():
        if type(expression) is id_type:
            etree.SubElement(parent, EDOAL + name, {RDF_ABOUT: expression.iri})
            return

    if isinstance(expression, (And, Or, Compose)):
        wrapper = etree.SubElement(parent, EDOAL + CONTEXT_ELEMENTS[expression.context])
        operator = type(expression).__name__.lower()
        collection = etree.SubElement(
            wrapper, EDOAL + operator, {RDF_PARSE_TYPE: "Collection"}
        )
        for operand in expression.operands:
            _write_expression(collection, operand)
    elif isinstance(expression, Not):
        wrapper = etree.SubElement(parent, EDOAL + CONTEXT_ELEMENTS[expression.context])
        _write_expression(etree.SubElement(wrapper, EDOAL + "not"), expression.operand)
    elif isinstance(expression, Inverse):
        wrapper = etree.SubElement(parent, EDOAL + "Relation")
        _write_expression(etree.SubElement(wrapper, EDOAL + "inverse"), expression.operand)
    elif isinstance(expression, AttributeDomainRestriction):
        element = etree.SubElement(parent, EDOAL + "AttributeDomainRestriction")
        _write_attribute(element, expression.on_attribute)
        _write_expression(
            etree.SubElement(element, EDOAL + "class"), expression.class_expression
        )
    elif isinstance(expression, AttributeTypeRestriction):
        element = etree.SubElement(parent, EDOAL + "AttributeTypeRestriction")
        _write_attribute(element, expression.on_attribute)
        etree.SubElement(
            etree.SubElement(element, EDOAL + "datatype"),
            EDOAL + "Datatype",
            {RDF_ABOUT: expression.datatype},
        )
    elif isinstance(expression, AttributeValueRestriction):
        element = etree.SubElement(parent, EDOAL + "AttributeValueRestriction")
        _write_attribute(element, expression.on_attribute)
        etree.SubElement(
            element, EDOAL + "comparator", {RDF_RESOURCE: expression.comparator}
        )
        value = etree.SubElement(element, EDOAL + "value")
        if isinstance(expression.value, InstanceId):
            _write_expression(value, expression.value)
        else:
            _write_literal(value, expression.value)
    elif isinstance(expression, AttributeOccurenceRestriction):
        element = etree.SubElement(parent, EDOAL + "AttributeOccurenceRestriction")
        _write_attribute(element, expression.on_attribute)
        etree.SubElement(
            element, EDOAL + "comparator", {RDF_RESOURCE: expression.comparator}
        )
        _write_literal(
            etree.SubElement(element, EDOAL + "value"),
            EdoalLiteral(str(expression.cardinality), XSD_NS + "integer"),
        )
    else:
        raise ValueError(f"Cannot serialise {expression!r}")


def _write_attribute(element: etree._Element, attribute: EdoalExpression):
    _write_expression(etree.SubElement(element, EDOAL + "onAttribute"), attribute)


def _write_literal(parent: etree._Element, literal: EdoalLiteral):
    attributes = {EDOAL + "string": literal.value}
    if literal.datatype:
        attributes[EDOAL + "type"] = literal.datatype
    etree.SubElement(parent, EDOAL + "Literal", attributes)


# Parsing ~~~~~~~~~~~~~~~~~~~~~~~~~~~~


def parse_xml_document(xml: str) -> etree._Element:
    try:
        return etree.fromstring(xml.encode("utf-8"), parser=_xml_parser())
    except etree.XMLSyntaxError as error:
        line, column = error.position if error.position else (None, None)
        raise AlignmentParseError(
            f"Malformed XML at line {line}, column {column}: {error.msg}"
        )


def find_alignment_element(root: etree._Element) -> Optional[etree._Element]:
    if _qualified(root) == ("align", "Alignment"):
        return root
    for element in root.iter():
        if _qualified(element) == ("align", "Alignment"):
            return element
    return None


def parse_alignment(xml: str) -> Alignment:
    root = parse_xml_document(xml)
    document = find_alignment_element(root)
    if document is None:
        raise AlignmentParseError("The document has no Alignment element")

    level = ""
    ontologies = {"onto1": None, "onto2": None}
    cells = []
    for child in _element_children(document):
        namespace, name = _qualified(child)
        if namespace != "align":
            continue
        if name == "level":
            level = (child.text or "").strip()
        elif name in ontologies:
            ontologies[name] = _ontology_iri(child)
        elif name == "map":
            for cell in _element_children(child):
                if _qualified(cell) != ("align", "Cell"):
                    raise AlignmentParseError(
                        f"Unknown element [{cell.tag}] inside map"
                    )
                cells.append(_parse_cell(cell))

    for name, iri in ontologies.items():
        if iri is None:
            raise AlignmentParseError(f"The Alignment element has no {name}")

    try:
        return Alignment(
            onto1=ontologies["onto1"],
            onto2=ontologies["onto2"],
            cells=tuple(cells),
            level=level or DEFAULT_ALIGNMENT_LEVEL,
            prefixes=tuple(_extra_prefixes(root, document).items()),
        )
    except ValueError as error:
        raise AlignmentParseError(str(error))


def _ontology_iri(element: etree._Element) -> str:
    for child in _element_children(element):
        about = child.get(RDF_ABOUT)
        if about is not None:
            return about.strip()
    return (element.text or "").strip()


def _extra_prefixes(*elements: etree._Element) -> Dict[str, str]:
    known = set(KNOWN_ALIGNMENT_PREFIXES.values()) | set(EDOAL_NS_VARIANTS)
    prefixes = {}
    for element in elements:
        for prefix, namespace in element.nsmap.items():
            if prefix and prefix not in KNOWN_ALIGNMENT_PREFIXES and namespace not in known:
                prefixes[prefix] = namespace
    return prefixes


def _parse_cell(cell: etree._Element) -> Correspondence:
    parts = {}
    for child in _element_children(cell):
        namespace, name = _qualified(child)
        if namespace == "align":
            parts[name] = child

    for required in ("entity1", "entity2"):
        if required not in parts:
            raise AlignmentParseError(f"A Cell is missing {required}")

    relation_text = (parts["relation"].text or "").strip() if "relation" in parts else "="
    if relation_text not in Relation.values():
        raise AlignmentParseError(f"Malformed relation symbol [{relation_text}]")

    measure = 1.0
    if "measure" in parts:
        try:
            measure = float((parts["measure"].text or "").strip())
        except ValueError:
            raise AlignmentParseError(
                f"Measure [{parts['measure'].text}] is not a number"
            )

    try:
        return Correspondence(
            entity1=_parse_entity(parts["entity1"]),
            entity2=_parse_entity(parts["entity2"]),
            relation=Relation(relation_text),
            measure=measure,
        )
    except ValueError as error:
        raise AlignmentParseError(str(error))


def _parse_entity(holder: etree._Element) -> EdoalExpression:
    expressions = _element_children(holder)
    if len(expressions) != 1:
        raise AlignmentParseError(
            f"[{etree.QName(holder).localname}] must hold exactly one expression"
        )
    return _parse_expression(expressions[0])


def _parse_expression(element: etree._Element) -> EdoalExpression:
    namespace, name = _qualified(element)
    if namespace != "edoal":
        raise AlignmentParseError(f"Unknown element [{element.tag}]")
    try:
        if name in ID_TYPES:
            return _parse_constructed(element, name)
        if name == "AttributeDomainRestriction":
            return AttributeDomainRestriction(
                _parse_slot(element, "onAttribute"), _parse_slot(element, "class")
            )
        if name == "AttributeTypeRestriction":
            return AttributeTypeRestriction(
                _parse_slot(element, "onAttribute"), _parse_datatype(element)
            )
        if name == "AttributeValueRestriction":
            return AttributeValueRestriction(
                _parse_slot(element, "onAttribute"),
                _parse_comparator(element),
                _parse_value(element),
            )
        if name == "AttributeOccurenceRestriction":
            value = _parse_value(element)
            if isinstance(value, InstanceId):
                raise AlignmentParseError("An occurrence restriction needs a number")
            return AttributeOccurenceRestriction(
                _parse_slot(element, "onAttribute"),
                _parse_comparator(element),
                int(value.value),
            )
    except ValueError as error:
        raise AlignmentParseError(f"Invalid [{name}] expression: {error}")
    raise AlignmentParseError(f"Unknown element [{element.tag}]")


def _parse_constructed(element: etree._Element, name: str) -> EdoalExpression:
    id_type, context = ID_TYPES[name]
    operators = _element_children(element)
    about = element.get(RDF_ABOUT)
    if about is not None:
        if not about.strip():
            raise AlignmentParseError(f"[{name}] has an empty rdf:about")
        return id_type(about.strip())
    if len(operators) != 1:
        raise AlignmentParseError(f"[{name}] needs an rdf:about or one constructor")

    operator = operators[0]
    operator_namespace, operator_name = _qualified(operator)
    operands = tuple(_parse_expression(child) for child in _element_children(operator))
    if operator_namespace != "edoal" or context == ExpressionContext.INSTANCE:
        raise AlignmentParseError(f"Unknown element [{operator.tag}]")
    if operator_name == "and":
        return And(operands, context)
    if operator_name == "or":
        return Or(operands, context)
    if operator_name == "not" and len(operands) == 1:
        return Not(operands[0], context)
    if operator_name == "compose" and context != ExpressionContext.CLASS:
        return Compose(operands, context)
    if (
        operator_name == "inverse"
        and context == ExpressionContext.RELATION
        and len(operands) == 1
    ):
        return Inverse(operands[0])
    raise AlignmentParseError(f"Unknown or malformed constructor [{operator.tag}]")


def _edoal_children(element: etree._Element, name: str) -> List[etree._Element]:
    return [
        child for child in _element_children(element) if _qualified(child) == ("edoal", name)
    ]


def _single_child(element: etree._Element, name: str) -> etree._Element:
    matches = _edoal_children(element, name)
    if len(matches) != 1:
        raise AlignmentParseError(
            f"[{etree.QName(element).localname}] needs exactly one [{name}]"
        )
    return matches[0]


def _parse_slot(element: etree._Element, name: str) -> EdoalExpression:
    return _parse_entity(_single_child(element, name))


def _parse_comparator(element: etree._Element) -> str:
    comparator = _single_child(element, "comparator")
    iri = comparator.get(RDF_RESOURCE) or (comparator.text or "").strip()
    if not iri:
        raise AlignmentParseError("A comparator needs an rdf:resource")
    return iri


def _parse_datatype(element: etree._Element) -> str:
    holder = _single_child(element, "datatype")
    for child in _element_children(holder):
        if child.get(RDF_ABOUT):
            return child.get(RDF_ABOUT)
    datatype = holder.get(RDF_RESOURCE) or (holder.text or "").strip()
    if not datatype:
        raise AlignmentParseError("A type restriction needs a datatype")
    return datatype


def _parse_value(element: etree._Element):
    holder = _single_child(element, "value")
    contents = _element_children(holder)
    if not contents:
        return EdoalLiteral((holder.text or "").strip())
    if len(contents) != 1:
        raise AlignmentParseError("A value holds exactly one Literal or Instance")
    value = contents[0]
    namespace, name = _qualified(value)
    if (namespace, name) == ("edoal", "Instance"):
        return _parse_expression(value)
    if (namespace, name) != ("edoal", "Literal"):
        raise AlignmentParseError(f"Unknown element [{value.tag}]")
    lexical, datatype = _literal_attributes(value)
    if lexical is None:
        raise AlignmentParseError("A Literal needs an edoal:string")
    return EdoalLiteral(lexical, datatype)


def _literal_attributes(element: etree._Element) -> Tuple[Optional[str], Optional[str]]:
    lexical, datatype = None, None
    for key, value in element.attrib.items():
        qualified = etree.QName(key)
        if qualified.namespace not in EDOAL_NS_VARIANTS:
            continue
        if qualified.localname == "string":
            lexical = value
        elif qualified.localname == "type":
            datatype = value
    return lexical, datatype


def _element_children(element: etree._Element) -> List[etree._Element]:
    return [child for child in element if isinstance(child.tag, str)]


def _qualified(element: etree._Element) -> Tuple[str, str]:
    if not isinstance(element.tag, str):
        return "", ""
    qualified = etree.QName(element)
    if qualified.namespace in EDOAL_NS_VARIANTS:
        return "edoal", qualified.localname
    if qualified.namespace == ALIGN_NS:
        return "align", qualified.localname
    if qualified.namespace == RDF_NS:
        return "rdf", qualified.localname
    return qualified.namespace or "", qualified.localname
