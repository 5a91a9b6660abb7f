import re
from typing import List, Optional

from ontomatch.application.services.edoal_serialization import (
    RDF_ABOUT,
    find_alignment_element,
    parse_alignment,
    parse_xml_document,
)
from ontomatch.common.config.constants import EOS_MARKERS
from ontomatch.common.custom_exceptions import AlignmentParseError
from ontomatch.common.value_transformers import is_valid_iri
from ontomatch.domain.repair_report import FixKind, ValidationIssue

PREFIXED_TAG_REGEX = re.compile(r"</?([A-Za-z_][\w.\-]*):[A-Za-z_]")
PREFIXED_ATTRIBUTE_REGEX = re.compile(r"\s([A-Za-z_][\w.\-]*):[A-Za-z_][\w.\-]*\s*=")
DECLARED_PREFIX_REGEX = re.compile(r"xmlns:([A-Za-z_][\w.\-]*)\s*=")
DEFAULT_NAMESPACE_REGEX = re.compile(r"\sxmlns\s*=")
UNPREFIXED_ALIGNMENT_TAG_REGEX = re.compile(r"<(?:Alignment|Cell)\b")
START_TAG_REGEX = re.compile(r"<[A-Za-z][^<>]*>")
UNQUOTED_ATTRIBUTE_REGEX = re.compile(
    r"(\s[A-Za-z_][\w.\-:]*\s*=\s*)([^\"'\s>/][^\s>]*?)(?=\s|/?>)"
)
QUOTED_ATTRIBUTE_REGEX = re.compile(r"(\s[A-Za-z_][\w.\-:]*\s*=\s*)\"([^\"]*)\"")
BARE_AMPERSAND_REGEX = re.compile(r"&(?!(?:[A-Za-z_][\w.\-]*|#\d+|#x[0-9A-Fa-f]+);)")
MEASURE_REGEX = re.compile(r"(<(?:[\w.\-]+:)?measure\b[^>]*>)([^<]*)(</)")
DOCUMENT_START_REGEX = re.compile(
    r"<\?xml|<(?:[\w.\-]+:)?(?:RDF|Alignment|Cell)\b"
)
IGNORED_PREFIXES = {"xml", "xmlns"}


def used_prefixes(text: str) -> set:
    used = set(PREFIXED_TAG_REGEX.findall(text))
    used.update(PREFIXED_ATTRIBUTE_REGEX.findall(text))
    return used - IGNORED_PREFIXES


def undeclared_prefixes(text: str) -> List[str]:
    declared = set(DECLARED_PREFIX_REGEX.findall(text))
    return sorted(used_prefixes(text) - declared)


def lacks_default_namespace(text: str) -> bool:
    return bool(UNPREFIXED_ALIGNMENT_TAG_REGEX.search(text)) and not (
        DEFAULT_NAMESPACE_REGEX.search(text)
    )


def found_eos_markers(text: str) -> List[str]:
    return [marker for marker in EOS_MARKERS if marker in text]


def document_bounds(text: str) -> Optional[tuple]:
    start = DOCUMENT_START_REGEX.search(text)
    end = text.rfind(">")
    if start is None or end < start.start():
        return None
    return start.start(), end + 1


def has_surrounding_chatter(text: str) -> bool:
    bounds = document_bounds(text)
    if bounds is None:
        return False
    start, end = bounds
    return bool(text[:start].strip() or text[end:].strip())


def unquoted_attributes(text: str) -> List[str]:
    found = []
    for tag in START_TAG_REGEX.findall(text):
        found.extend(match.group(0).strip() for match in UNQUOTED_ATTRIBUTE_REGEX.finditer(tag))
    return found


def unescaped_attribute_values(text: str) -> List[str]:
    return [
        value
        for _, value in QUOTED_ATTRIBUTE_REGEX.findall(text)
        if "<" in value or BARE_AMPERSAND_REGEX.search(value)
    ]


def invalid_measures(text: str) -> List[str]:
    invalid = []
    for _, value, _ in MEASURE_REGEX.findall(text):
        try:
            measure = float(value.strip())
        except ValueError:
            invalid.append(value.strip())
            continue
        if not 0.0 <= measure <= 1.0:
            invalid.append(value.strip())
    return invalid


def _textual_issues(text: str) -> List[ValidationIssue]:
    issues = []
    markers = found_eos_markers(text)
    if markers:
        issues.append(
            ValidationIssue(FixKind.EOS_TOKEN, f"end-of-sequence markers {markers}")
        )
    if has_surrounding_chatter(text):
        issues.append(
            ValidationIssue(FixKind.EOS_TOKEN, "text outside the XML document")
        )
    for prefix in undeclared_prefixes(text):
        issues.append(
            ValidationIssue(FixKind.MISSING_PREFIX, f"prefix [{prefix}] is not declared")
        )
    if lacks_default_namespace(text):
        issues.append(
            ValidationIssue(
                FixKind.MISSING_PREFIX, "alignment elements have no default namespace"
            )
        )
    for attribute in unquoted_attributes(text):
        issues.append(
            ValidationIssue(FixKind.INVALID_LITERAL, f"unquoted value [{attribute}]")
        )
    for value in unescaped_attribute_values(text):
        issues.append(
            ValidationIssue(FixKind.INVALID_LITERAL, f"unescaped value [{value}]")
        )
    return issues


def _structural_issues(text: str) -> List[ValidationIssue]:
    root = parse_xml_document(text)
    document = find_alignment_element(root)
    if document is None:
        return [ValidationIssue(FixKind.MISSING_ONTOLOGY_TAG, "no Alignment element")]

    issues = []
    present = {
        child.tag.split("}")[-1] for child in document if isinstance(child.tag, str)
    }
    for name in ("onto1", "onto2"):
        if name not in present:
            issues.append(
                ValidationIssue(FixKind.MISSING_ONTOLOGY_TAG, f"no {name} element")
            )

    for holder in document.iter():
        if not isinstance(holder.tag, str) or holder.tag.split("}")[-1] not in (
            "entity1",
            "entity2",
        ):
            continue
        for element in holder.iter():
            about = element.get(RDF_ABOUT)
            if about is not None and not is_valid_iri(about.strip()):
                issues.append(
                    ValidationIssue(
                        FixKind.UNPREFIXED_ENTITY, f"entity [{about}] is not an IRI"
                    )
                )

    for value in invalid_measures(text):
        issues.append(
            ValidationIssue(FixKind.INVALID_LITERAL, f"invalid measure [{value}]")
        )
    return issues


def validate(xml: str) -> List[ValidationIssue]:
    """
    Issues found in an alignment document, empty when it is valid.

    Textual problems (markers, prefixes, literal syntax) are reported on
    their own because they also break XML parsing; structural checks run on
    documents that parse.
    """
    issues = _textual_issues(xml)
    if issues:
        return issues
    try:
        issues = _structural_issues(xml)
    except AlignmentParseError as error:
        return [ValidationIssue(None, error.message)]
    if issues:
        return issues
    try:
        parse_alignment(xml)
    except AlignmentParseError as error:
        return [ValidationIssue(None, error.message)]
    return []


def is_valid(xml: str) -> bool:
    return not validate(xml)
