import re
from collections import Counter
from typing import Callable, List, Optional, Tuple

from ontomatch.application.services.alignment_validation import (
    BARE_AMPERSAND_REGEX,
    DECLARED_PREFIX_REGEX,
    MEASURE_REGEX,
    QUOTED_ATTRIBUTE_REGEX,
    START_TAG_REGEX,
    UNQUOTED_ATTRIBUTE_REGEX,
    document_bounds,
    found_eos_markers,
    lacks_default_namespace,
    undeclared_prefixes,
    validate,
)
from ontomatch.common.config.constants import (
    ALIGN_NS,
    DEFAULT_ALIGNMENT_LEVEL,
    DEFAULT_ALIGNMENT_TYPE,
    KNOWN_ALIGNMENT_PREFIXES,
)
from ontomatch.common.logger import AppLogger
from ontomatch.common.value_transformers import is_valid_iri, namespace_of, qualify_name
from ontomatch.domain.repair_context import RepairContext
from ontomatch.domain.repair_report import Fix, FixKind, RepairReport

ROOT_TAG_REGEX = re.compile(r"<(?![?!/])([\w.\-:]+)")
ALIGNMENT_TAG_REGEX = re.compile(r"<([\w.\-]+:)?Alignment\b[^>]*>")
CELL_REGEX = re.compile(r"<([\w.\-]+:)?Cell\b.*?</\1Cell\s*>", re.DOTALL)
ONTOLOGY_TAG_REGEX = r"<(?:[\w.\-]+:)?{name}\b[^>]*>(.*?)</(?:[\w.\-]+:)?{name}\s*>"
ENTITY_REGION_REGEX = re.compile(
    r"(<(?:[\w.\-]+:)?entity([12])\b[^>]*>)(.*?)(</(?:[\w.\-]+:)?entity\2\s*>)",
    re.DOTALL,
)
ABOUT_REGEX = re.compile(r"(rdf:about\s*=\s*\")([^\"]*)(\")")
NAMESPACE_DECLARATION_REGEX = re.compile(
    r"xmlns(?::([A-Za-z_][\w.\-]*))?\s*=\s*\"([^\"]*)\""
)
MARKUP_SECTION_REGEX = re.compile(r"<!--.*?-->|<!\[CDATA\[.*?\]\]>", re.DOTALL)
ESCAPED_AMPERSANDS = Fix(FixKind.INVALID_LITERAL, "escaped bare ampersands")


def repair(
    xml: str, onto1: Optional[str] = None, onto2: Optional[str] = None
) -> Tuple[str, RepairReport]:
    """
    Syntactic repair of an alignment document.

    Steps run in a fixed order and each one only touches the text when it
    detects its problem, so a valid document comes back unchanged and
    repairing a repaired document changes nothing.
    """
    if not validate(xml):
        return xml, RepairReport(fixes=[], valid_after=True, remaining_issues=[])

    context = (
        RepairContext(xml)
        .pipe(strip_eos_markers)
        .pipe(declare_known_prefixes)
        .pipe(restore_alignment_structure, onto1, onto2)
        .pipe(qualify_bare_entities, onto1, onto2)
        .pipe(fix_literals)
    )
    repaired = context.get_text()
    issues = validate(repaired)
    report = RepairReport(
        fixes=context.fixes(), valid_after=not issues, remaining_issues=issues
    )
    if context.has_fixes():
        AppLogger.info(
            f"Repair applied {len(report.fixes)} fixes in stages {report.stages()}: "
            f"{sorted({kind.value for kind in report.kinds()})}"
        )
    return repaired, report


def strip_eos_markers(text: str) -> Tuple[str, List[Fix]]:
    fixes = []
    markers = found_eos_markers(text)
    for marker in markers:
        text = text.replace(marker, "")
    if markers:
        fixes.append(Fix(FixKind.EOS_TOKEN, f"removed markers {markers}"))

    bounds = document_bounds(text)
    if bounds is not None:
        start, end = bounds
        outside = text[:start] + text[end:]
        if outside.strip():
            text = text[start:end]
            fixes.append(Fix(FixKind.EOS_TOKEN, "removed text outside the XML document"))
    if fixes and not text.endswith("\n"):
        text = text.strip() + "\n"
    return text, fixes


def _root_tag_end(text: str) -> Optional[int]:
    match = ROOT_TAG_REGEX.search(text)
    return match.end() if match else None


def declare_known_prefixes(text: str) -> Tuple[str, List[Fix]]:
    missing = [
        prefix for prefix in undeclared_prefixes(text) if prefix in KNOWN_ALIGNMENT_PREFIXES
    ]
    needs_default = lacks_default_namespace(text)
    insert_at = _root_tag_end(text)
    if insert_at is None or not (missing or needs_default):
        return text, []

    declarations = "".join(
        f' xmlns:{prefix}="{KNOWN_ALIGNMENT_PREFIXES[prefix]}"' for prefix in missing
    )
    fixes = [Fix(FixKind.MISSING_PREFIX, f"declared prefix [{prefix}]") for prefix in missing]
    if needs_default:
        declarations += f' xmlns="{ALIGN_NS}"'
        fixes.append(Fix(FixKind.MISSING_PREFIX, "declared the alignment namespace"))
    return text[:insert_at] + declarations + text[insert_at:], fixes


def _declared_ontology(text: str, name: str) -> Optional[str]:
    match = re.search(ONTOLOGY_TAG_REGEX.format(name=name), text, re.DOTALL)
    if match is None:
        return None
    about = ABOUT_REGEX.search(match.group(1))
    return (about.group(2) if about else match.group(1)).strip()


def _infer_ontology(text: str, side: str) -> str:
    namespaces = Counter()
    for region in ENTITY_REGION_REGEX.finditer(text):
        if region.group(2) != side:
            continue
        for about in ABOUT_REGEX.finditer(region.group(3)):
            iri = about.group(2).strip()
            if is_valid_iri(iri) and namespace_of(iri):
                namespaces[namespace_of(iri).rstrip("#/")] += 1
    if not namespaces:
        return ""
    return sorted(namespaces.items(), key=lambda item: (-item[1], item[0]))[0][0]


def _ontology_element(prefix: str, name: str, iri: str, rdf_declared: bool) -> str:
    if rdf_declared:
        return (
            f'<{prefix}{name}><{prefix}Ontology rdf:about="{iri}"/></{prefix}{name}>'
        )
    return f"<{prefix}{name}>{iri}</{prefix}{name}>"


def _resolve_ontologies(
    text: str, onto1: Optional[str], onto2: Optional[str]
) -> Tuple[Optional[str], Optional[str], str, str]:
    declared1 = _declared_ontology(text, "onto1")
    declared2 = _declared_ontology(text, "onto2")
    chosen1 = declared1 if declared1 is not None else (onto1 or _infer_ontology(text, "1"))
    chosen2 = declared2 if declared2 is not None else (onto2 or _infer_ontology(text, "2"))
    if chosen1 == chosen2:
        if declared1 is None:
            chosen1 = ""
        if declared2 is None:
            chosen2 = ""
    return declared1, declared2, chosen1, chosen2


def restore_alignment_structure(
    text: str, onto1: Optional[str] = None, onto2: Optional[str] = None
) -> Tuple[str, List[Fix]]:
    has_alignment = ALIGNMENT_TAG_REGEX.search(text)
    cells = [match.group(0) for match in CELL_REGEX.finditer(text)]
    if has_alignment is None and not cells:
        return text, []

    declared1, declared2, chosen1, chosen2 = _resolve_ontologies(text, onto1, onto2)
    rdf_declared = "rdf" in DECLARED_PREFIX_REGEX.findall(text)

    if has_alignment is None:
        namespaces = dict(KNOWN_ALIGNMENT_PREFIXES)
        default_namespace = ALIGN_NS
        for prefix, namespace in NAMESPACE_DECLARATION_REGEX.findall(text):
            if prefix:
                namespaces[prefix] = namespace
            else:
                default_namespace = namespace
        declarations = "".join(
            f' xmlns:{prefix}="{namespace}"' for prefix, namespace in sorted(namespaces.items())
        )
        body = "".join(f"\n    <align:map>\n      {cell}\n    </align:map>" for cell in cells)
        wrapped = (
            "<?xml version='1.0' encoding='utf-8'?>\n"
            f'<rdf:RDF xmlns="{default_namespace}"{declarations}>\n'
            "  <align:Alignment>\n"
            "    <align:xml>yes</align:xml>\n"
            f"    <align:level>{DEFAULT_ALIGNMENT_LEVEL}</align:level>\n"
            f"    <align:type>{DEFAULT_ALIGNMENT_TYPE}</align:type>\n"
            f"    {_ontology_element('align:', 'onto1', chosen1, True)}\n"
            f"    {_ontology_element('align:', 'onto2', chosen2, True)}"
            f"{body}\n"
            "  </align:Alignment>\n"
            "</rdf:RDF>\n"
        )
        return wrapped, [
            Fix(
                FixKind.MISSING_ONTOLOGY_TAG,
                f"wrapped {len(cells)} stray cells in an Alignment element",
            )
        ]

    fixes = []
    insertion = ""
    prefix = has_alignment.group(1) or ""
    for name, declared, chosen in (
        ("onto1", declared1, chosen1),
        ("onto2", declared2, chosen2),
    ):
        if declared is None:
            insertion += _ontology_element(prefix, name, chosen, rdf_declared)
            fixes.append(
                Fix(FixKind.MISSING_ONTOLOGY_TAG, f"added {name} [{chosen}]")
            )
    if not fixes:
        return text, []
    position = has_alignment.end()
    return text[:position] + insertion + text[position:], fixes


def qualify_bare_entities(
    text: str, onto1: Optional[str] = None, onto2: Optional[str] = None
) -> Tuple[str, List[Fix]]:
    bases = {
        "1": _declared_ontology(text, "onto1") or onto1 or "",
        "2": _declared_ontology(text, "onto2") or onto2 or "",
    }
    fixes = []

    def qualify_about(base: str):
        def replace(match):
            value = match.group(2).strip()
            if not value or is_valid_iri(value) or not is_valid_iri(base):
                return match.group(0)
            qualified = qualify_name(base, value)
            fixes.append(
                Fix(FixKind.UNPREFIXED_ENTITY, f"qualified [{value}] as [{qualified}]")
            )
            return f"{match.group(1)}{qualified}{match.group(3)}"

        return replace

    def replace_region(region):
        inner = ABOUT_REGEX.sub(qualify_about(bases[region.group(2)]), region.group(3))
        return f"{region.group(1)}{inner}{region.group(4)}"

    return ENTITY_REGION_REGEX.sub(replace_region, text), fixes


def escape_attribute_value(value: str) -> str:
    value = BARE_AMPERSAND_REGEX.sub("&amp;", value)
    return value.replace("<", "&lt;").replace('"', "&quot;")


def _clamped_measure(value: str) -> Optional[str]:
    try:
        measure = float(value.strip())
    except ValueError:
        return "1.0"
    if measure != measure:
        return "1.0"
    if measure < 0.0:
        return "0.0"
    if measure > 1.0:
        return "1.0"
    return None


def fix_literals(text: str) -> Tuple[str, List[Fix]]:
    fixes = []

    def quote_in_tag(tag_match):
        def quote(match):
            fixes.append(Fix(FixKind.INVALID_LITERAL, f"quoted [{match.group(0).strip()}]"))
            return f'{match.group(1)}"{escape_attribute_value(match.group(2))}"'

        return UNQUOTED_ATTRIBUTE_REGEX.sub(quote, tag_match.group(0))

    def escape_quoted(match):
        value = match.group(2)
        if "<" not in value and not BARE_AMPERSAND_REGEX.search(value):
            return match.group(0)
        fixes.append(Fix(FixKind.INVALID_LITERAL, f"escaped [{value}]"))
        return f'{match.group(1)}"{escape_attribute_value(value)}"'

    def fix_measure(match):
        replacement = _clamped_measure(match.group(2))
        if replacement is None:
            return match.group(0)
        detail = f"measure [{match.group(2).strip()}] set to {replacement}"
        fixes.append(Fix(FixKind.INVALID_LITERAL, detail))
        return f"{match.group(1)}{replacement}{match.group(3)}"

    def fix_segment(segment: str) -> str:
        segment = QUOTED_ATTRIBUTE_REGEX.sub(escape_quoted, segment)
        segment = START_TAG_REGEX.sub(quote_in_tag, segment)
        if BARE_AMPERSAND_REGEX.search(segment):
            segment = BARE_AMPERSAND_REGEX.sub("&amp;", segment)
            if ESCAPED_AMPERSANDS not in fixes:
                fixes.append(ESCAPED_AMPERSANDS)
        return MEASURE_REGEX.sub(fix_measure, segment)

    return outside_markup_sections(text, fix_segment), fixes


def outside_markup_sections(text: str, function: Callable[[str], str]) -> str:
    """Applies function to the text between comments and CDATA sections."""
    pieces = []
    position = 0
    for section in MARKUP_SECTION_REGEX.finditer(text):
        pieces.append(function(text[position : section.start()]))
        pieces.append(section.group(0))
        position = section.end()
    pieces.append(function(text[position:]))
    return "".join(pieces)
