import random
import re
from typing import Callable

from ontomatch.application.services.alignment_repair import (
    ABOUT_REGEX,
    CELL_REGEX,
    ENTITY_REGION_REGEX,
)
from ontomatch.application.services.alignment_validation import (
    MEASURE_REGEX,
    used_prefixes,
)
from ontomatch.common.config.constants import EOS_MARKERS, KNOWN_ALIGNMENT_PREFIXES
from ontomatch.common.value_transformers import is_valid_iri, local_name
from ontomatch.domain.repair_report import FixKind

CHATTER_BEFORE = [
    "Here is the alignment you asked for:\n```xml\n",
    "Sure! The EDOAL alignment is below.\n\n",
]
CHATTER_AFTER = ["\n```\n", "\nLet me know if you need anything else."]
BROKEN_MEASURES = ["high", "1,0", "1.7", "-0.2", "certain"]
STRING_LITERAL_REGEX = re.compile(r"(edoal:string=)\"([^\"\s<&]+)\"")


def _inject_eos(xml: str, rng: random.Random) -> str:
    if rng.random() < 0.5:
        return xml.rstrip() + rng.choice(EOS_MARKERS)
    return rng.choice(CHATTER_BEFORE) + xml + rng.choice(CHATTER_AFTER) + rng.choice(EOS_MARKERS)


def _inject_missing_prefix(xml: str, rng: random.Random) -> str:
    used = sorted(used_prefixes(xml) & set(KNOWN_ALIGNMENT_PREFIXES))
    if not used:
        return _inject_eos(xml, rng)
    prefix = rng.choice(used)
    return re.sub(rf"\s+xmlns:{prefix}\s*=\s*\"[^\"]*\"", "", xml)


def _inject_missing_ontology_tag(xml: str, rng: random.Random) -> str:
    choice = rng.choice(["onto1", "onto2", "both", "wrapper"])
    if choice == "wrapper":
        cells = [match.group(0) for match in CELL_REGEX.finditer(xml)]
        if cells:
            return "\n".join(cells) + "\n"
        choice = "both"
    names = ["onto1", "onto2"] if choice == "both" else [choice]
    for name in names:
        xml = re.sub(
            rf"\s*<(?:[\w.\-]+:)?{name}\b[^>]*>.*?</(?:[\w.\-]+:)?{name}\s*>",
            "",
            xml,
            count=1,
            flags=re.DOTALL,
        )
    return xml


def _inject_unprefixed_entity(xml: str, rng: random.Random) -> str:
    candidates = []
    for region in ENTITY_REGION_REGEX.finditer(xml):
        offset = region.start(3)
        for about in ABOUT_REGEX.finditer(region.group(3)):
            if is_valid_iri(about.group(2)):
                candidates.append((offset + about.start(2), offset + about.end(2)))
    if not candidates:
        return _inject_eos(xml, rng)
    start, end = rng.choice(candidates)
    return xml[:start] + local_name(xml[start:end]) + xml[end:]


def _inject_invalid_literal(xml: str, rng: random.Random) -> str:
    strings = list(STRING_LITERAL_REGEX.finditer(xml))
    if strings and rng.random() < 0.5:
        match = rng.choice(strings)
        if rng.random() < 0.5:
            replacement = f"{match.group(1)}{match.group(2)}"
        else:
            replacement = f'{match.group(1)}"{match.group(2)} & co"'
        return xml[: match.start()] + replacement + xml[match.end():]
    measures = list(MEASURE_REGEX.finditer(xml))
    if not measures:
        return _inject_eos(xml, rng)
    match = rng.choice(measures)
    broken = f"{match.group(1)}{rng.choice(BROKEN_MEASURES)}{match.group(3)}"
    return xml[: match.start()] + broken + xml[match.end():]


FAULTS = {
    FixKind.EOS_TOKEN: _inject_eos,
    FixKind.MISSING_PREFIX: _inject_missing_prefix,
    FixKind.MISSING_ONTOLOGY_TAG: _inject_missing_ontology_tag,
    FixKind.UNPREFIXED_ENTITY: _inject_unprefixed_entity,
    FixKind.INVALID_LITERAL: _inject_invalid_literal,
}


def inject_fault(xml: str, kind: FixKind, rng: random.Random) -> str:
    """Corrupts a valid alignment document with one error of the given class."""
    return FAULTS[kind](xml, rng)


def random_fault(xml: str, rng: random.Random) -> str:
    return inject_fault(xml, rng.choice(list(FixKind)), rng)


def fault_injector(kind: FixKind) -> Callable[[str, random.Random], str]:
    return lambda xml, rng: inject_fault(xml, kind, rng)
