import json
import random
import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.application.services.alignment_repair import repair
from ontomatch.application.services.alignment_validation import is_valid
from ontomatch.application.services.edoal_serialization import (
    parse_alignment,
    serialize_alignment,
)
from ontomatch.application.services.grammar_service import (
    derive_template,
    load_grammar,
    template_to_xml,
)
from ontomatch.application.services.llm_gateway import LlmGateway
from ontomatch.application.services.ontology_store import (
    is_standard_vocabulary,
    ontology_iri,
    parse_turtle,
    serialize_turtle,
    with_triples,
)
from ontomatch.application.services.prompt_service import (
    EMPTY_PAIR_TEMPLATE,
    FILL_TEMPLATE,
    SOURCE_ONTOLOGY_TEMPLATE,
    TARGET_ONTOLOGY_TEMPLATE,
    build_request,
    empty_pair_prompt,
    fill_template_prompt,
    match_prompt,
    source_ontology_prompt,
    target_ontology_prompt,
)
from ontomatch.common.config.constants import (
    CORPUS_EMPTY_PAIRS,
    CORPUS_FILE_NAME,
    CORPUS_POSITIVE_PAIRS,
    EOS_MARKERS,
    KNOWN_TURTLE_PREFIXES,
    MANIFEST_FILE_NAME,
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_NAMED_INDIVIDUAL,
    OWL_OBJECT_PROPERTY,
    REJECTS_DIR_NAME,
    RDF_TYPE,
    SYNTHETIC_ONTOLOGY_IRI,
    SYNTHETIC_TOPICS,
)
from ontomatch.common.custom_exceptions import AlignmentParseError, OntologyParseError, UserError
from ontomatch.common.logger import AppLogger
from ontomatch.common.value_transformers import local_name
from ontomatch.domain.alignment import Alignment
from ontomatch.domain.alignment_template import MASK_PREFIX, AlignmentTemplate
from ontomatch.domain.edoal_expression import (
    ClassId,
    EdoalExpression,
    InstanceId,
    PropertyId,
    RelationId,
    children,
)
from ontomatch.domain.ontology_graph import OntologyGraph
from ontomatch.domain.rdf_terms import Iri, Triple
from ontomatch.domain.run_config import PromptStyle, RunConfig
from ontomatch.domain.synth_record import (
    CorpusManifest,
    FilledAlignment,
    RecordKind,
    SynthRecord,
)

DECLARATION_TYPES = {
    ClassId: OWL_CLASS,
    PropertyId: OWL_DATATYPE_PROPERTY,
    RelationId: OWL_OBJECT_PROPERTY,
    InstanceId: OWL_NAMED_INDIVIDUAL,
}

FENCED_BLOCK_REGEX = re.compile(r"```[A-Za-z]*[ \t]*\n(.*?)```", re.DOTALL)
TURTLE_START_REGEX = re.compile(r"^\s*(?:@prefix|@base|PREFIX|BASE|<|_:|#|[A-Za-z][\w\-]*:\S)")
# A statement ends with "." after a term, never after bare prose
TURTLE_END_REGEX = re.compile(r"(?:[\w\-]:\S*|[>\"\])]\S*|\d)\s*\.\s*$")
USED_TURTLE_PREFIX_REGEX = re.compile(r"(?<![\w<\"#/])([A-Za-z][\w\-]*):[A-Za-z_]")
DECLARED_TURTLE_PREFIX_REGEX = re.compile(r"(?:@prefix|(?i:PREFIX))\s+([A-Za-z][\w\-]*)?:")


def default_split(total: int) -> Tuple[int, int]:
    if total < 0:
        raise UserError("The corpus size must be >= 0")
    positives = round(total * CORPUS_POSITIVE_PAIRS / (CORPUS_POSITIVE_PAIRS + CORPUS_EMPTY_PAIRS))
    return positives, total - positives


def synthetic_ontology_iris(seed: int) -> Tuple[str, str]:
    return (
        SYNTHETIC_ONTOLOGY_IRI.format(seed=seed, side="source"),
        SYNTHETIC_ONTOLOGY_IRI.format(seed=seed, side="target"),
    )


def fill_template(
    template: AlignmentTemplate,
    gateway: LlmGateway,
    config: RunConfig,
    onto1: str,
    onto2: str,
    topic: str,
) -> FilledAlignment:
    """Asks the model to replace every placeholder of a template with an entity IRI."""
    messages = fill_template_prompt(
        template_to_xml(template), template.slot_count, onto1, onto2, topic
    )
    response = gateway.chat(build_request(messages, FILL_TEMPLATE, config, template.seed))

    repaired, report = repair(response, onto1, onto2)
    if not report.valid_after:
        reason = "; ".join(str(issue) for issue in report.remaining_issues)
        return FilledAlignment(response, None, report, f"unrepairable: {reason}")
    try:
        alignment = parse_alignment(repaired)
    except AlignmentParseError as error:
        return FilledAlignment(response, None, report, error.message)

    unfilled = [
        iri for iri in alignment.entity_iris() if local_name(iri).startswith(MASK_PREFIX)
    ]
    if unfilled:
        return FilledAlignment(response, None, report, f"unfilled placeholders {unfilled}")
    if alignment.is_empty():
        return FilledAlignment(response, None, report, "the filled alignment has no cells")
    return FilledAlignment(response, alignment.with_ontologies(onto1, onto2), report)


def repair_turtle(text: str) -> str:
    """Drops chat chatter and end-of-sequence markers and declares missing standard prefixes."""
    for marker in EOS_MARKERS:
        text = text.replace(marker, "")
    fenced = FENCED_BLOCK_REGEX.search(text)
    if fenced:
        text = fenced.group(1)

    lines = text.strip().splitlines()
    starts = [index for index, line in enumerate(lines) if TURTLE_START_REGEX.match(line)]
    ends = [index for index, line in enumerate(lines) if TURTLE_END_REGEX.search(line)]
    if starts and ends and starts[0] <= ends[-1]:
        lines = lines[starts[0] : ends[-1] + 1]
    text = "\n".join(lines)

    declared = set(DECLARED_TURTLE_PREFIX_REGEX.findall(text))
    missing = sorted(
        prefix
        for prefix in set(USED_TURTLE_PREFIX_REGEX.findall(text))
        if prefix in KNOWN_TURTLE_PREFIXES and prefix not in declared
    )
    declarations = "".join(
        f"@prefix {prefix}: <{KNOWN_TURTLE_PREFIXES[prefix]}> .\n" for prefix in missing
    )
    return declarations + text + "\n"


def parse_generated_turtle(text: str) -> OntologyGraph:
    try:
        return parse_turtle(text)
    except OntologyParseError:
        AppLogger.debug("Generated Turtle did not parse, attempting repair")
    return parse_turtle(repair_turtle(text))


def _typed_atoms(expression: EdoalExpression, found: Dict[str, str]):
    declaration = DECLARATION_TYPES.get(type(expression))
    if declaration is not None:
        found.setdefault(expression.iri, declaration)
    for child in children(expression):
        _typed_atoms(child, found)


def side_entities(alignment: Alignment, side: str) -> Dict[str, str]:
    """IRIs of one side of an alignment mapped to the OWL type that declares them."""
    found: Dict[str, str] = {}
    for cell in alignment.cells:
        _typed_atoms(cell.entity1 if side == "entity1" else cell.entity2, found)
    return found


def inject_missing_entities(graph: OntologyGraph, entities: Dict[str, str]) -> OntologyGraph:
    missing = [
        Triple(Iri(iri), Iri(RDF_TYPE), Iri(declaration))
        for iri, declaration in sorted(entities.items())
        if not graph.mentions(Iri(iri))
    ]
    if not missing:
        return graph
    AppLogger.info(f"Injected {len(missing)} missing entity declarations into an ontology")
    return with_triples(graph, missing)


def generate_ontology_pair(
    alignment: Alignment,
    gateway: LlmGateway,
    config: RunConfig,
    topic: str,
    seed: Optional[int] = None,
) -> Tuple[OntologyGraph, OntologyGraph]:
    """
    Generates the source ontology, then the target ontology given the source.

    Every entity named by the alignment ends up in its side's graph; those
    the model left out are declared with a bare type triple.
    """
    alignment_xml = serialize_alignment(alignment)
    source_entities = side_entities(alignment, "entity1")
    target_entities = side_entities(alignment, "entity2")

    source_messages = source_ontology_prompt(
        alignment_xml, sorted(source_entities), alignment.onto1, topic
    )
    source_text = gateway.chat(
        build_request(source_messages, SOURCE_ONTOLOGY_TEMPLATE, config, seed)
    )
    source = inject_missing_entities(parse_generated_turtle(source_text), source_entities)

    target_messages = target_ontology_prompt(
        alignment_xml,
        sorted(target_entities),
        alignment.onto2,
        topic,
        serialize_turtle(source),
    )
    target_text = gateway.chat(
        build_request(target_messages, TARGET_ONTOLOGY_TEMPLATE, config, seed)
    )
    target = inject_missing_entities(parse_generated_turtle(target_text), target_entities)
    return source, target


def _local_names(graph: OntologyGraph) -> Set[str]:
    return {
        local_name(subject.value).lower()
        for subject in graph.subjects()
        if isinstance(subject, Iri) and not is_standard_vocabulary(subject.value)
    } - {""}


def training_messages(source: OntologyGraph, target: OntologyGraph, onto1: str, onto2: str):
    return match_prompt(
        serialize_turtle(source), serialize_turtle(target), PromptStyle.BASE, onto1, onto2
    )


def generate_positive_record(
    seed: int, gateway: LlmGateway, config: RunConfig, rules=None
) -> SynthRecord:
    generator = random.Random(seed)
    cells = generator.randint(config.min_cells, config.max_cells)
    topic = generator.choice(SYNTHETIC_TOPICS)
    onto1, onto2 = synthetic_ontology_iris(seed)

    template = derive_template(seed, config.max_depth, cells, rules)
    filled = fill_template(template, gateway, config, onto1, onto2, topic)
    if not filled.valid:
        AppLogger.warning(f"Synthetic record {seed} is invalid: {filled.reason}")
        return SynthRecord(
            messages=[],
            target=filled.response,
            kind=RecordKind.POSITIVE,
            valid=False,
            seed=seed,
            reason=filled.reason,
        )

    target_xml = serialize_alignment(filled.alignment)
    try:
        source, target = generate_ontology_pair(filled.alignment, gateway, config, topic, seed)
    except UserError as error:
        AppLogger.warning(f"Synthetic record {seed} is invalid: {error.message}")
        return SynthRecord(
            messages=[],
            target=target_xml,
            kind=RecordKind.POSITIVE,
            valid=False,
            seed=seed,
            reason=error.message,
        )

    return SynthRecord(
        messages=training_messages(source, target, onto1, onto2),
        target=target_xml,
        kind=RecordKind.POSITIVE,
        valid=is_valid(target_xml),
        seed=seed,
    )


def generate_empty_pair(seed: int, gateway: LlmGateway, config: RunConfig) -> SynthRecord:
    """Two ontologies on unrelated topics whose alignment has no cell."""
    generator = random.Random(seed)
    topic1, topic2 = generator.sample(SYNTHETIC_TOPICS, 2)
    onto1, onto2 = synthetic_ontology_iris(seed)
    empty = Alignment(onto1=onto1, onto2=onto2)

    try:
        graphs = []
        for onto, topic, avoid in ((onto1, topic1, topic2), (onto2, topic2, topic1)):
            messages = empty_pair_prompt(onto, topic, avoid)
            response = gateway.chat(build_request(messages, EMPTY_PAIR_TEMPLATE, config, seed))
            graphs.append(parse_generated_turtle(response))
    except UserError as error:
        AppLogger.warning(f"Synthetic empty pair {seed} is invalid: {error.message}")
        return SynthRecord(
            messages=[],
            target=serialize_alignment(empty),
            kind=RecordKind.EMPTY,
            valid=False,
            seed=seed,
            reason=error.message,
        )

    source, target = graphs
    overlap = sorted(_local_names(source) & _local_names(target))
    reason = ""
    if overlap:
        reason = f"local names shared by both ontologies: {overlap}"
        AppLogger.warning(f"Synthetic empty pair {seed} has {reason}")

    return SynthRecord(
        messages=training_messages(
            source, target, ontology_iri(source) or onto1, ontology_iri(target) or onto2
        ),
        target=serialize_alignment(empty),
        kind=RecordKind.EMPTY,
        valid=True,
        seed=seed,
        reason=reason,
    )


def build_corpus(
    n_pos: int,
    n_neg: int,
    seed0: int,
    gateway: LlmGateway,
    config: RunConfig,
    out_dir: str,
    file_adapter: FileAdapter = FileAdapter(),
) -> CorpusManifest:
    if n_pos < 0 or n_neg < 0:
        raise UserError("n_pos and n_neg must be >= 0")
    out = file_adapter.ensure_directory(out_dir)
    rules = load_grammar(config.rule_weights)

    jobs = [(RecordKind.POSITIVE, seed0 + offset) for offset in range(n_pos)]
    jobs += [(RecordKind.EMPTY, seed0 + n_pos + offset) for offset in range(n_neg)]

    def build(job) -> SynthRecord:
        kind, seed = job
        if kind == RecordKind.POSITIVE:
            return generate_positive_record(seed, gateway, config, rules)
        return generate_empty_pair(seed, gateway, config)

    lines: List[str] = []
    with ThreadPoolExecutor(max_workers=gateway.config.max_concurrent) as executor:
        # map keeps job order, so the corpus does not depend on scheduling
        for index, record in enumerate(executor.map(build, jobs)):
            if record.valid:
                lines.append(json.dumps(record.to_training_example(), ensure_ascii=False))
            else:
                file_adapter.write_text(
                    Path(out) / REJECTS_DIR_NAME / f"{index:03d}.xml", record.target
                )

    file_adapter.write_text(Path(out) / CORPUS_FILE_NAME, "".join(f"{line}\n" for line in lines))
    total = len(jobs)
    manifest = CorpusManifest(
        total=total,
        positives=n_pos,
        empties=n_neg,
        emitted=len(lines),
        valid_rate=len(lines) / total if total else 1.0,
        seed_range=(seed0, seed0 + max(total - 1, 0)),
    )
    file_adapter.write_json(Path(out) / MANIFEST_FILE_NAME, manifest.dict())
    AppLogger.info(
        f"Wrote {manifest.emitted} of {manifest.total} records to {out} "
        f"(valid rate {manifest.valid_rate:.3f})"
    )
    return manifest
