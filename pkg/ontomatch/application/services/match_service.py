from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.application.services.alignment_repair import repair
from ontomatch.application.services.alignment_service import merge, normalize_alignment
from ontomatch.application.services.candidate_retrieval import (
    cosine_candidates,
    embedding_text,
)
from ontomatch.application.services.edoal_serialization import (
    parse_alignment,
    serialize_alignment,
)
from ontomatch.application.services.graph_ranking import (
    build_entity_digraph,
    pagerank,
    top_k_anchors,
)
from ontomatch.application.services.llm_gateway import LlmGateway
from ontomatch.application.services.module_extraction import (
    estimate_tokens,
    extract_module,
)
from ontomatch.application.services.ontology_store import (
    entity_index,
    ontology_iri,
    serialize_turtle,
)
from ontomatch.application.services.prompt_service import (
    build_request,
    match_prompt,
    match_template_name,
)
from ontomatch.common.config.constants import (
    FINAL_ALIGNMENT_FILE_NAME,
    REPORT_FILE_NAME,
)
from ontomatch.common.custom_exceptions import (
    AlignmentParseError,
    ConflictingOntologiesError,
    NoEligibleAnchorsError,
    UserError,
)
from ontomatch.common.logger import AppLogger
from ontomatch.domain.alignment import Alignment
from ontomatch.domain.match_task import MatchRunReport, MatchTask, TaskOutcome, TaskPlan
from ontomatch.domain.ontology_graph import EntityKind, OntologyGraph
from ontomatch.domain.ontology_module import ModuleOrigin
from ontomatch.domain.rdf_terms import Iri
from ontomatch.domain.run_config import RunConfig


def pipeline_ontologies(source: OntologyGraph, target: OntologyGraph) -> Tuple[str, str]:
    onto1, onto2 = ontology_iri(source), ontology_iri(target)
    if onto1 and onto1 == onto2:
        raise ConflictingOntologiesError(
            f"The source and target ontologies share the IRI [{onto1}]"
        )
    return onto1, onto2


def _eligible_entities(graph: OntologyGraph) -> List[Iri]:
    kinds = EntityKind.anchor_kinds()
    return sorted(
        (iri for iri, info in entity_index(graph).items() if info.kind in kinds),
        key=lambda iri: iri.value,
    )


def _build_task(
    index: int,
    anchor: Iri,
    candidates: List[Iri],
    source: OntologyGraph,
    target: OntologyGraph,
    config: RunConfig,
    ontologies: Tuple[str, str],
) -> Optional[MatchTask]:
    # Shrink the neighbourhood until the prompt fits the budget
    for hops in range(config.hops, -1, -1):
        source_module = extract_module(
            source, [anchor], hops, config.superclass_depth, ModuleOrigin.SOURCE
        )
        target_module = extract_module(
            target, candidates, hops, config.superclass_depth, ModuleOrigin.TARGET
        )
        prompt = match_prompt(
            serialize_turtle(source_module.graph),
            serialize_turtle(target_module.graph),
            config.prompt_style,
            *ontologies,
        )
        estimate = estimate_tokens("\n".join(message.content for message in prompt))
        if estimate <= config.token_budget:
            return MatchTask(
                index=index,
                source_module=source_module,
                target_module=target_module,
                prompt=tuple(prompt),
                token_estimate=estimate,
                hops=hops,
            )
    AppLogger.warning(
        f"Dropped the task for anchor [{anchor.value}]: "
        f"{estimate} tokens exceed the budget of {config.token_budget} even with 0 hops"
    )
    return None


def plan(
    source: OntologyGraph, target: OntologyGraph, config: RunConfig, gateway: LlmGateway
) -> TaskPlan:
    if not len(source) or not len(target):
        raise UserError("Both ontologies must contain at least one triple")
    ontologies = pipeline_ontologies(source, target)

    scores = pagerank(
        build_entity_digraph(source),
        config.damping,
        config.pagerank_eps,
        config.pagerank_max_iter,
    )
    anchors = top_k_anchors(scores, config.anchors_k, entity_index(source))
    if not anchors:
        raise NoEligibleAnchorsError("The source ontology has no class or property to anchor on")
    pool_entities = _eligible_entities(target)
    if not pool_entities:
        raise NoEligibleAnchorsError("The target ontology has no class or property to match")

    pool_vectors = gateway.embed([embedding_text(target, iri) for iri in pool_entities])
    pool = dict(zip(pool_entities, pool_vectors))
    anchor_vectors = gateway.embed([embedding_text(source, anchor) for anchor in anchors])

    tasks = []
    for index, (anchor, vector) in enumerate(zip(anchors, anchor_vectors)):
        candidates = [iri for iri, _ in cosine_candidates(vector, pool, config.candidates_k)]
        task = _build_task(index, anchor, candidates, source, target, config, ontologies)
        if task is not None:
            tasks.append(task)

    dropped = len(anchors) - len(tasks)
    AppLogger.info(f"Planned {len(tasks)} match tasks ({dropped} dropped)")
    return TaskPlan(tasks=tuple(tasks), dropped=dropped)


def plan_tasks(
    source: OntologyGraph, target: OntologyGraph, config: RunConfig, gateway: LlmGateway
) -> List[MatchTask]:
    return list(plan(source, target, config, gateway).tasks)


def run_task(
    task: MatchTask,
    gateway: LlmGateway,
    config: RunConfig,
    ontologies: Tuple[str, str] = ("", ""),
) -> TaskOutcome:
    request = build_request(
        list(task.prompt), match_template_name(config.prompt_style), config
    )
    response = gateway.chat(request)
    repaired, report = repair(response, ontologies[0] or None, ontologies[1] or None)
    if not report.valid_after:
        error = "; ".join(str(issue) for issue in report.remaining_issues)
        AppLogger.warning(f"Task {task.index} returned an unrepairable alignment: {error}")
        return TaskOutcome(task, response, None, report, error)
    try:
        alignment = parse_alignment(repaired).with_ontologies(*ontologies)
    except (AlignmentParseError, ValueError) as error:
        AppLogger.warning(f"Task {task.index} returned an invalid alignment: {error}")
        return TaskOutcome(task, response, None, report, str(error))
    AppLogger.info(f"Task {task.index} produced {len(alignment.cells)} cells")
    return TaskOutcome(task, response, alignment, report)


def run_tasks(
    tasks: List[MatchTask],
    gateway: LlmGateway,
    config: RunConfig,
    ontologies: Tuple[str, str] = ("", ""),
) -> List[TaskOutcome]:
    """One LLM call per task; invalid answers are recorded, gateway failures propagate."""
    if not tasks:
        return []
    with ThreadPoolExecutor(max_workers=gateway.config.max_concurrent) as executor:
        return list(
            executor.map(lambda task: run_task(task, gateway, config, ontologies), tasks)
        )


def finalize(
    outcomes: List[TaskOutcome], dropped: int = 0, ontologies: Tuple[str, str] = ("", "")
) -> Tuple[Alignment, MatchRunReport]:
    partials = [outcome.alignment for outcome in outcomes if outcome.is_valid]
    if partials:
        final = normalize_alignment(merge(partials))
    else:
        final = Alignment(onto1=ontologies[0], onto2=ontologies[1])
    partial_cells = sum(len(partial.cells) for partial in partials)
    report = MatchRunReport(
        tasks=len(outcomes),
        repaired=sum(1 for outcome in outcomes if outcome.was_repaired),
        invalid=sum(1 for outcome in outcomes if not outcome.is_valid),
        final_cells=len(final.cells),
        duplicates_removed=partial_cells - len(final.cells),
        dropped=dropped,
    )
    return final, report


def _prompt_text(task: MatchTask) -> str:
    return "\n\n".join(f"[{message.role}]\n{message.content}" for message in task.prompt) + "\n"


def write_task_artifacts(
    run_dir: Path, outcomes: List[TaskOutcome], file_adapter: FileAdapter = FileAdapter()
):
    for outcome in outcomes:
        task_dir = run_dir / f"task_{outcome.task.index:03d}"
        file_adapter.write_text(task_dir / "prompt.txt", _prompt_text(outcome.task))
        file_adapter.write_text(task_dir / "response.txt", outcome.response)
        if outcome.alignment is not None:
            file_adapter.write_text(
                task_dir / "partial.edoal", serialize_alignment(outcome.alignment)
            )


def run_match(
    source: OntologyGraph,
    target: OntologyGraph,
    out_dir: str,
    config: RunConfig,
    gateway: LlmGateway,
    file_adapter: FileAdapter = FileAdapter(),
) -> Tuple[Alignment, MatchRunReport]:
    ontologies = pipeline_ontologies(source, target)
    task_plan = plan(source, target, config, gateway)
    outcomes = run_tasks(list(task_plan.tasks), gateway, config, ontologies)
    final, report = finalize(outcomes, task_plan.dropped, ontologies)

    out = file_adapter.ensure_directory(out_dir)
    run_dir = file_adapter.create_run_directory(out)
    write_task_artifacts(run_dir, outcomes, file_adapter)
    final_xml = serialize_alignment(final)
    for directory in (out, run_dir):
        file_adapter.write_text(directory / FINAL_ALIGNMENT_FILE_NAME, final_xml)
        file_adapter.write_json(directory / REPORT_FILE_NAME, report.dict())

    AppLogger.info(
        f"Final alignment has {report.final_cells} cells from {report.tasks} tasks "
        f"({report.invalid} invalid, {report.repaired} repaired, "
        f"{report.duplicates_removed} duplicates removed)"
    )
    return final, report
