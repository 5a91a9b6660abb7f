from pathlib import Path
from typing import Optional

import click

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.application.services.alignment_repair import repair
from ontomatch.application.services.config_service import load_run_config
from ontomatch.application.services.evaluation_service import (
    evaluate_manifest,
    load_alignment,
    report_table,
    reports_to_json,
)
from ontomatch.application.services.graph_ranking import (
    build_entity_digraph,
    pagerank,
    top_k_anchors,
)
from ontomatch.application.services.llm_gateway import LlmGateway
from ontomatch.application.services.match_service import run_match
from ontomatch.application.services.module_extraction import (
    extract_module,
    module_file_name,
)
from ontomatch.application.services.ontology_store import (
    entity_index,
    load_ontology,
    serialize_turtle,
)
from ontomatch.application.services.reference_modules import (
    reference_module_pairs,
    write_module_pairs,
)
from ontomatch.application.services.synthesis_service import build_corpus, default_split
from ontomatch.common.config.constants import CORPUS_EMPTY_PAIRS, CORPUS_POSITIVE_PAIRS
from ontomatch.common.custom_exceptions import (
    EmptyResultError,
    NoEligibleAnchorsError,
    UnrepairableAlignmentError,
    UserError,
)
from ontomatch.common.logger import AppLogger, init_logger
from ontomatch.domain.gateway_config import Backend
from ontomatch.domain.ontology_module import ModuleOrigin
from ontomatch.domain.run_config import PromptStyle
from ontomatch.exception_handler import handle_exceptions

file_adapter = FileAdapter()


def _run_config(ctx: click.Context, **overrides):
    options = ctx.obj
    return load_run_config(
        options["config"],
        overrides={
            "seed": options["seed"],
            "backend": options["backend"],
            "fixtures_path": options["fixtures"],
            **overrides,
        },
        file_adapter=file_adapter,
    )


@click.group()
@click.option(
    "--config", "config_path", type=click.Path(), default=None, help="TOML run configuration"
)
@click.option("--seed", type=int, default=None, help="Seed for every random choice and LLM call")
@click.option("--backend", type=click.Choice(Backend.values()), default=None, help="LLM backend")
@click.option("--fixtures", type=click.Path(), default=None, help="Mock backend fixture file")
@click.option("--log-level", default=None, help="Logging level, defaults to $LOG_LEVEL or INFO")
@click.pass_context
def cli(ctx, config_path, seed, backend, fixtures, log_level):
    """Ontology matching with LLMs over EDOAL alignments."""
    init_logger(log_level)
    ctx.obj = {
        "config": config_path,
        "seed": seed,
        "backend": backend,
        "fixtures": fixtures,
    }


@cli.command("match")
@click.argument("source", type=click.Path())
@click.argument("target", type=click.Path())
@click.option("--out", "out_dir", default="out", show_default=True, type=click.Path())
@click.option("--prompt-style", type=click.Choice(PromptStyle.values()), default=None)
@click.pass_context
@handle_exceptions
def cmd_match(ctx, source, target, out_dir, prompt_style):
    """Align SOURCE with TARGET and write final.edoal and report.json."""
    config = _run_config(ctx, prompt_style=prompt_style)
    source_graph = load_ontology(source, file_adapter)
    target_graph = load_ontology(target, file_adapter)
    gateway = LlmGateway(config.gateway)

    _, report = run_match(
        source_graph, target_graph, out_dir, config, gateway, file_adapter
    )
    click.echo(
        f"{report.final_cells} cells from {report.tasks} tasks "
        f"({report.invalid} invalid, {report.repaired} repaired, {report.dropped} dropped)"
    )
    if report.tasks - report.invalid == 0:
        raise EmptyResultError("No task produced a valid partial alignment")


@cli.command("gen-data")
@click.option("--total", type=int, default=None, help="Records to generate at the default ratio")
@click.option("--n-pos", type=int, default=None, help="Records with at least one correspondence")
@click.option("--n-neg", type=int, default=None, help="Records with an empty alignment")
@click.option("--out", "out_dir", default="corpus", show_default=True, type=click.Path())
@click.pass_context
@handle_exceptions
def cmd_gen_data(ctx, total, n_pos, n_neg, out_dir):
    """Generate a synthetic fine-tuning corpus."""
    config = _run_config(ctx)
    if n_pos is None and n_neg is None:
        n_pos, n_neg = default_split(
            total if total is not None else CORPUS_POSITIVE_PAIRS + CORPUS_EMPTY_PAIRS
        )
    elif total is not None:
        raise UserError("Use either --total or --n-pos/--n-neg")
    n_pos, n_neg = n_pos or 0, n_neg or 0

    manifest = build_corpus(
        n_pos, n_neg, config.seed, LlmGateway(config.gateway), config, out_dir, file_adapter
    )
    click.echo(
        f"{manifest.emitted} of {manifest.total} records written "
        f"(valid rate {manifest.valid_rate:.3f})"
    )


@cli.command("repair")
@click.argument("in_path", type=click.Path())
@click.argument("out_path", type=click.Path())
@handle_exceptions
def cmd_repair(in_path, out_path):
    """Repair the alignment IN_PATH into OUT_PATH and print what was fixed."""
    repaired, report = repair(file_adapter.read_text(in_path))
    file_adapter.write_text(out_path, repaired)
    for line in report.to_lines():
        click.echo(line)
    if not report.valid_after:
        raise UnrepairableAlignmentError(f"[{in_path}] is still invalid after repair")


@cli.command("eval")
@click.argument("manifest", type=click.Path())
@click.option("--out", "out_path", default="eval.txt", show_default=True, type=click.Path())
@handle_exceptions
def cmd_eval(manifest, out_path):
    """Score system alignments against references listed in MANIFEST."""
    reports = evaluate_manifest(manifest, file_adapter)
    table = report_table(reports)
    file_adapter.write_text(out_path, table)
    file_adapter.write_text(Path(out_path).with_suffix(".json"), reports_to_json(reports))
    click.echo(table, nl=False)


@cli.command("modules")
@click.argument("ontology", type=click.Path())
@click.option(
    "--origin",
    type=click.Choice(ModuleOrigin.values()),
    default=ModuleOrigin.SOURCE.value,
    show_default=True,
)
@click.option("--out", "out_dir", default="modules", show_default=True, type=click.Path())
@click.option(
    "--reference",
    type=click.Path(),
    default=None,
    help="Anchor module pairs on the cells of this reference alignment",
)
@click.option("--target", type=click.Path(), default=None, help="Target ontology for --reference")
@click.pass_context
@handle_exceptions
def cmd_modules(ctx, ontology, origin, out_dir, reference, target):
    """
    Write one Turtle module per top-ranked anchor of ONTOLOGY.

    With --reference, ONTOLOGY is the source and modules are built in pairs
    around the cells of the reference alignment instead.
    """
    config = _run_config(ctx)
    if reference is not None:
        _reference_modules(config, ontology, target, reference, out_dir)
        return
    graph = load_ontology(ontology, file_adapter)
    if not len(graph):
        raise UserError(f"The ontology [{ontology}] has no triples")
    scores = pagerank(
        build_entity_digraph(graph),
        config.damping,
        config.pagerank_eps,
        config.pagerank_max_iter,
    )
    anchors = top_k_anchors(scores, config.anchors_k, entity_index(graph))
    if not anchors:
        raise NoEligibleAnchorsError(
            f"The ontology [{ontology}] has no class or property to anchor on"
        )

    out = file_adapter.ensure_directory(out_dir)
    for index, anchor in enumerate(anchors):
        module = extract_module(
            graph, [anchor], config.hops, config.superclass_depth, ModuleOrigin(origin)
        )
        file_adapter.write_text(
            out / module_file_name(module, index), serialize_turtle(module.graph)
        )
    AppLogger.info(f"Wrote {len(anchors)} modules to {out}")
    click.echo(len(anchors))


def _reference_modules(
    config, source_path: str, target_path: Optional[str], reference: str, out_dir: str
):
    if target_path is None:
        raise UserError("--reference needs the target ontology given with --target")
    source = load_ontology(source_path, file_adapter)
    target = load_ontology(target_path, file_adapter)
    alignment = load_alignment(reference, file_adapter)
    pairs = reference_module_pairs(
        source, target, alignment, config.hops, config.superclass_depth
    )
    written = write_module_pairs(pairs, source, target, alignment, out_dir, file_adapter)
    AppLogger.info(f"Wrote {len(pairs)} module pairs to {written.parent}")
    click.echo(len(pairs))


def main(args: Optional[list] = None):
    cli.main(args=args, prog_name="ontomatch")
