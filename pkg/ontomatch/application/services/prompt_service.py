import os
from typing import List, Optional, Sequence

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from ontomatch.common.custom_exceptions import ConfigurationError
from ontomatch.domain.chat import ChatMessage, ChatRequest, ChatRole
from ontomatch.domain.run_config import PromptStyle, RunConfig

PROMPTS_DIRECTORY = os.path.join(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
    "templates",
    "prompts",
)

MATCH_TEMPLATES = {
    PromptStyle.BASE: "match_base",
    PromptStyle.PATTERNS: "match_patterns",
}
FILL_TEMPLATE = "fill_template"
SOURCE_ONTOLOGY_TEMPLATE = "source_ontology"
TARGET_ONTOLOGY_TEMPLATE = "target_ontology"
EMPTY_PAIR_TEMPLATE = "empty_pair"

# Prompt text is not HTML
environment = Environment(  # nosec
    loader=FileSystemLoader(PROMPTS_DIRECTORY),
    undefined=StrictUndefined,
    keep_trailing_newline=False,
    autoescape=False,
)


def render_prompt(name: str, **variables) -> List[ChatMessage]:
    """Renders the `system` and `user` blocks of a prompt template as two chat turns."""
    template = environment.get_template(f"{name}.j2")
    missing = {"system", "user"} - set(template.blocks)
    if missing:
        raise ConfigurationError(f"Prompt template [{name}] lacks blocks {sorted(missing)}")
    context = template.new_context(variables)
    return [
        ChatMessage(role=ChatRole.SYSTEM, content=_render_block(template, "system", context)),
        ChatMessage(role=ChatRole.USER, content=_render_block(template, "user", context)),
    ]


def _render_block(template, block: str, context) -> str:
    return "".join(template.blocks[block](context)).strip()


def match_template_name(style: PromptStyle) -> str:
    return MATCH_TEMPLATES[PromptStyle(style)]


def match_prompt(
    source_turtle: str,
    target_turtle: str,
    style: PromptStyle = PromptStyle.BASE,
    source_iri: str = "",
    target_iri: str = "",
) -> List[ChatMessage]:
    return render_prompt(
        match_template_name(style),
        source_turtle=source_turtle.strip(),
        target_turtle=target_turtle.strip(),
        source_iri=source_iri,
        target_iri=target_iri,
    )


def fill_template_prompt(
    skeleton: str, slot_count: int, onto1: str, onto2: str, topic: str
) -> List[ChatMessage]:
    return render_prompt(
        FILL_TEMPLATE,
        skeleton=skeleton.strip(),
        slot_count=slot_count,
        onto1=onto1,
        onto2=onto2,
        topic=topic,
    )


def source_ontology_prompt(
    alignment: str, entities: Sequence[str], onto_iri: str, topic: str
) -> List[ChatMessage]:
    return render_prompt(
        SOURCE_ONTOLOGY_TEMPLATE,
        alignment=alignment.strip(),
        entities=list(entities),
        onto_iri=onto_iri,
        topic=topic,
    )


def target_ontology_prompt(
    alignment: str,
    entities: Sequence[str],
    onto_iri: str,
    topic: str,
    source_turtle: str,
) -> List[ChatMessage]:
    return render_prompt(
        TARGET_ONTOLOGY_TEMPLATE,
        alignment=alignment.strip(),
        entities=list(entities),
        onto_iri=onto_iri,
        topic=topic,
        source_turtle=source_turtle.strip(),
    )


def empty_pair_prompt(onto_iri: str, topic: str, avoid: Optional[str] = None) -> List[ChatMessage]:
    return render_prompt(EMPTY_PAIR_TEMPLATE, onto_iri=onto_iri, topic=topic, avoid=avoid or "")


def build_request(
    messages: List[ChatMessage], tag: str, config: RunConfig, seed: Optional[int] = None
) -> ChatRequest:
    return ChatRequest(
        messages=messages,
        model=config.gateway.model,
        temperature=config.temperature,
        max_tokens=config.max_tokens,
        seed=config.seed if seed is None else seed,
        tag=tag,
    )
