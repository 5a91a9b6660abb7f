from typing import Dict

from pydantic import BaseModel, Extra, validator

from ontomatch.common.config.constants import (
    DEFAULT_ANCHORS_K,
    DEFAULT_CANDIDATES_K,
    DEFAULT_DAMPING,
    DEFAULT_HOPS,
    DEFAULT_MAX_CELLS,
    DEFAULT_MAX_DEPTH,
    DEFAULT_MIN_CELLS,
    DEFAULT_PAGERANK_EPS,
    DEFAULT_PAGERANK_MAX_ITER,
    DEFAULT_SUPERCLASS_DEPTH,
    DEFAULT_TOKEN_BUDGET,
    MIN_TOKEN_BUDGET,
)
from ontomatch.common.config.llm import DEFAULT_MAX_RESPONSE_TOKENS
from ontomatch.common.utilities import BaseEnum
from ontomatch.domain.gateway_config import GatewayConfig


class PromptStyle(BaseEnum):
    BASE = "base"
    PATTERNS = "patterns"


class RunConfig(BaseModel):
    anchors_k: int = DEFAULT_ANCHORS_K
    candidates_k: int = DEFAULT_CANDIDATES_K
    hops: int = DEFAULT_HOPS
    superclass_depth: int = DEFAULT_SUPERCLASS_DEPTH
    token_budget: int = DEFAULT_TOKEN_BUDGET
    prompt_style: PromptStyle = PromptStyle.BASE
    gateway: GatewayConfig = GatewayConfig()
    seed: int = 0
    max_depth: int = DEFAULT_MAX_DEPTH
    min_cells: int = DEFAULT_MIN_CELLS
    max_cells: int = DEFAULT_MAX_CELLS
    rule_weights: Dict[str, float] = dict()
    damping: float = DEFAULT_DAMPING
    pagerank_eps: float = DEFAULT_PAGERANK_EPS
    pagerank_max_iter: int = DEFAULT_PAGERANK_MAX_ITER
    max_tokens: int = DEFAULT_MAX_RESPONSE_TOKENS
    temperature: float = 0.0

    class Config:
        extra = Extra.forbid

    @validator(
        "anchors_k", "candidates_k", "pagerank_max_iter", "max_tokens", "min_cells"
    )
    def counts_at_least_one(cls, value, field):
        if value < 1:
            raise ValueError(f"{field.name} must be >= 1")
        return value

    @validator("hops", "superclass_depth", "max_depth")
    def depths_not_negative(cls, value, field):
        if value < 0:
            raise ValueError(f"{field.name} must be >= 0")
        return value

    @validator("token_budget")
    def token_budget_floor(cls, value):
        if value < MIN_TOKEN_BUDGET:
            raise ValueError(f"token_budget must be >= {MIN_TOKEN_BUDGET}")
        return value

    @validator("max_cells")
    def max_cells_not_below_min(cls, value, values):
        if value < values.get("min_cells", 1):
            raise ValueError("max_cells must be >= min_cells")
        return value

    @validator("damping")
    def damping_in_open_interval(cls, value):
        if not 0.0 < value < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        return value

    @validator("pagerank_eps")
    def eps_positive(cls, value):
        if value <= 0:
            raise ValueError("pagerank_eps must be positive")
        return value

    @validator("temperature")
    def temperature_not_negative(cls, value):
        if value < 0:
            raise ValueError("temperature must be >= 0")
        return value

    @validator("rule_weights")
    def weights_positive(cls, weights):
        for key, weight in weights.items():
            if weight <= 0:
                raise ValueError(f"rule weight [{key}] must be positive")
        return weights
