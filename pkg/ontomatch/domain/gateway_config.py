from typing import Optional

from pydantic import BaseModel, Extra, SecretStr, validator

from ontomatch.common.config.constants import MOCK_EMBEDDING_DIM
from ontomatch.common.config.llm import (
    DEFAULT_API_BASE,
    DEFAULT_BACKOFF_INITIAL_SECONDS,
    DEFAULT_BACKOFF_MAX_SECONDS,
    DEFAULT_EMBEDDING_MODEL,
    DEFAULT_MAX_CONCURRENT,
    DEFAULT_MODEL,
    DEFAULT_RETRY_LIMIT,
    DEFAULT_TIMEOUT_SECONDS,
)
from ontomatch.common.utilities import BaseEnum


class Backend(BaseEnum):
    HTTP = "http"
    MOCK = "mock"


class GatewayConfig(BaseModel):
    base_url: str = DEFAULT_API_BASE
    api_key: SecretStr = SecretStr("")
    model: str = DEFAULT_MODEL
    embedding_model: str = DEFAULT_EMBEDDING_MODEL
    embedding_dim: int = MOCK_EMBEDDING_DIM
    max_concurrent: int = DEFAULT_MAX_CONCURRENT
    retry_limit: int = DEFAULT_RETRY_LIMIT
    timeout_seconds: float = DEFAULT_TIMEOUT_SECONDS
    backoff_initial_seconds: float = DEFAULT_BACKOFF_INITIAL_SECONDS
    backoff_max_seconds: float = DEFAULT_BACKOFF_MAX_SECONDS
    backend: Backend = Backend.HTTP
    fixtures_path: Optional[str] = None

    class Config:
        extra = Extra.forbid
        validate_assignment = True

    @validator("max_concurrent", "embedding_dim")
    def at_least_one(cls, value, field):
        if value < 1:
            raise ValueError(f"{field.name} must be >= 1")
        return value

    @validator("retry_limit")
    def retry_limit_not_negative(cls, value):
        if value < 0:
            raise ValueError("retry_limit must be >= 0")
        return value

    @validator("timeout_seconds", "backoff_initial_seconds", "backoff_max_seconds")
    def positive_durations(cls, value, field):
        if value <= 0:
            raise ValueError(f"{field.name} must be positive")
        return value

    @validator("base_url")
    def strip_trailing_slash(cls, value):
        return value.rstrip("/")
