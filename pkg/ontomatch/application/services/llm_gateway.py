import threading
import time
from typing import Callable, List, Optional

import numpy as np
from tenacity import (
    RetryCallState,
    Retrying,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

from ontomatch.adapter.http_llm_adapter import HttpLlmAdapter
from ontomatch.adapter.llm_backend import LlmBackend
from ontomatch.adapter.mock_llm_adapter import MockLlmAdapter
from ontomatch.common.custom_exceptions import GatewayTransportError, UserError
from ontomatch.common.logger import AppLogger
from ontomatch.domain.chat import ChatRequest
from ontomatch.domain.gateway_config import Backend, GatewayConfig


def build_backend(config: GatewayConfig) -> LlmBackend:
    if config.backend == Backend.MOCK:
        return MockLlmAdapter.from_file(config.fixtures_path, config.embedding_dim)
    return HttpLlmAdapter(config)


def _log_retry(retry_state: RetryCallState):
    AppLogger.warning(
        f"LLM call failed on attempt {retry_state.attempt_number}, retrying: "
        f"{retry_state.outcome.exception()}"
    )


class LlmGateway:
    """
    Shared client for every LLM call.

    At most `max_concurrent` backend calls run at once across all threads;
    transport failures are retried with exponential backoff up to
    `retry_limit` extra attempts.
    """

    def __init__(
        self,
        config: GatewayConfig,
        backend: Optional[LlmBackend] = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self.backend = backend or build_backend(config)
        self.__permits = threading.BoundedSemaphore(config.max_concurrent)
        self.__sleep = sleep

    def _retrying(self) -> Retrying:
        return Retrying(
            retry=retry_if_exception_type(GatewayTransportError),
            stop=stop_after_attempt(self.config.retry_limit + 1),
            wait=wait_exponential(
                multiplier=self.config.backoff_initial_seconds,
                min=self.config.backoff_initial_seconds,
                max=self.config.backoff_max_seconds,
            ),
            sleep=self.__sleep,
            before_sleep=_log_retry,
            reraise=True,
        )

    def _call(self, function, *args):
        with self.__permits:
            return function(*args)

    def chat(self, request: ChatRequest) -> str:
        return self._retrying()(self._call, self.backend.complete, request)

    def embed(self, texts: List[str]) -> List[np.ndarray]:
        if not texts:
            raise UserError("At least one text is needed for an embedding call")
        vectors = self._retrying()(self._call, self.backend.embed, list(texts))
        if len(vectors) != len(texts):
            raise UserError(
                f"The backend returned {len(vectors)} embeddings for {len(texts)} texts"
            )
        return vectors
