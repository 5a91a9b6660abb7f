import random
import threading
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.adapter.llm_backend import LlmBackend
from ontomatch.common.config.constants import MOCK_EMBEDDING_DIM
from ontomatch.common.config.llm import MOCK_DEFAULT_FIXTURE_PREFIX
from ontomatch.common.custom_exceptions import (
    InputFileError,
    MockFixtureNotFoundError,
)
from ontomatch.common.logger import AppLogger
from ontomatch.common.utilities import fnv1a_64
from ontomatch.domain.chat import ChatMessage, ChatRequest


def prompt_hash(messages: Sequence[ChatMessage]) -> str:
    transcript = "\n".join(f"{message.role}:{message.content}" for message in messages)
    return format(fnv1a_64(transcript), "016x")


def hash_derived_vector(text: str, dim: int) -> np.ndarray:
    generator = np.random.default_rng(fnv1a_64(text))
    vector = generator.standard_normal(dim)
    norm = np.linalg.norm(vector)
    # A zero draw is practically impossible, but a unit vector is promised
    if norm == 0:
        vector[0], norm = 1.0, 1.0
    return vector / norm


class MockLlmAdapter(LlmBackend):
    """
    Deterministic backend for tests and offline runs.

    Chat responses come from a fixture map keyed by the 16-digit hex FNV-1a
    hash of the `role:content` transcript. When the hash is missing, an entry
    named `default:<tag>` for the request's prompt template is used instead.
    """

    def __init__(
        self, fixtures: Optional[Dict[str, str]] = None, embedding_dim: int = MOCK_EMBEDDING_DIM
    ):
        self.__fixtures = dict(fixtures or {})
        self.__embedding_dim = embedding_dim

    @classmethod
    def from_file(
        cls,
        path: Optional[str],
        embedding_dim: int = MOCK_EMBEDDING_DIM,
        file_adapter: FileAdapter = FileAdapter(),
    ) -> "MockLlmAdapter":
        if not path:
            AppLogger.warning("Mock backend started without a fixture file")
            return cls({}, embedding_dim)
        fixtures = file_adapter.read_json(path)
        if not isinstance(fixtures, dict) or not all(
            isinstance(value, str) for value in fixtures.values()
        ):
            raise InputFileError(
                f"The fixture file [{path}] must map prompt hashes to response text"
            )
        return cls(fixtures, embedding_dim)

    @property
    def fixtures(self) -> Dict[str, str]:
        return dict(self.__fixtures)

    def complete(self, request: ChatRequest) -> str:
        key = prompt_hash(request.messages)
        if key in self.__fixtures:
            return self.__fixtures[key]
        if request.tag:
            fallback = f"{MOCK_DEFAULT_FIXTURE_PREFIX}{request.tag}"
            if fallback in self.__fixtures:
                AppLogger.debug(f"Prompt {key} answered by fixture {fallback}")
                return self.__fixtures[fallback]
        raise MockFixtureNotFoundError(f"There is no fixture for prompt hash [{key}]")

    def embed(self, texts: List[str]) -> List[np.ndarray]:
        return [hash_derived_vector(text, self.__embedding_dim) for text in texts]


class FaultInjectingBackend(LlmBackend):
    """Corrupts a seeded fraction of the wrapped backend's chat responses."""

    def __init__(
        self,
        inner: LlmBackend,
        corrupt: Callable[[str, random.Random], str],
        rate: float,
        seed: int = 0,
    ):
        if not 0.0 <= rate <= 1.0:
            raise ValueError("The fault rate must lie in [0, 1]")
        self.__inner = inner
        self.__corrupt = corrupt
        self.__rate = rate
        self.__seed = seed
        self.faults_injected = 0
        self.__lock = threading.Lock()

    def complete(self, request: ChatRequest) -> str:
        response = self.__inner.complete(request)
        # Seeded per request so the outcome does not depend on thread scheduling
        generator = random.Random(fnv1a_64(f"{self.__seed}:{request.transcript()}"))
        if generator.random() < self.__rate:
            with self.__lock:
                self.faults_injected += 1
            return self.__corrupt(response, generator)
        return response

    def embed(self, texts: List[str]) -> List[np.ndarray]:
        return self.__inner.embed(texts)
