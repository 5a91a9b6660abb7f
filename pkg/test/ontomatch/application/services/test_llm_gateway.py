from concurrent.futures import ThreadPoolExecutor
from unittest.mock import Mock

import numpy as np
import pytest

from ontomatch.adapter.http_llm_adapter import HttpLlmAdapter
from ontomatch.adapter.mock_llm_adapter import MockLlmAdapter
from ontomatch.application.services.llm_gateway import LlmGateway, build_backend
from ontomatch.common.custom_exceptions import (
    GatewayTransportError,
    MockFixtureNotFoundError,
    UserError,
)
from ontomatch.domain.gateway_config import Backend, GatewayConfig
from test.test_utils import ScriptedBackend, chat_request, toy_path


def _config(**overrides) -> GatewayConfig:
    settings = {
        "backend": Backend.MOCK,
        "max_concurrent": 2,
        "retry_limit": 2,
        "backoff_initial_seconds": 0.5,
        "backoff_max_seconds": 4.0,
    }
    settings.update(overrides)
    return GatewayConfig(**settings)


class TestBuildBackend:
    def test_mock_backend_reads_fixtures(self):
        backend = build_backend(_config(fixtures_path=toy_path("fixtures.json")))

        assert isinstance(backend, MockLlmAdapter)
        assert "default:match_base" in backend.fixtures

    def test_http_backend(self):
        assert isinstance(build_backend(_config(backend=Backend.HTTP)), HttpLlmAdapter)


class TestChat:
    def setup_method(self):
        self.sleeps = []

    def test_returns_the_backend_answer(self):
        backend = ScriptedBackend()
        gateway = LlmGateway(_config(), backend, self.sleeps.append)

        request = chat_request(
            user='Write a small ontology http://e.example.org/o about "cats"', tag="empty_pair"
        )

        answer = gateway.chat(request)

        assert "http://e.example.org/o#CatsConcept" in answer
        assert len(backend.requests) == 1

    def test_retries_transport_failures_with_backoff(self):
        backend = ScriptedBackend(match_response="<ok/>", transport_failures=2)
        gateway = LlmGateway(_config(), backend, self.sleeps.append)

        assert gateway.chat(chat_request()) == "<ok/>"
        assert len(backend.requests) == 3
        assert self.sleeps == [0.5, 1.0]

    def test_gives_up_after_the_retry_limit(self):
        backend = ScriptedBackend(match_response="<ok/>", transport_failures=5)
        gateway = LlmGateway(_config(retry_limit=1), backend, self.sleeps.append)

        with pytest.raises(GatewayTransportError, match="connection reset"):
            gateway.chat(chat_request())

        assert len(backend.requests) == 2

    def test_other_errors_are_not_retried(self):
        backend = Mock()
        backend.complete.side_effect = MockFixtureNotFoundError("no fixture")
        gateway = LlmGateway(_config(), backend, self.sleeps.append)

        with pytest.raises(MockFixtureNotFoundError):
            gateway.chat(chat_request())

        backend.complete.assert_called_once()
        assert self.sleeps == []

    def test_caps_concurrent_calls(self):
        backend = ScriptedBackend(match_response="<ok/>", delay_seconds=0.02)
        gateway = LlmGateway(_config(max_concurrent=2), backend, self.sleeps.append)

        with ThreadPoolExecutor(max_workers=8) as executor:
            answers = list(executor.map(lambda _: gateway.chat(chat_request()), range(16)))

        assert answers == ["<ok/>"] * 16
        assert backend.peak_in_flight <= 2


class TestEmbed:
    def test_returns_one_vector_per_text(self):
        backend = ScriptedBackend()
        gateway = LlmGateway(_config(), backend)

        vectors = gateway.embed(["Paper", "Article"])

        assert len(vectors) == 2
        assert backend.embedded == ["Paper", "Article"]
        assert np.linalg.norm(vectors[0]) == pytest.approx(1.0)

    def test_needs_texts(self):
        with pytest.raises(UserError, match="At least one text"):
            LlmGateway(_config(), ScriptedBackend()).embed([])

    def test_rejects_a_short_answer(self):
        backend = Mock()
        backend.embed.return_value = [np.ones(3)]

        with pytest.raises(UserError, match="1 embeddings for 2 texts"):
            LlmGateway(_config(), backend).embed(["a", "b"])
