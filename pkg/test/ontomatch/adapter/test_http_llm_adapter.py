import json

import httpx
import numpy as np
import pytest

from ontomatch.adapter.http_llm_adapter import HttpLlmAdapter
from ontomatch.common.custom_exceptions import (
    GatewayResponseError,
    GatewayTransportError,
)
from ontomatch.domain.chat import ChatRequest
from ontomatch.domain.gateway_config import GatewayConfig
from test.test_utils import chat_request


class TestHttpLlmAdapter:
    def setup_method(self):
        self.config = GatewayConfig(
            base_url="http://llm.local/v1", api_key="sk-test", embedding_model="embedder"
        )
        self.sent = []

    def _adapter(self, status_code=200, payload=None, error=None) -> HttpLlmAdapter:
        def handler(request: httpx.Request) -> httpx.Response:
            self.sent.append(request)
            if error is not None:
                raise error
            return httpx.Response(status_code, json=payload if payload is not None else {})

        client = httpx.Client(transport=httpx.MockTransport(handler))
        return HttpLlmAdapter(self.config, client)

    def test_complete_posts_openai_compatible_body(self):
        adapter = self._adapter(payload={"choices": [{"message": {"content": "<rdf:RDF/>"}}]})
        request = ChatRequest(
            messages=chat_request("Align").messages,
            model="local-model",
            temperature=0.0,
            max_tokens=64,
            seed=7,
            tag="match_base",
        )

        answer = adapter.complete(request)

        assert answer == "<rdf:RDF/>"
        sent = self.sent[0]
        assert str(sent.url) == "http://llm.local/v1/chat/completions"
        assert sent.headers["Authorization"] == "Bearer sk-test"
        body = json.loads(sent.content)
        assert body == {
            "model": "local-model",
            "messages": [
                {"role": "system", "content": "You are an aligner."},
                {"role": "user", "content": "Align"},
            ],
            "temperature": 0.0,
            "max_tokens": 64,
            "seed": 7,
        }

    def test_seed_is_omitted_when_unset(self):
        adapter = self._adapter(payload={"choices": [{"message": {"content": "ok"}}]})

        adapter.complete(chat_request())

        assert "seed" not in json.loads(self.sent[0].content)

    def test_no_authorization_header_without_key(self):
        self.config = GatewayConfig(base_url="http://llm.local/v1")
        adapter = self._adapter(payload={"choices": [{"message": {"content": "ok"}}]})

        adapter.complete(chat_request())

        assert "Authorization" not in self.sent[0].headers

    @pytest.mark.parametrize("status_code", [429, 500, 503])
    def test_retryable_statuses_raise_transport_errors(self, status_code):
        adapter = self._adapter(status_code=status_code)

        with pytest.raises(GatewayTransportError, match=str(status_code)):
            adapter.complete(chat_request())

    def test_client_errors_are_not_retryable(self):
        adapter = self._adapter(status_code=400, payload={"error": "bad"})

        with pytest.raises(GatewayResponseError) as error:
            adapter.complete(chat_request())

        assert error.value.status_code == 400

    def test_connection_failures_are_transport_errors(self):
        adapter = self._adapter(error=httpx.ConnectError("refused"))

        with pytest.raises(GatewayTransportError, match="Transport failure"):
            adapter.complete(chat_request())

    @pytest.mark.parametrize(
        "payload, message",
        [
            ({"choices": []}, "no choices"),
            ({"choices": [{"message": {}}]}, "no message content"),
        ],
    )
    def test_malformed_completions(self, payload, message):
        adapter = self._adapter(payload=payload)

        with pytest.raises(GatewayResponseError, match=message):
            adapter.complete(chat_request())

    def test_embed_orders_vectors_by_index(self):
        adapter = self._adapter(
            payload={
                "data": [
                    {"index": 1, "embedding": [0.0, 1.0]},
                    {"index": 0, "embedding": [1.0, 0.0]},
                ]
            }
        )

        vectors = adapter.embed(["Paper", "Article"])

        assert np.array_equal(vectors[0], np.array([1.0, 0.0]))
        assert json.loads(self.sent[0].content) == {
            "model": "embedder",
            "input": ["Paper", "Article"],
        }

    def test_embed_count_mismatch(self):
        adapter = self._adapter(payload={"data": [{"index": 0, "embedding": [1.0]}]})

        with pytest.raises(GatewayResponseError, match="Expected 2 embeddings but received 1"):
            adapter.embed(["Paper", "Article"])
