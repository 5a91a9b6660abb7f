import random

import numpy as np
import pytest

from ontomatch.adapter.mock_llm_adapter import (
    FaultInjectingBackend,
    MockLlmAdapter,
    hash_derived_vector,
    prompt_hash,
)
from ontomatch.common.custom_exceptions import InputFileError, MockFixtureNotFoundError
from test.test_utils import chat_request


class TestMockLlmAdapter:
    def test_answers_by_prompt_hash(self):
        request = chat_request("Align A with B")
        backend = MockLlmAdapter({prompt_hash(request.messages): "<rdf:RDF/>"})

        assert backend.complete(request) == "<rdf:RDF/>"

    def test_prompt_hash_is_sixteen_hex_digits(self):
        key = prompt_hash(chat_request().messages)

        assert len(key) == 16
        int(key, 16)

    def test_falls_back_to_template_default(self):
        backend = MockLlmAdapter({"default:match_base": "fallback"})

        assert backend.complete(chat_request(tag="match_base")) == "fallback"

    def test_exact_hash_wins_over_default(self):
        request = chat_request(tag="match_base")
        backend = MockLlmAdapter(
            {prompt_hash(request.messages): "exact", "default:match_base": "fallback"}
        )

        assert backend.complete(request) == "exact"

    def test_missing_fixture(self):
        with pytest.raises(MockFixtureNotFoundError, match="no fixture for prompt hash"):
            MockLlmAdapter({}).complete(chat_request(tag="match_base"))

    def test_embeddings_are_deterministic_unit_vectors(self):
        backend = MockLlmAdapter(embedding_dim=16)

        first, second = backend.embed(["Paper", "Paper"])
        (other,) = backend.embed(["Article"])

        assert first.shape == (16,)
        assert np.linalg.norm(first) == pytest.approx(1.0)
        assert np.array_equal(first, second)
        assert not np.array_equal(first, other)

    def test_hash_derived_vector_matches_adapter(self):
        assert np.array_equal(
            hash_derived_vector("Paper", 8), MockLlmAdapter(embedding_dim=8).embed(["Paper"])[0]
        )

    def test_from_file_reads_fixture_map(self, tmp_path):
        path = tmp_path / "fixtures.json"
        path.write_text('{"default:match_base": "answer"}')

        backend = MockLlmAdapter.from_file(str(path))

        assert backend.fixtures == {"default:match_base": "answer"}

    def test_from_file_rejects_non_string_values(self, tmp_path):
        path = tmp_path / "fixtures.json"
        path.write_text('{"default:match_base": 3}')

        with pytest.raises(InputFileError, match="must map prompt hashes"):
            MockLlmAdapter.from_file(str(path))

    def test_from_file_without_path_has_no_fixtures(self):
        assert MockLlmAdapter.from_file(None).fixtures == {}


class TestFaultInjectingBackend:
    def setup_method(self):
        self.inner = MockLlmAdapter({"default:match_base": "clean"})

    def test_rate_must_be_a_probability(self):
        with pytest.raises(ValueError, match="fault rate"):
            FaultInjectingBackend(self.inner, lambda text, rng: text, 1.5)

    @pytest.mark.parametrize("rate, expected", [(0.0, "clean"), (1.0, "broken")])
    def test_extreme_rates(self, rate, expected):
        backend = FaultInjectingBackend(self.inner, lambda text, rng: "broken", rate)

        assert backend.complete(chat_request(tag="match_base")) == expected
        assert backend.faults_injected == (1 if expected == "broken" else 0)

    def test_corruption_is_seeded_per_request(self):
        def corrupt(text: str, rng: random.Random) -> str:
            return f"{text}-{rng.randint(0, 10**6)}"

        first = FaultInjectingBackend(self.inner, corrupt, 1.0, seed=3)
        second = FaultInjectingBackend(self.inner, corrupt, 1.0, seed=3)
        request = chat_request(tag="match_base")

        assert first.complete(request) == second.complete(request)

    def test_embeddings_pass_through(self):
        backend = FaultInjectingBackend(self.inner, lambda text, rng: "broken", 1.0)

        assert np.array_equal(backend.embed(["Paper"])[0], self.inner.embed(["Paper"])[0])
