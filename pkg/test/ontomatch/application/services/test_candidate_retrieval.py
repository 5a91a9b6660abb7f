import numpy as np
import pytest

from ontomatch.application.services.candidate_retrieval import (
    cosine_candidates,
    embedding_text,
)
from ontomatch.application.services.ontology_store import load_ontology
from ontomatch.common.custom_exceptions import EmbeddingError
from ontomatch.domain.rdf_terms import Iri
from test.test_utils import SOURCE_NS, toy_path


def _iri(name: str) -> Iri:
    return Iri(f"http://e.example.org/{name}")


class TestEmbeddingText:
    def setup_method(self):
        self.graph = load_ontology(toy_path("source.ttl"))

    def test_label_and_comment(self):
        assert (
            embedding_text(self.graph, Iri(SOURCE_NS + "Author"))
            == "Author: A person who writes papers."
        )

    def test_label_only(self):
        assert embedding_text(self.graph, Iri(SOURCE_NS + "Reviewer")) == "Reviewer"

    def test_unknown_entity_uses_local_name(self):
        assert embedding_text(self.graph, Iri(SOURCE_NS + "Chair")) == "Chair"


class TestCosineCandidates:
    def setup_method(self):
        self.pool = {
            _iri("east"): np.array([1.0, 0.0]),
            _iri("north"): np.array([0.0, 1.0]),
            _iri("north_east"): np.array([1.0, 1.0]),
            _iri("west"): np.array([-1.0, 0.0]),
        }

    def test_ranks_by_similarity(self):
        candidates = cosine_candidates(np.array([2.0, 0.1]), self.pool, 3)

        assert [iri for iri, _ in candidates] == [_iri("east"), _iri("north_east"), _iri("north")]
        assert candidates[0][1] == pytest.approx(2.0 / np.hypot(2.0, 0.1))

    def test_ties_break_on_iri(self):
        pool = {_iri("b"): np.array([1.0, 0.0]), _iri("a"): np.array([2.0, 0.0])}

        assert [iri for iri, _ in cosine_candidates(np.array([1.0, 0.0]), pool, 2)] == [
            _iri("a"),
            _iri("b"),
        ]

    def test_k_beyond_pool_returns_everything(self):
        assert len(cosine_candidates(np.array([1.0, 0.0]), self.pool, 10)) == 4

    def test_empty_pool(self):
        assert cosine_candidates(np.array([1.0, 0.0]), {}, 3) == []

    def test_non_positive_k(self):
        with pytest.raises(EmbeddingError, match="at least 1"):
            cosine_candidates(np.array([1.0, 0.0]), self.pool, 0)

    def test_dimension_mismatch(self):
        with pytest.raises(EmbeddingError, match="dimension mismatch"):
            cosine_candidates(np.array([1.0, 0.0, 0.0]), self.pool, 1)

    @pytest.mark.parametrize(
        "query, pool",
        [
            (np.zeros(2), {_iri("east"): np.array([1.0, 0.0])}),
            (np.array([1.0, 0.0]), {_iri("zero"): np.zeros(2)}),
        ],
    )
    def test_zero_norm_vectors(self, query, pool):
        with pytest.raises(EmbeddingError, match="zero-norm"):
            cosine_candidates(query, pool, 1)
