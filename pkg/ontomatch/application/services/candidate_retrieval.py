from typing import Dict, List, Sequence, Tuple

import numpy as np

from ontomatch.application.services.ontology_store import label_of
from ontomatch.common.config.constants import RDFS_COMMENT
from ontomatch.common.custom_exceptions import EmbeddingError
from ontomatch.domain.ontology_graph import OntologyGraph
from ontomatch.domain.rdf_terms import Iri, Literal


def embedding_text(graph: OntologyGraph, iri: Iri) -> str:
    """The label, followed by the first comment when there is one."""
    label = label_of(graph, iri)
    comments = sorted(
        term.lexical
        for term in graph.objects(iri, RDFS_COMMENT)
        if isinstance(term, Literal)
    )
    if comments:
        return f"{label}: {comments[0]}"
    return label


def _as_matrix(vectors: Sequence[np.ndarray], dim: int) -> np.ndarray:
    matrix = np.vstack([np.asarray(vector, dtype=float) for vector in vectors])
    if matrix.shape[1] != dim:
        raise EmbeddingError(
            f"Embedding dimension mismatch: expected {dim}, got {matrix.shape[1]}"
        )
    return matrix


def cosine_candidates(
    query: np.ndarray, pool: Dict[Iri, np.ndarray], k: int
) -> List[Tuple[Iri, float]]:
    if k < 1:
        raise EmbeddingError("The candidate count must be at least 1")
    if not pool:
        return []

    query = np.asarray(query, dtype=float).ravel()
    iris = list(pool.keys())
    if any(np.asarray(pool[iri]).size != query.size for iri in iris):
        raise EmbeddingError(
            f"Embedding dimension mismatch: query has dimension {query.size}"
        )
    matrix = _as_matrix([pool[iri] for iri in iris], query.size)

    query_norm = np.linalg.norm(query)
    pool_norms = np.linalg.norm(matrix, axis=1)
    if query_norm == 0 or np.any(pool_norms == 0):
        raise EmbeddingError("Cosine similarity is undefined for zero-norm vectors")

    similarities = matrix @ query / (pool_norms * query_norm)
    ranked = sorted(
        zip(iris, similarities.tolist()), key=lambda pair: (-pair[1], pair[0].value)
    )
    return [(iri, float(similarity)) for iri, similarity in ranked[:k]]
