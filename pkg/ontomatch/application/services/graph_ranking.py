from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ontomatch.common.config.constants import (
    DEFAULT_DAMPING,
    DEFAULT_PAGERANK_EPS,
    DEFAULT_PAGERANK_MAX_ITER,
)
from ontomatch.common.custom_exceptions import UserError
from ontomatch.common.logger import AppLogger
from ontomatch.domain.ontology_graph import EntityInfo, EntityKind, OntologyGraph
from ontomatch.domain.ontology_module import EntityScore
from ontomatch.domain.rdf_terms import Iri


@dataclass(frozen=True)
class EntityDigraph:
    nodes: Tuple[Iri, ...]
    edges: frozenset

    def index_of(self) -> Dict[Iri, int]:
        return {node: position for position, node in enumerate(self.nodes)}


def build_entity_digraph(graph: OntologyGraph) -> EntityDigraph:
    nodes = set()
    links = set()
    for triple in graph:
        if isinstance(triple.subject, Iri):
            nodes.add(triple.subject)
        if isinstance(triple.object, Iri):
            nodes.add(triple.object)
            if isinstance(triple.subject, Iri):
                links.add((triple.subject, triple.object))
    ordered = tuple(sorted(nodes, key=lambda node: node.value))
    position = {node: index for index, node in enumerate(ordered)}
    return EntityDigraph(
        nodes=ordered,
        edges=frozenset((position[start], position[end]) for start, end in links),
    )


def pagerank(
    digraph: EntityDigraph,
    damping: float = DEFAULT_DAMPING,
    eps: float = DEFAULT_PAGERANK_EPS,
    max_iter: int = DEFAULT_PAGERANK_MAX_ITER,
) -> List[EntityScore]:
    """
    Power iteration with uniform teleport.

    Mass held by nodes without outgoing edges is spread uniformly over all
    nodes. Iteration stops once the L1 change drops below `eps` or after
    `max_iter` rounds.
    """
    size = len(digraph.nodes)
    if size == 0:
        raise UserError("PageRank needs a graph with at least one node")
    if not 0.0 < damping < 1.0:
        raise UserError("The damping factor must lie in (0, 1)")

    edges = np.array(sorted(digraph.edges), dtype=np.int64).reshape(-1, 2)
    sources, targets = edges[:, 0], edges[:, 1]
    out_degree = np.bincount(sources, minlength=size).astype(float)
    dangling = out_degree == 0

    scores = np.full(size, 1.0 / size)
    for iteration in range(max_iter):
        flow = scores[sources] / out_degree[sources]
        updated = damping * np.bincount(targets, weights=flow, minlength=size)
        updated += damping * scores[dangling].sum() / size
        updated += (1.0 - damping) / size
        delta = np.abs(updated - scores).sum()
        scores = updated
        if delta < eps:
            AppLogger.debug(f"PageRank converged after {iteration + 1} iterations")
            break

    scores = scores / scores.sum()
    return [
        EntityScore(iri=node, score=float(score))
        for node, score in zip(digraph.nodes, scores)
    ]


def top_k_anchors(
    scores: List[EntityScore], k: int, index: Dict[Iri, EntityInfo]
) -> List[Iri]:
    eligible_kinds = EntityKind.anchor_kinds()
    eligible = [
        score
        for score in scores
        if score.iri in index and index[score.iri].kind in eligible_kinds
    ]
    ranked = sorted(eligible, key=lambda score: (-score.score, score.iri.value))
    return [score.iri for score in ranked[:k]]
