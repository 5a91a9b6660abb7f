from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from ontomatch.common.config.constants import RDF_TYPE
from ontomatch.common.utilities import BaseEnum
from ontomatch.domain.rdf_terms import Iri, RdfTerm, SubjectTerm, Triple


class EntityKind(BaseEnum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    INDIVIDUAL = "Individual"
    UNKNOWN = "Unknown"

    @classmethod
    def anchor_kinds(cls) -> List["EntityKind"]:
        return [cls.CLASS, cls.OBJECT_PROPERTY, cls.DATA_PROPERTY]


@dataclass(frozen=True)
class EntityInfo:
    iri: Iri
    kind: EntityKind
    labels: Tuple[str, ...] = ()
    comments: Tuple[str, ...] = ()


class OntologyGraph:
    """
    Immutable triple set with its prefix map.

    Indexes by subject and by object are built once at construction so that
    neighbourhood traversal in module extraction stays linear in the output.
    """

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        prefixes: Optional[Mapping[str, str]] = None,
        base: Optional[str] = None,
    ):
        self._triples: frozenset = frozenset(triples)
        self._prefixes: Dict[str, str] = dict(sorted((prefixes or {}).items()))
        self._base: Optional[str] = base
        self._by_subject: Dict[SubjectTerm, List[Triple]] = defaultdict(list)
        self._by_object: Dict[RdfTerm, List[Triple]] = defaultdict(list)
        for triple in self.sorted_triples():
            self._by_subject[triple.subject].append(triple)
            self._by_object[triple.object].append(triple)

    @property
    def triples(self) -> frozenset:
        return self._triples

    @property
    def prefixes(self) -> Mapping[str, str]:
        return MappingProxyType(self._prefixes)

    @property
    def base(self) -> Optional[str]:
        return self._base

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OntologyGraph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def sorted_triples(self) -> List[Triple]:
        return sorted(self._triples, key=lambda triple: triple.sort_key())

    def subjects(self) -> Set[SubjectTerm]:
        return set(self._by_subject.keys())

    def triples_about(self, subject: SubjectTerm) -> List[Triple]:
        return list(self._by_subject.get(subject, []))

    def triples_pointing_to(self, term: RdfTerm) -> List[Triple]:
        return list(self._by_object.get(term, []))

    def objects(self, subject: SubjectTerm, predicate: str) -> List[RdfTerm]:
        return [
            triple.object
            for triple in self._by_subject.get(subject, [])
            if triple.predicate.value == predicate
        ]

    def subjects_with(self, predicate: str, obj: RdfTerm) -> List[SubjectTerm]:
        return [
            triple.subject
            for triple in self._by_object.get(obj, [])
            if triple.predicate.value == predicate
        ]

    def types_of(self, subject: SubjectTerm) -> List[Iri]:
        return [
            term for term in self.objects(subject, RDF_TYPE) if isinstance(term, Iri)
        ]

    def has_type(self, subject: SubjectTerm) -> bool:
        return len(self.types_of(subject)) > 0

    def mentions(self, term: RdfTerm) -> bool:
        return term in self._by_subject or term in self._by_object

    def with_triples(self, extra: Iterable[Triple]) -> "OntologyGraph":
        return OntologyGraph(self._triples.union(extra), self._prefixes, self._base)
