from dataclasses import dataclass
from typing import Optional, Union

from ontomatch.common.custom_exceptions import InvalidIriError
from ontomatch.common.value_transformers import is_valid_iri


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self):
        if not is_valid_iri(self.value):
            raise InvalidIriError(f"[{self.value}] is not an absolute IRI")

    def sort_key(self) -> str:
        return f"<{self.value}>"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BlankNode:
    id: str

    def sort_key(self) -> str:
        return f"_:{self.id}"

    def __str__(self) -> str:
        return f"_:{self.id}"


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Optional[Iri] = None
    language: Optional[str] = None

    def __post_init__(self):
        if self.datatype is not None and self.language is not None:
            raise ValueError("A literal carries either a datatype or a language tag")

    def sort_key(self) -> str:
        key = f'"{self.lexical}"'
        if self.datatype is not None:
            key += f"^^<{self.datatype.value}>"
        if self.language is not None:
            key += f"@{self.language}"
        return key

    def __str__(self) -> str:
        return self.lexical


RdfTerm = Union[Iri, BlankNode, Literal]
SubjectTerm = Union[Iri, BlankNode]


@dataclass(frozen=True)
class Triple:
    subject: SubjectTerm
    predicate: Iri
    object: RdfTerm

    def __post_init__(self):
        if not isinstance(self.predicate, Iri):
            raise ValueError("Triple predicates must be IRIs")
        if isinstance(self.subject, Literal):
            raise ValueError("Triple subjects cannot be literals")

    def sort_key(self):
        return (
            self.subject.sort_key(),
            self.predicate.sort_key(),
            self.object.sort_key(),
        )

    def has_blank_object(self) -> bool:
        return isinstance(self.object, BlankNode)
