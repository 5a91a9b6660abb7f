from dataclasses import dataclass, field
from typing import List, Optional

from ontomatch.common.utilities import BaseEnum


class FixKind(BaseEnum):
    MISSING_PREFIX = "MissingPrefix"
    MISSING_ONTOLOGY_TAG = "MissingOntologyTag"
    UNPREFIXED_ENTITY = "UnprefixedEntity"
    INVALID_LITERAL = "InvalidLiteral"
    EOS_TOKEN = "EosToken"


@dataclass(frozen=True)
class Fix:
    kind: FixKind
    detail: str
    # Name of the repair step that applied the fix
    stage: Optional[str] = field(default=None, compare=False)


@dataclass(frozen=True)
class ValidationIssue:
    # None when the problem matches no repairable class
    kind: Optional[FixKind]
    detail: str

    def __str__(self) -> str:
        label = self.kind.value if self.kind else "Invalid"
        return f"{label}: {self.detail}"


@dataclass(frozen=True)
class RepairReport:
    fixes: List[Fix]
    valid_after: bool
    remaining_issues: List[ValidationIssue]

    def kinds(self) -> List[FixKind]:
        return [fix.kind for fix in self.fixes]

    def has_fixes(self) -> bool:
        return len(self.fixes) > 0

    def stages(self) -> List[str]:
        stages = []
        for fix in self.fixes:
            if fix.stage and fix.stage not in stages:
                stages.append(fix.stage)
        return stages

    def to_lines(self) -> List[str]:
        lines = [f"{fix.kind.value}: {fix.detail}" for fix in self.fixes]
        lines.extend(str(issue) for issue in self.remaining_issues)
        lines.append(f"valid_after: {str(self.valid_after).lower()}")
        return lines
