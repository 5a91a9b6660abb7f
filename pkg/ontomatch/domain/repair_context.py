from dataclasses import replace
from typing import Callable, List, Tuple

from ontomatch.domain.repair_report import Fix

RepairStage = Callable[..., Tuple[str, List[Fix]]]


class RepairContext:
    """Threads a document through repair stages and tags each fix with its stage."""

    def __init__(self, text: str):
        self._text = text
        self._fixes: List[Fix] = []

    def pipe(self, stage: RepairStage, *args, **kwargs) -> "RepairContext":
        text, fixes = stage(self._text, *args, **kwargs)
        if fixes:
            self._fixes.extend(replace(fix, stage=stage.__name__) for fix in fixes)
        self._text = text
        return self

    def get_text(self) -> str:
        return self._text

    def has_fixes(self) -> bool:
        return bool(self._fixes)

    def fixes(self) -> List[Fix]:
        return list(self._fixes)
