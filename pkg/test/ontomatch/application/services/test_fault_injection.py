import random

import pytest

from ontomatch.application.services.alignment_repair import repair
from ontomatch.application.services.alignment_validation import is_valid, validate
from ontomatch.application.services.edoal_serialization import serialize_alignment
from ontomatch.application.services.fault_injection import (
    fault_injector,
    inject_fault,
    random_fault,
)
from ontomatch.common.config.constants import EOS_MARKERS
from ontomatch.domain.repair_report import FixKind
from test.test_utils import sample_alignment


class TestInjectFault:
    def setup_method(self):
        self.xml = serialize_alignment(sample_alignment())

    @pytest.mark.parametrize("kind", list(FixKind))
    def test_every_fault_breaks_a_valid_document(self, kind):
        for seed in range(10):
            assert not is_valid(inject_fault(self.xml, kind, random.Random(seed)))

    @pytest.mark.parametrize("kind", list(FixKind))
    def test_repair_reports_the_injected_class(self, kind):
        for seed in range(10):
            broken = inject_fault(self.xml, kind, random.Random(seed))

            _, report = repair(broken)

            assert report.valid_after
            assert kind in report.kinds()

    def test_eos_fault_appends_a_known_marker(self):
        broken = inject_fault(self.xml, FixKind.EOS_TOKEN, random.Random(0))

        assert any(marker in broken for marker in EOS_MARKERS)

    def test_unprefixed_entity_fault_is_detected_as_such(self):
        broken = inject_fault(self.xml, FixKind.UNPREFIXED_ENTITY, random.Random(1))

        assert [issue.kind for issue in validate(broken)] == [FixKind.UNPREFIXED_ENTITY]

    def test_injection_is_reproducible(self):
        first = random_fault(self.xml, random.Random(42))

        assert random_fault(self.xml, random.Random(42)) == first

    def test_fault_injector_binds_the_kind(self):
        inject = fault_injector(FixKind.INVALID_LITERAL)

        assert inject(self.xml, random.Random(5)) == inject_fault(
            self.xml, FixKind.INVALID_LITERAL, random.Random(5)
        )
