from datetime import datetime

import pytest

from ontomatch.adapter.file_adapter import FileAdapter
from ontomatch.common.custom_exceptions import InputFileError, OutputPathError


class TestFileAdapter:
    def setup_method(self):
        self.file_adapter = FileAdapter(clock=lambda: datetime(2024, 5, 1, 12, 30, 0))

    def test_round_trips_text(self, tmp_path):
        path = self.file_adapter.write_text(tmp_path / "nested" / "a.txt", "café")

        assert self.file_adapter.read_text(path) == "café"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFileError, match="does not exist"):
            self.file_adapter.read_text(tmp_path / "missing.ttl")

    def test_rejects_non_utf8_content(self, tmp_path):
        path = tmp_path / "latin.ttl"
        path.write_bytes("café".encode("latin-1"))

        with pytest.raises(InputFileError, match="not valid UTF-8"):
            self.file_adapter.read_text(path)

    def test_rejects_invalid_json(self, tmp_path):
        path = self.file_adapter.write_text(tmp_path / "bad.json", "{not json")

        with pytest.raises(InputFileError, match="not valid JSON"):
            self.file_adapter.read_json(path)

    def test_write_json_is_sorted_and_indented(self, tmp_path):
        path = self.file_adapter.write_json(tmp_path / "report.json", {"b": 1, "a": 2})

        assert path.read_text() == '{\n  "a": 2,\n  "b": 1\n}\n'

    def test_ensure_directory_refuses_files(self, tmp_path):
        blocker = tmp_path / "out"
        blocker.write_text("not a directory")

        with pytest.raises(OutputPathError):
            self.file_adapter.ensure_directory(blocker)

    def test_run_directories_are_timestamped_and_never_reused(self, tmp_path):
        first = self.file_adapter.create_run_directory(tmp_path)
        second = self.file_adapter.create_run_directory(tmp_path)

        assert first == tmp_path / "runs" / "20240501T123000"
        assert second == tmp_path / "runs" / "20240501T123000_1"
        assert second.is_dir()
