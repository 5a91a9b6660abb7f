import json
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Union

from ontomatch.common.config.constants import (
    CONTENT_ENCODING,
    RUN_TIMESTAMP_FORMAT,
    RUNS_DIR_NAME,
)
from ontomatch.common.custom_exceptions import InputFileError, OutputPathError
from ontomatch.common.logger import AppLogger

PathLike = Union[str, Path]


class FileAdapter:
    def __init__(self, clock: Callable[[], datetime] = datetime.now):
        self.__clock = clock

    def read_text(self, path: PathLike) -> str:
        try:
            return Path(path).read_text(encoding=CONTENT_ENCODING)
        except FileNotFoundError:
            raise InputFileError(f"The file [{path}] does not exist")
        except UnicodeDecodeError:
            raise InputFileError(f"The file [{path}] is not valid UTF-8")
        except OSError as error:
            raise InputFileError(f"The file [{path}] could not be read: {error}")

    def read_json(self, path: PathLike) -> Any:
        content = self.read_text(path)
        try:
            return json.loads(content)
        except json.JSONDecodeError as error:
            raise InputFileError(f"The file [{path}] is not valid JSON: {error}")

    def write_text(self, path: PathLike, content: str) -> Path:
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(content, encoding=CONTENT_ENCODING)
        except OSError as error:
            raise OutputPathError(f"Could not write [{target}]: {error}")
        return target

    def write_json(self, path: PathLike, content: Any) -> Path:
        return self.write_text(path, json.dumps(content, indent=2, sort_keys=True) + "\n")

    def ensure_directory(self, path: PathLike) -> Path:
        directory = Path(path)
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as error:
            raise OutputPathError(f"Could not create directory [{directory}]: {error}")
        if not directory.is_dir():
            raise OutputPathError(f"[{directory}] is not a directory")
        return directory

    def create_run_directory(self, out_dir: PathLike) -> Path:
        runs = self.ensure_directory(Path(out_dir) / RUNS_DIR_NAME)
        stamp = self.__clock().strftime(RUN_TIMESTAMP_FORMAT)
        candidate = runs / stamp
        suffix = 1
        # Earlier runs are never overwritten
        while candidate.exists():
            candidate = runs / f"{stamp}_{suffix}"
            suffix += 1
        AppLogger.info(f"Writing run artifacts to {candidate}")
        return self.ensure_directory(candidate)
