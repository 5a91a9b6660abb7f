import logging
import os
from typing import Any


def init_logger(level: str = None):
    level = level or os.environ.get("LOG_LEVEL", "INFO")
    logging.basicConfig(format="%(levelname)s: %(message)s", level=level.upper())
    AppLogger._logger.setLevel(level.upper())


class AppLogger:
    _logger = logging.getLogger("ontomatch_logger")

    @staticmethod
    def warning(msg: str, *args: Any, exc_info: bool = False):
        AppLogger._logger.warning(msg, *args, exc_info=exc_info)

    @staticmethod
    def error(msg: str, *args: Any):
        AppLogger._logger.error(msg, *args, exc_info=True)

    @staticmethod
    def info(msg: str, *args: Any):
        AppLogger._logger.info(msg, *args)

    @staticmethod
    def debug(msg: str, *args: Any):
        AppLogger._logger.debug(msg, *args)
