import os
import sys
import datetime
import logging
import logging.handlers
from typing import Any, Optional

from QMUtils.constants import (
    MAX_LOG_FILE_SIZE,
    BACKUP_LOG_COUNT,
    DEFAULT_LOG_FORMAT,
    DEFAULT_LOG_DIR,
    DEFAULT_DATE_FORMAT,
    LOG_DIR_ENV_KEY,
)


class AdvancedLogger:
    """
    Logger shared by the numerical modules, verification stages and the CLI.

    Warnings and errors go to stderr so that stdout only ever carries the
    serialized report. Everything from DEBUG up goes to a rotating file
    under ``MIRRORPATH_LOG_DIR`` (default ``./logs``), one file per name.
    """

    def __init__(self, name: str = "mirrorpath", log_dir: Optional[str] = None) -> None:
        self.name: str = name
        self.log_dir: str = log_dir or os.environ.get(LOG_DIR_ENV_KEY, DEFAULT_LOG_DIR)

        self.logger: logging.Logger = logging.getLogger(self.name)
        if self.logger.handlers:
            return
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        formatter = logging.Formatter(DEFAULT_LOG_FORMAT, datefmt=DEFAULT_DATE_FORMAT)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        try:
            self.logger.addHandler(self._file_handler(formatter))
        except OSError:
            self.logger.warning("Log directory %s is not writable.", self.log_dir)

    def _file_handler(self, formatter: logging.Formatter) -> logging.Handler:
        os.makedirs(self.log_dir, exist_ok=True)
        timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
        handler = logging.handlers.RotatingFileHandler(
            os.path.join(self.log_dir, f"{self.name}_{timestamp}.log"),
            maxBytes=MAX_LOG_FILE_SIZE,
            backupCount=BACKUP_LOG_COUNT
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(formatter)
        return handler

    def debug(self, msg: Any, *args, **kwargs) -> None:
        self.logger.debug(msg, *args, **kwargs)

    def info(self, msg: Any, *args, **kwargs) -> None:
        self.logger.info(msg, *args, **kwargs)

    def warning(self, msg: Any, *args, **kwargs) -> None:
        self.logger.warning(msg, *args, **kwargs)

    def error(self, msg: Any, *args, **kwargs) -> None:
        self.logger.error(msg, *args, **kwargs)
