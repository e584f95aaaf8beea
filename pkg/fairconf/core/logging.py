# fairconf/core/logging.py
import logging
import sys
from typing import Optional

from pythonjsonlogger.json import JsonFormatter

from fairconf.core.config import settings

_TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_JSON_FIELDS = '%(asctime)s %(name)s %(levelname)s %(message)s'


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """
    Install a single stderr handler on the fairconf logger tree.

    Args:
        level: Level name (error, warning, info, debug); defaults to FAIRCONF_LOG
        fmt: "json" or "text"; defaults to FAIRCONF_LOG_FORMAT
    """
    level_name = level.strip().upper() if level else settings.log_level
    fmt = (fmt or settings.LOG_FORMAT).strip().lower()

    handler = logging.StreamHandler(sys.stderr)
    if fmt == "json":
        handler.setFormatter(JsonFormatter(_JSON_FIELDS))
    else:
        handler.setFormatter(logging.Formatter(_TEXT_FORMAT))

    root = logging.getLogger("fairconf")
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, level_name, logging.INFO))
    root.propagate = False
