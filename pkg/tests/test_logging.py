import logging

from pythonjsonlogger.json import JsonFormatter

from fairconf.core.config import settings
from fairconf.core.logging import configure_logging


def test_level_falls_back_to_settings(monkeypatch):
    monkeypatch.setattr(settings, "LOG", " debug ")
    configure_logging()
    assert logging.getLogger("fairconf").level == logging.DEBUG


def test_explicit_level_and_format():
    configure_logging("warning", "json")
    root = logging.getLogger("fairconf")
    assert root.level == logging.WARNING
    assert len(root.handlers) == 1
    assert isinstance(root.handlers[0].formatter, JsonFormatter)
    configure_logging("error", "text")
    assert len(root.handlers) == 1
    assert not isinstance(root.handlers[0].formatter, JsonFormatter)
