import logging

from src.services.logging import configure_logging, format_event, get_logger, log_event
from src.services.settings import DEFAULT_MAX_STRAND_DIM, load_settings


def test_load_settings_reads_environment(monkeypatch):
    monkeypatch.setenv("GOLOD_FORGE_THREADS", "0")
    monkeypatch.setenv("GOLOD_FORGE_STRAND_BOUND", "9")
    monkeypatch.setenv("GOLOD_FORGE_LOG_LEVEL", "debug")
    monkeypatch.delenv("GOLOD_FORGE_MAX_STRAND_DIM", raising=False)

    settings = load_settings()

    assert settings.threads == 1
    assert settings.strand_bound == 9
    assert settings.log_level == "debug"
    assert settings.max_strand_dimension == DEFAULT_MAX_STRAND_DIM


def test_overrides_ignore_none(monkeypatch):
    monkeypatch.delenv("GOLOD_FORGE_STRAND_BOUND", raising=False)
    settings = load_settings().with_overrides(strand_bound=None, seed=7, truncation_order=4)

    assert settings.strand_bound is None
    assert settings.seed == 7
    assert settings.truncation_order == 4


def test_format_event_keeps_field_order():
    assert format_event("x", a=1) == "event=x a=1"
    assert format_event("strand", degree=3, rank=12) == "event=strand degree=3 rank=12"


def test_loggers_live_under_engine_root():
    assert get_logger("groebner").name == "golod_forge.groebner"
    assert get_logger("golod_forge.golod").name == "golod_forge.golod"


def test_log_event_writes_key_value_line():
    configure_logging("INFO")
    logger = get_logger("tests.events")
    records = []

    class Collector(logging.Handler):
        def emit(self, record):
            records.append(record.getMessage())

    handler = Collector()
    logger.addHandler(handler)
    try:
        log_event(logger, "verdict", status="golod_consistent")
        log_event(logger, "hidden", level=logging.DEBUG)
    finally:
        logger.removeHandler(handler)
        configure_logging("WARNING")

    assert records == ["event=verdict status=golod_consistent"]
