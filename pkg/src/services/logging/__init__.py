from .config import configure_logging, format_event, get_logger, log_event

__all__ = ["configure_logging", "format_event", "get_logger", "log_event"]
