"""Logging setup for the command line and desktop entry points.

Library modules only create ``logging.getLogger(__name__)`` loggers; handlers
are installed here, once, by whoever owns the process.
"""
import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
PACKAGE_LOGGER = "src"


def level_for(verbosity: int) -> int:
    """Map ``-q``/``-v`` counts to a level: <0 WARNING, 0 INFO, >0 DEBUG."""
    if verbosity < 0:
        return logging.WARNING
    if verbosity > 0:
        return logging.DEBUG
    return logging.INFO


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Send package logs to the current stderr; stdout stays reserved for results."""
    root = logging.getLogger(PACKAGE_LOGGER)
    root.setLevel(level_for(verbosity))
    handler = next((h for h in root.handlers if getattr(h, "_rembed_handler", False)), None)
    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._rembed_handler = True
        root.addHandler(handler)
    else:
        handler.setStream(sys.stderr)
    return root
