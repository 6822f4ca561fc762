import logging
import os
from typing import Optional

_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_DATEFMT = "%Y-%m-%d %H:%M:%S"

# Level applied to loggers created without an explicit level (set by the CLI)
_default_level = "INFO"
_default_file: Optional[str] = None
_known_loggers = set()


def setup_logger(name: str, log_level: str = None, log_file: str = None) -> logging.Logger:
    """
    Set up and configure a logger instance.

    Args:
        name: Logger name
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR); defaults to the
            process-wide level chosen by configure_logging()
        log_file: Optional path to log file

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    level = log_level or _default_level
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))
    _known_loggers.add(name)

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    # Console handler writes to stderr; stdout is reserved for result payloads
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter(_FORMAT, datefmt=_DATEFMT)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_file = log_file or _default_file
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir, exist_ok=True)

        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


def configure_logging(log_level: str = "INFO", log_file: str = None) -> None:
    """
    Set the process-wide default level and file, and re-level loggers that
    already exist.

    Args:
        log_level: Logging level name
        log_file: Optional log file applied to loggers created afterwards
    """
    global _default_level, _default_file
    _default_level = log_level
    _default_file = log_file
    level = getattr(logging, log_level.upper(), logging.INFO)
    for name in _known_loggers:
        logging.getLogger(name).setLevel(level)
