"""Logging utilities for the rational function audit toolkit."""

import logging
import os
import sys
from typing import Optional, Union


def setup_logger(
    name: str,
    level: Optional[Union[int, str]] = None,
    log_file: Optional[str] = None,
) -> logging.Logger:
    """
    Configure and return a logger instance.

    Console output goes to stderr; stdout is reserved for JSON reports.

    Args:
        name: Logger name
        level: Logging level; defaults to RFA_LOG_LEVEL or INFO
        log_file: Optional file path for logging

    Returns:
        Configured logger instance
    """
    if level is None:
        level = os.getenv("RFA_LOG_LEVEL", "INFO").upper()

    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Avoid duplicate handlers
    if logger.handlers:
        return logger

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def set_level(level: Union[int, str]) -> None:
    """Apply a level to every toolkit logger created so far."""
    for name in list(logging.root.manager.loggerDict):
        if name == "src" or name.startswith("src."):
            logger = logging.getLogger(name)
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)
