"""
Logging Setup
Configures the loguru sinks for the command-line runs.
"""

import sys
from typing import Any, Dict, Optional

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function} - {message}"


def setup_logging(log_config: Optional[Dict[str, Any]] = None, level: Optional[str] = None) -> None:
    """
    Setup logging configuration.

    Logs go to stderr (and optionally a rotating file); stdout stays reserved for results.

    Args:
        log_config: The 'logging' config section ('level', 'file')
        level: Explicit level that wins over the config
    """
    log_config = log_config or {}
    log_level = (level or log_config.get('level', 'WARNING')).upper()
    log_file = log_config.get('file')

    # Remove default handler
    logger.remove()

    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=log_level)

    if log_file:
        logger.add(
            log_file,
            rotation="100 MB",
            retention="30 days",
            level=log_level,
            format=FILE_FORMAT,
        )

    logger.debug(f"Logging configured at level {log_level}")
