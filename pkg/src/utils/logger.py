import logging
import logging.handlers
import sys
import typing

from config.settings import settings


def setup_logger(name: str = 'measurement_context', level: typing.Union[str, int] = logging.INFO) -> logging.Logger:
    """
    Configures and returns a logger with the given name and level, or the level from
    settings.LOG_LEVEL (environment or .env). Diagnostics go to standard error; standard
    output is reserved for extraction data.
    """
    logger = logging.getLogger(name)
    lvl = settings.LOG_LEVEL or level
    if isinstance(lvl, str):
        lvl = getattr(logging, lvl.upper(), logging.INFO)
    logger.setLevel(lvl)

    # Avoid stacking handlers when a module is imported twice
    if not logger.handlers:
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        if settings.LOG_FILE:
            rotating_handler = logging.handlers.RotatingFileHandler(
                settings.LOG_FILE, maxBytes=10*1024*1024, backupCount=5
            )
            rotating_handler.setFormatter(formatter)
            logger.addHandler(rotating_handler)
        logger.propagate = False

    return logger
