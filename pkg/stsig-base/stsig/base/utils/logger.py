import logging
from typing import Optional

LOG_FORMAT = "%(asctime)s [stsig] %(levelname)s %(name)s: %(message)s"


def build_logger(name: Optional[str]) -> logging.Logger:
    """Build a console logger for experiment progress and CLI diagnostics.

    Calling this twice with the same name returns the same logger without stacking handlers.

    Args:
        name (Optional[str]): Name of the logger.

    Returns:
        logging.Logger: Logger object.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        formatter = logging.Formatter(LOG_FORMAT)
        handler = logging.StreamHandler()
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
        logger.propagate = False
    return logger
