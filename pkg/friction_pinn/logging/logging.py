import logging
import sys
from typing import Optional

from friction_pinn import __app_name__

LOG_FORMAT = "%(asctime)s [%(levelname)8.8s] %(name)s: %(message)s"


def setup_logger(
    *, app_name: str, log_level: str, bind_to: Optional[logging.Logger] = None
) -> logging.Logger:
    """
    Set up the application logger on stderr.

    stdout is reserved for command output (``--format json`` is piped), so
    solver progress always goes to stderr. Handlers installed by an earlier
    call for the same name are replaced.

    Parameters
    ----------
    app_name : str
        The name of the application; library modules log to its children.
    log_level : str
        The logging level as a string (e.g., 'DEBUG', 'INFO', 'WARNING',
        'ERROR', 'CRITICAL').
    bind_to : Optional[logging.Logger], optional
        An existing logger that receives the same handlers and level, by
        default None. Used to route another library's records (for example
        ``py.warnings``) through the same stream.

    Returns
    -------
    logging.Logger
        The configured logger instance.
    """
    logger = logging.getLogger(app_name)
    logger.setLevel(getattr(logging, log_level.upper()))

    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(stream_handler)

    if bind_to:
        bind_to.handlers = logger.handlers
        bind_to.setLevel(log_level)

    return logger


def get_logger(name: str) -> logging.Logger:
    """Child of the application logger for a library module."""
    return logging.getLogger(__app_name__).getChild(name)
