import os
import sys

from loguru import logger

__all__ = ("get_logger", "logger", "LOG_FORMAT")

LOG_FORMAT = ("<lvl>{level:.1s}</lvl> "
              "<light-blue>{time:MM-DD HH:mm:ss.ss!UTC}</> "
              "| <c>{name} {function}:{line}</c> | "
              "<lvl>{message}</lvl>")

# Handler ids keyed by sink name so repeated calls do not stack sinks.
_handlers = dict()

# Library code is quiet unless an application asks for output.
logger.disable('ncfem')


def get_logger(level='INFO', log_dir=None, log_file='ncfem.log', stderr=True):
    """ Configure the loguru sinks for ncfem and return the logger.

    Calling this more than once replaces the sinks added by the previous call.

    Args:
        level (str, optional): Minimum level for the stderr sink, default INFO.
        log_dir (str, optional): Directory for a rotating log file. The env var
            `NCFEM_LOG_DIR` is used when not given; no file sink if neither is set.
        log_file (str, optional): Name of the log file, default ncfem.log.
        stderr (bool, optional): Add the stderr sink, default True.
    Returns:
        loguru.Logger: The configured logger.
    """
    for handler_id in _handlers.values():
        try:
            logger.remove(handler_id)
        except ValueError:
            pass
    _handlers.clear()

    # Drop the loguru default handler (only present the first time through).
    try:
        logger.remove(0)
    except ValueError:
        pass

    if stderr:
        _handlers['stderr'] = logger.add(sys.stderr, format=LOG_FORMAT, level=level.upper(),
                                         colorize=True)

    log_dir = log_dir or os.getenv('NCFEM_LOG_DIR')
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        log_path = os.path.join(log_dir, log_file)
        _handlers['file'] = logger.add(log_path, format=LOG_FORMAT, level='DEBUG',
                                       rotation='10 MB', retention=5, enqueue=True)

    logger.enable('ncfem')
    return logger
