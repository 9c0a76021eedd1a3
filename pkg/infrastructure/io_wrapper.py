import functools

from domain.exceptions.dataset_io_error import DatasetIOError
from domain.logging.app_logging import configure_logging

logger = configure_logging(__name__)


def logging_wrapper(func):
    """
    Logs entry and exit of a file operation and reports OS errors with the path that failed.
    The wrapped function takes the path as its first argument.
    """

    @functools.wraps(func)
    def wrapper(path, *args, **kwargs):
        logger.debug(f'{func.__name__} Enter {path}')
        try:
            return func(path, *args, **kwargs)
        except OSError as e:
            raise DatasetIOError(path, e) from e
        finally:
            logger.debug(f'{func.__name__} Exit {path}')

    return wrapper
