import time

from domain.logging.app_logging import configure_logging
from domain.validation.argument_validation import ensure_string_not_empty, ensure_not_falsy

logger = configure_logging(__name__)


def timing_wrapper(callback, identifier):
    """
    Times the execution of a callback. Detection speed per clip is one of the numbers we compare
    between stitched and separate image processing, so the timing is returned alongside the result.
    :param callback: The logic to time
    :param identifier: A name used to identify the callback logic
    :return: A tuple of the callback return value and the execution time in seconds
    """
    ensure_not_falsy(callback, 'callback must not be None (timing_wrapper).')
    ensure_string_not_empty(identifier, 'identifier must not be empty (timing_wrapper).')

    start_time = time.perf_counter()
    result = callback()
    execution_time = time.perf_counter() - start_time
    logger.debug(f"{identifier} time: {execution_time} seconds")
    return result, execution_time
