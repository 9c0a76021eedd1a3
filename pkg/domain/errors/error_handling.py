import traceback

from domain.logging.app_logging import configure_logging
from domain.validation.argument_validation import ensure_not_falsy

logger = configure_logging(__name__)


def handle_error(exception):
    """
    A common error handler that logs the exception message, any wrapped exception, and the stack trace
    :param exception: The exception to log
    :return: The message that was logged, suitable for showing to a user
    """

    ensure_not_falsy(exception, "exception can not be None (handle_error).")

    error_message = str(exception) or repr(exception)

    try:
        # Get the wrapped exception, if any
        original_exception = getattr(exception, 'original_exception', None)
        original_error_message = repr(original_exception) if original_exception else None

        logger.error(error_message)
        if original_error_message:
            logger.error(original_error_message)
        logger.debug(traceback.format_exc())
    except Exception as e:
        logger.error(repr(e))

    return error_message
