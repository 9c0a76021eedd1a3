import logging
import os


class OneLineExceptionFormatter(logging.Formatter):
    def formatException(self, exc_info):
        result = super().formatException(exc_info)
        return repr(result)

    def format(self, record):
        result = super().format(record)
        if record.exc_text:
            result = result.replace("\n", "")
        return result


def configure_logging(name=__name__):
    """
    Configures the Python logging system. Records go to stderr so that stdout stays free for
    command output like evaluation tables.
    :param name: The logger name, usually the module __name__
    :return: A custom logger
    """
    log = logging.getLogger(name)
    log.setLevel(os.environ.get("LOGLEVEL", "INFO"))

    # one handler per logger
    if not log.handlers:
        handler = logging.StreamHandler()
        formatter = OneLineExceptionFormatter(logging.BASIC_FORMAT)
        handler.setFormatter(formatter)
        log.addHandler(handler)
        log.propagate = False

    return log
