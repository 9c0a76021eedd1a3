import math


def ensure_string_not_empty(value, error_message):
    """
    Ensures the value is a non-empty string
    :param value: The argument to test
    :param error_message: The error message to raise if the test fails
    """
    if not value or not isinstance(value, str) or not value.strip():
        raise ValueError(error_message)


def ensure_not_falsy(value, error_message):
    """
    Ensures the value is a non-falsy value
    :param value: The argument to test
    :param error_message: The error message to raise if the test fails
    """
    if not value:
        raise ValueError(error_message)


def ensure_positive_int(value, error_message):
    """
    Ensures the value is an integer greater than zero. Booleans are rejected.
    :param value: The argument to test
    :param error_message: The error message to raise if the test fails
    """
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(error_message)


def ensure_non_negative_int(value, error_message):
    """
    Ensures the value is an integer greater than or equal to zero
    :param value: The argument to test
    :param error_message: The error message to raise if the test fails
    """
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(error_message)


def ensure_in_range(value, low, high, error_message):
    """
    Ensures the value is a finite number in the closed interval [low, high]
    :param value: The argument to test
    :param low: The smallest allowed value
    :param high: The largest allowed value
    :param error_message: The error message to raise if the test fails
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(error_message)
    if not math.isfinite(value) or value < low or value > high:
        raise ValueError(error_message)
