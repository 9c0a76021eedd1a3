import math
import unittest

from parameterized import parameterized

from domain.validation.argument_validation import ensure_string_not_empty, ensure_not_falsy, ensure_positive_int, \
    ensure_non_negative_int, ensure_in_range


class EnsureTests(unittest.TestCase):
    def test_ensure_string_not_empty(self):
        ensure_string_not_empty("hi", "message")

        with self.assertRaises(ValueError):
            ensure_string_not_empty("", "message")

        with self.assertRaises(ValueError):
            ensure_string_not_empty(123, "message")

        with self.assertRaises(ValueError):
            ensure_string_not_empty(" ", "message")

    def test_ensure_not_falsy(self):
        ensure_not_falsy("hi", "message")
        ensure_not_falsy(123, "message")
        ensure_not_falsy([123], "message")

        with self.assertRaises(ValueError):
            ensure_not_falsy(None, "message")

        with self.assertRaises(ValueError):
            ensure_not_falsy([], "message")

    @parameterized.expand([
        (1, True),
        (200, True),
        (0, False),
        (-3, False),
        (1.0, False),
        (True, False),
        ("1", False),
    ])
    def test_ensure_positive_int(self, value, valid):
        if valid:
            ensure_positive_int(value, "message")
        else:
            with self.assertRaises(ValueError):
                ensure_positive_int(value, "message")

    def test_ensure_non_negative_int(self):
        ensure_non_negative_int(0, "message")
        ensure_non_negative_int(5, "message")

        with self.assertRaises(ValueError):
            ensure_non_negative_int(-1, "message")

        with self.assertRaises(ValueError):
            ensure_non_negative_int(False, "message")

    def test_ensure_in_range(self):
        ensure_in_range(0.5, 0.0, 1.0, "message")
        ensure_in_range(0, 0.0, 1.0, "message")
        ensure_in_range(1.0, 0.0, 1.0, "message")

        for value in (1.5, -0.1, math.nan, math.inf, "0.5", None):
            with self.assertRaises(ValueError):
                ensure_in_range(value, 0.0, 1.0, "message")

    def test_message_is_raised(self):
        with self.assertRaisesRegex(ValueError, "trials must be a positive integer"):
            ensure_positive_int(0, "trials must be a positive integer (test).")


if __name__ == '__main__':
    unittest.main()
