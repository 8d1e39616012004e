import logging
import unittest
from unittest.mock import MagicMock

from QMUtils.exceptions import (
    AdvancedExceptionHandler,
    DomainError,
    MirrorPathError,
    SeriesTruncationError,
)


class TestAdvancedExceptionHandler(unittest.TestCase):
    def setUp(self):
        self.logger = MagicMock(spec=logging.Logger)
        self.handler = AdvancedExceptionHandler(logger=self.logger)

    def test_raise_custom_exception_logs_and_raises(self):
        with self.assertRaises(DomainError) as context:
            self.handler.raise_custom_exception(DomainError, "x outside (0, pi)")
        self.assertEqual(context.exception.message, "x outside (0, pi)")
        self.assertTrue(self.logger.log.called)

    def test_handle_exception_reports_origin(self):
        try:
            raise ValueError("bad value")
        except ValueError as exc:
            self.handler.handle_exception(exc, "while testing")
        messages = [call.args[1] for call in self.logger.log.call_args_list]
        self.assertIn("Custom Message: while testing", messages)
        self.assertTrue(any("test_exceptions.py" in message for message in messages))

    def test_handle_exception_without_traceback(self):
        self.handler.handle_exception(RuntimeError("never raised"))
        self.assertIn("never raised", self.logger.log.call_args.args[1])

    def test_validate_input_accepts_tuple_of_types(self):
        self.handler.validate_input(3, (int, float), "n")
        with self.assertRaises(ValueError):
            self.handler.validate_input("3", (int, float), "n")


class TestDomainErrors(unittest.TestCase):
    def test_hierarchy(self):
        self.assertTrue(issubclass(DomainError, MirrorPathError))
        self.assertTrue(issubclass(SeriesTruncationError, MirrorPathError))

    def test_series_truncation_message(self):
        error = SeriesTruncationError("image sum", 10, 1e-3)
        self.assertEqual(error.terms, 10)
        self.assertIn("image sum not converged after 10 terms", str(error))


if __name__ == '__main__':
    unittest.main()
