import logging

import numpy as np

from stsig.base.utils import LOG_FORMAT, as_generator, build_logger, spawn_generator
from tests.utils import pytest_assert


class TestSeeding:
    def test_spawn_is_keyed_by_entropy(self):
        a = spawn_generator(1, 2, 3).random(4)
        b = spawn_generator(1, 2, 3).random(4)
        c = spawn_generator(1, 2, 4).random(4)

        np.testing.assert_array_equal(a, b)
        assert not np.allclose(a, c)

    def test_spawn_rejects_negative(self):
        with pytest_assert(AssertionError, "Entropy values must be non-negative, got (1, -2)."):
            spawn_generator(1, -2)

    def test_as_generator(self):
        rng = np.random.default_rng(0)

        assert as_generator(rng) is rng
        np.testing.assert_array_equal(as_generator(5).random(3), np.random.default_rng(5).random(3))


class TestLogger:
    def test_no_duplicate_handlers(self):
        first = build_logger("stsig.test")
        second = build_logger("stsig.test")

        assert first is second
        assert len(second.handlers) == 1

    def test_format(self):
        handler = build_logger("stsig.format").handlers[0]
        record = logging.LogRecord("stsig.format", logging.INFO, __file__, 1, "decoded %d ICRMs", (3,), None)

        assert handler.formatter._fmt == LOG_FORMAT
        assert handler.format(record).endswith("[stsig] INFO stsig.format: decoded 3 ICRMs")
