"""Тесты утилиты форматирования времени."""

import pytest
from src.utils.time import format_elapsed


class TestFormatElapsed:
    """Тесты функции format_elapsed."""

    @pytest.mark.parametrize(
        ("seconds", "expected"),
        [
            (0, "0.00 ms"),
            (0.0042, "4.20 ms"),
            (0.5, "500.00 ms"),
            (1, "1.00 s"),
            (12.5, "12.50 s"),
        ],
    )
    def test_format_elapsed(self, seconds: float, expected: str) -> None:
        """format_elapsed выбирает миллисекунды или секунды."""
        assert format_elapsed(seconds) == expected
