"""Тесты констант путей."""
