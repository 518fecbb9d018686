"""Constants module."""
