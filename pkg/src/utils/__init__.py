"""Utilities package for helper functions."""
