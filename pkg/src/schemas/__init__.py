"""Schemas for the application."""
