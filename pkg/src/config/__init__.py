"""Module for application settings."""
