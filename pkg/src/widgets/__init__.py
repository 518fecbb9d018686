"""Widgets package: Qt rendering of frame plots."""
