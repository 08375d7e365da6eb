"""Semantic role labeling for event logs."""

__version__ = "0.1.0"
