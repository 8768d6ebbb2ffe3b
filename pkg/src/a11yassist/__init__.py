"""Accessibility-aware coding assistant: linter, agent pipeline, chat service."""

__version__ = "0.1.0"
