"""Stylometric attribution and diversity analysis for LLM-generated JavaScript."""

__version__ = "0.1.0"
