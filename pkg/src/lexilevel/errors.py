"""Shared exception types."""

from __future__ import annotations


class LexiLevelError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(LexiLevelError):
    """A source data file violates its documented line format.

    Carries the offending file and 1-based line number so that broken
    records in large resource files can be located directly.
    """

    def __init__(self, file: str, line: int, message: str):
        super().__init__(f"{file}:{line}: {message}")
        self.file = file
        self.line = line
        self.message = message


class MissingFile(LexiLevelError):
    """A required input file or directory is absent."""

    def __init__(self, path: str):
        super().__init__(f"missing required file: {path}")
        self.path = path
