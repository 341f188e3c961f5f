"""Shared exception types.

Input problems raise plain ValueError subclasses so callers (and the CLI)
can distinguish "your data is bad" from "the search ran out of budget".
"""
from __future__ import annotations


class InputError(ValueError):
    """Invalid user-supplied data (graphs, words, certificates, ...)."""


class BudgetExceededError(RuntimeError):
    """A bounded search hit its node budget before finishing.

    Carries a progress report so the caller can decide whether to retry
    with a larger budget.
    """

    def __init__(self, message: str, progress: dict | None = None):
        super().__init__(message)
        self.progress = dict(progress or {})
