"""Structured exceptions.

Every error carries a machine-readable ``code`` and the ``ident`` of the
offending object so diagnostics can be emitted as one record per line.
"""

from __future__ import annotations

import json
from typing import Any, Optional


class ScriptGenError(Exception):
    exit_code = 1

    def __init__(self, code: str, ident: Any = None, message: str = "", stage: Optional[str] = None):
        self.code = code
        self.ident = ident
        self.message = message or code
        self.stage = stage
        super().__init__(f"{code} [{ident}]: {self.message}" if ident is not None else f"{code}: {self.message}")

    def record(self) -> dict:
        return {
            "stage": self.stage,
            "code": self.code,
            "id": self.ident,
            "message": self.message,
        }

    def diagnostic(self) -> str:
        return json.dumps(self.record(), sort_keys=True, default=str)


class InputError(ScriptGenError):
    """Malformed or invalid input document (exit status 2)."""

    exit_code = 2


class PlanError(ScriptGenError):
    """A planning invariant was violated (exit status 3)."""

    exit_code = 3


class RealizationError(ScriptGenError):
    """Surface realization failed (exit status 4)."""

    exit_code = 4
