"""Shared exception types.

Caps and budgets are deliberate safety rails: the exact evaluators and the
brute-force oracles have exponential worst cases, so exceeding a configured
limit raises instead of silently grinding.  The CLI maps these onto distinct
exit codes (input problems -> 1, cap or timeout -> 2).
"""

from __future__ import annotations


class CapExceeded(RuntimeError):
    """Requested work exceeds a configured enumeration or term cap."""


class EvaluationTimeout(RuntimeError):
    """An evaluator ran past its wall-clock budget and was aborted."""


class GenerationError(RuntimeError):
    """The random-system generator cannot satisfy its constraints."""


class InvalidSystemError(ValueError):
    """A system failed validation; carries the individual violations."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(v.message for v in self.violations)
        super().__init__(f"invalid system: {lines}")
