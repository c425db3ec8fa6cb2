"""Verdict objects shared by the query modules.

Positive verdicts are truthy objects carrying their evidence; negative
verdicts are :class:`Refutation` instances, which are falsy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .values import json_value


@dataclass(frozen=True)
class Refutation:
    """A 'no' answer with a machine-readable reason."""

    reason: str
    detail: Mapping[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"status": "refuted", "reason": self.reason, "detail": to_json(self.detail)}


def to_json(obj):
    """Recursively convert verdict payloads to JSON-ready data."""
    if isinstance(obj, Fraction):
        return json_value(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Mapping):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")
