from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any, Mapping

from .errors import InputError


@dataclass(frozen=True)
class GenerationConfig:
    """Knobs for one generation run.

    The defaults reproduce the showroom fixture: no greeting or closing,
    all three strategies enabled.
    """

    target_entity: str
    topic_priority: tuple[str, ...] = ()
    emphasis_threshold: float = 0.6
    opinion_threshold: float = 0.5
    indirectness_threshold: float = 0.5
    dominance_threshold: float = 0.7
    max_style_markers: int = 1
    enable_emphasis: bool = True
    enable_association: bool = True
    enable_style_markers: bool = True
    include_greeting: bool = False
    include_closing: bool = False

    def __post_init__(self):
        object.__setattr__(self, "topic_priority", tuple(self.topic_priority))
        for name in ("emphasis_threshold", "opinion_threshold", "indirectness_threshold", "dominance_threshold"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                raise InputError("out_of_range", name, f"{name} must be a number in [0, 1], got {value!r}")
        if isinstance(self.max_style_markers, bool) or not isinstance(self.max_style_markers, int) or self.max_style_markers < 0:
            raise InputError("out_of_range", "max_style_markers", "max_style_markers must be a non-negative integer")
        if len(set(self.topic_priority)) != len(self.topic_priority):
            raise InputError("duplicate_id", "topic_priority", "topic_priority entries must be unique")

    def topic_rank(self, topic: str) -> tuple[int, str]:
        """Sort key: listed topics in priority order, the rest by name."""
        if topic in self.topic_priority:
            return (self.topic_priority.index(topic), "")
        return (len(self.topic_priority), topic)

    def with_overrides(self, **changes: Any) -> "GenerationConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> "GenerationConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise InputError("unknown_field", unknown[0], f"unknown config field {unknown[0]!r}")
        if "target_entity" not in doc:
            raise InputError("missing_field", "target_entity", "config requires target_entity")
        return cls(**doc)
