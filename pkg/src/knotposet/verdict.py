"""Tri-state verdicts with replayable evidence.

Every Proved or Refuted verdict carries an evidence record: a JSON-ready
dict whose ``kind`` names a checker registered with :func:`register`.
The checker re-derives the claim from the record alone, so a serialized
verdict can be validated without trusting the code path that produced it.
"""

from __future__ import annotations

import enum
import importlib
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Mapping


class Status(str, enum.Enum):
    PROVED = "Proved"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


class EvidenceError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    status: Status
    evidence: Mapping[str, Any] = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        if self.status is not Status.UNKNOWN and "kind" not in self.evidence:
            raise EvidenceError(f"{self.status} verdict without evidence")

    @classmethod
    def proved(cls, evidence: Mapping[str, Any], note: str = "") -> "Verdict":
        return cls(Status.PROVED, dict(evidence), note)

    @classmethod
    def refuted(cls, evidence: Mapping[str, Any], note: str = "") -> "Verdict":
        return cls(Status.REFUTED, dict(evidence), note)

    @classmethod
    def unknown(cls, note: str = "", evidence: Mapping[str, Any] = None) -> "Verdict":
        return cls(Status.UNKNOWN, dict(evidence or {}), note)

    @property
    def is_proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def is_refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status.value}
        if self.evidence:
            out["evidence"] = dict(self.evidence)
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Verdict":
        return cls(Status(data["status"]), dict(data.get("evidence", {})), data.get("note", ""))


_CHECKERS: Dict[str, Callable[[Mapping[str, Any]], bool]] = {}

# modules whose import registers every evidence kind
_PROVIDERS = ("knotposet.fpgroup.triviality", "knotposet.fpgroup.torus", "knotposet.alexander",
              "knotposet.apoly", "knotposet.epi")


def register(kind: str):
    def deco(fn):
        _CHECKERS[kind] = fn
        return fn
    return deco


def replay_evidence(evidence: Mapping[str, Any]) -> bool:
    """Re-check one evidence record; unknown kinds raise :class:`EvidenceError`."""
    kind = evidence.get("kind")
    if kind not in _CHECKERS:
        for mod in _PROVIDERS:
            importlib.import_module(mod)
    if kind not in _CHECKERS:
        raise EvidenceError(f"no checker for evidence kind {kind!r}")
    try:
        return bool(_CHECKERS[kind](evidence))
    except EvidenceError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise EvidenceError(f"malformed {kind} evidence: {exc}") from exc


def replay(verdict: Verdict) -> bool:
    """True when the verdict's evidence re-validates (Unknown verdicts trivially do)."""
    if verdict.is_unknown:
        return True
    return replay_evidence(verdict.evidence)
