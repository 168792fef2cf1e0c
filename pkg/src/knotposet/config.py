"""Search budgets, overridable through ``KNOTPOSET_BUDGET_*`` environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Budget:
    nodes: int = 10_000              # relator-insertion search nodes per triviality query
    conjugator_length: int = 4       # peripheral conjugator search bound
    hom_cap: int = 10 ** 8           # |F|^g cap for exhaustive homomorphism counting
    quotient_cap: int = 10 ** 6      # per-group cap when hunting for refuting quotients
    tietze_steps: int = 50           # generator eliminations

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"budget {f.name} must be positive")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "Budget":
        env = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            key = f"KNOTPOSET_BUDGET_{f.name.upper()}"
            if key in env:
                values[f.name] = int(env[key])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_(self, **changes) -> "Budget":
        return replace(self, **changes)


DEFAULT = Budget()
