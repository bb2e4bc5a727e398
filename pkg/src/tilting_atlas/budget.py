"""Global node budget shared by every search that could otherwise run away."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


def global_budget() -> int:
    raw = os.environ.get("TILTING_ATLAS_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        v = int(raw)
    except ValueError:
        raise ValueError(f"TILTING_ATLAS_BUDGET must be an integer, got {raw!r}") from None
    if v <= 0:
        raise ValueError("TILTING_ATLAS_BUDGET must be positive")
    return v


class Counter:
    """Counts work units and raises once the limit is passed."""

    def __init__(self, limit: int | None = None, what: str = "search"):
        self.limit = global_budget() if limit is None else limit
        self.used = 0
        self.what = what

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"{self.what}: budget of {self.limit} exceeded")
