"""Enumeration budget handling.

Every potentially explosive enumeration (chair points, torus cells, grid
states, sublattice searches) is capped.  The default cap is 10**6 and can be
overridden with the CHAIRCODES_BUDGET environment variable or per call.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**6
ENV_VAR = "CHAIRCODES_BUDGET"


def resolve_budget(budget: int | None = None) -> int:
    """Return the effective budget: explicit argument, else env var, else default."""
    if budget is not None:
        return int(budget)
    raw = os.environ.get(ENV_VAR)
    if raw is not None:
        return int(raw)
    return DEFAULT_BUDGET


def check_budget(count: int, budget: int | None, what: str) -> int:
    """Raise BudgetExceeded when count items would exceed the effective budget."""
    limit = resolve_budget(budget)
    if count > limit:
        raise BudgetExceeded(f"{what} needs {count} items, budget is {limit}")
    return limit
