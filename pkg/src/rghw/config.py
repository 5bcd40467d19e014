"""Enumeration budgets and size caps.

``RGHW_BUDGET`` in the environment overrides every enumeration budget.
"""

import os

MAX_FIELD_ORDER = 1 << 16
RGHW_SUBSET_BUDGET = 1 << 24
LEAKAGE_ENUM_BUDGET = 1 << 16
SUBSET_SCAN_BUDGET = 1 << 20


def budget(default: int, override: int | None = None) -> int:
    """Resolve an enumeration budget: explicit argument, then env var, then default."""
    if override is not None:
        return int(override)
    env = os.environ.get("RGHW_BUDGET")
    if env:
        return int(env)
    return default
