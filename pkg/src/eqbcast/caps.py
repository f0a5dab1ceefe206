"""Desk-scale caps, overridable through the EQBCAST_CAPS environment variable.

EQBCAST_CAPS holds comma-separated ``name=value`` pairs, e.g.
``EQBCAST_CAPS="exact_cover=18,boundary_lp=18"``.
"""

import os

DEFAULTS = {
    # minimum_cover_exact: max n for vertex covers / everything else
    "exact_cover_vc": 20,
    "exact_cover": 16,
    # boundary LP: max n for enumerating all 2^n - 2 cuts
    "boundary_lp": 16,
    # check_protocol exhaustive mode: max number of assignments (2^k)^n
    "exhaustive_assignments": 2**24,
    # verify_faithful: max search work, roughly class_size^2 * |E(F)|
    "faithful_work": 10**8,
    # periodic_pattern_search: max period
    "pattern_period": 12,
}


def get_cap(name: str) -> int:
    if name not in DEFAULTS:
        raise KeyError(f"unknown cap {name!r}")
    raw = os.environ.get("EQBCAST_CAPS", "")
    for item in raw.split(","):
        if "=" in item:
            key, _, value = item.partition("=")
            if key.strip() == name:
                return int(value)
    return DEFAULTS[name]
