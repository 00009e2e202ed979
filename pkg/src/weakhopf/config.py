"""Run-wide numerical configuration."""

import os

DEFAULT_TOL = 1e-9


def tolerance(tol=None):
    """Resolve a tolerance: explicit argument > WHA_TOL env var > default."""
    if tol is not None:
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        return float(tol)
    env = os.environ.get("WHA_TOL")
    if env:
        val = float(env)
        if val <= 0:
            raise ValueError("WHA_TOL must be positive")
        return val
    return DEFAULT_TOL


DEFAULT_DIM_BUDGET = 5000
