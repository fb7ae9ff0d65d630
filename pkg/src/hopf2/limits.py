"""Size limits. ``HOPF2_MAX_DIM`` replaces the default per-kind caps with a
single bound on the dimension of the object being built."""

import os

from .errors import SizeLimit


def max_dim():
    raw = os.environ.get("HOPF2_MAX_DIM", "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SizeLimit(f"HOPF2_MAX_DIM must be an integer, got {raw!r}") from None


def require(what, n, default_max_n, dim):
    """Raise SizeLimit unless n is within the default cap or the env override."""
    override = max_dim()
    if override is not None:
        if dim > override:
            raise SizeLimit(f"{what} of dimension {dim} exceeds HOPF2_MAX_DIM={override}")
        return
    if n > default_max_n:
        raise SizeLimit(f"{what} is limited to n <= {default_max_n} (set HOPF2_MAX_DIM to override)")
