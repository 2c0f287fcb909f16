"""Single source of numerical tolerance.

Every approximate comparison in the package goes through :func:`eps` so that
an override (``--tolerance`` on the command line) reaches all of them.
"""

from contextlib import contextmanager

DEFAULT_EPS = 1e-9

_eps = DEFAULT_EPS


def eps():
    return _eps


def set_eps(value):
    global _eps
    if not value > 0:
        raise ValueError(f"tolerance must be positive, got {value!r}")
    _eps = float(value)


@contextmanager
def using_eps(value):
    """Temporarily override the global tolerance."""
    previous = _eps
    set_eps(value)
    try:
        yield
    finally:
        set_eps(previous)


def close(x, y, tol=None):
    return abs(x - y) < (eps() if tol is None else tol)


def circle_distance(x, y):
    """Distance between two points of R/Z."""
    d = (x - y) % 1.0
    return min(d, 1.0 - d)
