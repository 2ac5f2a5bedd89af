"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import math
import os

import numpy as np

FLAVORS = ("W", "script")
BOUNDARIES = ("edge", "vertex")


def check_p(p, minimum=1.0):
    """Return ``p`` as a float, raising ``ValueError`` unless ``minimum <= p < inf``."""
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise ValueError(f"p must be a real number, got {p!r}") from None
    if not math.isfinite(p) or p < minimum:
        raise ValueError(f"p must satisfy {minimum:g} <= p < inf, got {p!r}")
    return p


def check_flavor(flavor):
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    return flavor


def check_boundary(boundary):
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    return boundary


def check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_positive_real(value, name):
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite real, got {value!r}")
    return value


def thread_count():
    """Worker cap taken from ``GRAPH_SOBOLEV_THREADS`` (default 1)."""
    raw = os.environ.get("GRAPH_SOBOLEV_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"GRAPH_SOBOLEV_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)
