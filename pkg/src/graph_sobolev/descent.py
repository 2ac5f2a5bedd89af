"""First-order descent with Barzilai-Borwein trial steps and Armijo backtracking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass
class DescentResult:
    x: np.ndarray
    value: float
    initial_value: float
    iterations: int
    converged: bool


def minimize_descent(
    fun: Callable[[np.ndarray], float],
    grad: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    *,
    tol: float = 1e-10,
    max_iters: int = 100_000,
    patience: int = 5,
    armijo: float = 1e-4,
    shrink: float = 0.5,
    normalize: Callable[[np.ndarray], np.ndarray] | None = None,
    min_step: float = 1e-30,
) -> DescentResult:
    """Monotone (sub)gradient descent.

    Every accepted step satisfies the Armijo condition, so the returned value
    never exceeds ``fun(x0)``. Stops once the relative decrease stays below
    ``tol`` for ``patience`` consecutive accepted steps, when the gradient
    vanishes, or when backtracking cannot find a decrease (``converged`` is
    then False). ``normalize`` is applied after each step; it must leave
    ``fun`` unchanged.
    """
    x = np.array(x0, dtype=float)
    if normalize is not None:
        x = normalize(x)
    f = float(fun(x))
    f0 = f
    g = grad(x)
    x_prev = g_prev = None
    t_last = 1.0 / max(float(np.linalg.norm(g)), 1e-12)
    calm = 0
    converged = False
    it = 0
    while it < max_iters:
        gg = float(g @ g)
        if gg == 0.0:
            converged = True
            break
        it += 1
        t = t_last
        if x_prev is not None:
            s, y = x - x_prev, g - g_prev
            sy = float(s @ y)
            if sy > 0:
                t = float(s @ s) / sy
        while True:
            xn = x - t * g
            if normalize is not None:
                xn = normalize(xn)
            fn = float(fun(xn))
            if fn <= f - armijo * t * gg:
                break
            t *= shrink
            if t < min_step:
                return DescentResult(x, f, f0, it, converged)
        rel = abs(f - fn) / max(abs(f), 1e-300)
        calm = calm + 1 if rel < tol else 0
        x_prev, g_prev = x, g
        x, f, t_last = xn, fn, t
        g = grad(x)
        if calm >= patience:
            converged = True
            break
    return DescentResult(x, f, f0, it, converged)
