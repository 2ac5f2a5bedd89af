"""Estimating the bottom of the p-Rayleigh quotient and the Cheeger inequality margin."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .cheeger import cheeger_exact
from .descent import minimize_descent
from .functions import GraphFunction, rayleigh_quotient
from .graph import Graph
from .validation import check_boundary, check_p, check_positive_int, thread_count


@dataclass(frozen=True)
class RayleighResult:
    """Best quotient found; an upper bound on the true infimum."""

    value: float
    minimizer: GraphFunction
    iterations: int
    converged: bool
    restarts_used: int
    method: str = "descent"

    def to_dict(self) -> dict:
        return {"value": self.value, "converged": self.converged, "iterations": self.iterations}


class _Quotient:
    """``E_p(phi) / sum deg |phi|^p`` as a function of the core values."""

    def __init__(self, g: Graph, p: float):
        self.g, self.p = g, p
        self.core_pos = np.flatnonzero(g.core_mask)
        self.deg = g.degrees[self.core_pos]
        self.src, self.dst = g.edge_index
        self.w = g.edge_weights

    def extend(self, x):
        full = np.zeros(self.g.n_vertices)
        full[self.core_pos] = x
        return full

    def parts(self, x):
        full = self.extend(x)
        diff = full[self.src] - full[self.dst]
        energy = float(np.sum(self.w * np.abs(diff) ** self.p))
        norm = float(np.sum(self.deg * np.abs(x) ** self.p))
        return full, diff, energy, norm

    def value(self, x):
        _, _, energy, norm = self.parts(x)
        return energy / norm

    def grad(self, x):
        p = self.p
        full, diff, energy, norm = self.parts(x)
        # sign(0) = 0 picks the zero subgradient at ties
        coef = p * self.w * np.abs(diff) ** (p - 1) * np.sign(diff)
        n = self.g.n_vertices
        g_energy = np.bincount(self.src, coef, minlength=n) - np.bincount(self.dst, coef, minlength=n)
        g_norm = p * self.deg * np.abs(x) ** (p - 1) * np.sign(x)
        return (g_energy[self.core_pos] - (energy / norm) * g_norm) / norm

    def normalize(self, x):
        norm = float(np.sum(self.deg * np.abs(x) ** self.p))
        return x / norm ** (1 / self.p)


def _check_host(g: Graph):
    core_pos = np.flatnonzero(g.core_mask)
    if core_pos.size == 0:
        raise ValueError("graph has no core vertices")
    isolated = [int(g.ids[i]) for i in core_pos if g.degrees[i] == 0]
    if isolated:
        raise ValueError(f"core vertices with zero degree: {isolated}")
    return core_pos


def _as_function(g: Graph, q: _Quotient, x) -> GraphFunction:
    return GraphFunction.from_array(g, q.extend(q.normalize(x)))


def dirichlet_matrices(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``(L, D)`` on the core with zero boundary values on the halo."""
    core_pos = _check_host(g)
    slot = {int(p): i for i, p in enumerate(core_pos)}
    n = len(core_pos)
    L = np.zeros((n, n))
    src, dst = g.edge_index
    for s, d, w in zip(src, dst, g.edge_weights):
        a, b = slot.get(int(s)), slot.get(int(d))
        if a is not None:
            L[a, a] += w
        if b is not None:
            L[b, b] += w
        if a is not None and b is not None:
            L[a, b] -= w
            L[b, a] -= w
    return L, np.diag(g.degrees[core_pos])


def _eig_route(g: Graph) -> RayleighResult:
    L, D = dirichlet_matrices(g)
    vals, vecs = eigh(L, D, subset_by_index=[0, 0])
    x = vecs[:, 0]
    if x.sum() < 0:
        x = -x
    q = _Quotient(g, 2.0)
    phi = _as_function(g, q, x)
    return RayleighResult(rayleigh_quotient(g, phi, 2.0), phi, 1, True, 0, "eigh")


def _sweep_levels(q: _Quotient, x):
    """Best indicator of a superlevel set of |x|; at p = 1 one of them is at least as good as x."""
    a = np.abs(x)
    best_val, best = math.inf, None
    for t in np.unique(a[a > 0]):
        ind = (a >= t).astype(float)
        val = q.value(ind)
        if val < best_val:
            best_val, best = val, ind
    return best_val, best


def _one_restart(q: _Quotient, x0, tol, max_iters):
    res = minimize_descent(q.value, q.grad, x0, tol=tol, max_iters=max_iters, normalize=q.normalize)
    return res


def lambda_p_estimate(g: Graph, p=2.0, *, restarts=8, max_iters=100_000, tol=1e-10, seed=0,
                      method="auto", init=None) -> RayleighResult:
    """Estimate ``inf E_p(phi) / sum deg |phi|^p`` over nonzero core-supported phi.

    ``method="auto"`` solves the generalized eigenproblem ``L phi = lambda D phi``
    at ``p == 2`` and runs multi-start descent otherwise. ``method="descent"``
    forces the optimizer (restarts alternate random positive and random signed
    starting points; ``init``, if given, replaces the first one).
    """
    p = check_p(p)
    _check_host(g)
    if method not in ("auto", "eigh", "descent"):
        raise ValueError(f"unknown method {method!r}")
    if method == "eigh" or (method == "auto" and p == 2.0):
        if p != 2.0:
            raise ValueError("the eigensolver route requires p == 2")
        return _eig_route(g)
    restarts = check_positive_int(restarts, "restarts")
    q = _Quotient(g, p)
    n = len(q.core_pos)
    rng = np.random.default_rng(seed)
    starts = []
    for k in range(restarts):
        if k % 2 == 0:
            starts.append(rng.uniform(0.5, 1.5, n))
        else:
            starts.append(rng.uniform(-1.0, 1.0, n))
    if init is not None:
        x0 = np.asarray(init, dtype=float)
        if x0.shape == (g.n_vertices,):
            if np.any(x0[~g.core_mask] != 0):
                raise ValueError("initial guess must vanish on the halo")
            x0 = x0[q.core_pos]
        if x0.shape != (n,) or not np.any(x0):
            raise ValueError("initial guess must be a nonzero vector over the core")
        starts[0] = x0
    for k, x0 in enumerate(starts):
        if not np.any(x0):
            starts[k] = np.ones(n)

    workers = min(thread_count(), restarts)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            runs = list(pool.map(lambda x0: _one_restart(q, x0, tol, max_iters), starts))
    else:
        runs = [_one_restart(q, x0, tol, max_iters) for x0 in starts]

    best = min(range(len(runs)), key=lambda k: (runs[k].value, k))
    run = runs[best]
    x = run.x
    if p == 1.0:
        val, ind = _sweep_levels(q, x)
        if ind is not None and val < run.value:
            x = ind
    phi = _as_function(g, q, x)
    value = rayleigh_quotient(g, phi, p)
    iterations = sum(r.iterations for r in runs)
    return RayleighResult(value, phi, iterations, run.converged, restarts, "descent")


def cheeger_inequality_margin(g: Graph, p, *, boundary="edge", estimate=None, alpha=None, **options) -> float:
    """``lambda_hat - (2^(p-1)/p^p) alpha^p`` with alpha from an exact Cheeger search."""
    p = check_p(p)
    check_boundary(boundary)
    if alpha is None:
        method = "auto" if boundary == "edge" else "enumerate"
        alpha = cheeger_exact(g, boundary=boundary, method=method).alpha
    if estimate is None:
        estimate = lambda_p_estimate(g, p, **options).value
    return estimate - 2 ** (p - 1) / p**p * alpha**p
