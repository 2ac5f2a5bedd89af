"""Finitely supported vertex functions, Sobolev norms, p-energy and level sets.

Norm routines return p-th powers (suffix ``_p``); take the root yourself
when the norm itself is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .graph import Graph
from .validation import check_boundary, check_flavor, check_p


class GraphFunction:
    """Sparse real-valued function on the vertices of ``host``.

    Absent vertices are 0. Zero entries are dropped so :attr:`support` is
    exactly the set where the function is nonzero.
    """

    def __init__(self, host: Graph, values: Mapping[int, float] | None = None):
        self.host = host
        vals = {}
        for vid, val in (values or {}).items():
            host.position(vid)
            val = float(val)
            if not math.isfinite(val):
                raise ValueError(f"non-finite value at vertex {vid}")
            if val != 0.0:
                vals[int(vid)] = val
        self.values = vals

    @classmethod
    def from_array(cls, host: Graph, arr) -> "GraphFunction":
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (host.n_vertices,):
            raise ValueError(f"expected {host.n_vertices} values, got shape {arr.shape}")
        return cls(host, {int(v): x for v, x in zip(host.ids, arr) if x != 0.0})

    @classmethod
    def indicator(cls, host: Graph, vertices) -> "GraphFunction":
        return cls(host, {v: 1.0 for v in vertices})

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.values)

    def is_compactly_supported(self) -> bool:
        """True when the support avoids the halo."""
        return all(self.host.is_core(v) for v in self.values)

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.host.n_vertices)
        for vid, val in self.values.items():
            arr[self.host.position(vid)] = val
        return arr

    def __call__(self, x: int) -> float:
        self.host.position(x)
        return self.values.get(int(x), 0.0)

    def __mul__(self, c) -> "GraphFunction":
        return GraphFunction(self.host, {v: c * x for v, x in self.values.items()})

    __rmul__ = __mul__

    def __add__(self, other: "GraphFunction") -> "GraphFunction":
        return GraphFunction.from_array(self.host, self.to_array() + _values(self.host, other))

    def __repr__(self):
        return f"GraphFunction(support_size={len(self.values)})"


def _values(g: Graph, u) -> np.ndarray:
    """Dense value vector aligned with ``g.ids``."""
    if isinstance(u, GraphFunction):
        if u.host is not g:
            raise ValueError("function lives on a different host graph")
        return u.to_array()
    if isinstance(u, Mapping):
        return GraphFunction(g, u).to_array()
    arr = np.asarray(u, dtype=float)
    if arr.shape != (g.n_vertices,):
        raise ValueError(f"expected {g.n_vertices} values, got shape {arr.shape}")
    return arr


def _require_core_support(g: Graph, vals: np.ndarray, what="function"):
    if np.any(vals[~g.core_mask] != 0):
        raise ValueError(f"{what} must be supported in the core (nonzero on a halo vertex)")


def _edge_diffs(g: Graph, vals: np.ndarray) -> np.ndarray:
    src, dst = g.edge_index
    return vals[dst] - vals[src]


# -- norms ----------------------------------------------------------------

def lp_norm_p(g: Graph, u, p) -> float:
    """``sum_x mu_x |u(x)|^p``."""
    p = check_p(p)
    vals = _values(g, u)
    return float(np.sum(g.mu * np.abs(vals) ** p))


def _vertex_square_sums(g: Graph, vals: np.ndarray) -> np.ndarray:
    """Per vertex ``sum_{xy in E} w_xy |u(y)-u(x)|^2``."""
    src, dst = g.edge_index
    sq = g.edge_weights * _edge_diffs(g, vals) ** 2
    n = g.n_vertices
    return np.bincount(src, sq, minlength=n) + np.bincount(dst, sq, minlength=n)


def grad_norm_W_p(g: Graph, u, p) -> float:
    """``sum_x mu_x ((1/(2 mu_x)) sum_{xy} w_xy |u(y)-u(x)|^2)^(p/2)``."""
    p = check_p(p)
    vals = _values(g, u)
    s = _vertex_square_sums(g, vals)
    return float(np.sum(g.mu * (s / (2 * g.mu)) ** (p / 2)))


def grad_norm_script_p(g: Graph, u, p) -> float:
    """Halved double sum ``(1/2) sum_x sum_{xy} w_xy |u(y)-u(x)|^p``.

    Each undirected edge appears twice in the double sum, so this is the sum
    over stored edges.
    """
    p = check_p(p)
    vals = _values(g, u)
    return float(np.sum(g.edge_weights * np.abs(_edge_diffs(g, vals)) ** p))


def sobolev_norm_p(g: Graph, u, p, flavor="W") -> float:
    """p-th power of the ``W^{1,p}`` (``flavor="W"``) or script-W norm."""
    check_flavor(flavor)
    grad = grad_norm_W_p if flavor == "W" else grad_norm_script_p
    return lp_norm_p(g, u, p) + grad(g, u, p)


def p_energy(g: Graph, phi, p) -> float:
    """p-energy of a core-supported function; same value as :func:`grad_norm_script_p`."""
    vals = _values(g, phi)
    _require_core_support(g, vals)
    return grad_norm_script_p(g, vals, p)


def deg_weighted_norm_p(g: Graph, phi, p) -> float:
    """``sum_x deg_x |phi(x)|^p``."""
    p = check_p(p)
    vals = _values(g, phi)
    return float(np.sum(g.degrees * np.abs(vals) ** p))


def rayleigh_quotient(g: Graph, phi, p) -> float:
    vals = _values(g, phi)
    _require_core_support(g, vals)
    if not np.any(vals):
        raise ValueError("Rayleigh quotient of the zero function is undefined")
    denom = deg_weighted_norm_p(g, vals, p)
    if denom == 0:
        raise ValueError("support of phi has zero degree volume")
    return p_energy(g, vals, p) / denom


# -- level sets -----------------------------------------------------------

@dataclass(frozen=True)
class LevelDecomposition:
    """Superlevel structure of a non-negative function.

    On ``[breakpoints[i-1], breakpoints[i])`` (with ``breakpoints[-1] := 0``)
    the set ``{f > t}`` is constant; ``volumes[i]`` and ``boundary_volumes[i]``
    are its degree volume and boundary measure there.
    """

    breakpoints: np.ndarray
    volumes: np.ndarray
    boundary_volumes: np.ndarray
    boundary: str = "edge"

    @property
    def widths(self) -> np.ndarray:
        return np.diff(np.concatenate(([0.0], self.breakpoints)))

    def area_integral(self) -> float:
        return math.fsum(self.volumes * self.widths)

    def boundary_integral(self) -> float:
        return math.fsum(self.boundary_volumes * self.widths)


def _nonneg_values(g: Graph, f) -> np.ndarray:
    vals = _values(g, f)
    if np.any(vals < 0):
        raise ValueError("f must be non-negative")
    return vals


def level_decomposition(g: Graph, f, boundary="edge") -> LevelDecomposition:
    """Exact superlevel decomposition of ``f >= 0``.

    ``boundary="edge"`` measures ``{f > t}`` by the weight of edges leaving
    it; ``"vertex"`` by the degree volume of its outer vertex boundary.
    """
    check_boundary(boundary)
    vals = _nonneg_values(g, f)
    bps = np.unique(vals[vals > 0])
    lower = np.concatenate(([0.0], bps[:-1]))
    inside = vals[None, :] > lower[:, None]
    volumes = inside.astype(float) @ g.degrees
    src, dst = g.edge_index
    if boundary == "edge":
        lo = np.minimum(vals[src], vals[dst])
        hi = np.maximum(vals[src], vals[dst])
        cut = (lo[None, :] <= lower[:, None]) & (lower[:, None] < hi[None, :])
        bvol = cut.astype(float) @ g.edge_weights
    else:
        nbmax = np.zeros(g.n_vertices)
        np.maximum.at(nbmax, src, vals[dst])
        np.maximum.at(nbmax, dst, vals[src])
        outer = (vals[None, :] <= lower[:, None]) & (lower[:, None] < nbmax[None, :])
        bvol = outer.astype(float) @ g.degrees
    return LevelDecomposition(bps, volumes, bvol, boundary)


def area_formula_sides(g: Graph, f) -> tuple[float, float]:
    """``(sum_x deg_x f(x), integral_0^inf |{f > t}| dt)``."""
    vals = _nonneg_values(g, f)
    lhs = math.fsum(g.degrees * vals)
    return lhs, level_decomposition(g, vals).area_integral()


def coarea_formula_sides(g: Graph, f, boundary="edge") -> tuple[float, float]:
    """``((1/2) sum_x sum_{xy} w_xy |f(y)-f(x)|, integral_0^inf |boundary {f > t}| dt)``.

    The two sides agree for ``boundary="edge"``. The vertex-boundary measure
    only bounds the right side from above.
    """
    vals = _nonneg_values(g, f)
    lhs = math.fsum(g.edge_weights * np.abs(_edge_diffs(g, vals)))
    return lhs, level_decomposition(g, vals, boundary).boundary_integral()


# -- scalar inequalities ----------------------------------------------------

def fp_margin(a, b, p) -> float:
    """``p((a^p+b^p)/2)^((p-1)/p) |a-b| - |a^p-b^p|``; non-negative for a, b > 0, p >= 1."""
    p = check_p(p)
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise ValueError(f"a and b must be positive, got {a!r}, {b!r}")
    lhs = abs(a**p - b**p)
    rhs = p * ((a**p + b**p) / 2) ** ((p - 1) / p) * abs(a - b)
    return rhs - lhs


def cp_margin(values, p) -> float:
    """``(sum a_i)^p - sum a_i^p``; non-negative for a_i >= 0, p >= 1."""
    p = check_p(p)
    a = np.asarray(values, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("values must be a non-empty 1-d sequence")
    if np.any(a < 0):
        raise ValueError("values must be non-negative")
    return math.fsum(a) ** p - math.fsum(a**p)
