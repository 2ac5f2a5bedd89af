"""Sobolev distance from a target to core-supported functions, and proof-chain checks.

On a radius-``r`` truncation the distance objective is exact: outside the
materialized vertices the candidate function is 0, so the remaining terms
depend only on the target and are summed in closed form.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .cheeger import cheeger_exact
from .descent import minimize_descent
from .functions import (
    GraphFunction,
    _values,
    deg_weighted_norm_p,
    grad_norm_W_p,
    grad_norm_script_p,
    lp_norm_p,
    p_energy,
)
from .graph import Graph, GraphFamily
from .validation import check_flavor, check_p, thread_count

ROOT_THRESHOLD = 1 / math.sqrt(2)


@dataclass(frozen=True)
class GeometricDecay:
    """Target ``u(k) = amplitude * ratio**|k|`` on a line family."""

    amplitude: float = 1.0
    ratio: float = 0.5

    def __post_init__(self):
        if not 0 < self.ratio < 1:
            raise ValueError(f"decay ratio must lie in (0, 1), got {self.ratio!r}")


@dataclass(frozen=True)
class GapPoint:
    radius: int
    distance_p: float
    minimizer: GraphFunction
    converged: bool
    iterations: int = 0


class DistanceObjective:
    """``phi -> ||phi - u||^p`` on the whole graph, phi given by its core values.

    ``v = phi - u`` on the materialized vertices. ``extra_sq`` holds, per
    vertex, the squared weighted differences along unmaterialized edges (used
    by the W gradient); ``constant`` holds every term that does not involve a
    materialized vertex's free value.
    """

    def __init__(self, g: Graph, u: np.ndarray, p: float, flavor: str,
                 extra_sq: np.ndarray | None = None, constant: float = 0.0):
        self.g, self.p, self.flavor = g, p, flavor
        self.u = u
        self.core_pos = np.flatnonzero(g.core_mask)
        self.src, self.dst = g.edge_index
        self.w = g.edge_weights
        self.mu = g.mu
        self.extra_sq = np.zeros(g.n_vertices) if extra_sq is None else extra_sq
        self.constant = float(constant)

    def residual(self, x):
        full = np.zeros(self.g.n_vertices)
        full[self.core_pos] = x
        return full - self.u

    def value(self, x):
        v = self.residual(x)
        p = self.p
        total = self.constant + float(np.sum(self.mu * np.abs(v) ** p))
        diff = v[self.src] - v[self.dst]
        if self.flavor == "W":
            s = self._square_sums(diff)
            total += float(np.sum(self.mu * (s / (2 * self.mu)) ** (p / 2)))
        else:
            total += float(np.sum(self.w * np.abs(diff) ** p))
        return total

    def _square_sums(self, diff):
        sq = self.w * diff**2
        n = self.g.n_vertices
        return np.bincount(self.src, sq, minlength=n) + np.bincount(self.dst, sq, minlength=n) + self.extra_sq

    def grad(self, x):
        v = self.residual(x)
        p = self.p
        n = self.g.n_vertices
        gv = p * self.mu * np.abs(v) ** (p - 1) * np.sign(v)
        diff = v[self.src] - v[self.dst]
        if self.flavor == "W":
            s = self._square_sums(diff)
            with np.errstate(divide="ignore", invalid="ignore"):
                c = (p / 2) * (2 * self.mu) ** (-p / 2) * self.mu * s ** (p / 2 - 1)
            c[s == 0] = 0.0
            coef = (c[self.src] + c[self.dst]) * 2 * self.w * diff
        else:
            coef = p * self.w * np.abs(diff) ** (p - 1) * np.sign(diff)
        gv += np.bincount(self.src, coef, minlength=n) - np.bincount(self.dst, coef, minlength=n)
        return gv[self.core_pos]


def _geometric_tail(coef, s, start):
    """``sum_{k >= start} coef * s**k``."""
    if coef == 0:
        return 0.0
    if not s < 1:
        raise ValueError("target has infinite Sobolev norm on this family (divergent tail)")
    return coef * s**start / (1 - s)


def build_objective(family: GraphFamily, r: int, p, flavor="W", target=None) -> DistanceObjective:
    """Exact truncated objective for ``||phi - target||^p``; ``target=None`` is the constant 1."""
    p = check_p(p)
    check_flavor(flavor)
    g = family.truncate(r)
    n = g.n_vertices
    if target is None:
        if math.isinf(family.total_measure):
            raise ValueError(
                "the constant function 1 needs finite total measure |V| < +inf; this family has infinite measure"
            )
        tail = max(family.total_measure - math.fsum(g.mu), 0.0)
        return DistanceObjective(g, np.ones(n), p, flavor, constant=tail)
    if isinstance(target, Mapping) or isinstance(target, GraphFunction):
        u = _values(g, target)
        if np.any(u[~g.core_mask] != 0):
            raise ValueError("finitely supported target must lie in the truncation core (no closed-form tail otherwise)")
        return DistanceObjective(g, u, p, flavor)
    if isinstance(target, GeometricDecay):
        return _line_decay_objective(family, g, r, p, flavor, target)
    raise ValueError(f"no closed-form tail for target {target!r} on a {family.kind} family")


def _line_decay_objective(family, g, r, p, flavor, target: GeometricDecay):
    if family.kind != "line":
        raise ValueError("geometric-decay targets need a line family for closed-form tails")
    a, rho = target.amplitude, target.ratio
    c, q = family.param("c"), family.param("q")
    labels = g.labels
    u = np.array([a * rho ** abs(labels[int(v)]) for v in g.ids])
    # |u(k) - u(k+1)| = a (1 - rho) rho^k for k >= 0
    step = a * (1 - rho)
    extra_sq = np.zeros(g.n_vertices)
    for pos, vid in enumerate(g.ids):
        if not g.core_mask[pos]:
            k = abs(labels[int(vid)])
            extra_sq[pos] = (step * rho**k) ** 2
    # both sides of the line contribute equally
    lp_tail = 2 * _geometric_tail(c * a**p, q * rho**p, r + 2)
    if flavor == "W":
        sq_coef = step**2 * (rho**-2 + 1)
        coef = c ** (1 - p / 2) * 2 ** (-p / 2) * sq_coef ** (p / 2)
        grad_tail = 2 * _geometric_tail(coef, q ** (1 - p / 2) * rho**p, r + 2)
    else:
        grad_tail = 2 * _geometric_tail(step**p, rho**p, r + 1)
    return DistanceObjective(g, u, p, flavor, extra_sq=extra_sq, constant=lp_tail + grad_tail)


def _solve(family, r, p, flavor, target, tol, max_iters) -> GapPoint:
    obj = build_objective(family, r, p, flavor, target)
    x0 = obj.u[obj.core_pos].copy()
    res = minimize_descent(obj.value, obj.grad, x0, tol=tol, max_iters=max_iters)
    full = np.zeros(obj.g.n_vertices)
    full[obj.core_pos] = res.x
    return GapPoint(r, res.value, GraphFunction.from_array(obj.g, full), res.converged, res.iterations)


def distance_to_constant(family: GraphFamily, r: int, p=2.0, flavor="W", *, tol=1e-12, max_iters=200_000) -> GapPoint:
    """Minimize ``||phi - 1||^p`` over phi supported in the radius-``r`` core.

    Starts from ``phi = 1`` on the core.
    """
    return _solve(family, r, p, flavor, None, tol, max_iters)


def distance_to_target(family: GraphFamily, r: int, p=2.0, flavor="W", u=None, *, tol=1e-12,
                       max_iters=200_000) -> GapPoint:
    """Minimize ``||phi - u||^p`` over phi supported in the radius-``r`` core.

    ``u`` is a :class:`GeometricDecay` (line families), a finitely supported
    mapping inside the core, or ``None`` for the zero function.
    """
    if u is None:
        u = {}
    return _solve(family, r, p, flavor, u, tol, max_iters)


def gap_curve(family: GraphFamily, radii, p=2.0, flavor="W", target=None, **kwargs) -> list[GapPoint]:
    """One :class:`GapPoint` per radius, in input order."""
    radii = list(radii)

    def point(r):
        if target is None:
            return distance_to_constant(family, r, p, flavor, **kwargs)
        return distance_to_target(family, r, p, flavor, target, **kwargs)

    workers = min(thread_count(), max(len(radii), 1))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(point, radii))
    return [point(r) for r in radii]


# -- proof chains -------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    name: str
    lhs: float
    rhs: float
    relation: str
    slack: float
    holds: bool


@dataclass(frozen=True)
class ChainReport:
    theorem: int
    p: float
    alpha: float
    root: int
    steps: tuple[ChainStep, ...] = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps)

    @property
    def min_slack(self) -> float:
        return min(s.slack for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "p": self.p,
            "alpha": self.alpha,
            "root": self.root,
            "holds": self.holds,
            "steps": [
                {"name": s.name, "lhs": s.lhs, "relation": s.relation, "rhs": s.rhs,
                 "slack": s.slack, "holds": s.holds}
                for s in self.steps
            ],
        }


def _step(name, lhs, rhs, relation=">=", atol=1e-10) -> ChainStep:
    scale = max(1.0, abs(lhs), abs(rhs))
    slack = lhs - rhs if relation == ">=" else -abs(lhs - rhs)
    return ChainStep(name, float(lhs), float(rhs), relation, float(slack), bool(slack >= -atol * scale))


def _chain_setup(g: Graph, phi, p, alpha, root, need_mu_bound):
    vals = _values(g, phi)
    if np.any(vals[~g.core_mask] != 0):
        raise ValueError("phi must be supported in the core")
    if np.any(g.edge_weights != 1.0):
        raise ValueError("hypothesis violated: the theorems need unit weights w == 1")
    if need_mu_bound and np.any(g.mu > 1.0):
        raise ValueError("hypothesis violated: the theorem needs max mu <= 1")
    if alpha is None:
        alpha = cheeger_exact(g, method="auto").alpha
    if root is None:
        root = g.root if g.root is not None else min(g.core_ids)
    if not g.is_core(root):
        raise ValueError("the base vertex x0 must be a core vertex")
    return vals, float(alpha), int(root)


def _distance_to_one_p(g: Graph, vals, p, flavor) -> float:
    tail = 0.0
    if g.total_measure is not None:
        if math.isinf(g.total_measure):
            raise ValueError("the constant function 1 needs finite total measure |V| < +inf")
        tail = max(g.total_measure - math.fsum(g.mu), 0.0)
    shifted = vals - 1.0
    grad = grad_norm_W_p if flavor == "W" else grad_norm_script_p
    return tail + lp_norm_p(g, shifted, p) + grad(g, shifted, p)


def theorem1_chain_check(g: Graph, phi, p, *, alpha=None, root=None) -> ChainReport:
    """Evaluate each inequality of the W-norm non-density chain for one phi (p >= 2)."""
    p = check_p(p)
    if p < 2:
        raise ValueError("hypothesis violated: the W-norm chain needs p >= 2")
    vals, alpha, root = _chain_setup(g, phi, p, alpha, root, need_mu_bound=True)
    src, dst = g.edge_index
    sq = (vals[dst] - vals[src]) ** 2
    n = g.n_vertices
    s = np.bincount(src, sq, minlength=n) + np.bincount(dst, sq, minlength=n)

    dist = _distance_to_one_p(g, vals, p, "W")
    grad = grad_norm_W_p(g, vals, p)
    rewritten = 0.5 ** (p / 2) * float(np.sum(g.mu ** (1 - p / 2) * s ** (p / 2)))
    energy = p_energy(g, vals, p)
    const = 2 ** (p - 1) / p**p
    deg_norm = deg_weighted_norm_p(g, vals, p)
    x0 = g.position(root)
    deg0 = float(g.degrees[x0])
    steps = (
        _step("distance >= gradient term", dist, grad),
        _step("gradient term rewritten with w == 1", grad, rewritten, "=="),
        _step("mu <= 1 and superadditivity", rewritten, 0.5 ** ((p - 2) / 2) * energy),
        _step("Cheeger inequality", energy, const * alpha**p * deg_norm),
        _step("restriction to x0", deg_norm, deg0 * abs(vals[x0]) ** p),
        _step("deg(x0) >= 1", deg0, 1.0),
    )
    return ChainReport(1, p, alpha, root, steps)


def theorem2_chain_check(g: Graph, phi, p, *, alpha=None, root=None) -> ChainReport:
    """Evaluate each inequality of the script-W non-density chain for one phi (p >= 1)."""
    p = check_p(p)
    vals, alpha, root = _chain_setup(g, phi, p, alpha, root, need_mu_bound=False)
    dist = _distance_to_one_p(g, vals, p, "script")
    grad = grad_norm_script_p(g, vals, p)
    energy = p_energy(g, vals, p)
    const = 2 ** (p - 1) / p**p
    deg_norm = deg_weighted_norm_p(g, vals, p)
    x0 = g.position(root)
    deg0 = float(g.degrees[x0])
    steps = (
        _step("distance >= gradient term", dist, grad),
        _step("gradient term is the p-energy", grad, energy, "=="),
        _step("Cheeger inequality", energy, const * alpha**p * deg_norm),
        _step("restriction to x0", const * alpha**p * deg_norm, const * alpha**p * deg0 * abs(vals[x0]) ** p),
        _step("deg(x0) >= 1", deg0, 1.0),
    )
    return ChainReport(2, p, alpha, root, steps)


def theorem_lower_bound(p, alpha, deg_root, flavor="W") -> float:
    """Floor on ``||phi - 1||^p`` for any core-supported phi with ``phi(x0) > 1/sqrt(2)``."""
    check_flavor(flavor)
    p = check_p(p, 2.0 if flavor == "W" else 1.0)
    alpha, deg_root = float(alpha), float(deg_root)
    if alpha < 0 or deg_root < 0:
        raise ValueError("alpha and deg_root must be non-negative")
    if flavor == "W":
        return alpha**p * deg_root / p**p
    return 2 ** (p - 1) / p**p * alpha**p * ROOT_THRESHOLD**p * deg_root
