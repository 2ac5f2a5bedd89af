"""scikit-learn style front ends.

``fit`` takes a :class:`~graph_sobolev.graph.Graph` (or a family for the gap
estimator) in place of a feature matrix; fitted quantities land in
trailing-underscore attributes. ``get_params``/``set_params``/``clone`` come
from :class:`sklearn.base.BaseEstimator`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .cheeger import DEFAULT_LIMIT, cheeger_exact, cheeger_heuristic
from .gap import GeometricDecay, gap_curve, theorem_lower_bound
from .graph import Graph, GraphFamily
from .spectral import lambda_p_estimate
from .validation import check_boundary, check_flavor, check_p


def _check_graph(g):
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    return g


class CheegerEstimator(BaseEstimator):
    """Cheeger constant of a host.

    Parameters
    ----------
    mode : {"auto", "exhaustive", "mincut", "heuristic"}
    boundary : {"edge", "vertex"}
    limit : int
        Largest core for exhaustive enumeration.
    iterations, seed : int
        Heuristic search budget and RNG seed.

    Attributes
    ----------
    alpha_ : float
    witness_ : tuple of int
    result_ : CheegerResult
    """

    def __init__(self, mode="auto", boundary="edge", limit=DEFAULT_LIMIT, iterations=1000, seed=0):
        self.mode = mode
        self.boundary = boundary
        self.limit = limit
        self.iterations = iterations
        self.seed = seed

    def fit(self, X, y=None):
        g = _check_graph(X)
        check_boundary(self.boundary)
        if self.mode == "heuristic":
            res = cheeger_heuristic(g, self.iterations, self.seed, boundary=self.boundary)
        elif self.mode in ("auto", "exhaustive", "mincut"):
            method = {"auto": "auto", "exhaustive": "enumerate", "mincut": "mincut"}[self.mode]
            if method == "auto" and self.boundary == "vertex":
                method = "enumerate"
            res = cheeger_exact(g, boundary=self.boundary, method=method, limit=self.limit)
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.result_ = res
        self.alpha_ = res.alpha
        self.witness_ = res.witness
        return self


class LambdaPEstimator(BaseEstimator):
    """Bottom of the p-Rayleigh quotient over core-supported functions.

    ``transform`` evaluates the fitted minimizer on the given vertex ids.
    """

    def __init__(self, p=2.0, restarts=8, max_iters=100_000, tol=1e-10, seed=0, method="auto"):
        self.p = p
        self.restarts = restarts
        self.max_iters = max_iters
        self.tol = tol
        self.seed = seed
        self.method = method

    def fit(self, X, y=None):
        g = _check_graph(X)
        check_p(self.p)
        res = lambda_p_estimate(g, self.p, restarts=self.restarts, max_iters=self.max_iters,
                                tol=self.tol, seed=self.seed, method=self.method)
        self.result_ = res
        self.value_ = res.value
        self.minimizer_ = res.minimizer
        return self

    def transform(self, X):
        check_is_fitted(self, "minimizer_")
        return np.array([self.minimizer_(v) for v in X])


class DensityGapEstimator(BaseEstimator):
    """Minimized Sobolev distance to core-supported functions, per radius.

    ``target=None`` measures the distance from the constant 1; pass a
    :class:`~graph_sobolev.gap.GeometricDecay` for the line contrast.

    Attributes
    ----------
    curve_ : list of GapPoint
    distances_ : ndarray
    lower_bound_ : float or None
        Theorem floor for the constant target, using the Cheeger constant of
        the largest radius and the root degree.
    """

    def __init__(self, p=2.0, flavor="W", radii=(2, 3, 4, 5, 6), target=None, tol=1e-12, max_iters=200_000):
        self.p = p
        self.flavor = flavor
        self.radii = radii
        self.target = target
        self.tol = tol
        self.max_iters = max_iters

    def fit(self, X, y=None):
        if not isinstance(X, GraphFamily):
            raise TypeError(f"expected a GraphFamily, got {type(X).__name__}")
        check_flavor(self.flavor)
        p = check_p(self.p)
        if self.target is not None and not isinstance(self.target, (GeometricDecay, dict)):
            raise ValueError(f"unsupported target {self.target!r}")
        radii = [int(r) for r in self.radii]
        self.curve_ = gap_curve(X, radii, self.p, self.flavor, self.target, tol=self.tol, max_iters=self.max_iters)
        self.distances_ = np.array([pt.distance_p for pt in self.curve_])
        self.lower_bound_ = None
        if self.target is None and (self.flavor == "script" or p >= 2):
            g = X.truncate(max(radii))
            alpha = cheeger_exact(g, method="auto").alpha
            root = g.root if g.root is not None else min(g.core_ids)
            self.lower_bound_ = theorem_lower_bound(self.p, alpha, float(g.degrees[g.position(root)]), self.flavor)
        return self

    def predict(self, X):
        """Distance for each requested radius (must have been fitted)."""
        check_is_fitted(self, "curve_")
        lookup = {pt.radius: pt.distance_p for pt in self.curve_}
        try:
            return np.array([lookup[int(r)] for r in X])
        except KeyError as exc:
            raise ValueError(f"radius {exc.args[0]} was not fitted") from None
