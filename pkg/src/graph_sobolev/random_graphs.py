"""Random hosts and functions for property checks."""

from __future__ import annotations

import numpy as np

from .functions import GraphFunction
from .graph import Graph, build_graph


def _half_open(rng, high, size=None):
    """Uniform on (0, high]."""
    return high - rng.uniform(0.0, high, size)


def random_graph(rng: np.random.Generator, *, n_core=None, max_core=12, halo=False, unit=False,
                 mu_max=2.0, w_max=2.0, extra_edge_prob=0.3) -> Graph:
    """Connected random host.

    The core is a random spanning tree plus extra edges. With ``halo=True``
    between 1 and ``n_core`` halo vertices are attached to the core, each with
    a true degree at least its materialized degree. ``unit=True`` fixes all
    weights to 1 (true degrees stay integers).
    """
    n = int(n_core if n_core is not None else rng.integers(1 if halo else 2, max_core + 1))
    weight = (lambda: 1.0) if unit else (lambda: float(_half_open(rng, w_max)))
    edges = {}
    for v in range(1, n):
        edges[(int(rng.integers(v)), v)] = weight()
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in edges and rng.random() < extra_edge_prob:
                edges[(a, b)] = weight()
    vertices = [(v, float(_half_open(rng, mu_max)), "core") for v in range(n)]
    if halo:
        n_halo = int(rng.integers(1, n + 1))
        for h in range(n, n + n_halo):
            k = int(rng.integers(1, min(n, 2) + 1))
            attached = rng.choice(n, size=k, replace=False)
            materialized = 0.0
            for a in attached:
                w = weight()
                edges[(int(a), h)] = w
                materialized += w
            extra = float(rng.integers(0, 3)) if unit else float(rng.uniform(0.0, 2.0))
            vertices.append((h, float(_half_open(rng, mu_max)), "halo", materialized + extra))
    return build_graph(vertices, [(a, b, w) for (a, b), w in edges.items()])


def random_function(rng: np.random.Generator, g: Graph, *, nonneg=False, core_only=False, low=-2.0,
                    high=2.0) -> GraphFunction:
    """Values uniform in ``[low, high]`` on a random support (fraction uniform in (0, 1])."""
    pool = g.core_ids if core_only else [int(v) for v in g.ids]
    frac = float(_half_open(rng, 1.0))
    k = max(1, int(round(frac * len(pool))))
    support = rng.choice(pool, size=k, replace=False)
    vals = rng.uniform(low, high, k)
    if nonneg:
        vals = np.abs(vals)
    return GraphFunction(g, {int(v): float(x) for v, x in zip(support, vals)})
