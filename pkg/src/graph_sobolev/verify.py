"""Randomized property suites for the formulas, inequalities and norm identities.

Each suite draws ``cases`` random instances and returns the list of failure
descriptions (empty on success).
"""

from __future__ import annotations

import zlib

import numpy as np

from .cheeger import cheeger_exact, cheeger_heuristic
from .functions import (
    area_formula_sides,
    coarea_formula_sides,
    cp_margin,
    fp_margin,
    sobolev_norm_p,
)
from .gap import theorem1_chain_check, theorem2_chain_check
from .random_graphs import random_function, random_graph
from .spectral import lambda_p_estimate

CHEEGER_INEQ_PS = (1.0, 1.5, 2.0, 3.0, 4.0)
THEOREM1_PS = (2.0, 3.0, 4.0)
THEOREM2_PS = (1.0, 1.5, 2.0, 3.0)


def _close(a, b, rtol):
    return abs(a - b) <= rtol * max(abs(a), abs(b)) or a == b


def suite_area(rng, cases):
    fails = []
    for i in range(cases):
        g = random_graph(rng, halo=bool(rng.integers(2)))
        f = random_function(rng, g, nonneg=True)
        lhs, rhs = area_formula_sides(g, f)
        if not _close(lhs, rhs, 1e-10):
            fails.append(f"case {i}: area {lhs!r} != {rhs!r}")
    return fails


def suite_coarea(rng, cases):
    fails = []
    for i in range(cases):
        g = random_graph(rng, halo=bool(rng.integers(2)))
        f = random_function(rng, g, nonneg=True, core_only=g.has_halo)
        lhs, rhs = coarea_formula_sides(g, f)
        if not _close(lhs, rhs, 1e-10):
            fails.append(f"case {i}: co-area {lhs!r} != {rhs!r}")
    return fails


def suite_fp(rng, cases):
    a = 10.0 - rng.uniform(0.0, 10.0, cases)
    b = 10.0 - rng.uniform(0.0, 10.0, cases)
    p = rng.uniform(1.0, 6.0, cases)
    return [f"fp_margin({x}, {y}, {q}) = {m}" for x, y, q in zip(a, b, p)
            if (m := fp_margin(x, y, q)) < -1e-12]


def suite_cp(rng, cases):
    fails = []
    for _ in range(cases):
        vals = rng.uniform(0.0, 10.0, int(rng.integers(1, 9)))
        p = rng.uniform(1.0, 6.0)
        m = cp_margin(vals, p)
        if m < -1e-12:
            fails.append(f"cp_margin({list(vals)}, {p}) = {m}")
    return fails


def suite_p2(rng, cases):
    fails = []
    for i in range(cases):
        g = random_graph(rng, halo=bool(rng.integers(2)))
        u = random_function(rng, g)
        a, b = sobolev_norm_p(g, u, 2, "W"), sobolev_norm_p(g, u, 2, "script")
        if not _close(a, b, 1e-14):
            fails.append(f"case {i}: W {a!r} != script {b!r}")
    return fails


def suite_cheeger_inequality(rng, cases, ps=CHEEGER_INEQ_PS, restarts=4):
    fails = []
    for i in range(cases):
        g = random_graph(rng, halo=True)
        alpha = cheeger_exact(g).alpha
        for p in ps:
            lam = lambda_p_estimate(g, p, restarts=restarts, seed=i).value
            margin = lam - 2 ** (p - 1) / p**p * alpha**p
            if margin < -1e-10:
                fails.append(f"case {i}, p={p}: margin {margin!r}")
        eig = lambda_p_estimate(g, 2.0).value
        desc = lambda_p_estimate(g, 2.0, method="descent", restarts=restarts, seed=i).value
        if not _close(eig, desc, 1e-6):
            fails.append(f"case {i}: descent {desc!r} vs eigensolve {eig!r}")
    return fails


def suite_chains(rng, cases, per_host=10):
    fails = []
    for i in range(cases):
        g = random_graph(rng, halo=True, unit=True, mu_max=1.0)
        alpha = cheeger_exact(g).alpha
        for _ in range(per_host):
            phi = random_function(rng, g, core_only=True)
            for p in THEOREM1_PS:
                rep = theorem1_chain_check(g, phi, p, alpha=alpha)
                if not rep.holds:
                    fails.append(f"host {i}, W chain, p={p}: min slack {rep.min_slack!r}")
            for p in THEOREM2_PS:
                rep = theorem2_chain_check(g, phi, p, alpha=alpha)
                if not rep.holds:
                    fails.append(f"host {i}, script-W chain, p={p}: min slack {rep.min_slack!r}")
    return fails


def suite_cheeger_search(rng, cases, seeds=5):
    fails = []
    for i in range(cases):
        g = random_graph(rng, max_core=8, halo=bool(rng.integers(2)))
        exact = cheeger_exact(g)
        for s in range(seeds):
            heur = cheeger_heuristic(g, iterations=1 << len(g.core_ids), seed=s)
            if heur.alpha < exact.alpha * (1 - 1e-12):
                fails.append(f"host {i}, seed {s}: heuristic {heur.alpha!r} below exact {exact.alpha!r}")
    return fails


def suite_norm_axioms(rng, cases):
    fails = []
    for i in range(cases):
        g = random_graph(rng, halo=bool(rng.integers(2)))
        u, v = random_function(rng, g), random_function(rng, g)
        c = float(rng.uniform(-3, 3))
        for flavor in ("W", "script"):
            for p in (1.0, 1.5, 2.0, 3.0):
                norm = lambda f: sobolev_norm_p(g, f, p, flavor) ** (1 / p)
                if not _close(norm(c * u), abs(c) * norm(u), 1e-12):
                    fails.append(f"case {i}, {flavor}, p={p}: homogeneity")
                if norm(u + v) > norm(u) + norm(v) + 1e-10:
                    fails.append(f"case {i}, {flavor}, p={p}: triangle inequality")
    return fails


SUITES = {
    "area": (suite_area, 200),
    "coarea": (suite_coarea, 200),
    "fp": (suite_fp, 10_000),
    "cp": (suite_cp, 10_000),
    "p2": (suite_p2, 100),
    "norms": (suite_norm_axioms, 50),
    "cheeger": (suite_cheeger_search, 20),
    "cheeger-inequality": (suite_cheeger_inequality, 30),
    "chains": (suite_chains, 10),
}


def run_suites(names=None, seed=0, cases=None) -> list[dict]:
    """Run suites in a fixed order; ``cases`` overrides every suite's default count."""
    names = list(SUITES) if names is None else list(names)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if cases is not None and cases < 1:
        raise ValueError("case count must be at least 1")
    out = []
    for name in names:
        fn, default = SUITES[name]
        rng = np.random.default_rng([seed, zlib.crc32(name.encode())])
        n = default if cases is None else cases
        fails = fn(rng, n)
        out.append({"suite": name, "cases": n, "failures": len(fails), "details": fails[:10]})
    return out

