import math

import numpy as np
import pytest

from graph_sobolev import (
    cheeger_exact,
    cheeger_inequality_margin,
    lambda_p_estimate,
    rayleigh_quotient,
    truncate,
)
from graph_sobolev.random_graphs import random_graph
from graph_sobolev.spectral import dirichlet_matrices

from conftest import B, C


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, 4])
def test_single_core_vertex(p3_halo, p):
    res = lambda_p_estimate(p3_halo, p)
    assert math.isclose(res.value, 1.0, rel_tol=1e-12)


def test_path_p2(path4):
    res = lambda_p_estimate(path4, 2)
    assert math.isclose(res.value, 0.5, rel_tol=1e-14)
    assert res.method == "eigh"
    assert math.isclose(res.minimizer(B), res.minimizer(C), rel_tol=1e-12)


def test_path_p2_descent(path4):
    res = lambda_p_estimate(path4, 2, method="descent")
    assert math.isclose(res.value, 0.5, rel_tol=1e-9)
    assert res.converged


def test_dirichlet_matrices(path4):
    L, D = dirichlet_matrices(path4)
    assert np.array_equal(L, [[2.0, -1.0], [-1.0, 2.0]])
    assert np.array_equal(D, np.diag([2.0, 2.0]))


@pytest.mark.parametrize("seed", range(8))
def test_descent_matches_eigensolver(seed):
    g = random_graph(np.random.default_rng(seed), halo=True, max_core=8)
    eig = lambda_p_estimate(g, 2).value
    desc = lambda_p_estimate(g, 2, method="descent", seed=seed).value
    assert math.isclose(desc, eig, rel_tol=1e-6)
    assert desc >= eig * (1 - 1e-12)


@pytest.mark.parametrize("p", [1.5, 3])
def test_estimate_is_attained(path4, p):
    res = lambda_p_estimate(path4, p)
    assert res.value == rayleigh_quotient(path4, res.minimizer, p)
    assert res.minimizer.is_compactly_supported()


def test_scaled_init_same_value(example_tree):
    g = truncate(example_tree, 3)
    x0 = np.linspace(1.0, 2.0, len(g.core_ids))
    a = lambda_p_estimate(g, 3, restarts=1, init=x0).value
    b = lambda_p_estimate(g, 3, restarts=1, init=10 * x0).value
    assert math.isclose(a, b, rel_tol=1e-7)


def test_bad_init(path4):
    with pytest.raises(ValueError):
        lambda_p_estimate(path4, 3, init=[0.0, 0.0])
    with pytest.raises(ValueError):
        lambda_p_estimate(path4, 3, init=[1.0, 0.0, 0.0, 0.0])


def test_eigh_needs_p2(path4):
    with pytest.raises(ValueError):
        lambda_p_estimate(path4, 3, method="eigh")


def test_seed_determinism(example_tree):
    g = truncate(example_tree, 3)
    a = lambda_p_estimate(g, 1.5, seed=4)
    b = lambda_p_estimate(g, 1.5, seed=4)
    assert a.value == b.value


def test_monotone_in_radius(example_tree):
    vals = [lambda_p_estimate(truncate(example_tree, r), 2).value for r in range(1, 6)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:]))


def test_p1_at_most_cheeger(example_tree):
    g = truncate(example_tree, 3)
    assert lambda_p_estimate(g, 1).value <= cheeger_exact(g).alpha * (1 + 1e-9)


def test_margin_examples(p3_halo, path4):
    assert math.isclose(cheeger_inequality_margin(p3_halo, 2), 0.5, abs_tol=1e-12)
    assert math.isclose(cheeger_inequality_margin(p3_halo, 1), 0.0, abs_tol=1e-9)
    assert math.isclose(cheeger_inequality_margin(path4, 2), 3 / 8, abs_tol=1e-12)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("p", [1, 1.5, 2, 3, 4])
def test_margin_non_negative(seed, p):
    g = random_graph(np.random.default_rng(50 + seed), halo=True, max_core=7)
    assert cheeger_inequality_margin(g, p, restarts=4) >= -1e-10


def test_isolated_core_vertex_rejected():
    from graph_sobolev import build_graph
    g = build_graph([(0, 1, "core"), (1, 1, "core"), (2, 1, "core")], [(0, 1, 1)])
    with pytest.raises(ValueError, match="zero degree"):
        lambda_p_estimate(g, 2)


def test_to_dict(path4):
    d = lambda_p_estimate(path4, 2).to_dict()
    assert set(d) == {"value", "converged", "iterations"}
