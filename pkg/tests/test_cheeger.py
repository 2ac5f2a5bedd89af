import itertools
import math

import numpy as np
import pytest

from graph_sobolev import (
    boundary,
    boundary_measure,
    build_graph,
    cheeger_exact,
    cheeger_heuristic,
    cheeger_ratio,
    truncate,
    volume,
)
from graph_sobolev.cheeger import TIE_RTOL
from graph_sobolev.random_graphs import random_graph

from conftest import A, B, C, D


def brute_force(g, kind="edge"):
    """Independent oracle: itertools subsets, fsum ratios, same tie rule."""
    core = sorted(g.core_ids)
    deg = {int(v): float(d) for v, d in zip(g.ids, g.degrees)}
    scored = []
    for k in range(1, len(core) + 1):
        for omega in itertools.combinations(core, k):
            s = set(omega)
            vol = math.fsum(deg[x] for x in omega)
            if vol == 0:
                continue
            if kind == "edge":
                bnd = math.fsum(w for x in omega for y, w in g.neighbors(x) if y not in s)
            else:
                outer = {y for x in omega for y, _ in g.neighbors(x) if y not in s}
                bnd = math.fsum(deg[y] for y in outer)
            scored.append((bnd / vol, omega))
    best = min(r for r, _ in scored)
    return min((w for r, w in scored if r <= best * (1 + TIE_RTOL)))


# -- small worked examples----------------------------------------------------------

def test_boundary_sets(path4, p3):
    assert boundary(path4, {B}) == {A, C}
    assert boundary(p3, {A, B, C}) == frozenset()


def test_path_vertex_boundary(path4):
    # vertex reading: boundary {a, c} with degrees 1 + 2, volume 2
    assert cheeger_ratio(path4, {B}, boundary="vertex") == 1.5
    assert boundary_measure(path4, {B}, "vertex") == 3.0


def test_path_edge_boundary(path4):
    assert cheeger_ratio(path4, {B}) == 1.0
    assert cheeger_ratio(path4, {B, C}) == 0.5
    res = cheeger_exact(path4)
    assert (res.alpha, res.witness) == (0.5, (B, C))


def test_p3_halo_ratio(p3_halo):
    assert cheeger_ratio(p3_halo, {B}) == 1.0
    assert cheeger_ratio(p3_halo, {B}, boundary="vertex") == 1.0
    assert cheeger_exact(p3_halo, boundary="vertex").alpha == 1.0


def test_whole_finite_graph_has_zero_ratio(p3):
    res = cheeger_exact(p3)
    assert res.alpha == 0.0
    assert res.witness == (A, B, C)


def test_volume_uses_true_degree(path4):
    assert volume(path4, [A, B]) == 3.0


def test_halo_subset_rejected(path4):
    with pytest.raises(ValueError, match="halo"):
        cheeger_ratio(path4, {A})
    with pytest.raises(ValueError):
        cheeger_ratio(path4, set())


def test_unknown_options(path4):
    with pytest.raises(ValueError):
        cheeger_exact(path4, boundary="face")
    with pytest.raises(ValueError):
        cheeger_exact(path4, method="magic")
    with pytest.raises(ValueError):
        cheeger_exact(path4, boundary="vertex", method="mincut")


def test_limit_enforced(example_tree):
    g = truncate(example_tree, 5)
    with pytest.raises(ValueError, match="limited"):
        cheeger_exact(g, limit=20)


def test_tie_break_is_lexicographic():
    # cycle of four with two antipodal halo leaves: symmetric optima
    g = build_graph(
        [(0, 1, "core"), (1, 1, "core"), (2, 1, "core"), (3, 1, "core"), (4, 1, "halo", 1), (5, 1, "halo", 1)],
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 4, 1), (2, 5, 1)],
    )
    res = cheeger_exact(g)
    assert res.witness == brute_force(g)


def test_to_dict(path4):
    d = cheeger_exact(path4).to_dict()
    assert d == {"alpha": 0.5, "witness": [B, C], "mode": "exhaustive", "subsets_examined": 3}


# -- tree ---------------------------------------------------------------------------

TREE_ALPHA = {1: 1.0, 2: 0.5, 3: 0.4, 4: 4 / 11}


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_tree_golden(example_tree, r):
    res = cheeger_exact(truncate(example_tree, r))
    assert math.isclose(res.alpha, TREE_ALPHA[r], rel_tol=1e-14)
    # whole ball is optimal
    assert len(res.witness) == 2**r - 1


def test_tree_ball_formula(example_tree):
    for r in range(1, 7):
        g = truncate(example_tree, r)
        assert math.isclose(cheeger_ratio(g, g.core_ids), 2**r / (3 * 2**r - 4), rel_tol=1e-14)


def test_tree_alpha_monotone(example_tree):
    vals = [cheeger_exact(truncate(example_tree, r)).alpha for r in range(1, 5)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_tree_vertex_boundary_values(example_tree):
    vals = [cheeger_exact(truncate(example_tree, r), boundary="vertex").alpha for r in (1, 2, 3)]
    assert vals == pytest.approx([3.0, 1.5, 1.2], rel=1e-14)


def test_mincut_large_tree(example_tree):
    res = cheeger_exact(truncate(example_tree, 6), method="auto")
    assert res.mode == "mincut"
    assert math.isclose(res.alpha, 64 / 188, rel_tol=1e-12)


# -- oracle agreement -----------------------------------------------------------------

@pytest.mark.parametrize("seed", range(12))
def test_exact_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, halo=True, max_core=8)
    res = cheeger_exact(g)
    witness = brute_force(g)
    assert res.witness == witness
    assert res.alpha == cheeger_ratio(g, witness)


@pytest.mark.parametrize("seed", range(6))
def test_vertex_mode_matches_brute_force(seed):
    rng = np.random.default_rng(100 + seed)
    g = random_graph(rng, halo=True, max_core=7)
    assert cheeger_exact(g, boundary="vertex").witness == brute_force(g, "vertex")


@pytest.mark.parametrize("seed", range(8))
def test_mincut_matches_enumeration(seed):
    rng = np.random.default_rng(200 + seed)
    g = random_graph(rng, halo=True, max_core=9)
    assert math.isclose(cheeger_exact(g, method="mincut").alpha, cheeger_exact(g).alpha, rel_tol=1e-9)


def test_small_chunks_agree():
    g = random_graph(np.random.default_rng(5), halo=True, n_core=9)
    assert cheeger_exact(g, chunk=7) == cheeger_exact(g)


# -- heuristic --------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(5))
def test_heuristic_upper_bounds_exact(seed):
    rng = np.random.default_rng(300 + seed)
    g = random_graph(rng, halo=True, max_core=8)
    exact = cheeger_exact(g).alpha
    for s in range(5):
        assert cheeger_heuristic(g, 200, seed=s).alpha >= exact


def test_heuristic_finds_optimum_with_budget():
    g = random_graph(np.random.default_rng(11), halo=True, n_core=6)
    res = cheeger_heuristic(g, iterations=2**6 * 8, seed=0)
    assert math.isclose(res.alpha, cheeger_exact(g).alpha, rel_tol=1e-12)


def test_heuristic_deterministic(example_tree):
    g = truncate(example_tree, 4)
    assert cheeger_heuristic(g, 300, seed=3) == cheeger_heuristic(g, 300, seed=3)


def test_heuristic_rejects_bad_iterations(path4):
    with pytest.raises(ValueError):
        cheeger_heuristic(path4, 0)
