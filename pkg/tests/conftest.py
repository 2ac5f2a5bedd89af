import numpy as np
import pytest

from graph_sobolev import build_graph, tree_family

# vertex names used throughout: a=0, b=1, c=2, d=3
A, B, C, D = 0, 1, 2, 3


@pytest.fixture
def p3():
    """Path a-b-c, unit weights and measures, all core."""
    return build_graph([(A, 1, "core"), (B, 1, "core"), (C, 1, "core")], [(A, B, 1), (B, C, 1)])


@pytest.fixture
def p3_halo():
    """Path a-b-c with core {b} and halo {a, c} (true degree 1)."""
    return build_graph(
        [(A, 1, "halo", 1), (B, 1, "core"), (C, 1, "halo", 1)],
        [(A, B, 1), (B, C, 1)],
    )


@pytest.fixture
def path4():
    """Path a-b-c-d, core {b, c}, halo {a, d}."""
    return build_graph(
        [(A, 1, "halo", 1), (B, 1, "core"), (C, 1, "core"), (D, 1, "halo", 1)],
        [(A, B, 1), (B, C, 1), (C, D, 1)],
    )


@pytest.fixture
def example_tree():
    return tree_family(2, 1 / 3, 1 / 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
