import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from graph_sobolev import (
    CheegerEstimator,
    DensityGapEstimator,
    GeometricDecay,
    LambdaPEstimator,
    line_family,
    truncate,
)

from conftest import B, C


def test_get_set_params():
    est = CheegerEstimator(mode="heuristic", seed=4)
    params = est.get_params()
    assert params["mode"] == "heuristic" and params["seed"] == 4
    est.set_params(boundary="vertex")
    assert est.boundary == "vertex"
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert twin is not est


def test_cheeger_estimator(path4):
    est = CheegerEstimator().fit(path4)
    assert est.alpha_ == 0.5
    assert est.witness_ == (B, C)
    assert CheegerEstimator(boundary="vertex").fit(path4).alpha_ == 0.5


def test_cheeger_estimator_rejects(path4):
    with pytest.raises(ValueError):
        CheegerEstimator(mode="nope").fit(path4)
    with pytest.raises(TypeError):
        CheegerEstimator().fit(np.zeros((3, 3)))


def test_lambda_estimator(path4):
    est = LambdaPEstimator(p=2).fit(path4)
    assert math.isclose(est.value_, 0.5, rel_tol=1e-14)
    out = est.transform([B, C, 0])
    assert out[2] == 0.0 and math.isclose(out[0], out[1], rel_tol=1e-12)


def test_lambda_not_fitted():
    with pytest.raises(NotFittedError):
        LambdaPEstimator().transform([0])


def test_gap_estimator(example_tree):
    est = DensityGapEstimator(radii=(2, 3)).fit(example_tree)
    assert est.distances_.shape == (2,)
    assert math.isclose(est.predict([3])[0], 0.85344262000413419972, rel_tol=1e-10)
    assert math.isclose(est.lower_bound_, 0.4**2 * 2 / 4, rel_tol=1e-12)
    with pytest.raises(ValueError, match="not fitted"):
        est.predict([9])


def test_gap_estimator_line_decay():
    est = DensityGapEstimator(radii=(4, 8), target=GeometricDecay()).fit(line_family("constant", 1.0))
    assert est.lower_bound_ is None
    assert est.distances_[1] < est.distances_[0]


def test_gap_estimator_low_p_has_no_bound(example_tree):
    est = DensityGapEstimator(p=1.5, radii=(2,)).fit(example_tree)
    assert est.lower_bound_ is None


def test_gap_not_fitted():
    with pytest.raises(NotFittedError):
        DensityGapEstimator().predict([2])


def test_gap_rejects_graph(path4):
    with pytest.raises(TypeError):
        DensityGapEstimator().fit(path4)
