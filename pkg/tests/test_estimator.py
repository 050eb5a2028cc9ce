import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from cyclosig.estimator import FEATURES, CircularSignatureRank
from cyclosig.validation import check_conductors


def test_params_roundtrip():
    est = CircularSignatureRank(max_phi_half=100)
    assert est.get_params() == {"max_phi_half": 100, "allow_large": False}
    twin = clone(est).set_params(allow_large=True)
    assert twin.get_params()["allow_large"] is True
    assert est.allow_large is False


def test_fit_transform_values():
    out = CircularSignatureRank().fit_transform([5, 29, 163, 1024])
    assert out.shape == (4, len(FEATURES))
    assert out[:, 1].tolist() == [2, 11, 79, 256]
    assert out[:, 2].tolist() == [0, 3, 2, 0]
    assert out[1].tolist() == [14, 11, 3, 2, 2]


def test_transform_unseen_conductor():
    est = CircularSignatureRank().fit(np.array([[29]]))
    assert est.transform([[163]])[0, 1] == 79
    assert est.ranks_ == {29: 11}


def test_not_fitted():
    with pytest.raises(NotFittedError):
        CircularSignatureRank().transform([5])


def test_feature_names():
    names = CircularSignatureRank().fit([5]).get_feature_names_out()
    assert list(names) == list(FEATURES)


def test_pipeline_composes():
    pipe = make_pipeline(CircularSignatureRank(), StandardScaler())
    out = pipe.fit_transform(np.array([5, 7, 29, 31]).reshape(-1, 1))
    assert out.shape == (4, 5)
    assert np.allclose(out.mean(axis=0), 0)


def test_dimension_cap():
    with pytest.raises(ValueError, match="cap"):
        CircularSignatureRank(max_phi_half=10).fit([29])
    assert CircularSignatureRank(max_phi_half=10, allow_large=True).fit([29]).ranks_[29] == 11


@pytest.mark.parametrize("X", [[6], [35], [5.5], [[5, 7]], [], ["5"], [np.inf]])
def test_validation_rejects(X):
    with pytest.raises(ValueError):
        CircularSignatureRank().fit(X)


def test_check_conductors_shapes():
    assert check_conductors(5).tolist() == [5]
    assert check_conductors([5.0, 7.0]).tolist() == [5, 7]
    assert check_conductors(np.array([[9], [27]])).dtype == np.int64
