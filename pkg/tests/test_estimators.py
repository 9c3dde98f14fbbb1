import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hypspec.bounds import PotentialSpec, thm1_certificate, thm2_certificate
from hypspec.estimators import BirmanSchwingerEigensolver, EnclosureClassifier
from hypspec.oracle import RadialPotential
from hypspec.regions import sigma_p_contains


def test_classifier_agrees_with_certificates():
    rng = np.random.default_rng(0)
    lam = rng.uniform(-3, 1, 40) + 1j * rng.uniform(-2, 2, 40)
    clf = EnclosureClassifier(p=2.0, r=2.0, v_norm=0.8).fit()
    pred = clf.predict(lam)
    for l, keep in zip(lam, pred):
        assert keep == (not thm1_certificate(PotentialSpec(2.0, 0.8), l).excluded)
    clf4 = EnclosureClassifier(p=4.0, r=4.0, v_norm=0.05).fit()
    for l, keep in zip(lam, clf4.predict(lam)):
        if sigma_p_contains(4.0, l):
            assert keep
            continue
        assert keep == (not thm2_certificate(4.0, PotentialSpec(4.0, 0.05), l).excluded)


def test_classifier_accepts_two_column_input_and_spectrum_points():
    clf = EnclosureClassifier(v_norm=0.5).fit()
    X = np.array([[0.5, 0.0], [-5.0, 0.0]])
    assert list(clf.predict(X)) == [True, False]
    assert clf.decision_function(X)[0] == np.inf


def test_classifier_parameter_protocol():
    clf = EnclosureClassifier(p=3.0, r=3.0, v_norm=0.2)
    assert clone(clf).get_params() == clf.get_params()
    with pytest.raises(NotFittedError):
        clf.predict([0.0])
    with pytest.raises(ValueError):
        EnclosureClassifier(p=3.0, r=2.0).fit()


def test_eigensolver_fit_predict():
    est = BirmanSchwingerEigensolver(n=48, check_n=24).fit(RadialPotential.well(2.0))
    assert est.predict().shape == (1,)
    assert est.predict()[0].real == pytest.approx(-0.0745263252, abs=1e-8)
    assert est.errors_[0] < 1e-8
    with pytest.raises(TypeError):
        BirmanSchwingerEigensolver().fit(np.zeros(3))
