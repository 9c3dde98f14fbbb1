"""scikit-learn style wrappers.

Only two parts of the library have an estimator shape: classifying spectral
parameters as excluded / candidate eigenvalues, and fitting a potential to
obtain its eigenvalues.  Everything else is a plain function.
"""

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_complex_array, check_exponent
from .bounds import (
    PotentialSpec,
    _check_parabolic_range,
    _hilbert_log_lhs,
    _log_rhs,
    _parabolic_log_lhs,
)
from .oracle import RadialPotential, locate_eigenvalues
from .regions import BOUNDARY_TOL, SpectralParams, sigma_p_contains

__all__ = ["EnclosureClassifier", "BirmanSchwingerEigensolver"]


class EnclosureClassifier(ClassifierMixin, BaseEstimator):
    """Label spectral parameters as possible eigenvalues (``True``) or excluded.

    ``X`` holds complex ``lam`` values (or ``(n, 2)`` rows of real and imaginary
    parts).  Nothing is learned; ``fit`` only validates the parameters.
    """

    def __init__(self, p=2.0, r=2.0, v_norm=1.0):
        self.p = p
        self.r = r
        self.v_norm = v_norm

    def fit(self, X=None, y=None):
        params = SpectralParams(check_exponent(self.p))
        pot = PotentialSpec(self.r, self.v_norm)
        if params.is_hilbert:
            if pot.r < 2:
                raise ValueError("r must be >= 2 at p = 2")
        else:
            _check_parabolic_range(params, pot)
        self.params_ = params
        self.potential_ = pot
        self.classes_ = np.array([False, True])
        return self

    def decision_function(self, X):
        """``log(rhs) - log(lhs)``; positive means not excluded, ``+inf`` inside the spectrum."""
        check_is_fitted(self, "params_")
        lam = check_complex_array(X, "X")
        inside = np.asarray(sigma_p_contains(self.params_, lam, tol=BOUNDARY_TOL), dtype=bool)
        out = np.full(lam.shape, math.inf)
        pot = self.potential_
        if self.params_.is_hilbert:
            log_lhs = _hilbert_log_lhs(lam[~inside], pot.r)
            log_rhs = _log_rhs(pot, 1.5 * math.log(2.0))
        else:
            log_lhs = _parabolic_log_lhs(self.params_, lam[~inside], pot.r)
            log_rhs = _log_rhs(pot, (2.0 * pot.r - 2.0) * math.log(16.0))
        out[~inside] = log_rhs - log_lhs
        return out

    def predict(self, X):
        return self.decision_function(X) >= 0


class BirmanSchwingerEigensolver(BaseEstimator):
    """Fit a radial potential and expose its eigenvalues in a search box."""

    def __init__(self, box=(-2.0, 0.25, -0.1, 0.1), n=128, m=64, check_n=None):
        self.box = box
        self.n = n
        self.m = m
        self.check_n = check_n

    def fit(self, X, y=None):
        if not isinstance(X, RadialPotential):
            raise TypeError("X must be a RadialPotential")
        run = locate_eigenvalues(X, self.box, n=self.n, m=self.m, check_n=self.check_n)
        self.eigenvalues_ = run.eigenvalues
        self.errors_ = run.errors
        self.failures_ = run.failures
        return self

    def predict(self, X=None):
        """Eigenvalues as a complex array, one entry per multiplicity."""
        check_is_fitted(self, "eigenvalues_")
        return np.array([lam for lam, m in self.eigenvalues_ for _ in range(m)], dtype=complex)
