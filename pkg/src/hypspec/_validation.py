"""Input validation helpers shared by the library and the estimator wrappers."""

import numbers

import numpy as np


def check_complex_array(values, name="lambdas"):
    """Return ``values`` as a finite 1-D complex array.

    Accepts scalars, sequences of complex numbers, or an ``(n, 2)`` real array
    holding ``(re, im)`` pairs, which is the layout scikit-learn style callers
    tend to pass.
    """
    arr = np.asarray(values)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        arr = arr[:, 0] + 1j * arr[:, 1]
    arr = np.atleast_1d(arr).astype(complex)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_positive(value, name, strict=True):
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite real number, got {value!r}")
    if strict and value <= 0:
        raise ValueError(f"{name} must be > 0, got {value}")
    if not strict and value < 0:
        raise ValueError(f"{name} must be >= 0, got {value}")
    return float(value)


def check_exponent(p, name="p", allow_one=False):
    """Validate a Lebesgue exponent; ``p = 1`` only when ``allow_one``."""
    if not isinstance(p, numbers.Real) or not np.isfinite(p):
        raise ValueError(f"{name} must be a finite real number, got {p!r}")
    lower_ok = p >= 1 if allow_one else p > 1
    if not lower_ok:
        bound = "[1, inf)" if allow_one else "(1, inf)"
        raise ValueError(f"{name} must lie in {bound}, got {p}")
    return float(p)


def check_right_half_plane(z, name="z"):
    z = complex(z)
    if not np.isfinite(z) or z.real <= 0:
        raise ValueError(f"{name} must satisfy Re {name} > 0, got {z}")
    return z
