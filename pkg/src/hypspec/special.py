"""Digamma for complex arguments and trigamma on the real axis, via scipy."""

import numpy as np
from scipy import special as _sp

__all__ = ["digamma", "trigamma", "EULER_GAMMA"]

EULER_GAMMA = float(np.euler_gamma)


def _check_poles(s):
    bad = (s.imag == 0) & (s.real <= 0) & (s.real == np.round(s.real))
    if np.any(bad):
        raise ValueError(f"pole at non-positive integer: {s[bad][0].real:g}")


def digamma(s):
    """Logarithmic derivative of the Gamma function."""
    s = np.asarray(s, dtype=complex)
    _check_poles(np.atleast_1d(s))
    out = _sp.psi(s)
    return complex(out) if out.ndim == 0 else out


def trigamma(x):
    """Derivative of the digamma function, real arguments only."""
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if np.any(x.imag != 0):
            raise ValueError("trigamma is only provided on the real axis")
        x = x.real
    x = x.astype(float)
    _check_poles(np.atleast_1d(x).astype(complex))
    out = _sp.polygamma(1, x)
    return float(out) if out.ndim == 0 else out
