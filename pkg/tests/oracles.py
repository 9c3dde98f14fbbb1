"""Reference values computed by means independent of the library code paths."""

import math

import mpmath as mp
import numpy as np
from scipy import integrate, optimize

mp.mp.dps = 30


def green_legendre(lam, d):
    """Green kernel from the Legendre function of the second kind: ``Q_{s-1}(cosh d) / (2 pi)``."""
    s = mp.mpf(0.5) + mp.sqrt(mp.mpf(0.25) - mp.mpc(lam))
    return complex(mp.legenq(s - 1, 0, mp.cosh(d), type=3) / (2 * mp.pi))


def green_quad(lam, d):
    """Green kernel by adaptive quadrature of ``e^(-z r) / sqrt(2 (cosh r - cosh d))`` over ``r > d``.

    The endpoint square-root singularity is absorbed by ``weight='alg'``.
    """
    z = complex(math.sqrt(0.25 - lam)) if np.isreal(lam) and lam < 0.25 else complex(np.sqrt(0.25 - complex(lam)))

    def f(r, part):
        # cosh r - cosh d = (r - d) h(r) with h smooth and positive
        half = 0.5 * (r - d)
        h = math.sinh(0.5 * (r + d)) * (math.sinh(half) / half if half > 0 else 1.0)
        val = np.exp(-z * r) / math.sqrt(2.0 * h)
        return val.real if part == 0 else val.imag

    out = []
    for part in (0, 1):
        near, _ = integrate.quad(f, d, d + 1.0, args=(part,), weight="alg", wvar=(-0.5, 0.0), epsabs=0, epsrel=1e-13, limit=200)
        far, _ = integrate.quad(
            lambda r: f(r, part) / math.sqrt(r - d), d + 1.0, d + 90.0, epsabs=0, epsrel=1e-13, limit=400
        )
        out.append(near + far)
    return complex(out[0], out[1]) / (2.0 * math.pi)


def _log_derivative_mismatch(lam, depth, radius):
    x = mp.cosh(radius)
    nu_in = -mp.mpf(0.5) + mp.sqrt(mp.mpf(0.25) - lam - depth)
    s_out = mp.mpf(0.5) + mp.sqrt(mp.mpf(0.25) - lam)
    p_in = lambda t: mp.legenp(nu_in, 0, t, type=3)
    q_out = lambda t: mp.legenq(s_out - 1, 0, t, type=3)
    return mp.re(mp.diff(p_in, x) / p_in(x) - mp.diff(q_out, x) / q_out(x))


def well_eigenvalues(depth, radius=1.0, lo=-10.0, hi=0.25 - 1e-6, scan=400):
    """Eigenvalues below 1/4 of ``-Delta - depth * 1_{d <= radius}`` by matching Legendre solutions.

    Inside the well the regular solution is ``P_nu(cosh d)``, outside the decaying
    one is ``Q_{s-1}(cosh d)``; eigenvalues are where their log-derivatives agree.
    """
    grid = np.linspace(lo, hi, scan)
    vals = [float(_log_derivative_mismatch(lam, depth, radius)) for lam in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if np.isfinite(fa) and np.isfinite(fb) and fa * fb < 0 and abs(fa - fb) < 50:
            roots.append(optimize.brentq(lambda t: float(_log_derivative_mismatch(t, depth, radius)), a, b, xtol=1e-14))
    return roots


def shooting_eigenvalue_check(lam, depth, radius=1.0):
    """Integrate the radial equation outward from a regular start and return ``u(R_far)`` scaled.

    An eigenvalue gives a solution that decays like ``e^{-(1/2 + z) d}``.
    """
    def rhs(d, y):
        v = -depth if d <= radius else 0.0
        return [y[1], -y[1] / math.tanh(d) + (v - lam) * y[0]]

    d0 = 1e-6
    sol = integrate.solve_ivp(rhs, (d0, 8.0), [1.0, 0.0], rtol=1e-11, atol=1e-14)
    return sol.y[0, -1]


def dist_dense(p, lam, n=10**6, t_max=None):
    """Distance to the spectral region boundary by brute-force sampling of the parabola."""
    g = 0.5 * abs(1.0 - 2.0 / p)
    vertex = 0.25 - g * g
    t_max = t_max or 4.0 * (abs(lam) + 1.0)
    t = np.linspace(-t_max, t_max, n)
    curve = vertex + t * t + 1j * (1.0 - 2.0 / p) * t
    return float(np.min(np.abs(curve - lam)))


def radial_norm(kernel, p, r_max=60.0):
    """``(int 2 pi sinh r |G(r)|^p dr)^(1/p)`` with scipy's adaptive quadrature."""
    f = lambda r: 2.0 * math.pi * math.sinh(r) * abs(kernel(r)) ** p if r > 0 else 0.0
    pieces = [0.0, 1e-8, 1e-4, 1e-2, 0.1, 1.0, 3.0, 10.0, r_max]
    total = sum(integrate.quad(f, a, b, epsabs=0, epsrel=1e-11, limit=400)[0] for a, b in zip(pieces[:-1], pieces[1:]))
    return total ** (1.0 / p)
