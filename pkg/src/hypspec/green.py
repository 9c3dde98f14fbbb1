"""Green kernel of ``-Delta - lam`` on the hyperbolic plane and its norms.

The kernel depends on the geodesic distance ``d`` only::

    G(d) = 1/(2^{3/2} pi) * int_d^inf exp(-r (s - 1/2)) / sqrt(cosh r - cosh d) dr

with ``s = 1/2 + sqrt(1/4 - lam)``.  Everything here works with a
:class:`~hypspec.regions.SpectralPoint` so that ``s`` and the half-plane
coordinate ``z`` are always consistent.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy.interpolate import CubicSpline

from ._validation import check_right_half_plane
from .regions import SpectralPoint, spectral_point
from .special import EULER_GAMMA, digamma, trigamma

__all__ = [
    "C0",
    "QuadratureConfig",
    "QuadratureError",
    "KernelNormBudget",
    "green_eval",
    "green_regular_part_at_zero",
    "spherical_function",
    "KernelTable",
    "l1_norm_exact",
    "l2_norm_bound",
    "elstrodt_bound",
    "lp_norm_bound",
    "measured_kernel_norm",
    "kernel_norm_budget",
]

C0 = (1.0 + 0.5 * math.pi / math.tanh(0.5 * math.pi)) / (4.0 * math.pi)

_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)


class QuadratureError(RuntimeError):
    """A quadrature did not reach its tolerance within the panel budget."""


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    max_panels: int = 4096
    truncation_margin: float = 40.0

    def __post_init__(self):
        if not (0 < self.rel_tol <= 1e-4):
            raise ValueError(f"rel_tol must lie in (0, 1e-4], got {self.rel_tol}")
        if self.max_panels < 16:
            raise ValueError(f"max_panels must be >= 16, got {self.max_panels}")
        if self.truncation_margin <= 0:
            raise ValueError("truncation_margin must be positive")


DEFAULT_QUADRATURE = QuadratureConfig()


def _as_point(point):
    return point if isinstance(point, SpectralPoint) else spectral_point(point)


def _gauss_panels(upper, panels):
    """Composite 16-point Gauss-Legendre nodes/weights on ``[0, upper]`` per row."""
    upper = np.asarray(upper, dtype=float)[:, None]
    h = upper / panels
    left = np.arange(panels)[None, :] * h
    x = left[..., None] + 0.5 * h[..., None] * (_GL16_X + 1.0)
    w = np.broadcast_to(0.5 * h[..., None] * _GL16_W, x.shape)
    n = x.shape[0]
    return x.reshape(n, -1), w.reshape(n, -1)


def _x_over_sinh(x):
    safe = np.where(x < 1e-6, 1.0, x)
    big = 2.0 * safe * np.exp(-safe) / -np.expm1(-2.0 * safe)
    return np.where(x < 1e-6, 1.0 - x * x / 6.0, big)


def _green_scaled_block(kappa, d, panels, margin):
    """``G(d) * exp(d (Re kappa + 1/2))`` with ``panels`` Gauss panels.

    The endpoint singularity goes away under ``r = d + u^2``; the remaining
    ``1/sqrt(sinh(d + u^2/2))`` near-singularity for small ``d`` is flattened
    by ``u = omega sinh(v)`` with ``omega = sqrt(2 min(d, 1/2))``.
    """
    omega = np.sqrt(2.0 * np.minimum(d, 0.5))
    umax = math.sqrt(margin / (kappa.real + 0.5))
    vmax = np.arcsinh(umax / omega)
    v, w = _gauss_panels(vmax, panels)
    om = omega[:, None]
    dd = d[:, None]
    u = om * np.sinh(v)
    jac = om * np.cosh(v)
    x = 0.5 * u * u
    phase = np.exp(-1j * kappa.imag * dd - u * u * kappa - 0.5 * x)
    f = np.sqrt(_x_over_sinh(x)) * phase / np.sqrt(-np.expm1(-2.0 * (dd + x))) * jac
    return (f * w).sum(axis=1) / math.pi


def _green_scaled(kappa, d, cfg):
    d = np.asarray(d, dtype=float)
    out = np.empty(d.shape, dtype=complex)
    err = np.empty(d.shape)
    for start in range(0, d.size, 256):
        block = d[start : start + 256]
        panels = 4
        prev = _green_scaled_block(kappa, block, panels, cfg.truncation_margin)
        while True:
            panels *= 2
            if panels > cfg.max_panels:
                raise QuadratureError(
                    f"Green kernel quadrature did not converge (kappa={kappa}, panels={panels // 2})"
                )
            cur = _green_scaled_block(kappa, block, panels, cfg.truncation_margin)
            diff = np.abs(cur - prev)
            if np.all(diff <= cfg.rel_tol * np.abs(cur) + 1e-300):
                break
            prev = cur
        out[start : start + 256] = cur
        err[start : start + 256] = diff
    return out, err


def green_eval(point, d, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """Evaluate ``G_lam(d)`` for ``d > 0`` (scalar or array).

    ``point`` is a :class:`SpectralPoint` or a bare complex ``lam`` outside
    ``[1/4, inf)``.
    """
    point = _as_point(point)
    d_arr = np.asarray(d, dtype=float)
    if np.any(~(d_arr > 0)):
        raise ValueError("green_eval needs d > 0 (the kernel is singular on the diagonal)")
    kappa = complex(point.kappa)
    flat = np.atleast_1d(d_arr).ravel()
    scaled, _ = _green_scaled(kappa, flat, cfg)
    vals = scaled * np.exp(-flat * (kappa.real + 0.5))
    if d_arr.ndim == 0:
        return complex(vals[0])
    return vals.reshape(d_arr.shape)


def green_regular_part_at_zero(point):
    """Limit of ``G(d) + log(tanh(d/2)) / (2 pi)`` as ``d -> 0``: ``-(gamma + psi(s)) / (2 pi)``."""
    point = _as_point(point)
    return -(EULER_GAMMA + digamma(point.s)) / (2.0 * math.pi)


def spherical_function(point, r, rel_tol=1e-13):
    """Radial eigenfunction ``phi(r)`` with ``phi(0) = 1`` and ``Delta phi = -lam phi``.

    Laplace's integral ``(1/pi) int_0^pi (cosh r + sinh r cos t)^(s-1) dt`` with
    a periodic trapezoid rule, doubled until converged.
    """
    point = _as_point(point)
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    rr = np.atleast_1d(r).ravel()[:, None]
    nu = point.s - 1.0

    def trap(m):
        t = np.linspace(0.0, math.pi, m + 1)
        w = np.full(m + 1, 1.0 / m)
        w[[0, -1]] *= 0.5
        c2 = np.cos(0.5 * t) ** 2
        # log(cosh r + sinh r cos t) without overflow
        base = np.logaddexp(rr + np.log(np.maximum(c2, 1e-300)), -rr + np.log(np.maximum(1.0 - c2, 1e-300)))
        return (np.exp(nu * base) * w).sum(axis=1)

    m = 64
    prev = trap(m)
    while True:
        m *= 2
        cur = trap(m)
        if np.all(np.abs(cur - prev) <= rel_tol * np.abs(cur)) or m >= 1 << 16:
            break
        prev = cur
    return complex(cur[0]) if scalar else cur.reshape(r.shape)


class KernelTable:
    """Spline representation of ``G_lam`` on ``[0, d_max]`` for fast repeated use.

    The kernel is split as ``G(d) = H(d) - phi(d) log(tanh(d/2)) / (2 pi)``
    where ``phi`` is the spherical function and ``H`` is analytic and even in
    ``d``.  Both smooth pieces are interpolated by clamped cubic splines, and
    the logarithm is left to the caller when it needs special treatment.
    """

    def __init__(self, point, d_max, n_grid=256, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
        self.point = _as_point(point)
        self.d_max = float(d_max)
        if self.d_max <= 0:
            raise ValueError("d_max must be positive")
        grid = np.linspace(0.0, self.d_max, int(n_grid) + 1)
        phi = spherical_function(self.point, grid)
        kappa = complex(self.point.kappa)
        scaled, err = _green_scaled(kappa, grid[1:], cfg)
        g = scaled * np.exp(-grid[1:] * (kappa.real + 0.5))
        regular = np.empty(grid.shape, dtype=complex)
        regular[0] = green_regular_part_at_zero(self.point)
        regular[1:] = g + phi[1:] * np.log(np.tanh(0.5 * grid[1:])) / (2.0 * math.pi)
        clamp = ((1, 0.0), "not-a-knot")
        self.phi = CubicSpline(grid, phi, bc_type=clamp)
        self.regular = CubicSpline(grid, regular, bc_type=clamp)
        self.quadrature_error = float(np.max(err / np.maximum(np.abs(scaled), 1e-300)))

    def green(self, d):
        d = np.asarray(d, dtype=float)
        return self.regular(d) - self.phi(d) * np.log(np.tanh(0.5 * d)) / (2.0 * math.pi)


def l1_norm_exact(z):
    """``sup_x ||G(x, .)||_1`` bound ``1 / (Re z (Re z + 1))``; equality for real ``z``."""
    z = check_right_half_plane(z)
    return 1.0 / (z.real * (z.real + 1.0))


def l2_norm_bound(point):
    """Upper bound ``C0 / (|z + 1/2| Re z)`` on ``sup_x ||G(x, .)||_2^2``.

    ``z = sqrt(1/4 - lam)`` is the Hilbert-space coordinate, whatever exponent
    the point was built with.
    """
    z2 = complex(_as_point(point).kappa)
    return C0 / (abs(z2 + 0.5) * z2.real)


def elstrodt_bound(point):
    """Digamma form of the bound on ``sup_x ||G(x, .)||_2^2``.

    ``|Im psi(s)| / (2 pi |Im lam|)`` off the real axis and
    ``psi'(s) / (4 pi (s - 1/2))`` on it.
    """
    point = _as_point(point)
    s = point.s
    if point.lam.imag == 0.0:
        if not s.real > 0.5:
            raise ValueError("real branch needs s > 1/2")
        return float((trigamma(s.real) / (4.0 * math.pi * (s.real - 0.5))).real)
    return abs(digamma(s).imag) / (2.0 * math.pi * abs(point.lam.imag))


def lp_norm_bound(p, z):
    """Interpolated bound on ``sup_x ||G(x, .)||_p`` for ``1 <= p < 2`` and ``lam = Psi_p(z)``."""
    p = float(p)
    if not (1.0 <= p < 2.0):
        raise ValueError(f"lp_norm_bound needs 1 <= p < 2, got {p}")
    z = check_right_half_plane(z)
    return C0 ** (1.0 - 1.0 / p) * (1.0 / (z.real * (z.real + 0.5))) ** (1.0 / p)


def _radial_panels(r_max):
    # geometric grading towards the log singularity at r = 0, unit panels beyond
    edges = [0.0] + [2.0**-k for k in range(50, -1, -1)]
    if r_max > 1.0:
        n_tail = int(math.ceil(r_max - 1.0))
        edges += list(np.linspace(1.0, r_max, n_tail + 1)[1:])
    return np.asarray(edges)


def _panel_nodes(edges, split):
    if split > 1:
        fine = [np.linspace(a, b, split + 1)[:-1] for a, b in zip(edges[:-1], edges[1:])]
        edges = np.concatenate(fine + [edges[-1:]])
    a, b = edges[:-1, None], edges[1:, None]
    x = 0.5 * (b - a) * (_GL16_X + 1.0) + a
    w = 0.5 * (b - a) * _GL16_W
    return x.ravel(), w.ravel()


def measured_kernel_norm(point, p, cfg: QuadratureConfig = DEFAULT_QUADRATURE, return_error=False):
    """``||G_lam(x, .)||_p`` by radial quadrature against ``2 pi sinh(r) dr``.

    This is a direct measurement, independent of the closed-form bounds.  The
    integral is computed on a graded panel set and again with every panel
    halved; the finer value is returned.
    """
    point = _as_point(point)
    p = float(p)
    kappa = complex(point.kappa)
    decay = p * point.s.real - 1.0
    if decay <= 0:
        raise ValueError(f"G_lam is not in L_{p:g}: p Re s - 1 = {decay:g} <= 0")
    r_max = min(5000.0, 1.0 + cfg.truncation_margin / decay)
    edges = _radial_panels(r_max)

    def integrate(split):
        r, w = _panel_nodes(edges, split)
        scaled, _ = _green_scaled(kappa, r, cfg)
        # sinh(r) |G|^p with the exponential factors merged to avoid overflow
        f = 0.5 * -np.expm1(-2.0 * r) * np.exp(-decay * r) * np.abs(scaled) ** p
        return 2.0 * math.pi * float(np.dot(w, f))

    coarse = integrate(1)
    fine = integrate(2)
    err = abs(fine - coarse) / fine
    if err > 1e-8:
        warnings.warn(f"radial norm quadrature relative change {err:.2e}", RuntimeWarning)
    norm = fine ** (1.0 / p)
    return (norm, err) if return_error else norm


@dataclass(frozen=True)
class KernelNormBudget:
    c0: float
    l1_exact: float
    l2_bound: float
    lp_bound: float | None


def kernel_norm_budget(z, p=None) -> KernelNormBudget:
    """All kernel-norm bounds at half-plane coordinate ``z``.

    ``l1_exact`` uses the ``p = 1`` parameterization, ``l2_bound`` the
    ``p = 2`` one, and ``lp_bound`` (when ``1 <= p < 2``) the ``p`` one.
    """
    z = check_right_half_plane(z)
    lp = lp_norm_bound(p, z) if p is not None else None
    return KernelNormBudget(
        c0=C0,
        l1_exact=l1_norm_exact(z),
        l2_bound=C0 / (abs(z + 0.5) * z.real),
        lp_bound=lp,
    )
