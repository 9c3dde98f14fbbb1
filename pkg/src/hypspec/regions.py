"""Parabolic L_p spectra of the hyperbolic Laplacian and their conformal maps.

``Sigma_p`` is the filled parabola with vertex ``1/(p p')`` and focus ``1/4``;
it degenerates to the half-line ``[1/4, inf)`` at ``p = 2``.  ``psi_p`` maps the
right half-plane conformally onto its complement.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from ._validation import check_exponent

__all__ = [
    "SpectrumError",
    "SpectralParams",
    "SpectralPoint",
    "conjugate_exponent",
    "sigma_p_contains",
    "psi_p",
    "psi_p_inv",
    "spectral_point",
    "dist_to_sigma_p",
    "boundary_curve",
]

# Points this close to the boundary count as belonging to the spectrum.
BOUNDARY_TOL = 1e-12


class SpectrumError(ValueError):
    """Raised when a spectral parameter lies in (or on) the spectrum."""


def conjugate_exponent(p):
    p = float(p)
    return math.inf if p == 1.0 else p / (p - 1.0)


@dataclass(frozen=True)
class SpectralParams:
    """Geometry of ``Sigma_p`` for one Lebesgue exponent.

    ``p = 1`` is accepted for region geometry only; the operator-bound modules
    reject it.
    """

    p: float
    p_conj: float = field(init=False)
    gamma_p: float = field(init=False)
    vertex: float = field(init=False)
    focus: float = field(init=False, default=0.25)
    slope: float = field(init=False)

    def __post_init__(self):
        p = check_exponent(self.p, allow_one=True)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "p_conj", conjugate_exponent(p))
        gamma = 0.5 * abs(1.0 - 2.0 / p)
        object.__setattr__(self, "gamma_p", gamma)
        # 1/(p p') = 1/4 - gamma^2; going through gamma keeps p and p' in step
        object.__setattr__(self, "vertex", 0.25 - gamma * gamma)
        object.__setattr__(self, "slope", 1.0 - 2.0 / p)

    @property
    def is_hilbert(self):
        return self.p == 2.0

    def dual(self):
        """Parameters for the conjugate exponent (same region, mirrored slope)."""
        if math.isinf(self.p_conj):
            raise ValueError("p = 1 has no finite conjugate exponent")
        out = SpectralParams(self.p_conj)
        # p' is rounded; carry gamma over so the dual region is exactly the same set
        object.__setattr__(out, "gamma_p", self.gamma_p)
        object.__setattr__(out, "vertex", self.vertex)
        object.__setattr__(out, "slope", -self.slope)
        return out

    def require_operator_range(self):
        if self.p == 1.0:
            raise ValueError("operator bounds need 1 < p < inf; p = 1 is geometry-only")
        return self


def _as_params(params):
    return params if isinstance(params, SpectralParams) else SpectralParams(params)


@dataclass(frozen=True)
class SpectralPoint:
    """A spectral parameter outside ``Sigma_p`` with its half-plane coordinates.

    ``z = psi_p^{-1}(lam)`` has positive real part and ``s = 1/2 + sqrt(1/4 - lam)``
    is the Green-kernel exponent; ``s = z + 1/2 + gamma_p``.
    """

    lam: complex
    z: complex
    s: complex
    params: SpectralParams

    @property
    def kappa(self):
        """``s - 1/2 = sqrt(1/4 - lam)``, the decay rate of the Green kernel."""
        return self.s - 0.5


def sigma_p_contains(params, lam, tol=0.0):
    """Membership in the filled parabola ``Sigma_p``.

    With ``tol > 0`` points within Euclidean distance ``tol`` of the region
    are also reported as members.
    """
    params = _as_params(params)
    lam = np.asarray(lam, dtype=complex)
    a, b = lam.real, lam.imag
    inside = (a >= params.vertex) & (b * b <= 4.0 * params.gamma_p**2 * (a - params.vertex))
    if tol > 0:
        inside = inside | (dist_to_sigma_p(params, lam) <= tol)
    return bool(inside) if inside.ndim == 0 else inside


def psi_p(params, z):
    """``lam = 1/4 - (z + gamma_p)^2``, mapping ``Re z > 0`` onto ``Sigma_p``'s complement."""
    params = _as_params(params)
    z = np.asarray(z, dtype=complex)
    if np.any(z.real <= 0):
        raise ValueError("psi_p is defined on Re z > 0 only")
    out = 0.25 - (z + params.gamma_p) ** 2
    return complex(out) if out.ndim == 0 else out


def _principal_sqrt(w):
    # numpy's complex sqrt has Re >= 0 with the cut on (-inf, 0]
    return np.sqrt(np.asarray(w, dtype=complex))


def psi_p_inv(params, lam) -> SpectralPoint:
    params = _as_params(params)
    lam = complex(lam)
    if sigma_p_contains(params, lam):
        raise SpectrumError(f"lambda={lam} lies in Sigma_{params.p:g}; no preimage in Re z > 0")
    kappa = complex(_principal_sqrt(0.25 - lam))
    z = kappa - params.gamma_p
    if z.real <= 0:
        raise SpectrumError(f"lambda={lam} is numerically on the boundary of Sigma_{params.p:g}")
    return SpectralPoint(lam=lam, z=z, s=0.5 + kappa, params=params)


def spectral_point(lam, p=2.0) -> SpectralPoint:
    """Shorthand for ``psi_p_inv(SpectralParams(p), lam)``."""
    return psi_p_inv(_as_params(p), lam)


def _dist_hilbert(lam):
    z = _principal_sqrt(0.25 - lam)
    x, y = z.real, np.abs(z.imag)
    return np.where(y <= x, x * x + y * y, 2.0 * x * y)


def _real_cubic_roots(P, Q):
    """Real roots of ``t^3 + P t + Q`` (vectorized), NaN-padded to three columns."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    roots = np.full(P.shape + (3,), np.nan)
    disc = (Q / 2.0) ** 2 + (P / 3.0) ** 3
    one = disc >= 0
    if np.any(one):
        sq = np.sqrt(disc[one])
        roots[one, 0] = np.cbrt(-Q[one] / 2.0 + sq) + np.cbrt(-Q[one] / 2.0 - sq)
    three = ~one
    if np.any(three):
        # three real roots; P < 0 here
        m = 2.0 * np.sqrt(-P[three] / 3.0)
        arg = np.clip(3.0 * Q[three] / (P[three] * m), -1.0, 1.0)
        theta = np.arccos(arg) / 3.0
        for k in range(3):
            roots[three, k] = m * np.cos(theta - 2.0 * math.pi * k / 3.0)
    return roots


def _dist_parabola(params, lam):
    """Distance to the filled parabola for ``p != 2``.

    Stationary points of ``|lam - b(t)|^2`` with ``b(t) = v + t^2 + i c t``
    solve ``t^3 + (v - a + c^2/2) t - c b / 2 = 0``; all real roots are
    polished by Newton steps and the smallest objective wins.
    """
    # the region is symmetric under b -> -b, so fold onto b >= 0, c >= 0
    a, b = lam.real, np.abs(lam.imag)
    v, c = params.vertex, 2.0 * params.gamma_p
    P = v - a + 0.5 * c * c
    Q = -0.5 * c * b
    t = _real_cubic_roots(P, Q)
    Pc, Qc = P[..., None], Q[..., None]
    for _ in range(3):
        g = t**3 + Pc * t + Qc
        dg = 3.0 * t**2 + Pc
        step = np.where(np.abs(dg) > 0, g / np.where(dg == 0, 1.0, dg), 0.0)
        t = np.where(np.isfinite(step), t - step, t)
    ac, bc = a[..., None], b[..., None]
    f = (v + t * t - ac) ** 2 + (c * t - bc) ** 2
    return np.sqrt(np.nanmin(f, axis=-1))


def dist_to_sigma_p(params, lam):
    """Euclidean distance from ``lam`` to the filled region ``Sigma_p`` (0 inside)."""
    params = _as_params(params)
    lam = np.asarray(lam, dtype=complex)
    scalar = lam.ndim == 0
    lam = np.atleast_1d(lam)
    if params.is_hilbert:
        out = _dist_hilbert(lam)
    else:
        out = np.zeros(lam.shape)
        outside = ~np.asarray(sigma_p_contains(params, lam), dtype=bool)
        if np.any(outside):
            out[outside] = _dist_parabola(params, lam[outside])
    return float(out[0]) if scalar else out


def boundary_curve(params, t_range=(-2.0, 2.0), n=401):
    """Samples ``b(t) = 1/(p p') + t^2 + i t (1 - 2/p)`` of the boundary parabola."""
    params = _as_params(params)
    if n < 2:
        raise ValueError("boundary_curve needs n >= 2")
    t = np.linspace(float(t_range[0]), float(t_range[1]), int(n))
    return params.vertex + t * t + 1j * params.slope * t
