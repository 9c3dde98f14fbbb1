"""Resolvent and Birman-Schwinger norm bounds, and eigenvalue enclosure certificates.

A certificate compares two positive quantities built from ``lam`` and the
potential norm.  When the left side exceeds the right side, ``lam`` cannot be
a discrete eigenvalue.  Both sides are formed in log-space because the
constants grow like ``16^(2r-2)``.
"""

from dataclasses import dataclass, field
import io
import json
import math

import numpy as np

from ._validation import check_positive, check_right_half_plane
from .green import C0
from .regions import (
    BOUNDARY_TOL,
    SpectralParams,
    SpectrumError,
    dist_to_sigma_p,
    psi_p,
    sigma_p_contains,
)

__all__ = [
    "PotentialSpec",
    "EnclosureVerdict",
    "SummingBounds",
    "Window",
    "resolvent_norm_bound",
    "bs_opnorm_bound",
    "bs_summing_bound",
    "thm1_certificate",
    "thm2_certificate",
    "enclosure_region",
    "hilbert_distance_cap",
    "hilbert_chain",
    "parabolic_chain",
    "mask_to_csv",
    "mask_to_rle",
    "mask_from_rle",
]

_LOG_C0 = math.log(C0)


def _as_params(params):
    return params if isinstance(params, SpectralParams) else SpectralParams(params)


def _log(x):
    return math.log(x) if x > 0 else -math.inf


@dataclass(frozen=True)
class PotentialSpec:
    """Norm data ``||V||_r`` of a potential, optionally with a sampled radial profile."""

    r: float
    v_norm: float
    profile: object = field(default=None, compare=False)

    def __post_init__(self):
        r = check_positive(float(self.r), "r")
        if r < 1:
            raise ValueError(f"potential exponent r must be >= 1, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "v_norm", check_positive(float(self.v_norm), "v_norm", strict=False))


@dataclass(frozen=True)
class EnclosureVerdict:
    """Outcome of one certificate; ``excluded`` means ``lam`` is not an eigenvalue.

    The comparison is made on ``log_lhs`` and ``log_rhs``; ``lhs`` and ``rhs``
    are their exponentials and may overflow to ``inf`` for large ``r``.
    """

    lam: complex
    lhs: float
    rhs: float
    excluded: bool
    log_lhs: float
    log_rhs: float

    @property
    def log_margin(self):
        return self.log_lhs - self.log_rhs

    def to_dict(self):
        return {
            "re": self.lam.real,
            "im": self.lam.imag,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "log_lhs": self.log_lhs,
            "log_rhs": self.log_rhs,
            "excluded": self.excluded,
        }


def _verdict(lam, log_lhs, log_rhs):
    def safe_exp(x):
        return math.exp(x) if x < 709.0 else math.inf

    return EnclosureVerdict(
        lam=complex(lam),
        lhs=safe_exp(log_lhs),
        rhs=safe_exp(log_rhs),
        excluded=bool(log_lhs > log_rhs),
        log_lhs=float(log_lhs),
        log_rhs=float(log_rhs),
    )


def resolvent_norm_bound(params, z):
    """Norm of ``(-Delta_p - Psi_p(z))^{-1}`` on ``L_p``: exact at ``p = 2``, an upper bound otherwise."""
    params = _as_params(params)
    z = check_right_half_plane(z)
    if params.is_hilbert:
        return 1.0 / dist_to_sigma_p(params, psi_p(params, z))
    g, x = params.gamma_p, z.real
    return math.exp(-(2.0 - 2.0 * g) * math.log(x) - 2.0 * g * math.log1p(x))


def bs_opnorm_bound(params, z, v_inf):
    """Operator-norm bound for ``V (-Delta_p - Psi_p(z))^{-1}`` with ``V`` bounded, ``p >= 2``."""
    params = _as_params(params)
    if params.p < 2:
        raise ValueError(f"bs_opnorm_bound needs p >= 2, got {params.p}; use the conjugate exponent")
    z = check_right_half_plane(z)
    v_inf = check_positive(float(v_inf), "v_inf", strict=False)
    if params.is_hilbert:
        return v_inf / dist_to_sigma_p(params, psi_p(params, z))
    x, p = z.real, params.p
    return v_inf / (x ** (1.0 + 2.0 / p) * (1.0 + x) ** (1.0 - 2.0 / p))


@dataclass(frozen=True)
class SummingBounds:
    """Three summing-norm budgets; a field is ``None`` outside its hypothesis.

    ``eq28`` bounds the ``p``-th power of the ``p``-summing norm and needs
    ``r = p``.  ``thm46`` and ``cor47`` bound the ``(r, p)``-summing norm itself
    (not a power) and need ``p <= r``.
    """

    eq28: float | None
    thm46: float | None
    cor47: float | None


def bs_summing_bound(params, z, pot: PotentialSpec) -> SummingBounds:
    params = _as_params(params)
    p = params.p
    if p < 2:
        raise ValueError(f"summing-norm bounds need p >= 2, got {p}")
    z = check_right_half_plane(z)
    v, r, x = pot.v_norm, pot.r, z.real
    hilbert = params.is_hilbert

    eq28 = None
    if r == p:
        if hilbert:
            eq28 = C0 * v**2 / (abs(z + 0.5) * x)
        else:
            eq28 = C0 * v**p * (1.0 / (x * (x + 0.5))) ** (p - 1.0)

    thm46 = cor47 = None
    if p <= r:
        if hilbert:
            dist = dist_to_sigma_p(params, psi_p(params, z))
            thm46 = C0 ** (1.0 / r) * v * dist ** -(1.0 - 2.0 / r) * (abs(z + 0.5) * x) ** (-1.0 / r)
            cor47 = v * abs(z) ** -(1.0 - 2.0 / r) * x ** -(1.0 - 1.0 / r)
        else:
            thm46 = C0 ** (1.0 / r) * v * x ** -(1.0 + 2.0 / p - 3.0 / r) * (x + 0.5) ** -(1.0 - 2.0 / p + 1.0 / r)
            cor47 = 2.0 ** (1.0 - 2.0 / p) * v * x ** -(1.0 + 2.0 / p - 3.0 / r)
    return SummingBounds(eq28=eq28, thm46=thm46, cor47=cor47)


def _log_rhs(pot, log_const):
    if pot.v_norm == 0:
        return -math.inf
    return log_const + _LOG_C0 + pot.r * math.log(pot.v_norm)


def _hilbert_log_lhs(lam, r):
    lam = np.asarray(lam, dtype=complex)
    dist = dist_to_sigma_p(2.0, lam)
    root = np.sqrt(np.abs(0.25 - lam))
    with np.errstate(divide="ignore"):
        return (r - 1.0) * np.log(dist) + np.log1p(0.5 / root)


def _parabolic_log_lhs(params, lam, r):
    lam = np.asarray(lam, dtype=complex)
    dist = dist_to_sigma_p(params, lam)
    root = np.sqrt(np.abs(0.25 - lam))
    with np.errstate(divide="ignore"):
        return (2.0 * r - 2.0) * (np.log(dist) - np.log(root)) + (
            2.0 * r * params.gamma_p + 1.0
        ) * np.log1p(root / (8.0 * dist))


def thm1_certificate(pot: PotentialSpec, lam) -> EnclosureVerdict:
    """Hilbert-space enclosure: exclude ``lam`` when ``dist^(r-1) (1 + 1/(2|1/4-lam|^(1/2)))`` exceeds ``2^(3/2) C0 ||V||_r^r``."""
    if pot.r < 2:
        raise ValueError(f"the Hilbert-space certificate needs r >= 2, got {pot.r}")
    lam = complex(lam)
    if sigma_p_contains(2.0, lam, tol=BOUNDARY_TOL):
        raise SpectrumError(f"lambda={lam} lies on [1/4, inf); the certificate is vacuous")
    log_lhs = float(_hilbert_log_lhs(lam, pot.r))
    return _verdict(lam, log_lhs, _log_rhs(pot, 1.5 * math.log(2.0)))


def _check_parabolic_range(params, pot):
    if params.is_hilbert:
        raise ValueError("p = 2: use thm1_certificate")
    params.require_operator_range()
    top = max(params.p, params.p_conj)
    if pot.r < top * (1 - 1e-12):
        raise ValueError(f"needs r >= max(p, p') = {top:g}, got r = {pot.r}")


def thm2_certificate(params, pot: PotentialSpec, lam) -> EnclosureVerdict:
    """Parabolic enclosure for ``p != 2``; depends on ``p`` only through ``gamma_p``."""
    params = _as_params(params)
    _check_parabolic_range(params, pot)
    lam = complex(lam)
    if sigma_p_contains(params, lam, tol=BOUNDARY_TOL):
        raise SpectrumError(f"lambda={lam} lies in Sigma_{params.p:g}")
    log_lhs = float(_parabolic_log_lhs(params, lam, pot.r))
    return _verdict(lam, log_lhs, _log_rhs(pot, (2.0 * pot.r - 2.0) * math.log(16.0)))


@dataclass(frozen=True)
class Window:
    """Rectangle ``[x0, x1] x [y0, y1]`` of the spectral plane sampled on ``res x res`` points."""

    x0: float
    x1: float
    y0: float
    y1: float
    res: int = 200

    def __post_init__(self):
        vals = (self.x0, self.x1, self.y0, self.y1)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("window bounds must be finite")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("window needs x1 > x0 and y1 > y0")
        if int(self.res) < 2:
            raise ValueError("window resolution must be >= 2")
        object.__setattr__(self, "res", int(self.res))

    @classmethod
    def parse(cls, text, res=200):
        parts = [float(v) for v in str(text).split(",")]
        if len(parts) != 4:
            raise ValueError(f"window must be x0,x1,y0,y1; got {text!r}")
        return cls(*parts, res=res)

    def grid(self):
        """Complex grid with rows indexed by imaginary part (bottom row first)."""
        xs = np.linspace(self.x0, self.x1, self.res)
        ys = np.linspace(self.y0, self.y1, self.res)
        return xs[None, :] + 1j * ys[:, None]


def enclosure_region(params, pot: PotentialSpec, window: Window, return_margin=False):
    """Mask of candidate eigenvalue locations: ``Sigma_p`` plus every non-excluded point.

    With ``return_margin`` the log-margin ``log_lhs - log_rhs`` is returned too
    (``nan`` inside ``Sigma_p``).
    """
    params = _as_params(params)
    lam = window.grid()
    inside = np.asarray(sigma_p_contains(params, lam, tol=BOUNDARY_TOL), dtype=bool)
    margin = np.full(lam.shape, np.nan)
    out = ~inside
    if params.is_hilbert:
        if pot.r < 2:
            raise ValueError("the Hilbert-space certificate needs r >= 2")
        log_lhs = _hilbert_log_lhs(lam[out], pot.r)
        log_rhs = _log_rhs(pot, 1.5 * math.log(2.0))
    else:
        _check_parabolic_range(params, pot)
        log_lhs = _parabolic_log_lhs(params, lam[out], pot.r)
        log_rhs = _log_rhs(pot, (2.0 * pot.r - 2.0) * math.log(16.0))
    margin[out] = log_lhs - log_rhs
    mask = inside.copy()
    mask[out] = ~(log_lhs > log_rhs)
    return (mask, margin) if return_margin else mask


def hilbert_distance_cap(pot: PotentialSpec):
    """Largest possible ``dist(lam, [1/4, inf))`` of a non-excluded point at ``p = 2``."""
    if pot.r <= 1:
        raise ValueError("needs r > 1")
    return 2.0 ** (1.5 / (pot.r - 1.0)) * C0 ** (1.0 / (pot.r - 1.0)) * pot.v_norm ** (pot.r / (pot.r - 1.0))


def hilbert_chain(z, r):
    """Three links of the lower-bound chain behind the Hilbert-space certificate.

    For ``lam = Psi_2(z)`` returns ``(start, middle, end)`` where
    ``start = dist^(r-2) |z+1/2| Re z``,
    ``middle = dist^(r-2) (|z|+1/2) Re z / sqrt(2)`` and
    ``end = dist^(r-1) (1 + 1/(2|1/4-lam|^(1/2))) / (2 sqrt(2))``;
    the chain asserts ``start >= middle >= end``.
    """
    z = check_right_half_plane(z)
    lam = 0.25 - z * z
    dist = dist_to_sigma_p(2.0, lam)
    x = z.real
    start = dist ** (r - 2.0) * abs(z + 0.5) * x
    middle = dist ** (r - 2.0) * (abs(z) + 0.5) * x / math.sqrt(2.0)
    end = dist ** (r - 1.0) * (1.0 + 0.5 / math.sqrt(abs(0.25 - lam))) / (2.0 * math.sqrt(2.0))
    return start, middle, end


def parabolic_chain(params, z, r):
    """``(Re z)^(2r-2) (1 + 1/(2 Re z))^(2 r gamma + 1)`` and its distance-based lower bound, as logs."""
    params = _as_params(params)
    z = check_right_half_plane(z)
    lam = psi_p(params, z)
    x = z.real
    e = 2.0 * r * params.gamma_p + 1.0
    log_start = (2.0 * r - 2.0) * math.log(x) + e * math.log1p(0.5 / x)
    dist = dist_to_sigma_p(params, lam)
    root = math.sqrt(abs(0.25 - lam))
    log_end = (2.0 * r - 2.0) * (math.log(dist) - math.log(16.0 * root)) + e * math.log1p(root / (8.0 * dist))
    return log_start, log_end


def mask_to_csv(mask):
    """0/1 CSV text, one grid row per line."""
    buf = io.StringIO()
    np.savetxt(buf, np.asarray(mask, dtype=np.uint8), fmt="%d", delimiter=",")
    return buf.getvalue()


def mask_to_rle(mask, window: Window | None = None):
    """Row-major run-length encoding ``{"shape", "start", "runs"}``; runs alternate values."""
    flat = np.asarray(mask, dtype=bool).ravel()
    if flat.size == 0:
        runs = []
    else:
        change = np.flatnonzero(np.diff(flat.astype(np.int8))) + 1
        bounds = np.concatenate([[0], change, [flat.size]])
        runs = np.diff(bounds).tolist()
    out = {
        "shape": list(np.shape(mask)),
        "start": int(flat[0]) if flat.size else 0,
        "runs": [int(n) for n in runs],
    }
    if window is not None:
        out["window"] = [window.x0, window.x1, window.y0, window.y1]
    return out


def mask_from_rle(data):
    if isinstance(data, str):
        data = json.loads(data)
    value = bool(data["start"])
    chunks = []
    for n in data["runs"]:
        chunks.append(np.full(int(n), value))
        value = not value
    flat = np.concatenate(chunks) if chunks else np.zeros(0, dtype=bool)
    return flat.reshape(data["shape"])
