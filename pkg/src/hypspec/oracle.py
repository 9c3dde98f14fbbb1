"""Birman-Schwinger eigenvalue oracle for radial potentials in the Hilbert-space case.

For a potential ``V`` supported in the geodesic ball of radius ``R`` around the
base point, ``lam`` is an eigenvalue of ``-Delta + V`` exactly when ``-1`` is an
eigenvalue of ``V (-Delta - lam)^{-1}``.  The operator commutes with rotations,
so it splits over angular Fourier modes; only the rotation-invariant mode is
kept here.  Its kernel is the angular average

    Kbar(rho, rho') = (1/2pi) int_0^2pi G(d(rho, (rho', xi))) dxi,

discretized by a Nystrom scheme on ``[0, R]``.  Eigenvalues are zeros of
``det_2(I + M(lam))``.
"""

from dataclasses import dataclass, field
import json
import math
import warnings

import numpy as np
from scipy.optimize import brentq

from ._validation import check_positive
from .green import DEFAULT_QUADRATURE, KernelTable, QuadratureConfig
from .lieb_thirring import EigenvalueList
from .regions import SpectrumError, dist_to_sigma_p, spectral_point

__all__ = [
    "det_r",
    "RadialPotential",
    "NystromOperator",
    "OracleRun",
    "angular_average",
    "assemble_bs",
    "bs_determinant",
    "hs_matrix",
    "find_eigenvalues",
    "locate_eigenvalues",
    "winding_number",
]

EXCLUSION_MARGIN = 1e-3


def det_r(matrix, r):
    """Regularized determinant ``prod_j (1 - mu_j) exp(sum_{k < ceil(r)} mu_j^k / k)``.

    ``mu_j`` are the eigenvalues of ``matrix`` with algebraic multiplicity.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("det_r needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if not r >= 1:
        raise ValueError(f"det_r needs r >= 1, got {r}")
    if a.shape[0] == 0:
        return 1.0 + 0j
    mu = np.linalg.eigvals(a)
    top = math.ceil(r) - 1
    expo = np.zeros_like(mu)
    power = np.ones_like(mu)
    for k in range(1, top + 1):
        power = power * mu
        expo += power / k
    return complex(np.prod((1.0 - mu) * np.exp(expo)))


@dataclass(frozen=True)
class RadialPotential:
    """Piecewise-linear radial profile ``V(d)`` on a grid, zero beyond ``support``."""

    d: np.ndarray
    values: np.ndarray
    support: float

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if d.ndim != 1 or d.shape != v.shape or d.size < 2:
            raise ValueError("grid and values must be 1-D of equal length >= 2")
        if not np.all(np.isfinite(d)) or not np.all(np.isfinite(v)):
            raise ValueError("potential samples must be finite")
        if d[0] < 0 or np.any(np.diff(d) <= 0):
            raise ValueError("grid must start at d >= 0 and be strictly increasing")
        support = check_positive(float(self.support), "support")
        if not math.isfinite(support):
            raise ValueError("support radius must be finite")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "support", support)

    @classmethod
    def well(cls, depth, radius=1.0):
        """Square well ``-depth`` on the ball of the given radius."""
        return cls(np.array([0.0, radius]), np.array([-depth, -depth], dtype=complex), radius)

    @classmethod
    def zero(cls, radius=1.0):
        return cls(np.array([0.0, radius]), np.zeros(2, dtype=complex), radius)

    def scaled(self, factor):
        return RadialPotential(self.d, factor * self.values, self.support)

    @property
    def is_real(self):
        return bool(np.all(self.values.imag == 0))

    @property
    def is_zero(self):
        return bool(np.all(self.values == 0))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        v = np.interp(r, self.d, self.values.real) + 1j * np.interp(r, self.d, self.values.imag)
        return np.where((r <= self.support) & (r >= self.d[0]), v, 0.0)

    def lp_norm(self, r=2.0, nodes_per_piece=32):
        """``||V||_r`` with respect to the hyperbolic area ``2 pi sinh(d) dd``."""
        if math.isinf(r):
            return float(np.max(np.abs(self.values)))
        edges = np.union1d(self.d[self.d <= self.support], [self.support])
        t, w = np.polynomial.legendre.leggauss(nodes_per_piece)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            x = 0.5 * (b - a) * (t + 1.0) + a
            total += 0.5 * (b - a) * np.dot(w, 2.0 * math.pi * np.sinh(x) * np.abs(self(x)) ** r)
        return float(total ** (1.0 / r))

    def to_json(self):
        grid = [{"d": float(d), "re": float(v.real), "im": float(v.imag)} for d, v in zip(self.d, self.values)]
        return json.dumps({"grid": grid, "support": self.support})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        if not isinstance(data, dict) or "grid" not in data or "support" not in data:
            raise ValueError("potential file needs 'grid' and 'support'")
        rows = data["grid"]
        try:
            d = [float(row["d"]) for row in rows]
            v = [complex(float(row["re"]), float(row.get("im", 0.0))) for row in rows]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad grid entry: {exc}") from exc
        return cls(np.array(d), np.array(v), float(data["support"]))


@dataclass
class NystromOperator:
    """Discretized Birman-Schwinger operator on the rotation-invariant mode."""

    nodes: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray
    lam: complex
    error_estimate: float = 0.0

    def det2(self):
        """``det_2(I + M)``; zero exactly when ``-1`` is an eigenvalue of ``M``."""
        return bs_determinant(self.matrix)

    def eigenvalues(self):
        return np.linalg.eigvals(self.matrix)


def bs_determinant(matrix):
    """``det(I + M) exp(-tr M)``, the same value as ``det_r(-M, 2)`` without an eigensolve."""
    m = np.asarray(matrix)
    n = m.shape[0]
    return complex(np.linalg.det(np.eye(n) + m) * np.exp(-np.trace(m)))


def _polar_gap(rho, rho2, xi):
    """``cosh d - 1`` between polar points ``(rho, 0)`` and ``(rho2, xi)``, split as ``A + B (1 - cos xi)``."""
    big_a = 2.0 * np.sinh(0.5 * (rho - rho2)) ** 2
    big_b = np.sinh(rho) * np.sinh(rho2)
    return big_a, big_b


def angular_average(table: KernelTable, rho, rho2, m=64):
    """Mean of ``G(d)`` over the circle of radius ``rho2`` seen from a point at radius ``rho``.

    Trapezoid rule over ``m`` angles for the smooth parts.  The logarithmic
    part ``phi(d) log(cosh d - 1)`` is integrated by expanding
    ``log(a - b cos xi)`` in its Fourier series against the FFT of ``phi``,
    which stays exact when the two radii coincide.  Returns ``(values, err)``
    where ``err`` bounds the size of the last resolved Fourier mode.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    rho2 = np.atleast_1d(np.asarray(rho2, dtype=float))
    rho, rho2 = np.broadcast_arrays(rho, rho2)
    shape = rho.shape
    rho, rho2 = rho.ravel(), rho2.ravel()
    xi = 2.0 * math.pi * np.arange(m) / m
    big_a, big_b = _polar_gap(rho, rho2, xi)
    gap = big_a[:, None] + big_b[:, None] * (1.0 - np.cos(xi))[None, :]
    d = 2.0 * np.arcsinh(np.sqrt(0.5 * gap))
    if np.any(d > table.d_max * (1 + 1e-12)):
        raise ValueError("kernel table is too short for these radii")
    phi = table.phi(d)
    mean_regular = table.regular(d).mean(axis=1)
    mean_plus = (phi * np.log(gap + 2.0)).mean(axis=1)
    coef = np.fft.fft(phi, axis=1) / m
    a = big_a + big_b
    root = np.sqrt(big_a * (big_a + 2.0 * big_b))
    with np.errstate(invalid="ignore", divide="ignore"):
        q = np.where(big_b > 0, big_b / (a + root), 0.0)
    k = np.arange(1, m // 2)
    qk = q[:, None] ** k[None, :] / k[None, :]
    series = (qk * (coef[:, 1 : m // 2] + coef[:, m - 1 : m - m // 2 : -1])).sum(axis=1)
    with np.errstate(divide="ignore"):
        log_half = np.log(0.5 * (a + root))
    mean_sing = coef[:, 0] * log_half - series
    # a point at the base point with rho = rho2 = 0 has no circle to average over
    degenerate = a == 0
    if np.any(degenerate):
        mean_sing[degenerate] = 0.0
    values = mean_regular - (mean_sing - mean_plus) / (4.0 * math.pi)
    err = np.abs(coef[:, m // 2]) + np.abs(coef[:, m // 2 - 1])
    if np.any(degenerate):
        values[degenerate] = np.nan
    return values.reshape(shape), float(np.max(err / np.maximum(np.abs(coef[:, 0]), 1e-300)) if err.size else 0.0)


def _barycentric_matrix(nodes, bary, targets):
    """Lagrange interpolation weights from ``nodes`` to each row of ``targets``."""
    diff = targets[..., None] - nodes
    exact = diff == 0
    diff = np.where(exact, 1.0, diff)
    terms = bary / diff
    mat = terms / terms.sum(axis=-1, keepdims=True)
    hit = exact.any(axis=-1)
    if np.any(hit):
        mat[hit] = exact[hit].astype(float)
    return mat


def _check_lambda(lam):
    lam = complex(lam)
    point = None
    try:
        point = spectral_point(lam, 2.0)
    except SpectrumError:
        raise SpectrumError(f"lambda={lam} lies on [1/4, inf); no Birman-Schwinger operator") from None
    return lam, point


def _table_for(point, support, cfg, n_grid):
    return KernelTable(point, 2.0 * support, n_grid=n_grid, cfg=cfg)


def assemble_bs(
    pot: RadialPotential,
    lam,
    n=128,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    m=64,
    table_grid=512,
    row_chunk=16,
) -> NystromOperator:
    """Nystrom matrix ``M_ij`` of ``V G_lam`` on the rotation-invariant mode.

    Nodes are Gauss-Legendre points on ``[0, R]``.  Each row integral is split
    at the row's own radius, where the averaged kernel has a kink, and uses
    ``n // 2`` Gauss points on either side; the unknown is carried back to the
    main nodes by barycentric interpolation.
    """
    if n < 8:
        raise ValueError("n must be >= 8")
    if m < 16 or m % 2:
        raise ValueError("m must be an even count >= 16")
    lam, point = _check_lambda(lam)
    support = pot.support
    t, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * support * (t + 1.0)
    weights = 0.5 * support * w * 2.0 * math.pi * np.sinh(nodes)
    vals = pot(nodes)
    matrix = np.zeros((n, n), dtype=complex)
    if pot.is_zero:
        return NystromOperator(nodes, weights, matrix, lam, 0.0)
    table = _table_for(point, support, cfg, table_grid)
    bary = (-1.0) ** np.arange(n) * np.sqrt((1.0 - t * t) * w)
    qs = max(n // 2, 8)
    ts, ws = np.polynomial.legendre.leggauss(qs)
    rows = np.flatnonzero(vals != 0)
    err = table.quadrature_error
    for start in range(0, rows.size, row_chunk):
        idx = rows[start : start + row_chunk]
        rho = nodes[idx][:, None]
        left = 0.5 * rho * (ts + 1.0)
        right = rho + 0.5 * (support - rho) * (ts + 1.0)
        targets = np.concatenate([left, right], axis=1)
        tw = np.concatenate([0.5 * rho * ws, 0.5 * (support - rho) * ws], axis=1)
        tw = tw * 2.0 * math.pi * np.sinh(targets)
        kbar, aerr = angular_average(table, np.broadcast_to(rho, targets.shape), targets, m)
        err = max(err, aerr)
        interp = _barycentric_matrix(nodes, bary, targets)
        block = np.einsum("cs,csn->cn", kbar * tw, interp)
        matrix[idx] = vals[idx][:, None] * block
    if err > 1e-6:
        warnings.warn(f"Birman-Schwinger assembly error estimate {err:.1e} exceeds 1e-6", RuntimeWarning)
    return NystromOperator(nodes, weights, matrix, lam, err)


def hs_matrix(pot: RadialPotential, lam, n=64, cfg: QuadratureConfig = DEFAULT_QUADRATURE, m=64, table_grid=512):
    """Symmetrically weighted matrix ``sqrt(W_i) V_i Kbar_ij sqrt(W_j)``.

    Its Frobenius norm squared approximates the Hilbert-Schmidt norm squared of
    the rotation-invariant part of ``V G_lam``.
    """
    lam, point = _check_lambda(lam)
    t, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * pot.support * (t + 1.0)
    weights = 0.5 * pot.support * w * 2.0 * math.pi * np.sinh(nodes)
    if pot.is_zero:
        return np.zeros((n, n), dtype=complex)
    table = _table_for(point, pot.support, cfg, table_grid)
    kbar, _ = angular_average(table, nodes[:, None], nodes[None, :], m)
    sw = np.sqrt(weights)
    return sw[:, None] * pot(nodes)[:, None] * kbar * sw[None, :]


def winding_number(fn, center, radius, points=16):
    """Number of zeros of ``fn`` inside the circle, from the argument increment."""
    theta = 2.0 * math.pi * np.arange(points + 1) / points
    vals = np.array([fn(center + radius * np.exp(1j * th)) for th in theta[:-1]])
    vals = np.append(vals, vals[0])
    turn = np.angle(vals[1:] / vals[:-1]).sum()
    return int(round(turn / (2.0 * math.pi)))


@dataclass
class OracleRun:
    eigenvalues: EigenvalueList
    errors: list = field(default_factory=list)
    failures: list = field(default_factory=list)


def _in_box(lam, box):
    x0, x1, y0, y1 = box
    return x0 <= lam.real <= x1 and y0 <= lam.imag <= y1


def _admissible(lam):
    return dist_to_sigma_p(2.0, lam) > EXCLUSION_MARGIN


def locate_eigenvalues(
    pot: RadialPotential,
    box,
    n=128,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    n_scan=None,
    scan_points=48,
    m=64,
    check_n=None,
    xtol=1e-13,
) -> OracleRun:
    """Zeros of ``det_2(I + M(lam))`` inside ``box = (x0, x1, y0, y1)``.

    A real potential gives a selfadjoint operator, so only the real segment of
    the box is scanned (sign changes, then Brent).  Otherwise a grid of
    ``|det|`` values seeds secant iterations.  Points within ``1e-3`` of
    ``[1/4, inf)`` are never visited.  With ``check_n`` each root is recomputed
    at that size and the difference is reported as its error.
    """
    x0, x1, y0, y1 = (float(v) for v in box)
    if not (x1 > x0 and y1 >= y0):
        raise ValueError("search box needs x1 > x0 and y1 >= y0")
    if pot.is_zero:
        return OracleRun(EigenvalueList(()))
    n_scan = n_scan or min(n, 48)

    def det_at(lam, size):
        return assemble_bs(pot, lam, size, cfg, m).det2()

    roots, failures = [], []
    if pot.is_real:
        if y0 <= 0 <= y1:
            hi = min(x1, 0.25 - EXCLUSION_MARGIN)
            if hi > x0:
                grid = np.linspace(x0, hi, scan_points)
                vals = np.array([det_at(x, n_scan).real for x in grid])
                for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
                    if fa == 0 or np.sign(fa) != np.sign(fb):
                        # widen slightly so the fine-n root cannot escape the coarse bracket
                        lo_b, hi_b = a - 0.5 * (b - a), min(b + 0.5 * (b - a), 0.25 - EXCLUSION_MARGIN)
                        lo_b = max(lo_b, x0)
                        f = lambda x: det_at(x, n).real  # noqa: E731
                        flo, fhi = f(lo_b), f(hi_b)
                        if np.sign(flo) == np.sign(fhi):
                            lo_b, hi_b, flo, fhi = a, b, f(a), f(b)
                        if np.sign(flo) == np.sign(fhi):
                            failures.append({"bracket": [a, b], "reason": "sign change lost at full n"})
                            continue
                        roots.append(complex(brentq(f, lo_b, hi_b, xtol=xtol, rtol=1e-15)))
    else:
        res = max(int(math.sqrt(scan_points * 4)), 6)
        xs = np.linspace(x0, x1, res)
        ys = np.linspace(y0, y1, res) if y1 > y0 else np.array([y0])
        lam_grid = xs[None, :] + 1j * ys[:, None]
        mag = np.full(lam_grid.shape, np.inf)
        for idx in np.ndindex(lam_grid.shape):
            if _admissible(lam_grid[idx]):
                mag[idx] = abs(det_at(lam_grid[idx], n_scan))
        seeds = []
        for i, j in np.ndindex(mag.shape):
            window = mag[max(i - 1, 0) : i + 2, max(j - 1, 0) : j + 2]
            if np.isfinite(mag[i, j]) and mag[i, j] <= window.min():
                seeds.append(lam_grid[i, j])
        step = max(x1 - x0, y1 - y0, 1e-3) / res
        for seed in seeds:
            root = _secant(lambda l: det_at(l, n), seed, seed + 0.25 * step, box)
            if root is None:
                failures.append({"seed": [seed.real, seed.imag], "reason": "secant did not converge"})
                continue
            roots.append(root)
    unique = []
    for lam in roots:
        if _in_box(lam, box) and _admissible(lam) and all(abs(lam - u) > 1e-8 for u in unique):
            unique.append(lam)
    unique.sort(key=lambda z: (z.real, z.imag))
    entries, errors = [], []
    for lam in unique:
        radius = min(1e-4, 0.5 * (dist_to_sigma_p(2.0, lam) - 0.5 * EXCLUSION_MARGIN))
        try:
            mult = winding_number(lambda l: det_at(l, n), lam, radius)
        except SpectrumError:
            mult = 0
        if mult < 1:
            mult = 1
            failures.append({"root": [lam.real, lam.imag], "reason": "winding number < 1; kept with multiplicity 1"})
        if pot.is_real:
            lam = complex(lam.real, 0.0)
        entries.append((lam, mult))
        if check_n:
            if pot.is_real:
                g = lambda x: det_at(x, check_n).real  # noqa: E731
                h = max(1e-6, 1e-4 * abs(lam.real))
                try:
                    other = brentq(g, lam.real - h, lam.real + h, xtol=xtol)
                    errors.append(abs(other - lam.real))
                except ValueError:
                    errors.append(math.inf)
            else:
                other = _secant(lambda l: det_at(l, check_n), lam, lam + 1e-6, box)
                errors.append(math.inf if other is None else abs(other - lam))
    return OracleRun(EigenvalueList(tuple(entries)), errors, failures)


def _secant(fn, a, b, box, tol=1e-12, max_iter=60):
    fa, fb = fn(a), fn(b)
    for _ in range(max_iter):
        if fb == fa:
            return None
        c = b - fb * (b - a) / (fb - fa)
        if not _admissible(c):
            return None
        if abs(c - b) <= tol * max(1.0, abs(c)):
            return c
        a, fa = b, fb
        b, fb = c, fn(c)
    return None


def find_eigenvalues(pot: RadialPotential, box, n=128, cfg: QuadratureConfig = DEFAULT_QUADRATURE, **kwargs) -> EigenvalueList:
    """Eigenvalues in the box, discarding diagnostics; see :func:`locate_eigenvalues`."""
    run = locate_eigenvalues(pot, box, n, cfg, **kwargs)
    for item in run.failures:
        warnings.warn(f"eigenvalue search: {item}", RuntimeWarning)
    return run.eigenvalues
