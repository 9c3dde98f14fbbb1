"""Seeded property suites for the proven inequalities.

Each suite returns a plain dict: one entry per inequality with the number of
samples, the number of violations beyond a relative tolerance, and the worst
log-margin (``log(larger side / smaller side)``; negative means violated).
"""

import math

import numpy as np

from .bounds import (
    PotentialSpec,
    Window,
    enclosure_region,
    hilbert_chain,
    hilbert_distance_cap,
    parabolic_chain,
    resolvent_norm_bound,
    thm2_certificate,
)
from .green import elstrodt_bound, l1_norm_exact, l2_norm_bound, lp_norm_bound, measured_kernel_norm
from .lieb_thirring import EigenvalueList, lemma63_bounds, thm4_functionals
from .regions import SpectralParams, boundary_curve, dist_to_sigma_p, psi_p, psi_p_inv, sigma_p_contains

__all__ = ["SUITES", "run_suite", "sample_half_plane", "sample_disk"]

REL_TOL = 1e-12
LEMMA41_EXPONENTS = (1.2, 1.5, 2.0, 3.0, 4.0, 10.0)


class _Tally:
    def __init__(self):
        self.checks = {}

    def add(self, name, small, large, rtol=REL_TOL):
        """Record ``small <= large`` for arrays of samples."""
        small = np.atleast_1d(np.asarray(small, dtype=float))
        large = np.atleast_1d(np.asarray(large, dtype=float))
        bad = small > large * (1.0 + rtol) + 1e-300
        with np.errstate(divide="ignore", invalid="ignore"):
            margin = np.log(large) - np.log(small)
        margin = margin[np.isfinite(margin)]
        entry = self.checks.setdefault(name, {"name": name, "count": 0, "violations": 0, "worst_margin": math.inf})
        entry["count"] += int(small.size)
        entry["violations"] += int(np.count_nonzero(bad))
        if margin.size:
            entry["worst_margin"] = min(entry["worst_margin"], float(margin.min()))

    def add_log(self, name, log_small, log_large, atol=1e-9):
        log_small = np.atleast_1d(np.asarray(log_small, dtype=float))
        log_large = np.atleast_1d(np.asarray(log_large, dtype=float))
        diff = log_large - log_small
        entry = self.checks.setdefault(name, {"name": name, "count": 0, "violations": 0, "worst_margin": math.inf})
        entry["count"] += int(diff.size)
        entry["violations"] += int(np.count_nonzero(diff < -atol))
        if diff.size:
            entry["worst_margin"] = min(entry["worst_margin"], float(diff.min()))

    def add_equal(self, name, a, b, rtol=1e-12, scale=None):
        a = np.atleast_1d(np.asarray(a))
        b = np.atleast_1d(np.asarray(b))
        if scale is None:
            scale = np.maximum(np.abs(a), np.abs(b))
        scale = np.maximum(scale, 1e-300)
        rel = np.abs(a - b) / scale
        entry = self.checks.setdefault(name, {"name": name, "count": 0, "violations": 0, "worst_margin": math.inf})
        entry["count"] += int(rel.size)
        entry["violations"] += int(np.count_nonzero(rel > rtol))
        if rel.size:
            # for equalities the margin is the tolerance left over, in log units
            worst = float(rel.max())
            entry["worst_margin"] = min(entry["worst_margin"], math.log(rtol / worst) if worst > 0 else math.inf)

    def result(self, suite, samples, seed):
        checks = list(self.checks.values())
        return {
            "suite": suite,
            "samples": samples,
            "seed": seed,
            "passed": all(c["violations"] == 0 for c in checks),
            "checks": checks,
        }


def sample_half_plane(rng, size, mod_range=(1e-3, 1e3)):
    """Points of the right half-plane with log-uniform modulus."""
    lo, hi = np.log(mod_range[0]), np.log(mod_range[1])
    mod = np.exp(rng.uniform(lo, hi, size))
    arg = rng.uniform(-0.5 * math.pi, 0.5 * math.pi, size)
    z = mod * np.exp(1j * arg)
    # keep strictly inside the half-plane
    return np.where(z.real > 0, z, np.abs(z) * 1e-12 + 1j * z.imag)


def sample_disk(rng, size, radius=1.0 - 1e-9):
    rad = radius * np.sqrt(rng.uniform(0.0, 1.0, size))
    return rad * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size))


def _suite_distortion(samples, rng):
    tally = _Tally()
    for p in LEMMA41_EXPONENTS:
        params = SpectralParams(p)
        g = params.gamma_p
        z = sample_half_plane(rng, samples)
        lam = psi_p(params, z)
        dist = dist_to_sigma_p(params, lam)
        x = z.real
        if params.is_hilbert:
            tally.add("hilbert lower |z| Re z <= dist", np.abs(z) * x, dist)
            tally.add("hilbert upper dist <= 2 Re z |z|", dist, 2.0 * x * np.abs(z))
        tally.add(f"p={p:g} lower |z+g| Re z / 4 <= dist", 0.25 * np.abs(z + g) * x, dist)
        tally.add(f"p={p:g} upper dist <= 16 |z+g| Re z", dist, 16.0 * np.abs(z + g) * x)
        gap = np.abs(lam - params.vertex)
        # measured against the size of the operands of lam - vertex, which cancel for small z
        tally.add_equal(
            f"p={p:g} vertex identity", lam - params.vertex, -z * (z + 2 * g), scale=np.abs(lam) + params.vertex
        )
        # these are equalities at p = 2, so allow a few ulps of rounding
        tally.add(f"p={p:g} |lam-1/4|^(1/2) bound", np.sqrt(np.abs(lam - 0.25)), np.sqrt(gap) + g, rtol=1e-10)
        tally.add(f"p={p:g} |z+2g| bound", np.abs(z + 2 * g), np.sqrt(gap) + 2 * g, rtol=1e-10)
        tally.add(f"p={p:g} |z| lower bound", gap / (np.sqrt(gap) + 2 * g), np.abs(z), rtol=1e-10)
    return tally


def _kernel_pairs(samples, rng):
    pairs = []
    for _ in range(samples):
        p = float(rng.choice([1.0, 1.25, 1.5, 1.75, 2.0]))
        x = float(rng.uniform(0.1, 3.0))
        y = float(rng.uniform(-3.0, 3.0)) if rng.uniform() < 0.5 else 0.0
        pairs.append((p, complex(x, y)))
    return pairs


def _suite_kernel_norms(samples, rng):
    tally = _Tally()
    for p, z in _kernel_pairs(samples, rng):
        params = SpectralParams(p)
        point = psi_p_inv(params, psi_p(params, z))
        if p == 2.0:
            measured = measured_kernel_norm(point, 2.0) ** 2
            elst = elstrodt_bound(point)
            # the digamma form is an equality in two dimensions
            tally.add("measured L2^2 <= digamma bound", measured, elst, rtol=1e-8)
            tally.add("digamma bound <= C0/(|z+1/2| Re z)", elst, l2_norm_bound(point), rtol=1e-12)
        else:
            measured = measured_kernel_norm(point, p)
            tally.add(f"measured L{p:g} <= interpolated bound", measured, lp_norm_bound(p, z), rtol=1e-8)
            if p == 1.0:
                tally.add("measured L1 <= 1/(Re z (Re z + 1))", measured, l1_norm_exact(z), rtol=1e-8)
    return tally


def _suite_certificate_chain(samples, rng):
    tally = _Tally()
    z = sample_half_plane(rng, samples, (1e-2, 1e2))
    r = rng.uniform(2.0, 10.0, samples)
    starts, mids, ends = np.array([hilbert_chain(zz, rr) for zz, rr in zip(z, r)]).T
    tally.add("certificate lhs >= middle link", mids, starts)
    tally.add("middle link >= final link", ends, mids)
    for p in (3.0, 4.0, 10.0):
        rs = p + rng.uniform(0.0, 6.0, samples)
        zs = sample_half_plane(rng, samples, (1e-2, 1e2))
        logs = np.array([parabolic_chain(p, zz, rr) for zz, rr in zip(zs, rs)])
        tally.add_log(f"p={p:g} Re z chain >= distance chain", logs[:, 1], logs[:, 0])
    # every non-excluded point of a Hilbert-space mask respects the distance cap
    window = Window(-3.0, 2.0, -2.0, 2.0, res=80)
    lam = window.grid()
    for v in (0.25, 0.5, 1.0, 2.0):
        pot = PotentialSpec(2.0, v)
        mask = enclosure_region(2.0, pot, window)
        outside = mask & ~np.asarray(sigma_p_contains(2.0, lam, tol=1e-12), dtype=bool)
        dist = dist_to_sigma_p(2.0, lam[outside])
        tally.add("non-excluded dist <= cap", dist, np.full(dist.shape, hilbert_distance_cap(pot)))
    return tally


def _suite_disk_distortion(samples, rng):
    tally = _Tally()
    ps = rng.choice(LEMMA41_EXPONENTS, samples)
    a = np.exp(rng.uniform(np.log(1e-2), np.log(1e2), samples))
    w = sample_disk(rng, samples, 1.0 - 1e-6)
    for p, aa, ww in zip(ps, a, w):
        b = lemma63_bounds(float(p), float(aa), complex(ww))
        tally.add("13a identity residual", b.identity_residual, 1e-12, rtol=0.0)
        tally.add("13b gap bound", b.gap.value, b.gap.upper)
        tally.add("13c lower", b.re_z.lower, b.re_z.value)
        tally.add("13c upper", b.re_z.value, b.re_z.upper)
        tally.add("42 lower", b.one_minus_abs_w.lower, b.one_minus_abs_w.value)
        tally.add("42 upper", b.one_minus_abs_w.value, b.one_minus_abs_w.upper)
    return tally


def _suite_duality(samples, rng):
    tally = _Tally()
    for p in (1.2, 1.5, 4.0 / 3.0, 3.0, 4.0, 10.0):
        params, dual = SpectralParams(p), SpectralParams(p).dual()
        z = sample_half_plane(rng, samples, (1e-2, 1e2))
        lam = psi_p(params, z)
        lam_c = np.conj(lam)
        tally.add_equal(f"p={p:g} gamma", params.gamma_p, dual.gamma_p)
        tally.add_equal(f"p={p:g} vertex", params.vertex, dual.vertex)
        tally.add_equal(f"p={p:g} psi", psi_p(dual, np.conj(z)), lam_c)
        tally.add_equal(f"p={p:g} dist", dist_to_sigma_p(params, lam), dist_to_sigma_p(dual, lam_c))
        probe = lam + rng.normal(0, 1, samples) + 1j * rng.normal(0, 1, samples)
        tally.add_equal(
            f"p={p:g} membership",
            np.asarray(sigma_p_contains(params, probe), dtype=float),
            np.asarray(sigma_p_contains(dual, np.conj(probe)), dtype=float),
        )
        zi = np.array([psi_p_inv(params, l).z for l in lam[:50]])
        zd = np.array([psi_p_inv(dual, l).z for l in lam_c[:50]])
        tally.add_equal(f"p={p:g} inverse map", zi, np.conj(zd), rtol=1e-10)
        curve = boundary_curve(params, (-2, 2), 51)
        curve_d = boundary_curve(dual, (-2, 2), 51)
        tally.add_equal(f"p={p:g} boundary mirror", curve, np.conj(curve_d))
        res = [resolvent_norm_bound(params, zz) for zz in z[:50]]
        res_d = [resolvent_norm_bound(dual, np.conj(zz)) for zz in z[:50]]
        tally.add_equal(f"p={p:g} resolvent bound", res, res_d)
        r = max(params.p, dual.p) * 1.5
        pot = PotentialSpec(r, 0.7)
        for l in lam[:50]:
            a, b = thm2_certificate(params, pot, l), thm2_certificate(dual, pot, np.conj(l))
            tally.add_equal(f"p={p:g} enclosure certificate", [a.log_lhs, a.log_rhs], [b.log_lhs, b.log_rhs])
        window = Window(-2.0, 2.0, -2.0, 2.0, res=40)
        m1 = enclosure_region(params, pot, window)
        m2 = enclosure_region(dual, pot, window)[::-1]
        tally.add_equal(f"p={p:g} enclosure mask (mirrored)", m1.astype(float), m2.astype(float), rtol=0.0)
        for ww in sample_disk(rng, 20, 0.99):
            b1 = lemma63_bounds(params, 1.3, complex(ww))
            b2 = lemma63_bounds(dual, 1.3, complex(np.conj(ww)))
            tally.add_equal(
                f"p={p:g} disk distortion",
                [b1.gap.value, b1.re_z.value, b1.one_minus_abs_w.upper],
                [b2.gap.value, b2.re_z.value, b2.one_minus_abs_w.upper],
            )
        evs = EigenvalueList(tuple((l, 1) for l in lam[:20]), params.p)
        evs_d = EigenvalueList(tuple((np.conj(l), 1) for l in lam[:20]), dual.p)
        rep = thm4_functionals(params.p, r, 0.5, 0.7, evs)
        rep_d = thm4_functionals(dual.p, r, 0.5, 0.7, evs_d)
        tally.add_equal(
            f"p={p:g} Lieb-Thirring sums",
            [rep.small_sum, rep.large_sum, rep.small_budget, rep.large_budget],
            [rep_d.small_sum, rep_d.large_sum, rep_d.small_budget, rep_d.large_budget],
        )
    return tally


SUITES = {
    "lemma41": _suite_distortion,
    "kernel-norms": _suite_kernel_norms,
    "eq30-chain": _suite_certificate_chain,
    "lemma63": _suite_disk_distortion,
    "duality": _suite_duality,
}


def run_suite(name, samples, seed=0):
    """Run one suite; ``samples = 0`` yields a vacuous pass."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    samples = int(samples)
    if samples < 0:
        raise ValueError("samples must be >= 0")
    if samples == 0:
        return {"suite": name, "samples": 0, "seed": seed, "passed": True, "checks": [], "vacuous": True}
    rng = np.random.default_rng(seed)
    return SUITES[name](samples, rng).result(name, samples, seed)
