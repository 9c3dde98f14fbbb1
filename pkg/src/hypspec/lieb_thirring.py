"""Weighted eigenvalue sums of Lieb-Thirring type and the disk machinery behind them.

The abstract engine takes a resolvent bound of the form
``C1 Re(z)^-alpha |z|^-beta`` and returns two sums over eigenvalues, split
by the size of ``|lam - 1/(pp')|^(1/2)`` relative to ``eta = (2 C1)^(1/(alpha+beta))``.
The two concrete instantiations fix ``alpha, beta, gamma`` and ``C1`` from
the summing-norm bounds.

The constants in front of the budgets are not known explicitly; they enter
through :class:`LTConstants` (all 1 by default), so reports are best read as
ratios ``sum / budget``.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from .regions import (
    BOUNDARY_TOL,
    SpectralParams,
    SpectrumError,
    dist_to_sigma_p,
    psi_p,
    sigma_p_contains,
)

__all__ = [
    "LTParams",
    "LTConstants",
    "EigenvalueList",
    "LTReport",
    "Lemma63Bounds",
    "Bracket",
    "phi_a",
    "phi_a_inv",
    "lemma63_bounds",
    "bgk_sum",
    "halfplane_zero_term",
    "transplant_lower_term",
    "thm61_sums",
    "hilbert_lt_params",
    "thm3_functionals",
    "parabolic_lt_params",
    "thm4_functionals",
    "parabolic_eps_default",
    "k_exponent",
    "k_table",
]

# eigenvalues closer than this to the spectrum contribute nothing
_TINY_DIST = 1e-300


def _pos(x):
    return x if x > 0 else 0.0


def _as_params(params):
    return params if isinstance(params, SpectralParams) else SpectralParams(params)


def _pow_log(base, exponent):
    """``exponent * log(base)`` with the ``x^0 = 1`` convention."""
    if exponent == 0:
        return 0.0
    if base <= 0:
        return -math.inf if exponent > 0 else math.inf
    return exponent * math.log(base)


def _exp(x):
    if x == -math.inf:
        return 0.0
    return math.exp(x) if x < 709.0 else math.inf


@dataclass(frozen=True)
class LTParams:
    """Exponent block of the abstract Lieb-Thirring estimate."""

    alpha: float
    beta: float
    gamma: float
    r: float
    tau: float
    c1: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "r"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val >= 0):
                raise ValueError(f"{name} must be a finite number >= 0, got {val}")
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if not (self.c1 > 0 and math.isfinite(self.c1)):
            raise ValueError(f"c1 must be > 0, got {self.c1}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")

    @property
    def delta1(self):
        return self.r * self.alpha + 1.0 + self.tau

    @property
    def delta2(self):
        return _pos(self.r * self.beta - 1.0 + self.tau)

    @property
    def delta3(self):
        return self.r * (1.0 - self.alpha - self.beta - self.gamma)

    @property
    def delta4(self):
        return _pos(self.r * (2.0 - 2.0 * self.alpha - self.beta) - 1.0 + self.tau)

    @property
    def inv_alpha_beta(self):
        s = self.alpha + self.beta
        if s <= 0:
            raise ValueError("alpha + beta must be positive for the eigenvalue split")
        return 1.0 / s

    @property
    def eta(self):
        return (2.0 * self.c1) ** self.inv_alpha_beta

    def budget_exponents(self, gamma_p=0.0):
        """Powers of ``C1`` in both budgets; exact only when ``gamma_p = 0``."""
        if gamma_p != 0:
            raise ValueError("the budgets are pure powers of C1 only for gamma_p = 0")
        inv = self.inv_alpha_beta
        small = self.r + (self.delta1 + self.delta2 + self.delta3) * inv + self.r * inv
        large = self.r - self.tau * inv
        return small, large

    def to_dict(self):
        out = {k: getattr(self, k) for k in ("alpha", "beta", "gamma", "r", "tau", "c1")}
        out.update(delta1=self.delta1, delta2=self.delta2, delta3=self.delta3, delta4=self.delta4)
        if self.alpha + self.beta > 0:
            out["eta"] = self.eta
        return out


@dataclass(frozen=True)
class LTConstants:
    """Non-explicit constants of the theorems, supplied as configuration.

    ``c`` and ``c_prime`` multiply the small and large budgets.  ``gamma_r``
    and ``mu_r`` (determinant growth and ideal eigenvalue constants) are
    carried for reporting only.
    """

    c: float = 1.0
    c_prime: float = 1.0
    gamma_r: float = 1.0
    mu_r: float = 1.0

    def __post_init__(self):
        for name in ("c", "c_prime", "gamma_r", "mu_r"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def is_default(self):
        return self == LTConstants()


@dataclass(frozen=True)
class EigenvalueList:
    """Eigenvalues with algebraic multiplicities, validated against ``Sigma_p``."""

    entries: tuple
    p: float = 2.0

    def __post_init__(self):
        params = SpectralParams(self.p)
        clean = []
        for item in self.entries:
            lam, mult = item if isinstance(item, (tuple, list)) else (item, 1)
            lam = complex(lam)
            if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
                raise ValueError(f"non-finite eigenvalue {lam}")
            if int(mult) != mult or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult}")
            if sigma_p_contains(params, lam, tol=BOUNDARY_TOL):
                raise SpectrumError(f"eigenvalue {lam} lies in Sigma_{params.p:g}")
            clean.append((lam, int(mult)))
        object.__setattr__(self, "entries", tuple(clean))
        object.__setattr__(self, "p", params.p)

    @property
    def params(self):
        return SpectralParams(self.p)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def conjugate(self, p=None):
        return EigenvalueList(tuple((lam.conjugate(), m) for lam, m in self.entries), self.p if p is None else p)

    def to_json(self):
        return json.dumps([{"re": l.real, "im": l.imag, "mult": m} for l, m in self.entries])

    @classmethod
    def from_json(cls, text, p=2.0):
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("eigenvalue file must hold a JSON list")
        entries = []
        for i, row in enumerate(data):
            if not isinstance(row, dict) or not {"re", "im"} <= set(row):
                raise ValueError(f"entry {i}: expected an object with 're' and 'im'")
            extra = set(row) - {"re", "im", "mult"}
            if extra:
                raise ValueError(f"entry {i}: unexpected keys {sorted(extra)}")
            entries.append((complex(float(row["re"]), float(row["im"])), row.get("mult", 1)))
        return cls(tuple(entries), p)


@dataclass(frozen=True)
class LTReport:
    small_sum: float
    small_budget: float
    large_sum: float
    large_budget: float
    split_threshold: float
    satisfied: tuple
    n_small: int = 0
    n_large: int = 0
    exponents: dict = field(default_factory=dict)
    constants_are_default: bool = True

    @property
    def ratios(self):
        def ratio(s, b):
            if b > 0:
                return s / b
            return 0.0 if s == 0 else math.inf

        return ratio(self.small_sum, self.small_budget), ratio(self.large_sum, self.large_budget)

    def to_dict(self):
        return {
            "small_sum": self.small_sum,
            "small_budget": self.small_budget,
            "large_sum": self.large_sum,
            "large_budget": self.large_budget,
            "split_threshold": self.split_threshold,
            "satisfied": list(self.satisfied),
            "ratios": list(self.ratios),
            "n_small": self.n_small,
            "n_large": self.n_large,
            "exponents": dict(self.exponents),
            "constants_are_default": self.constants_are_default,
        }


def _report(small_terms, large_terms, log_small_budget, log_large_budget, threshold, exponents, constants):
    small = math.fsum(small_terms)
    large = math.fsum(large_terms)
    sb, lb = _exp(log_small_budget), _exp(log_large_budget)
    return LTReport(
        small_sum=small,
        small_budget=sb,
        large_sum=large,
        large_budget=lb,
        split_threshold=threshold,
        satisfied=(bool(small <= sb), bool(large <= lb)),
        n_small=len(small_terms),
        n_large=len(large_terms),
        exponents=exponents,
        constants_are_default=constants.is_default,
    )


# ---------------------------------------------------------------- disk side


def phi_a(a, w):
    """Disk-to-half-plane map ``a (1 - w) / (1 + w)``."""
    if not a > 0:
        raise ValueError("a must be positive")
    w = complex(w)
    if abs(w) >= 1:
        raise ValueError(f"w must lie in the open unit disk, got {w}")
    return a * (1.0 - w) / (1.0 + w)


def phi_a_inv(a, z):
    if not a > 0:
        raise ValueError("a must be positive")
    z = complex(z)
    if z.real <= 0:
        raise ValueError(f"z must lie in the right half-plane, got {z}")
    return (a - z) / (a + z)


@dataclass(frozen=True)
class Bracket:
    """``lower <= value <= upper``; a missing side is ``None``."""

    value: float
    lower: float | None = None
    upper: float | None = None

    def holds(self, rtol=1e-12):
        slack = rtol * max(abs(self.value), 1e-300)
        ok = True
        if self.lower is not None:
            ok &= self.lower <= self.value + slack
        if self.upper is not None:
            ok &= self.value <= self.upper + slack
        return bool(ok)

    def log_margin(self):
        """Smallest log-ratio of the inequality sides (positive when strict)."""
        out = math.inf
        if self.lower is not None and self.lower > 0:
            out = min(out, math.log(self.value / self.lower))
        if self.upper is not None:
            out = min(out, math.log(self.upper / self.value))
        return out


@dataclass(frozen=True)
class Lemma63Bounds:
    """Identity residual and three inequalities relating ``w``, ``z = Phi_a(w)`` and ``lam = Psi_p(z)``."""

    identity_residual: float
    gap: Bracket
    re_z: Bracket
    one_minus_abs_w: Bracket

    def holds(self, rtol=1e-12):
        return (
            self.identity_residual <= 1e-12
            and self.gap.holds(rtol)
            and self.re_z.holds(rtol)
            and self.one_minus_abs_w.holds(rtol)
        )


def lemma63_bounds(params, a, w) -> Lemma63Bounds:
    params = _as_params(params)
    w = complex(w)
    z = phi_a(a, w)
    g = params.gamma_p
    lam = psi_p(params, z)
    one_plus = abs(1.0 + w) ** 2
    residual = max(abs((1.0 + w) - 2.0 * a / (a + z)), abs((1.0 - w) - 2.0 * z / (a + z)))
    gap = Bracket(value=abs(lam - psi_p(params, a)), upper=4.0 * a * (a + 2.0 * g) / one_plus)
    # 1 - |w| loses relative accuracy near the circle; 1 - |w|^2 over 1 + |w| does not
    omw = (1.0 - abs(w) ** 2) / (1.0 + abs(w))
    re_z = Bracket(value=z.real, lower=a * omw / one_plus, upper=2.0 * a * omw / one_plus)
    scale = a * dist_to_sigma_p(params, lam) / (abs(a + z) ** 2 * math.sqrt(abs(0.25 - lam)))
    disk = Bracket(value=omw, lower=scale / 8.0, upper=16.0 * scale)
    return Lemma63Bounds(identity_residual=residual, gap=gap, re_z=re_z, one_minus_abs_w=disk)


def bgk_sum(zeros, e1, e2, e3):
    """``sum (1-|w|)^e1 |1-w|^e2 |1+w|^e3`` over disk zeros, each counted by its order."""
    for e in (e1, e2, e3):
        if e < 0:
            raise ValueError("exponents must be >= 0")
    terms = []
    for item in zeros:
        w, order = item if isinstance(item, (tuple, list)) else (item, 1)
        w = complex(w)
        if abs(w) >= 1:
            raise ValueError(f"zero {w} is not inside the unit disk")
        omw = (1.0 - abs(w) ** 2) / (1.0 + abs(w))
        log_t = _pow_log(omw, e1) + _pow_log(abs(1.0 - w), e2) + _pow_log(abs(1.0 + w), e3)
        terms.append(int(order) * _exp(log_t))
    return math.fsum(terms)


def halfplane_zero_term(lt: LTParams, params, lam, a):
    """One summand of the half-plane form of the zero sum at centre ``a``."""
    params = _as_params(params)
    lam = complex(lam)
    z = -params.gamma_p + np.sqrt(complex(0.25 - lam))
    dist = dist_to_sigma_p(params, lam)
    q = math.sqrt(abs(0.25 - lam))
    d1, d2, d4 = lt.delta1, lt.delta2, lt.delta4
    log_t = _pow_log(dist / q, d1) + _pow_log(abs(z), d2) - _pow_log(abs(a + z), 2 * d1 + d2 + d4)
    return _exp(log_t)


def transplant_lower_term(lt: LTParams, params, lam, a):
    """Lower bound, via the disk-distortion inequalities, for the disk summand of ``lam``."""
    params = _as_params(params)
    lam = complex(lam)
    z = complex(-params.gamma_p + np.sqrt(complex(0.25 - lam)))
    dist = dist_to_sigma_p(params, lam)
    q = math.sqrt(abs(0.25 - lam))
    base = a * dist / (8.0 * abs(a + z) ** 2 * q)
    log_t = (
        _pow_log(base, lt.delta1)
        + _pow_log(abs(2.0 * z / (a + z)), lt.delta2)
        + _pow_log(abs(2.0 * a / (a + z)), lt.delta4)
    )
    return _exp(log_t)


# ---------------------------------------------------------------- engine


def _eigen_data(params, evs):
    """Per-eigenvalue ``(mult, dist, |lam - vertex|)``."""
    out = []
    for lam, mult in evs:
        if sigma_p_contains(params, lam, tol=BOUNDARY_TOL):
            raise SpectrumError(f"eigenvalue {lam} lies in Sigma_{params.p:g}")
        out.append((mult, dist_to_sigma_p(params, lam), abs(lam - params.vertex)))
    return out


def thm61_sums(lt: LTParams, params, evs: EigenvalueList, constants: LTConstants = LTConstants()) -> LTReport:
    params = _as_params(params)
    g = params.gamma_p
    eta = lt.eta
    inv = lt.inv_alpha_beta
    d1, d2, d3 = lt.delta1, lt.delta2, lt.delta3
    large_exp = 2 * d1 + 2 * d2 + d3 + lt.r + lt.tau
    small, large = [], []
    for mult, dist, gap in _eigen_data(params, evs):
        root = math.sqrt(gap)
        if dist < _TINY_DIST:
            term_log = -math.inf
        else:
            term_log = _pow_log(dist, d1) + _pow_log(gap, d2)
        if root <= eta:
            small.append(mult * _exp(term_log - _pow_log(root + 2 * g, d1 + d2)))
        else:
            large.append(mult * _exp(term_log - _pow_log(root + 2 * g, large_exp)))
    log_c1 = math.log(lt.c1)
    base = math.log(lt.c1**inv + g)
    log_small = math.log(constants.c) + (lt.r + (d1 + d2 + d3) * inv) * log_c1 + lt.r * base
    log_large = math.log(constants.c_prime) + lt.r * log_c1 - lt.tau * base
    exps = lt.to_dict()
    exps["large_denominator_exponent"] = large_exp
    return _report(small, large, log_small, log_large, eta, exps, constants)


# ---------------------------------------------------------------- p = 2


def _check_tau(tau):
    if not (0 < tau < 1):
        raise ValueError(f"tau must lie in (0, 1), got {tau}")
    return float(tau)


def hilbert_lt_params(r, tau, c1=1.0) -> LTParams:
    """Hilbert-space instantiation ``alpha = 1 - 1/r``, ``beta = 1 - 2/r``, ``gamma = 2``, ``C1 = ||V||_r``."""
    if r < 2:
        raise ValueError(f"needs r >= 2, got {r}")
    return LTParams(alpha=1.0 - 1.0 / r, beta=1.0 - 2.0 / r, gamma=2.0, r=float(r), tau=_check_tau(tau), c1=c1)


def thm3_functionals(r, tau, v_norm, evs: EigenvalueList, constants: LTConstants = LTConstants()) -> LTReport:
    r = float(r)
    if r < 2:
        raise ValueError(f"needs r >= 2, got {r}")
    tau = _check_tau(tau)
    if v_norm < 0:
        raise ValueError("v_norm must be >= 0")
    params = SpectralParams(2.0)
    if evs.p != 2.0:
        raise ValueError("the Hilbert-space functionals need an eigenvalue list for p = 2")
    branch = "ia" if r <= 3.0 - tau else "ib"
    scale = r / (2.0 * r - 3.0)
    log_v = math.log(v_norm) if v_norm > 0 else -math.inf
    log_threshold = r * (math.log(2.0) + log_v) if v_norm > 0 else -math.inf
    small, large = [], []
    for mult, dist, gap in _eigen_data(params, evs):
        lg = math.log(gap)
        ld = math.log(dist) if dist >= _TINY_DIST else -math.inf
        if (r - 1.5) * lg <= log_threshold:
            if branch == "ia":
                t = (r + tau) * (ld - 0.5 * lg)
            else:
                t = (r + tau) * ld - 1.5 * lg
            small.append(mult * _exp(t))
        else:
            large.append(mult * _exp((r + tau) * ld - 0.5 * (3.0 + 3.0 * tau) * lg))
    small_power = scale * ((r + tau) if branch == "ia" else (2.0 * r - 3.0 + 2.0 * tau))
    large_power = scale * (2.0 * r - 3.0 - tau)

    def log_budget(const, power):
        return math.log(const) + (power * log_v if v_norm > 0 else -math.inf)

    lt = hilbert_lt_params(r, tau)
    exps = lt.to_dict()
    exps.pop("c1")
    exps.pop("eta", None)
    exps.update(
        branch=branch,
        inv_alpha_beta=lt.inv_alpha_beta,
        small_budget_power=small_power,
        large_budget_power=large_power,
        threshold_exponent=r - 1.5,
    )
    threshold = _exp(log_threshold)
    return _report(
        small, large, log_budget(constants.c, small_power), log_budget(constants.c_prime, large_power),
        threshold, exps, constants,
    )


# ---------------------------------------------------------------- p != 2


def k_exponent(r, p):
    """``k = r (2 - 2 gamma_p) - 2``, equal to ``r (1 + 2/p) - 2`` for ``p > 2``."""
    return r * (2.0 - 2.0 * SpectralParams(p).gamma_p) - 2.0


def k_table(r, p_values):
    return [(float(p), k_exponent(r, p)) for p in p_values]


def parabolic_eps_default(p, tau):
    two_over_p = 1.0 - 2.0 * SpectralParams(p).gamma_p
    return min(tau / 8.0, tau / (8.0 * (1.0 + two_over_p)))


def _fit_eps(two_over_p, r, tau, eps):
    a1 = 1.0 + two_over_p - 3.0 / r
    a2 = two_over_p - 3.0 / r
    for _ in range(200):
        e1, e2, e3 = tau + eps * a1, 2.0 * tau + eps * a2, 3.0 * tau + eps * a2
        if all(0.0 < e < 4.0 * tau for e in (e1, e2, e3)):
            return eps, (e1, e2, e3)
        eps *= 0.5
    raise ValueError("could not fit the epsilon exponents into (0, 4 tau)")


def parabolic_lt_params(p, r, tau, v_norm=1.0, eps0=None):
    """Instantiation for ``p != 2``, reduced to the representative ``p > 2``.

    Returns ``(LTParams, info)``; ``info`` holds ``k``, ``eps``, the three
    epsilon exponents and the ideal exponent ``R = r + eps``.
    """
    params = SpectralParams(p)
    if params.is_hilbert:
        raise ValueError("p = 2: use thm3_functionals")
    params.require_operator_range()
    tau = _check_tau(tau)
    g = params.gamma_p
    two_over_p = 1.0 - 2.0 * g
    p_big = 2.0 / two_over_p
    r = float(r)
    if r < p_big * (1.0 - 1e-12):
        raise ValueError(f"needs r >= max(p, p') = {p_big:g}, got {r}")
    at_p = abs(r - p_big) <= 1e-12 * p_big
    if at_p:
        eps, e = _fit_eps(two_over_p, r, tau, 0.0)
    else:
        start = parabolic_eps_default(p, tau) if eps0 is None else float(eps0)
        if not start > 0:
            raise ValueError("eps0 must be positive")
        eps, e = _fit_eps(two_over_p, r, tau, start)
    k = r * (2.0 - 2.0 * g) - 2.0
    big_r = r + eps
    c1 = 2.0 ** (1.0 - two_over_p) * v_norm if v_norm > 0 else 1.0
    lt = LTParams(alpha=1.0 + two_over_p - 3.0 / r, beta=0.0, gamma=2.0, r=big_r, tau=tau, c1=c1)
    info = {"k": k, "eps": eps, "eps1": e[0], "eps2": e[1], "eps3": e[2], "R": big_r, "p_reduced": p_big}
    return lt, info


def thm4_functionals(p, r, tau, v_norm, evs: EigenvalueList, eps0=None, constants: LTConstants = LTConstants()) -> LTReport:
    """Parabolic Lieb-Thirring sums; ``p < 2`` is mapped to ``p'`` (same region, same sums)."""
    if v_norm < 0:
        raise ValueError("v_norm must be >= 0")
    lt, info = parabolic_lt_params(p, r, tau, v_norm, eps0)
    params = SpectralParams(p)
    if abs(SpectralParams(evs.p).gamma_p - params.gamma_p) > 1e-12:
        raise ValueError("eigenvalue list was validated for a different exponent")
    g = params.gamma_p
    k, e1, e2, e3 = info["k"], info["eps1"], info["eps2"], info["eps3"]
    r = float(r)
    log_v = math.log(v_norm) if v_norm > 0 else -math.inf
    log_threshold = r * (math.log(2.0) + log_v) if v_norm > 0 else -math.inf
    small, large = [], []
    for mult, dist, gap in _eigen_data(params, evs):
        ld = math.log(dist) if dist >= _TINY_DIST else -math.inf
        t = (k + e1) * ld
        if 0.5 * (k - 1.0) * math.log(gap) <= log_threshold:
            small.append(mult * _exp(t))
        else:
            large.append(mult * _exp(t - (k + 1.0 + e3) * math.log(math.sqrt(gap) + 2.0 * g)))
    if v_norm > 0:
        base = math.log(v_norm ** (r / (k - 1.0)) + g)
        log_small = math.log(constants.c) + r * log_v + (k + 1.0 + e2) * base
        log_large = math.log(constants.c_prime) + r * log_v - tau * base
    else:
        log_small = log_large = -math.inf
    exps = dict(info)
    exps.update(lt.to_dict())
    exps["threshold_exponent"] = 0.5 * (k - 1.0)
    return _report(small, large, log_small, log_large, _exp(log_threshold), exps, constants)
