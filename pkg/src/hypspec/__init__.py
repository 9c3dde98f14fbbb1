"""Spectral theory of Schrödinger operators on the hyperbolic plane, numerically.

Parabolic L_p-spectral regions, Green kernels of the Laplacian, eigenvalue
enclosures, Lieb-Thirring sum functionals and a Birman-Schwinger eigenvalue
oracle for radial potentials.
"""

from .bounds import (
    EnclosureVerdict,
    PotentialSpec,
    SummingBounds,
    Window,
    bs_opnorm_bound,
    bs_summing_bound,
    enclosure_region,
    resolvent_norm_bound,
    thm1_certificate,
    thm2_certificate,
)
from .estimators import BirmanSchwingerEigensolver, EnclosureClassifier
from .geometry import BASE_POINT, HyperPoint, PolarCoord, geodesic_distance, polar_to_half_plane
from .green import (
    C0,
    DEFAULT_QUADRATURE,
    KernelTable,
    QuadratureConfig,
    QuadratureError,
    elstrodt_bound,
    green_eval,
    l1_norm_exact,
    l2_norm_bound,
    lp_norm_bound,
    measured_kernel_norm,
)
from .lieb_thirring import (
    EigenvalueList,
    LTConstants,
    LTParams,
    LTReport,
    bgk_sum,
    lemma63_bounds,
    phi_a,
    phi_a_inv,
    thm3_functionals,
    hilbert_lt_params,
    thm4_functionals,
    parabolic_lt_params,
    thm61_sums,
)
from .oracle import RadialPotential, assemble_bs, det_r, find_eigenvalues, locate_eigenvalues
from .regions import (
    SpectralParams,
    SpectralPoint,
    SpectrumError,
    boundary_curve,
    dist_to_sigma_p,
    psi_p,
    psi_p_inv,
    sigma_p_contains,
    spectral_point,
)

__version__ = "0.1.0"

__all__ = [
    "BASE_POINT",
    "C0",
    "DEFAULT_QUADRATURE",
    "BirmanSchwingerEigensolver",
    "EigenvalueList",
    "EnclosureClassifier",
    "EnclosureVerdict",
    "HyperPoint",
    "KernelTable",
    "LTConstants",
    "LTParams",
    "LTReport",
    "PolarCoord",
    "PotentialSpec",
    "QuadratureConfig",
    "QuadratureError",
    "RadialPotential",
    "SpectralParams",
    "SpectralPoint",
    "SpectrumError",
    "SummingBounds",
    "Window",
    "assemble_bs",
    "bgk_sum",
    "boundary_curve",
    "bs_opnorm_bound",
    "bs_summing_bound",
    "det_r",
    "dist_to_sigma_p",
    "elstrodt_bound",
    "enclosure_region",
    "find_eigenvalues",
    "geodesic_distance",
    "green_eval",
    "l1_norm_exact",
    "l2_norm_bound",
    "lemma63_bounds",
    "locate_eigenvalues",
    "lp_norm_bound",
    "measured_kernel_norm",
    "phi_a",
    "phi_a_inv",
    "polar_to_half_plane",
    "psi_p",
    "psi_p_inv",
    "resolvent_norm_bound",
    "sigma_p_contains",
    "spectral_point",
    "thm1_certificate",
    "thm2_certificate",
    "thm3_functionals",
    "hilbert_lt_params",
    "thm4_functionals",
    "parabolic_lt_params",
    "thm61_sums",
]
