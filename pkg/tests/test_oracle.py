import json
import math

import numpy as np
import pytest

from oracles import shooting_eigenvalue_check, well_eigenvalues
from hypspec.bounds import PotentialSpec, bs_summing_bound, thm1_certificate
from hypspec.green import KernelTable, green_eval
from hypspec.oracle import (
    RadialPotential,
    angular_average,
    assemble_bs,
    bs_determinant,
    det_r,
    find_eigenvalues,
    hs_matrix,
    locate_eigenvalues,
    winding_number,
)
from hypspec.regions import spectral_point

BOX = (-2.0, 0.25, -0.1, 0.1)


# regularized determinants


def test_det_examples():
    assert det_r(np.zeros((3, 3)), 2) == 1.0
    assert det_r(np.diag([0.5, 0.5]), 1) == pytest.approx(0.25)
    assert det_r(np.diag([0.5]), 1) == pytest.approx(0.5)
    for lam in (0.3, -1.2, 1.0, 0.5 + 0.5j):
        assert det_r(np.diag([lam]), 2) == pytest.approx((1 - lam) * np.exp(lam), abs=1e-12)
    assert det_r(np.diag([1.0]), 2) == 0.0
    lam = 0.4
    assert det_r(np.diag([lam]), 3) == pytest.approx((1 - lam) * np.exp(lam + lam**2 / 2), rel=1e-12)
    assert det_r(np.diag([lam]), 2.5) == det_r(np.diag([lam]), 3)


def test_det_multiplicative_for_diagonal():
    rng = np.random.default_rng(0)
    a, b = rng.uniform(-0.9, 0.9, 6), rng.uniform(-0.9, 0.9, 6)
    lhs = det_r(np.diag(a), 1) * det_r(np.diag(b), 1)
    prod = np.eye(6) - (np.eye(6) - np.diag(a)) @ (np.eye(6) - np.diag(b))
    assert det_r(prod, 1) == pytest.approx(lhs, rel=1e-12)


def test_det_zero_set_with_planted_eigenvalue():
    rng = np.random.default_rng(4)
    for _ in range(20):
        q = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        eig = rng.uniform(-0.8, 0.8, 5) + 1j * rng.uniform(-0.8, 0.8, 5)
        free = det_r(q @ np.diag(eig) @ np.linalg.inv(q), 2)
        assert abs(free) > 1e-6
        eig[2] = 1.0
        planted = q @ np.diag(eig) @ np.linalg.inv(q)
        assert abs(det_r(planted, 2)) < 1e-12


def test_bs_determinant_matches_det2():
    rng = np.random.default_rng(1)
    m = 0.2 * rng.normal(size=(6, 6))
    assert bs_determinant(m) == pytest.approx(det_r(-m, 2), rel=1e-12)


def test_det_validation():
    with pytest.raises(ValueError):
        det_r(np.zeros((2, 3)), 2)
    with pytest.raises(ValueError):
        det_r(np.zeros((2, 2)), 0.5)


# potentials


def test_potential_json_round_trip_and_norm():
    pot = RadialPotential(np.array([0.0, 0.5, 1.0]), np.array([-1.0, -0.5 + 0.2j, 0.0]), 1.0)
    back = RadialPotential.from_json(pot.to_json())
    np.testing.assert_array_equal(back.values, pot.values)
    well = RadialPotential.well(2.0)
    # ||V||_2^2 = 4 * area of the unit ball = 4 * 2 pi (cosh 1 - 1)
    assert well.lp_norm(2.0) == pytest.approx(math.sqrt(8 * math.pi * (math.cosh(1) - 1)), rel=1e-13)
    assert well.lp_norm(math.inf) == 2.0
    with pytest.raises(ValueError):
        RadialPotential.from_json(json.dumps({"grid": []}))
    with pytest.raises(ValueError):
        RadialPotential(np.array([0.0, 0.0]), np.array([1.0, 1.0]), 1.0)


# angular average


@pytest.mark.parametrize("lam", [-0.5, 0.1 + 0.3j])
def test_angular_average_mean_value_identity(lam):
    pt = spectral_point(lam)
    table = KernelTable(pt, 2.0, n_grid=512)
    rho = np.array([0.3, 0.7, 1.0, 0.05])
    rho2 = np.array([0.9, 0.2, 1.0, 0.6])
    kbar, _ = angular_average(table, rho, rho2, 64)
    lo, hi = np.minimum(rho, rho2), np.maximum(rho, rho2)
    from hypspec.green import spherical_function

    ok = hi > lo
    expected = spherical_function(pt, lo[ok]) * green_eval(pt, hi[ok])
    np.testing.assert_allclose(kbar[ok], expected, rtol=1e-9)


# assembly


def test_zero_potential_gives_identity_determinant():
    op = assemble_bs(RadialPotential.zero(), -1.0, n=16)
    assert np.all(op.matrix == 0) and op.det2() == 1.0
    assert len(find_eigenvalues(RadialPotential.zero(), BOX)) == 0


def test_conjugate_parameter_gives_conjugate_matrix():
    pot = RadialPotential.well(1.5)
    a = assemble_bs(pot, -0.3 + 0.4j, n=32).matrix
    b = assemble_bs(pot, -0.3 - 0.4j, n=32).matrix
    np.testing.assert_allclose(b, np.conj(a), rtol=1e-12, atol=1e-15)


def test_matrix_eigenvalues_converge_under_doubling():
    pot = RadialPotential.well(2.0)
    ev64 = np.sort_complex(assemble_bs(pot, -0.5, n=64).eigenvalues())[:3]
    ev128 = np.sort_complex(assemble_bs(pot, -0.5, n=128).eigenvalues())[:3]
    np.testing.assert_allclose(ev64, ev128, atol=1e-6)


def test_rejects_points_of_the_spectrum():
    with pytest.raises(ValueError):
        assemble_bs(RadialPotential.well(1.0), 0.5, n=16)


def test_hilbert_schmidt_budget_on_parameter_grid():
    pot = RadialPotential.well(2.0)
    spec = PotentialSpec(2.0, pot.lp_norm(2.0))
    for lam in [-2.0, -1.0, -0.5, 0.0, 0.1, 0.2, -1 + 1j, 0.5j, 1 + 0.5j, 2 - 1j]:
        z = complex(np.sqrt(0.25 - complex(lam)))
        frob2 = float(np.sum(np.abs(hs_matrix(pot, lam, n=48)) ** 2))
        assert frob2 <= bs_summing_bound(2.0, z, spec).eq28


def test_winding_number_counts_zeros():
    f = lambda x: (x - 0.1) * (x + 0.2) * (x - 2)
    assert winding_number(f, 0.0, 0.5, points=32) == 2


# eigenvalues


@pytest.fixture(scope="module")
def reference_levels():
    return {1.5: well_eigenvalues(1.5, lo=-3, scan=100), 2.0: well_eigenvalues(2.0, lo=-3, scan=100)}


@pytest.mark.parametrize("depth", [1.5, 2.0])
def test_well_eigenvalues_against_legendre_matching(depth, reference_levels):
    run = locate_eigenvalues(RadialPotential.well(depth), BOX, n=64, check_n=32)
    found = [lam.real for lam, _ in run.eigenvalues]
    assert found == pytest.approx(reference_levels[depth], abs=1e-9)
    for (lam, _), err in zip(run.eigenvalues, run.errors):
        assert err < 1e-8
        assert lam.imag == 0.0


def test_shooting_confirms_decay_at_reference_level(reference_levels):
    lam = reference_levels[2.0][0]
    # the solution through an eigenvalue decays; nearby values blow up with opposite signs
    below = shooting_eigenvalue_check(lam - 1e-3, 2.0)
    above = shooting_eigenvalue_check(lam + 1e-3, 2.0)
    assert below * above < 0


def test_shallow_well_has_no_levels():
    assert len(find_eigenvalues(RadialPotential.well(0.5), BOX, n=48)) == 0


def test_found_levels_are_certified_and_birman_schwinger_consistent():
    pot = RadialPotential.well(3.0)
    evs = find_eigenvalues(pot, (-3.0, 0.25, -0.1, 0.1), n=64)
    spec = PotentialSpec(2.0, pot.lp_norm(2.0))
    assert len(evs) >= 1
    for lam, _ in evs:
        assert not thm1_certificate(spec, lam).excluded
        ev = assemble_bs(pot, lam, n=64).eigenvalues()
        assert np.min(np.abs(ev + 1.0)) < 1e-6


def test_complex_potential_gives_complex_level():
    pot = RadialPotential(np.array([0.0, 1.0]), np.array([-1.5 + 0.5j, -1.5 + 0.5j]), 1.0)
    run = locate_eigenvalues(pot, (-1.0, 0.24, -0.5, 0.5), n=48)
    assert len(run.eigenvalues) == 1
    lam = run.eigenvalues.entries[0][0]
    assert lam.imag > 0.1
    conj = RadialPotential(pot.d, np.conj(pot.values), 1.0)
    lam_c = locate_eigenvalues(conj, (-1.0, 0.24, -0.5, 0.5), n=48).eigenvalues.entries[0][0]
    assert lam_c == pytest.approx(np.conj(lam), abs=1e-8)


@pytest.mark.slow
def test_weak_coupling_levels_approach_threshold():
    levels = []
    for depth in (3.0, 2.0, 1.5, 1.0):
        evs = find_eigenvalues(RadialPotential.well(depth), (-1.0, 0.25, -0.1, 0.1), n=64)
        levels.append(max(lam.real for lam, _ in evs))
    assert all(a < b for a, b in zip(levels, levels[1:]))
    assert levels[-1] < 0.25
