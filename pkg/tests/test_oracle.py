import ast
import functools
import inspect

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import catalog_pair, root_system, sl2_elements, sl2_hyperbolic, sl2_system
from symorbits import hermann, oracle, orbits, roots
from symorbits.errors import DimensionGuard, InvalidParams, StepTooLarge
from symorbits.verify import HERMANN_CONFIGS, PairConfig, generic_coefficients

seeds = st.integers(min_value=0, max_value=2**31 - 1)
K_CONFIGS = [c for c in HERMANN_CONFIGS if c.sigma_prime == "theta"][:3]


@functools.lru_cache(maxsize=None)
def k_config(space: str) -> hermann.HermannConfiguration:
    return hermann.hermann_configuration(PairConfig(space, "theta").build(), seed=0)


def _sl2_data(t=0.4, s=0.7):
    _, e, f = sl2_elements()
    return sl2_hyperbolic(), t * (e + f), s * (e + f)


# brute-force roots


def test_sl2_brute_root_square():
    pair = sl2_hyperbolic()
    system = sl2_system()
    _, e, f = sl2_elements()
    t = system.coefficients(e + f)
    brute = oracle.brute_force_roots(pair, system.cartan)
    assert len(brute.roots) == 1
    assert complex(brute.roots[0].values @ t) ** 2 == pytest.approx(4.0, abs=1e-10)
    assert brute.total == 2


def test_zero_cartan_element_gives_whole_space():
    pair = sl2_hyperbolic()
    cartan = roots.CartanSubspace(pair, np.zeros((3, 1)), 1, "q")
    brute = oracle.brute_force_roots(pair, cartan)
    assert brute.roots == []
    assert np.linalg.matrix_rank(brute.zero_space) == pair.dim("q")


def test_sl3_compact_agreement():
    pair = catalog_pair("SL(3,R)/SO0(1,2)")
    system = root_system("SL(3,R)/SO0(1,2)")
    brute = oracle.brute_force_roots(pair, system.cartan)
    for r in system.roots:
        err = min(min(np.abs(b.values - r.values).max(), np.abs(b.values + r.values).max()) for b in brute.roots)
        assert err <= 1e-8


def test_dimension_guard():
    system = root_system("SL(3,R)/SO0(1,2)")
    with pytest.raises(DimensionGuard):
        oracle.brute_force_roots(catalog_pair("SL(3,R)/SO0(1,2)"), system.cartan, max_dim=5)


# determinant scans


def test_trivial_family_is_identity():
    alg = sl2_hyperbolic().algebra
    fam = oracle.totally_geodesic_focal_family(alg, np.zeros(3), sl2_hyperbolic().q.basis)
    for z in (0.3, 2.0 + 1.5j, -4j):
        assert np.linalg.det(fam(z)) == pytest.approx(1.0, abs=1e-14)
    report = oracle.determinant_focal_scan(fam, 5.0)
    assert report.zeros_found == [] and report.winding == 0


def test_resolution_guard():
    pair, w, a = _sl2_data()
    with pytest.raises(InvalidParams):
        oracle.determinant_focal_scan(oracle.shape_focal_family(pair, w, a), 4.0, resolution=0.2)


def test_sl2_lattice_matches_scan():
    pair, w, a = _sl2_data()
    fam = oracle.shape_focal_family(pair, w, a)
    report = oracle.determinant_focal_scan(fam, 8.0)
    focal = orbits.complex_focal_radii(orbits.OrbitPoint(pair, w), a, sl2_system(), 8.0)
    assert len(focal.window) == len(report.zeros_found)
    for z, m in focal.window:
        assert any(abs(z - y) <= 1e-6 and m == k for y, k in report.zeros_found)
    # every reported zero passes the kernel test
    for y, _ in report.zeros_found:
        assert oracle.scaled_determinant(fam, y) <= 1e-8
    assert report.max_residual <= 1e-8
    assert report.cauchy_riemann <= 1e-6


@pytest.mark.parametrize("cfg", K_CONFIGS, ids=lambda c: c.space)
def test_k_orbit_has_no_real_zeros(cfg):
    hc = k_config(cfg.space)
    tangent = hc.pair.subspace("q&f").basis
    v = hc.b.element(np.random.default_rng(0).uniform(-1.0, 1.0, hc.b.dim))
    fam = oracle.totally_geodesic_focal_family(hc.pair.algebra, v, tangent)
    report = oracle.determinant_focal_scan(fam, 10.0)
    assert all(abs(z.imag) > 1e-6 for z, _ in report.zeros_found)
    # cosh(z b) vanishes at z = sqrt(-1) (pi / 2 + k pi) / b
    closed = orbits.totally_geodesic_focal_radii(hc.pair.algebra, v, tangent, 10.0)
    assert sorted(m for _, m in closed.window) == sorted(k for _, k in report.zeros_found)
    for z, m in closed.window:
        assert any(abs(z - y) <= 1e-6 and m == k for y, k in report.zeros_found)


@given(seed=seeds)
def test_determinant_is_holomorphic(seed):
    system = root_system("SU(1,2)/SO0(1,2)")
    pair = catalog_pair("SU(1,2)/SO0(1,2)")
    rng = np.random.default_rng(seed)
    w = system.cartan.element(generic_coefficients(system, rng))
    a = system.cartan.element(rng.uniform(-1.0, 1.0, system.cartan.dim))
    fam = oracle.shape_focal_family(pair, w, a)
    pts = rng.uniform(-3.0, 3.0, 5) + 1j * rng.uniform(-3.0, 3.0, 5)
    assert oracle.cauchy_riemann_residual(fam, pts) <= 1e-6


# Jacobi integration


def test_zero_direction_is_straight_line():
    alg = sl2_hyperbolic().algebra
    rng = np.random.default_rng(0)
    x0, dx0 = rng.standard_normal((2, 3))
    traj = oracle.jacobi_integrate(alg, np.zeros(3), x0, dx0, 2.0, 200)
    for s in (0.5, 1.0, 2.0):
        np.testing.assert_allclose(traj.at(s), x0 + s * dx0, atol=1e-12)


def test_root_vector_grows_by_cosh():
    pair, _, _ = _sl2_data()
    _, e, f = sl2_elements()
    v = 0.6 * (e + f)
    x0 = e - f  # q_beta with beta(v) = 1.2
    traj = oracle.jacobi_integrate(pair.algebra, v, x0, np.zeros(3), 2.0, 1000)
    assert np.linalg.norm(traj.at(2.0) - np.cosh(2.0 * 1.2) * x0) <= 1e-6


@given(seed=seeds)
def test_energy_is_conserved(seed):
    alg = catalog_pair("SL(3,R)/SO0(1,2)").algebra
    system = root_system("SL(3,R)/SO0(1,2)")
    rng = np.random.default_rng(seed)
    v = system.cartan.element(rng.uniform(-0.5, 0.5, system.cartan.dim))
    x0, dx0 = rng.standard_normal((2, alg.dim))
    traj = oracle.jacobi_integrate(alg, v, x0, dx0, 1.0, 1000)
    e0 = oracle.jacobi_energy(alg, v, traj.y[0], traj.dy[0])
    e1 = oracle.jacobi_energy(alg, v, traj.y[-1], traj.dy[-1])
    assert abs(e1 - e0) <= 1e-8 * max(1.0, abs(e0))


def test_jacobi_guards():
    alg = sl2_hyperbolic().algebra
    with pytest.raises(InvalidParams):
        oracle.jacobi_integrate(alg, np.zeros(3), np.zeros(3), np.zeros(3), 1.0, 99)
    traj = oracle.jacobi_integrate(alg, np.zeros(3), np.zeros(3), np.zeros(3), 1.0, 100)
    with pytest.raises(InvalidParams):
        traj.at(0.555)


# finite-difference variations


def test_sl2_variation_estimate():
    pair, w, a = _sl2_data()
    _, e, f = sl2_elements()
    z = oracle.generator_for_tangent(pair, w, e - f)
    ref = -2 * 0.7 / np.tanh(0.8)
    assert abs(oracle.variation_shape_estimate(pair, w, a, z) - ref) <= 1e-4 * abs(ref)


def test_flat_direction_estimate():
    # a in the kernel of one root, so that root line has eigenvalue zero
    pair = catalog_pair("SL(3,R)/SO0(1,2)")
    system = root_system("SL(3,R)/SO0(1,2)")
    r0 = system.roots[0]
    assert np.abs(r0.values.imag).max() == 0
    ta = np.array([-r0.values[1].real, r0.values[0].real])
    tw = generic_coefficients(system, np.random.default_rng(1))
    w, a = system.cartan.element(tw), system.cartan.element(ta)
    spec = orbits.isotropy_shape_spectrum(orbits.OrbitPoint(pair, w), a, system)
    flat = [e for e in spec.entries if abs(e.eigenvalue) <= 1e-12]
    assert flat
    z = oracle.generator_for_tangent(pair, w, flat[0].space[:, 0])
    # nested central differences lose eps / h^2, so a coarser extrapolated step is used
    assert abs(oracle.variation_shape_estimate(pair, w, a, z, h=1e-3, extrapolate=True)) <= 1e-6


def test_halving_h_quarters_the_error():
    pair, w, a = _sl2_data()
    _, e, f = sl2_elements()
    z = oracle.generator_for_tangent(pair, w, e - f)
    ref = -2 * 0.7 / np.tanh(0.8)
    errs = [abs(oracle.variation_shape_estimate_raw(pair, w, a, z, h) - ref) for h in (2e-2, 1e-2, 5e-3)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 3.6 <= coarse / fine <= 4.4


@pytest.mark.parametrize("space", ["SL(3,R)/SO0(1,2)", "SU(1,2)/SO0(1,2)", "Sp(1,1)/SU(1,1).U(1)"])
def test_extrapolated_estimate_matches_closed_form(space):
    pair = catalog_pair(space)
    system = root_system(space)
    rng = np.random.default_rng(4)
    w = system.cartan.element(generic_coefficients(system, rng))
    a = system.cartan.element(rng.uniform(-1.0, 1.0, system.cartan.dim))
    spec = orbits.isotropy_shape_spectrum(orbits.OrbitPoint(pair, w), a, system)
    for e in spec.entries:
        z = oracle.generator_for_tangent(pair, w, e.space[:, 0])
        est = oracle.variation_shape_estimate(pair, w, a, z, h=1e-3, extrapolate=True)
        assert abs(est - e.eigenvalue) <= 1e-6 * max(1.0, abs(e.eigenvalue))


def test_unstable_step_raises():
    pair, w, a = _sl2_data()
    _, e, f = sl2_elements()
    z = oracle.generator_for_tangent(pair, w, e - f)
    with pytest.raises(StepTooLarge):
        oracle.variation_shape_estimate(pair, w, a, z, h=0.3, richardson_tol=1e-6)
    with pytest.raises(InvalidParams):
        oracle.variation_shape_estimate(pair, w, a, z, h=0.0)


def test_generator_must_be_tangent():
    pair, w, _ = _sl2_data()
    _, e, f = sl2_elements()
    with pytest.raises(InvalidParams):
        oracle.generator_for_tangent(pair, w, e + f)


# independence


def test_oracle_uses_only_shared_primitives():
    tree = ast.parse(inspect.getsource(oracle))
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.level:
            imported.add((node.module or "").split(".")[0])
        elif isinstance(node, ast.Import):
            imported.update(alias.name.split(".")[0] for alias in node.names)
    assert imported.isdisjoint({"orbits", "roots", "hermann", "verify", "catalog", "cli"})
