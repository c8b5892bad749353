import functools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import catalog_pair
from symorbits import catalog, hermann, orbits, pairs
from symorbits.errors import InvalidParams, SingularDirection, UnsupportedFamily
from symorbits.verify import HERMANN_CONFIGS, PairConfig, hermann_check

seeds = st.integers(min_value=0, max_value=2**31 - 1)


@functools.lru_cache(maxsize=None)
def config(space: str, sigma_prime: str) -> hermann.HermannConfiguration:
    return hermann.hermann_configuration(PairConfig(space, sigma_prime).build(), seed=0)


@pytest.mark.parametrize("cfg", HERMANN_CONFIGS, ids=lambda c: c.name)
def test_split_completeness(cfg):
    hc = config(cfg.space, cfg.sigma_prime)
    assert hc.split_residual() == 0
    pair = hc.pair
    q_prime = pair.projector("q'")
    np.testing.assert_allclose(q_prime @ hc.b.basis, hc.b.basis, atol=1e-10)


@pytest.mark.parametrize("space", ["SL(3,R)/SO0(1,2)", "SU(1,2)/SO0(1,2)", "Sp(1,1)/SU(1,1).U(1)"])
def test_sigma_prime_equal_sigma_is_isotropy(space):
    pair = pairs.hermann_setup(catalog_pair(space), "sigma")
    hc = hermann.hermann_configuration(pair, seed=0)
    rng = np.random.default_rng(0)
    for _ in range(5):
        w, v = hc.random_generic(rng), hc.random_generic(rng)
        spec = hermann.hermann_orbit_spectrum(hc, w, v)
        iso = orbits.isotropy_shape_spectrum(orbits.OrbitPoint(pair, w), v, hc.system)
        assert spec.by_part("h_prime_part") == []
        assert [(e.eigenvalue, e.mult) for e in spec.by_part("q_part")] == [(e.eigenvalue, e.mult) for e in iso.entries]


@given(seed=seeds)
def test_branch_product_is_root_square(seed):
    # (sqrt(-1) b tan(sqrt(-1) c)) * (-sqrt(-1) b / tan(sqrt(-1) c)) = b^2
    hc = config("SL(4,R)/SO0(2,2)", "Sp(2,R)")
    rng = np.random.default_rng(seed)
    w, v = hc.random_generic(rng), hc.random_generic(rng)
    spec = hermann.hermann_orbit_spectrum(hc, w, v)
    tv = hc.system.coefficients(v)
    by_root = {}
    for e in spec.entries:
        if e.root is not None:
            by_root.setdefault(id(e.root), []).append(e)
    shared = [es for es in by_root.values() if len(es) == 2]
    assert shared
    for a, b in shared:
        beta_v = a.root(tv)
        assert a.eigenvalue * b.eigenvalue == pytest.approx(beta_v**2, rel=1e-10)


@given(seed=seeds)
def test_k_action_eigenvalues_are_real(seed):
    hc = config("SL(3,R)/SO0(1,2)", "theta")
    rng = np.random.default_rng(seed)
    spec = hermann.hermann_orbit_spectrum(hc, hc.random_generic(rng), hc.random_generic(rng))
    for e in spec.entries:
        if e.root is not None:
            assert np.abs(e.root.values.imag).max() <= 1e-12
        assert abs(e.eigenvalue.imag) <= 1e-12 * max(1.0, abs(e.eigenvalue))


def test_sl4_so22_with_sp2_is_diagonalizable():
    cfg = PairConfig("SL(4,R)/SO0(2,2)", "Sp(2,R)")
    hc = config(cfg.space, cfg.sigma_prime)
    rng = np.random.default_rng(9)
    for _ in range(50):
        res = hermann_check(hc, hc.random_generic(rng), hc.random_generic(rng))
        assert np.isfinite(res["eigen_residual"])
        assert res["eigen_residual"] <= 1e-8 and res["span_residual"] <= 1e-8


def test_singular_points_raise():
    hc = config("SL(3,R)/SO0(1,2)", "theta")
    with pytest.raises(SingularDirection):
        hermann.hermann_orbit_spectrum(hc, np.zeros(hc.pair.algebra.dim), hc.b.element(np.ones(hc.b.dim)))


def test_configuration_needs_sigma_prime():
    with pytest.raises(InvalidParams):
        hermann.hermann_configuration(catalog_pair("SL(3,R)/SO0(1,2)"))


@pytest.mark.parametrize(
    "space, expected",
    [
        ("SL(3,R)/SO0(1,2)", (2, 1)),
        ("SL(4,R)/Sp(2,R)", (1, 1)),
        ("Sp(2,C)/Sp(1,1)", (2, 1)),
    ],
)
def test_cohomogeneity_examples(space, expected):
    row = hermann.instance_row(catalog.find_instance(space))
    assert (row.cohom_K, row.cohom_L) == expected


def test_table1_su_pq_so_pq_rows():
    rows = {r.space: r for r in hermann.generate_table(1, 4)}
    found = 0
    for p in range(1, 5):
        for q in range(p, 5):
            row = rows[f"SU({p},{q})/SO0({p},{q})"]
            assert row.cohom_K == p
            found += 1
    assert found == 10


def test_table3_sp_pq_blocks():
    rows = hermann.generate_table(3, 3)
    insts = [i for i in catalog.instances(3, 3) if i.row.key == "sp_pq/sp_sp"]
    by_space = {r.space: r for r in rows}
    assert insts
    for inst in insts:
        p, q, i, j = inst.params
        row = by_space[inst.space]
        assert row.cohom_K == min(p - i, j) + min(i, q - j)
        assert row.cohom_L == min(i, p - i) + min(j, q - j)


def test_empty_parameter_range():
    assert hermann.generate_table(1, 0) == []


def test_table_guards():
    with pytest.raises(UnsupportedFamily):
        hermann.generate_table(4, 3)
    with pytest.raises(InvalidParams):
        hermann.generate_table(1, 9)


def test_csv_round_trip():
    rows = hermann.generate_table(2, 2)
    text = hermann.rows_to_csv(rows)
    assert text.splitlines()[0] == "space,K,L,cohom_K,cohom_L"
    assert hermann.read_csv(text) == rows


def test_avoidance_margin_is_distance_to_plus_minus_root():
    hc = config("SU(1,2)/SO0(1,2)", "theta")
    rng = np.random.default_rng(3)
    w, v = hc.random_generic(rng), hc.random_generic(rng)
    spec = hermann.hermann_orbit_spectrum(hc, w, v)
    tv = hc.system.coefficients(v)
    ref = min(min(abs(e.eigenvalue - e.root(tv)), abs(e.eigenvalue + e.root(tv))) for e in spec.entries if e.root is not None)
    assert hermann.avoidance_margin(hc, spec, v) == ref
