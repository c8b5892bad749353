import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_ALGEBRAS, algebra, sl2_elements
from symorbits import liealg
from symorbits.errors import AlgebraMismatch, InvalidParams, UnsupportedFamily
from symorbits.liealg import AlgebraElement, ad_operator, bracket, construct_algebra, is_semisimple_element

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def test_sl2_dim():
    assert construct_algebra("sl_n_R", (2,)).dim == 3


def test_sp2_dim():
    assert construct_algebra("sp_n_R", (2,)).dim == 10


def test_sl2_killing_of_h():
    alg = algebra("sl_n_R", 2)
    h, _, _ = sl2_elements()
    ad_h = alg.ad(h)
    # trace(ad H ad H), computed independently of killing_matrix
    assert np.trace(ad_h @ ad_h) == pytest.approx(8.0, abs=1e-12)
    assert alg.killing(h, h) == pytest.approx(8.0, abs=1e-12)


def test_sl2_brackets():
    alg = algebra("sl_n_R", 2)
    h, e, f = sl2_elements()
    H, E, F = (AlgebraElement(alg, x) for x in (h, e, f))
    np.testing.assert_allclose(bracket(H, E).coords, 2 * e, atol=1e-12)
    np.testing.assert_allclose(bracket(E, F).coords, h, atol=1e-12)
    np.testing.assert_allclose(bracket(E, E).coords, 0.0, atol=1e-12)


def test_ad_examples():
    alg = algebra("sl_n_R", 2)
    h, _, _ = sl2_elements()
    np.testing.assert_array_equal(alg.ad(np.zeros(3)), np.zeros((3, 3)))
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(alg.ad(h)).real), [-2.0, 0.0, 2.0], atol=1e-12)


def test_semisimple_examples():
    alg = algebra("sl_n_R", 2)
    h, e, _ = sl2_elements()
    assert is_semisimple_element(AlgebraElement(alg, h))
    assert not is_semisimple_element(AlgebraElement(alg, e))
    assert is_semisimple_element(AlgebraElement(alg, np.zeros(3)))
    with pytest.raises(InvalidParams):
        is_semisimple_element(AlgebraElement(alg, h), tol=0.0)


def test_column_of_ad_is_bracket_with_basis():
    alg = algebra("su_p_q", 1, 2)
    x = alg.random_element(np.random.default_rng(1))
    ad = ad_operator(AlgebraElement(alg, x))
    for j in range(alg.dim):
        np.testing.assert_allclose(ad[:, j], alg.bracket(x, np.eye(alg.dim)[j]), atol=1e-12)


@pytest.mark.parametrize("family, params", SMALL_ALGEBRAS)
def test_dimension_formula(family, params):
    alg = algebra(family, *params)
    assert alg.dim == liealg.expected_dim(family, params)


@pytest.mark.parametrize(
    "family, params, dim",
    [
        ("sl_n_R", (4,), 15),
        ("so_p_q", (2, 3), 10),
        ("sp_n_R", (3,), 21),
        ("su_p_q", (2, 2), 15),
        ("sl_n_C_as_real", (3,), 16),
        ("so_n_C_as_real", (4,), 12),
        ("sp_n_C_as_real", (2,), 20),
    ],
)
def test_dimension_values(family, params, dim):
    assert construct_algebra(family, params).dim == dim


def test_structure_constants_antisymmetric(small_algebra):
    c = small_algebra.structure_constants
    np.testing.assert_allclose(c, -np.swapaxes(c, 0, 1), atol=1e-12)


def test_jacobi_identity(small_algebra):
    c = small_algebra.structure_constants
    # sum_m c[i,j,m] c[m,k,l] + cyclic
    t = np.einsum("ijm,mkl->ijkl", c, c)
    total = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
    assert np.abs(total).max() <= 1e-10


def test_killing_symmetric_nondegenerate(small_algebra):
    k = small_algebra.killing_matrix
    np.testing.assert_allclose(k, k.T, atol=1e-10)
    s = np.linalg.svd(k / np.abs(k).max(), compute_uv=False)
    assert s.min() > 1e-6


def test_killing_matches_trace_form(small_algebra):
    rng = np.random.default_rng(7)
    k = small_algebra.killing_matrix
    c = small_algebra.structure_constants
    ads = np.transpose(c, (0, 2, 1))  # ads[i] = ad(b_i)
    for _ in range(100):
        x, y = rng.standard_normal((2, small_algebra.dim))
        ax = np.tensordot(x, ads, axes=1)
        ay = np.tensordot(y, ads, axes=1)
        ref = np.trace(ax @ ay)
        assert abs(x @ k @ y - ref) <= 1e-9 * max(1.0, abs(ref))


def test_killing_invariance(small_algebra):
    c = small_algebra.structure_constants
    k = small_algebra.killing_matrix
    # B([b_i,b_j],b_l) + B(b_j,[b_i,b_l]) = 0
    lhs = np.einsum("ijm,ml->ijl", c, k) + np.einsum("ilm,jm->ijl", c, k)
    assert np.abs(lhs).max() <= 1e-9 * max(1.0, np.abs(k).max())


@given(seed=seeds)
def test_ad_is_killing_skew(seed):
    rng = np.random.default_rng(seed)
    for family, params in SMALL_ALGEBRAS:
        alg = algebra(family, *params)
        k = alg.killing_matrix
        ad = alg.ad(alg.random_element(rng))
        assert np.abs(k @ ad + ad.T @ k).max() <= 1e-10 * max(1.0, np.abs(k).max() * np.abs(ad).max())


@given(seed=seeds)
def test_bracket_matches_structure_constants(seed):
    rng = np.random.default_rng(seed)
    alg = algebra("so_p_q", 1, 3)
    x, y = rng.standard_normal((2, alg.dim))
    via_c = np.einsum("i,j,ijk->k", x, y, alg.structure_constants)
    np.testing.assert_allclose(alg.bracket(x, y), via_c, atol=1e-12 * max(1.0, np.abs(via_c).max()))


@given(seed=seeds)
def test_generic_element_of_compact_part_is_semisimple(seed):
    alg = algebra("su_p_q", 1, 2)
    theta = alg.cartan_involution_matrix()
    x = alg.random_element(np.random.default_rng(seed))
    compact = 0.5 * (x + theta @ x)
    assert is_semisimple_element(compact, algebra=alg)


def test_errors():
    with pytest.raises(UnsupportedFamily):
        construct_algebra("e6", (1,))
    with pytest.raises(InvalidParams):
        construct_algebra("su_p_q", (0, 1))
    a, b = algebra("sl_n_R", 2), algebra("sl_n_R", 3)
    with pytest.raises(AlgebraMismatch):
        bracket(AlgebraElement(a, np.zeros(3)), AlgebraElement(b, np.zeros(8)))
    with pytest.raises(InvalidParams):
        AlgebraElement(a, np.zeros(4))


@pytest.mark.parametrize(
    "text, family, params",
    [
        ("sl(3,R)", "sl_n_R", (3,)),
        (" SU(1, 2) ", "su_p_q", (1, 2)),
        ("sp(2,C)", "sp_n_C_as_real", (2,)),
        ("so*(6)", "so_star_2n", (3,)),
    ],
)
def test_parse_algebra(text, family, params):
    assert liealg.parse_algebra(text) == (family, params)


def test_complex_structure_squares_to_minus_one():
    alg = algebra("sl_n_C_as_real", 2)
    j = alg.complex_structure
    np.testing.assert_allclose(j @ j, -np.eye(alg.dim), atol=1e-12)
    assert algebra("sl_n_R", 2).complex_structure is None
