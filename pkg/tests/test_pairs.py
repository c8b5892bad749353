import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_SPACES, algebra, catalog_pair, sl2_elements, sl2_hyperbolic
from symorbits import pairs
from symorbits.errors import NonCommutingInvolutions, UnsupportedSigma

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def _in_span(basis, x, tol=1e-10):
    c, *_ = np.linalg.lstsq(basis, x, rcond=None)
    return np.linalg.norm(basis @ c - x) <= tol * max(1.0, np.linalg.norm(x))


def test_sl2_inner_signature_split():
    pair = sl2_hyperbolic()
    h, e, f = sl2_elements()
    assert pair.dim("h") == 1 and pair.dim("q") == 2
    assert _in_span(pair.h.basis, h)
    assert _in_span(pair.q.basis, e) and _in_span(pair.q.basis, f)


def test_sl2_riemannian_has_no_compact_q():
    pair = pairs.build_pair(algebra("sl_n_R", 2), "neg_transpose")
    assert pair.dim("q&f") == 0
    assert pair.dim("q&p") == pair.dim("q") == 2


@given(seed=seeds)
def test_sigma_twice_is_identity(seed):
    pair = catalog_pair("SL(3,R)/SO0(1,2)")
    x = np.random.default_rng(seed).standard_normal((pair.algebra.dim, 20))
    np.testing.assert_allclose(pair.sigma.matrix @ (pair.sigma.matrix @ x), x, atol=1e-12)


def test_theta_prime_equals_theta():
    pair = pairs.hermann_setup(catalog_pair("SL(3,R)/SO0(1,2)"), "theta")
    for a, b in (("q&q'", "q&p"), ("q&h'", "q&f")):
        pa, pb = pair.projector(a), pair.projector(b)
        np.testing.assert_allclose(pa, pb, atol=1e-12)


def test_sl4_so22_with_sp2_completeness():
    pair = pairs.hermann_setup(catalog_pair("SL(4,R)/SO0(2,2)"), "Sp(2,R)")
    assert pair.dim("l") + pair.dim("m") == 15


def test_sl2_so11_with_theta_l_is_a_line():
    # l = Fix(sigma theta) = (h & f) + (q & p) = span{E + F}
    pair = pairs.hermann_setup(sl2_hyperbolic(), "theta")
    _, e, f = sl2_elements()
    assert pair.dim("l") == 1
    assert _in_span(pair.subspace("l").basis, e + f)


@pytest.mark.parametrize("space", SMALL_SPACES)
def test_pair_invariants(space):
    pair = catalog_pair(space)
    alg = pair.algebra
    s, t = pair.sigma.matrix, pair.theta.matrix
    assert np.abs(s @ t - t @ s).max() <= 1e-12
    for inv in (pair.sigma, pair.theta):
        np.testing.assert_allclose(inv.matrix @ inv.matrix, np.eye(alg.dim), atol=1e-12)
        assert pairs.check_automorphism(inv) <= 1e-10 * max(1.0, np.abs(alg.structure_constants).max())
        k = alg.killing_matrix
        assert np.abs(inv.matrix.T @ k @ inv.matrix - k).max() <= 1e-9 * np.abs(k).max()
    dims = pair.intersections()
    assert sum(dims.values()) == alg.dim
    assert pair.dim("h") + pair.dim("q") == alg.dim
    assert pair.dim("q&f") + pair.dim("q&p") == pair.dim("q")


@pytest.mark.parametrize("space", SMALL_SPACES)
def test_bracket_relations(space):
    pair = catalog_pair(space)
    alg = pair.algebra
    h, q = pair.h.basis, pair.q.basis
    ph, pq = pair.projector("h"), pair.projector("q")
    for x_basis, y_basis, proj_out in ((h, h, pq), (h, q, ph), (q, q, pq)):
        for x in x_basis.T:
            br = alg.ad(x) @ y_basis
            # the bracket has no component outside the expected space
            assert np.abs(proj_out @ br).max(initial=0.0) <= 1e-10 * max(1.0, np.abs(br).max(initial=0.0))


@pytest.mark.parametrize("space", SMALL_SPACES)
def test_killing_definite_on_theta_parts(space):
    pair = catalog_pair(space)
    k = pair.algebra.killing_matrix
    for sel, sign in (("f", -1), ("p", 1)):
        b = pair.subspace(sel).basis
        assert np.linalg.eigvalsh(sign * (b.T @ k @ b)).min() > 0
    for sel in ("q&f", "q&p", "h&f", "h&p"):
        b = pair.subspace(sel).basis
        if b.shape[1]:
            assert abs(np.linalg.det(b.T @ k @ b)) > 0


@pytest.mark.parametrize("space", ["SL(3,R)/SO0(1,2)", "SU(1,2)/SO0(1,2)"])
def test_eightfold_split_with_sigma_prime(space):
    pair = pairs.hermann_setup(catalog_pair(space), "theta")
    dims = pair.intersections()
    assert len(dims) == 8
    assert sum(dims.values()) == pair.algebra.dim


def test_orthonormal_basis_is_killing_diagonal():
    pair = catalog_pair("SU(1,2)/SO0(1,2)")
    u = pair.q.orthonormal
    g = u.T @ pair.algebra.killing_matrix @ u
    np.testing.assert_allclose(np.abs(np.diag(g)), 1.0, atol=1e-10)
    np.testing.assert_allclose(g - np.diag(np.diag(g)), 0.0, atol=1e-10)
    assert pair.q.signature == (pair.dim("q&p"), pair.dim("q&f"))


def test_errors():
    alg = algebra("sl_n_R", 3)
    with pytest.raises(UnsupportedSigma):
        pairs.involution_from_recipe(alg, "inner:nonsense")
    with pytest.raises(UnsupportedSigma):
        # conjugation by a non-involutive diagonal matrix
        pairs.make_involution(alg, "inner", np.diag([1.0, 2.0, 1.0]))
    sigma = pairs.involution_from_recipe(alg, "signature(1,2)")
    # Ad(P) for a transposition P does not commute with Ad(diag(1, -1, -1))
    perm = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    theta = pairs.make_involution(alg, "inner", perm)
    with pytest.raises(NonCommutingInvolutions):
        pairs.build_pair_from_involution(sigma, theta)
