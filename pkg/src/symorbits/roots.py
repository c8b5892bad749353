"""Cartan subspaces of ``q`` and restricted root systems.

Roots are complex linear functionals on the complexified Cartan subspace.
They are recovered from the commuting operators ``ad(a)^2`` and
``ad(a_i) ad(a_j)`` on ``q^c``, which preserve ``q`` because ``a`` sits in
``q``.  Root values on hyperbolic basis vectors come out real and on
elliptic ones purely imaginary.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _linalg
from .errors import ClusteringAmbiguous, MaximalityNotReached, NormalizationSingular
from .pairs import SymmetricPairData


@dataclass(frozen=True, eq=False)
class CartanSubspace:
    """Maximal abelian subspace of a selector, hyperbolic vectors first.

    ``basis`` columns are coordinate vectors; the first ``n_hyperbolic``
    lie in ``p``, the rest in ``f``.
    """

    pair: SymmetricPairData
    basis: np.ndarray
    n_hyperbolic: int
    selector: str = "q"

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def n_elliptic(self) -> int:
        return self.dim - self.n_hyperbolic

    def element(self, t: np.ndarray) -> np.ndarray:
        return self.basis @ np.asarray(t)

    def gram(self) -> np.ndarray:
        k = self.pair.algebra.killing_matrix
        return self.basis.T @ k @ self.basis


@dataclass(frozen=True, eq=False)
class Root:
    """A positive restricted root with its complexified root spaces.

    ``values[i]`` is the value on the i-th Cartan basis vector; ``q_space``
    and ``h_space`` have complex coordinate columns.
    """

    values: np.ndarray
    q_space: np.ndarray
    h_space: np.ndarray
    a_alpha: np.ndarray
    a_alpha_coeffs: np.ndarray

    @property
    def mult(self) -> int:
        return self.q_space.shape[1]

    def __call__(self, t: np.ndarray) -> complex:
        """Value on the Cartan element with basis coefficients ``t``."""
        return complex(np.dot(self.values, t))

    def negative(self) -> Root:
        return Root(-self.values, self.q_space, self.h_space, -self.a_alpha, -self.a_alpha_coeffs)


@dataclass(frozen=True, eq=False)
class RestrictedRootSystem:
    cartan: CartanSubspace
    roots: list[Root]
    zero_q: np.ndarray
    zero_h: np.ndarray
    space: str = "q"
    meta: dict = field(default_factory=dict)

    @property
    def positive(self) -> list[Root]:
        return self.roots

    @property
    def all_roots(self) -> list[Root]:
        return self.roots + [r.negative() for r in self.roots]

    def coefficients(self, x: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        """Cartan-basis coefficients of a coordinate vector lying in the Cartan subspace."""
        from .errors import WNotInCartan

        c, res = _linalg.solve_in_span(self.cartan.basis, np.asarray(x, dtype=float))
        if res > tol and np.linalg.norm(x) > 0:
            raise WNotInCartan(f"vector is not in the Cartan subspace (relative residual {res:.2e})")
        return c

    def completeness(self) -> tuple[int, int]:
        """``(dim q, dim z_q + sum of positive multiplicities)``."""
        q = self.cartan.pair.dim(self.space)
        return q, self.zero_q.shape[1] + sum(r.mult for r in self.roots)


# ---------------------------------------------------------------------------
# Cartan subspaces


def _centralizer(alg, ts: list[np.ndarray], space: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the elements of span(space) commuting with every t."""
    if not ts:
        return space
    if space.shape[1] == 0:
        return space
    images = [alg.ad_apply(t, space) for t in ts]
    # ||ad(t) v|| <= 2 ||T|| ||V|| bounds the operator scale without an SVD
    bnorm = np.sqrt(np.max(np.sum(np.abs(alg.basis) ** 2, axis=(1, 2))))
    atol = 2e-9 * bnorm * max(np.linalg.norm(alg.matrix(t)) for t in ts) * np.sqrt(alg.dim)
    k = _linalg.null_space(np.vstack(images), rtol=1e-9, atol=atol)
    if k.shape[1] == 0:
        return np.zeros((space.shape[0], 0))
    return _linalg.orth(space @ k, atol=1e-9)


def _theta_part(pair: SymmetricPairData, space: np.ndarray, sign: int) -> np.ndarray:
    if space.shape[1] == 0:
        return space
    proj = 0.5 * (np.eye(pair.algebra.dim) + sign * pair.theta.matrix)
    return _linalg.orth(proj @ space, rtol=1e-9, atol=1e-8)


def _span_dim(vectors: list[np.ndarray]) -> int:
    if not vectors:
        return 0
    return _linalg.numerical_rank(np.column_stack(vectors), rtol=1e-9, atol=1e-9)


def _descend(pair: SymmetricPairData, selector: str, rng: np.random.Generator) -> tuple[list[np.ndarray], int]:
    alg = pair.algebra
    cent = _linalg.orth(pair.subspace(selector).basis)
    chosen: list[np.ndarray] = []
    n_hyp = 0
    for sign in (-1, 1):  # hyperbolic (p) elements first, then elliptic (f)
        while True:
            part = _theta_part(pair, cent, sign)
            if part.shape[1] == 0:
                break
            if chosen:
                known = _linalg.orth(np.column_stack(chosen))
                resid = part - known @ (known.T @ part)
                if _linalg.numerical_rank(resid, 1e-8, atol=1e-8) == 0:
                    break
            x = part @ rng.standard_normal(part.shape[1])
            x = x / np.linalg.norm(x)
            chosen.append(x)
            if sign < 0:
                n_hyp += 1
            # the centralizer only shrinks, so restrict the previous one
            cent = _centralizer(alg, [x], cent)
    return chosen, n_hyp


def _canonical_cartan(pair: SymmetricPairData, vecs: list[np.ndarray], n_hyp: int) -> np.ndarray:
    """Orthonormalize each theta-part of the chosen vectors for a tidy basis."""
    if not vecs:
        return np.zeros((pair.algebra.dim, 0))
    hyp = _linalg.orth(np.column_stack(vecs[:n_hyp])) if n_hyp else np.zeros((pair.algebra.dim, 0))
    ell = _linalg.orth(np.column_stack(vecs[n_hyp:])) if len(vecs) > n_hyp else np.zeros((pair.algebra.dim, 0))
    return np.hstack([hyp, ell])


def maximal_abelian(pair: SymmetricPairData, within: str = "q", seed: int = 0, retries: int = 5) -> CartanSubspace:
    """Maximal abelian subspace of the selected subspace by centralizer descent.

    Random elements are drawn first from the hyperbolic part of the running
    centralizer, then from its elliptic part.  Commuting elements of ``p``
    and ``f`` are normal matrices in this realization, so the span consists
    of semisimple elements.
    """
    alg = pair.algebra
    for attempt in range(retries):
        rng = np.random.default_rng([seed, attempt])
        vecs, n_hyp = _descend(pair, within, rng)
        basis = _canonical_cartan(pair, vecs, n_hyp)
        space = _linalg.orth(pair.subspace(within).basis)
        cent = _centralizer(alg, list(basis.T), space)
        if cent.shape[1] != basis.shape[1]:
            continue
        if basis.shape[1]:
            comm = max(np.abs(alg.bracket(x, y)).max() for x in basis.T for y in basis.T)
            if comm > 1e-9:
                continue
            generic = basis @ rng.standard_normal(basis.shape[1])
            m = alg.matrix(generic)
            if np.linalg.norm(m @ np.conj(m.T) - np.conj(m.T) @ m) > 1e-8 * max(1.0, np.linalg.norm(m)) ** 2:
                continue
        return CartanSubspace(pair, basis, n_hyp, within)
    raise MaximalityNotReached(f"no maximal abelian subspace of {within} after {retries} attempts")


def rank(pair: SymmetricPairData, selector: str = "q", seeds: int = 5) -> int:
    """Dimension of a maximal abelian subspace, maximized over seeds."""
    if pair.dim(selector) == 0:
        return 0
    dims = [maximal_abelian(pair, selector, seed=s).dim for s in range(seeds)]
    if len(set(dims)) > 1:
        warnings.warn(f"rank of {selector} differs across seeds: {dims}", RuntimeWarning, stacklevel=2)
    return max(dims)


# ---------------------------------------------------------------------------
# root decomposition


def _compress(op: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, float]:
    """Matrix of ``op`` on the invariant subspace span(u) and the invariance residual."""
    img = op @ u
    c, *_ = np.linalg.lstsq(u, img, rcond=None)
    res = np.linalg.norm(u @ c - img) / max(np.linalg.norm(img), np.linalg.norm(op) * 1e-12, 1e-300)
    return c, float(res)


def _split(ops: list[np.ndarray], u: np.ndarray, scale: float, rtol: float, depth: int = 0) -> list[np.ndarray]:
    """Refine span(u) into joint eigenspaces of the commuting ``ops``."""
    for op in ops:
        c, _ = _compress(op, u)
        k = c.shape[0]
        mean = np.trace(c) / k
        if np.linalg.norm(c - mean * np.eye(k)) <= rtol * scale * max(1, k):
            continue
        if depth > 6:
            raise ClusteringAmbiguous("joint eigenspace refinement did not converge")
        w = np.linalg.eigvals(c)
        groups = _linalg.cluster(w, rtol=rtol, atol=rtol * scale)
        if len(groups) == 1:
            raise ClusteringAmbiguous("operator is not scalar on a single eigenvalue cluster")
        out = []
        for g in groups:
            sub = u @ _linalg.eigenspace(c, w[g].mean(), len(g))
            out.extend(_split(ops, _linalg.orth(sub, rtol=1e-10), scale, rtol, depth + 1))
        return out
    return [u]


def _positive(values: np.ndarray) -> bool:
    key = np.concatenate([values.real, values.imag])
    for x in key:
        if abs(x) > 1e-9:
            return x > 0
    return True


def _root_operators(pair: SymmetricPairData, basis: np.ndarray, space: np.ndarray):
    alg = pair.algebra
    ads = [alg.ad(a) for a in basis.T]
    proj = np.conj(space.T)
    sq = [proj @ (ad @ ad) @ space for ad in ads]
    mixed = {}
    for i in range(len(ads)):
        for j in range(i + 1, len(ads)):
            mixed[(i, j)] = proj @ (ads[i] @ ads[j]) @ space
    return ads, sq, mixed


def restricted_roots(
    pair: SymmetricPairData,
    cartan: CartanSubspace,
    space: str = "q",
    rtol: float = 1e-8,
    seed: int = 0,
) -> RestrictedRootSystem:
    """Root system of ``cartan`` acting on ``space`` (``q`` or a selector like ``q`` of a Hermann pair).

    A generic Cartan element separates the roots; the clusters of
    ``ad(a_gen)^2`` are then refined by every ``ad(a_i)^2`` and
    ``ad(a_i) ad(a_j)`` and validated by their residuals.
    """
    alg = pair.algebra
    r = cartan.dim
    qbasis = _linalg.orth(pair.subspace(space).basis).astype(complex)
    if r == 0:
        return RestrictedRootSystem(cartan, [], qbasis, _linalg.orth(pair.subspace("h").basis), space)
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.5, 1.5, r) * rng.choice([-1.0, 1.0], r)
    a_gen = cartan.basis @ t
    ads, sq, mixed = _root_operators(pair, cartan.basis, qbasis)
    ad_gen = alg.ad(a_gen)
    gen = np.conj(qbasis.T) @ (ad_gen @ ad_gen) @ qbasis
    scale = max(np.abs(np.linalg.eigvals(gen)).max(initial=0.0), max(np.linalg.norm(s, 2) for s in sq), 1e-12)
    w = np.linalg.eigvals(gen)
    groups = _linalg.cluster(w, rtol=rtol, atol=rtol * scale)
    spaces = []
    for g in groups:
        u = _linalg.eigenspace(gen, w[g].mean(), len(g))
        spaces.extend(_split([gen] + sq + list(mixed.values()), u, scale, rtol))
    gram_a = cartan.gram()
    roots: list[Root] = []
    zero_q = []
    for u in spaces:
        k = u.shape[1]
        lam = np.array([np.trace(_compress(s, u)[0]) / k for s in sq])
        if np.abs(lam).max() <= 1e-7 * scale:
            zero_q.append(qbasis @ u)
            continue
        for s, val in zip(sq, lam):
            if np.linalg.norm(s @ u - val * u) > 1e-7 * scale:
                raise ClusteringAmbiguous("root space residual too large")
        i0 = int(np.argmax(np.abs(lam)))
        vals = np.zeros(r, dtype=complex)
        vals[i0] = np.sqrt(lam[i0] + 0j)
        for j in range(r):
            if j == i0:
                continue
            key = (min(i0, j), max(i0, j))
            prod = np.trace(_compress(mixed[key], u)[0]) / k
            vals[j] = prod / vals[i0]
        vals = _snap_split(vals, cartan.n_hyperbolic)
        if not _positive(vals):
            vals = -vals
        qs = qbasis @ u
        alpha_gen = complex(vals @ t)
        hs = (ad_gen @ qs) / alpha_gen
        coeffs = np.linalg.solve(gram_a, vals)
        roots.append(Root(vals, qs, hs, cartan.basis @ coeffs, coeffs))
    roots.sort(key=lambda rt: tuple(np.concatenate([-rt.values.real, -rt.values.imag]).round(9)))
    zq = np.hstack(zero_q) if zero_q else np.zeros((alg.dim, 0), dtype=complex)
    hb = _linalg.orth(pair.subspace("h").basis)
    zh_blocks = [ad @ hb for ad in ads]
    kz = _linalg.null_space(np.vstack(zh_blocks), rtol=1e-9, atol=1e-9 * max(np.linalg.norm(ad, 2) for ad in ads))
    zh = _linalg.orth(hb @ kz) if kz.shape[1] else np.zeros((alg.dim, 0))
    return RestrictedRootSystem(cartan, roots, zq, zh, space, {"generic": t})


def _snap_split(vals: np.ndarray, n_hyp: int) -> np.ndarray:
    """Drop round-off imaginary parts on hyperbolic and real parts on elliptic values."""
    out = vals.copy()
    out[:n_hyp] = out[:n_hyp].real
    out[n_hyp:] = 1j * out[n_hyp:].imag
    return out


def _symmetric_orthogonalize(vecs: np.ndarray, kmat: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Basis of span(vecs) diagonalizing the complex bilinear form ``v^T K w``."""
    basis = [vecs[:, i] for i in range(vecs.shape[1])]
    out = []
    scale = max(np.abs(vecs.T @ kmat @ vecs).max(initial=0.0), 1e-300)
    while basis:
        norms = [abs(b @ kmat @ b) for b in basis]
        i = int(np.argmax(norms))
        if norms[i] <= tol * scale:
            # isotropic vectors only: combine two of them
            found = False
            for a in range(len(basis)):
                for b in range(a + 1, len(basis)):
                    if abs(basis[a] @ kmat @ basis[b]) > tol * scale:
                        basis[a] = basis[a] + basis[b]
                        found = True
                        break
                if found:
                    break
            if not found:
                raise NormalizationSingular("Killing form is degenerate on the root space")
            continue
        e = basis.pop(i)
        ne = e @ kmat @ e
        basis = [b - (e @ kmat @ b) / ne * e for b in basis]
        out.append(e)
    return np.column_stack(out)


def root_vectors(system: RestrictedRootSystem, root: Root) -> list[tuple[np.ndarray, np.ndarray]]:
    """Normalized ``(Z, Y)`` pairs spanning ``h_alpha^c x q_alpha^c``.

    ``ad(a) Z = alpha(a) Y``, ``ad(a) Y = alpha(a) Z`` and
    ``[Z, Y] = alpha(a_alpha) a_alpha``.
    """
    alg = system.cartan.pair.algebra
    kmat = alg.killing_matrix
    t = system.meta.get("generic")
    a_gen = system.cartan.basis @ t
    alpha_gen = root(t)
    if abs(alpha_gen) < 1e-12:
        raise NormalizationSingular("root vanishes on the generic element")
    ad_gen = alg.ad(a_gen)
    ys = _symmetric_orthogonalize(root.q_space, kmat)
    alpha_aa = complex(root.values @ root.a_alpha_coeffs)
    out = []
    for y in ys.T:
        x = ad_gen @ y / alpha_gen
        e = 0.5 * (y + x)
        diff = y  # e - sigma(e) equals y
        norm = diff @ kmat @ diff
        if abs(norm) < 1e-12 * max(1.0, np.abs(kmat).max()):
            raise NormalizationSingular("B(E - sigma E, E - sigma E) vanishes")
        c = np.sqrt(alpha_aa / norm + 0j)
        z_vec = c * (e + _apply_sigma(system, e))
        y_vec = c * (e - _apply_sigma(system, e))
        out.append((z_vec, y_vec))
    return out


def _apply_sigma(system: RestrictedRootSystem, x: np.ndarray) -> np.ndarray:
    return system.cartan.pair.sigma.matrix @ x
