"""Brute-force verifiers that share only the ``liealg`` primitives.

Shape operators are recomputed from the Cartan embedding
``gH -> g sigma(g)^{-1}`` of ``G/H`` into ``G``.  The embedding is
totally geodesic and homothetic, so it preserves shape operators.  The
orbit of ``H'`` through ``exp(w)H`` becomes the twisted conjugation orbit
``{h exp(2w) sigma(h)^{-1}}``, and every computation is carried out in the
bi-invariant geometry of ``G``.  Vectors at ``exp(2w)`` are left
trivialized and moved back to the identity by ``Ad(exp(w))``, which is
the frame in which the closed forms are stated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg as sla

from . import _linalg
from .errors import DimensionGuard, InvalidParams, NewtonDivergence, StepTooLarge
from .liealg import MatrixLieAlgebra
from .pairs import SymmetricPairData

NEWTON_STEP = 1e-6
MAX_DEFLATION_ROUNDS = 4
SV_ZERO = 1e-8


# ---------------------------------------------------------------------------
# roots by independent eigendecompositions


@dataclass(frozen=True, eq=False)
class BruteRoot:
    squares: np.ndarray
    values: np.ndarray
    mult: int
    space: np.ndarray


@dataclass(frozen=True, eq=False)
class BruteRootData:
    roots: list[BruteRoot]
    zero_space: np.ndarray

    @property
    def total(self) -> int:
        return self.zero_space.shape[1] + sum(r.mult for r in self.roots)


def _eigenspaces(op: np.ndarray, rtol: float) -> list[tuple[complex, np.ndarray]]:
    lam = np.linalg.eigvals(op)
    scale = max(np.abs(lam).max(initial=0.0), 1.0)
    groups = _linalg.cluster(lam, rtol=rtol, atol=rtol * scale)
    out = []
    for g in groups:
        mu = complex(lam[g].mean())
        out.append((mu, _linalg.eigenspace(op, mu, len(g))))
    return out


def brute_force_roots(pair: SymmetricPairData, cartan, max_dim: int = 40, rtol: float = 1e-7) -> BruteRootData:
    """Joint eigenspaces of every ``ad(a_i)^2`` and ``ad(a_i) ad(a_j)`` on ``q^c``.

    Each operator is eigendecomposed on its own and the eigenspaces are
    intersected one operator at a time.  Root values follow from the squares
    and the mixed products; the sign is fixed by making the first nonzero
    real-then-imaginary coordinate positive.
    """
    alg = pair.algebra
    if alg.dim > max_dim:
        raise DimensionGuard(f"algebra dimension {alg.dim} exceeds {max_dim}")
    qb = _linalg.orth(pair.subspace(cartan.selector if cartan.selector == "q" else "q").basis)
    basis = np.asarray(cartan.basis)
    ads = [alg.ad(a) for a in basis.T]
    ops = [qb.T @ (ad @ ad) @ qb for ad in ads]
    # mixed products separate roots that share all their squares, such as a complex pair
    ops += [qb.T @ (ads[i] @ ads[j]) @ qb for i in range(len(ads)) for j in range(i + 1, len(ads))]
    # start with the whole space and refine by each operator in turn
    pieces: list[tuple[tuple[complex, ...], np.ndarray]] = [((), np.eye(qb.shape[1], dtype=complex))]
    for op in ops:
        spaces = _eigenspaces(op, rtol)
        refined = []
        for key, u in pieces:
            for lam, s in spaces:
                inter = _linalg.intersect(u, s)
                if inter.shape[1]:
                    refined.append((key + (lam,), inter))
        pieces = refined
    roots = []
    zero = []
    scale = max((max(abs(x) for x in key) for key, _ in pieces if key), default=1.0)
    n_sq = len(ads)
    for key, u in pieces:
        sq = np.array(key[:n_sq], dtype=complex)
        space = qb @ u
        if not key or np.abs(sq).max() <= 1e-7 * max(scale, 1.0):
            zero.append(space)
            continue
        k = u.shape[1]
        i0 = int(np.argmax(np.abs(sq)))
        vals = np.zeros(len(sq), dtype=complex)
        vals[i0] = np.sqrt(sq[i0])
        for j in range(len(sq)):
            if j != i0:
                prod = qb.T @ (ads[i0] @ ads[j]) @ qb
                vals[j] = np.trace(np.linalg.lstsq(u, prod @ u, rcond=None)[0]) / k / vals[i0]
        key_order = np.concatenate([vals.real, vals.imag])
        first = key_order[np.abs(key_order) > 1e-9]
        if first.size and first[0] < 0:
            vals = -vals
        roots.append(BruteRoot(sq, vals, k, space))
    zs = np.hstack(zero) if zero else np.zeros((alg.dim, 0), dtype=complex)
    roots.sort(key=lambda r: tuple(np.concatenate([-r.values.real, -r.values.imag]).round(9)))
    return BruteRootData(roots, zs)


# ---------------------------------------------------------------------------
# Cartan embedding


class _Doubled:
    """Faithful matrix model of ``g^c``: ``X -> (X, conj X)`` extended complex-linearly."""

    def __init__(self, algebra: MatrixLieAlgebra):
        self.alg = algebra
        self.b1 = algebra.basis.astype(complex)
        self.b2 = np.conj(self.b1)

    def mats(self, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        c = np.asarray(c, dtype=complex)
        return np.tensordot(c, self.b1, axes=(0, 0)), np.tensordot(c, self.b2, axes=(0, 0))

    def coords(self, m: tuple[np.ndarray, np.ndarray]) -> np.ndarray:
        m1, m2 = m
        x = 0.5 * (m1 + np.conj(m2))
        y = -0.5j * (m1 - np.conj(m2))
        return self.alg.coords(x) + 1j * self.alg.coords(y)

    @staticmethod
    def exp(m):
        return sla.expm(m[0]), sla.expm(m[1])

    @staticmethod
    def mul(*gs):
        out1, out2 = gs[0]
        for g in gs[1:]:
            out1, out2 = out1 @ g[0], out2 @ g[1]
        return out1, out2

    @staticmethod
    def inv(g):
        return np.linalg.inv(g[0]), np.linalg.inv(g[1])

    @staticmethod
    def lin(a, x, b=0.0, y=None):
        if y is None:
            return a * x[0], a * x[1]
        return a * x[0] + b * y[0], a * x[1] + b * y[1]

    @staticmethod
    def bracket(x, y):
        return x[0] @ y[0] - y[0] @ x[0], x[1] @ y[1] - y[1] @ x[1]

    @staticmethod
    def adjoint(g, x):
        gi = _Doubled.inv(g)
        return _Doubled.mul(g, x, gi)


def _acting_basis(pair: SymmetricPairData, acting: str) -> np.ndarray:
    return _linalg.orth(pair.subspace(acting).basis)


def _orbit_tangent(pair: SymmetricPairData, w: np.ndarray, acting: str):
    """Generators ``Z`` and the moved tangent vectors ``Ad(e^{-w}) Z - Ad(e^w) sigma Z``."""
    alg = pair.algebra
    rep = _Doubled(alg)
    hb = _acting_basis(pair, acting)
    g = rep.exp(rep.mats(w))
    gi = rep.inv(g)
    sig = pair.sigma.matrix
    cols = []
    for z in hb.T:
        zm = rep.mats(z)
        szm = rep.mats(sig @ z)
        x = rep.lin(1.0, rep.mul(gi, zm, g), -1.0, rep.mul(g, szm, gi))
        cols.append(rep.coords(x).real)
    m = np.column_stack(cols) if cols else np.zeros((alg.dim, 0))
    if m.shape[1] == 0:
        return hb[:, :0], m
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    keep = s > 1e-9 * max(s[0], 1e-300)
    gens = hb @ vh[keep].T
    return gens, m @ vh[keep].T


@dataclass(frozen=True, eq=False)
class ShapeData:
    """Tangent basis (columns, moved to the identity) and the shape matrix ``A`` in that basis."""

    tangent: np.ndarray
    generators: np.ndarray
    matrix: np.ndarray
    second_form: np.ndarray
    gram: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        if self.matrix.size == 0:
            return np.zeros(0, dtype=complex)
        return sla.eigvals(self.second_form, self.gram)


def algebraic_shape_operator(pair: SymmetricPairData, w: np.ndarray, a: np.ndarray, acting: str = "h") -> ShapeData:
    """Shape operator of the ``exp(acting)``-orbit through ``exp(w)H`` in the normal direction ``a``.

    Along ``c(t) = exp(tZ) P exp(-t sigma Z)`` with ``P = exp(2w)`` the left
    trivialized acceleration at ``t = 0`` is ``-[Ad(P^{-1}) Z, sigma Z]``.
    Moved by ``Ad(e^w)`` and polarized this is the second fundamental form;
    pairing with the moved normal ``2a`` gives ``S`` and ``det(S - lambda G) = 0``
    gives the eigenvalues.
    """
    alg = pair.algebra
    rep = _Doubled(alg)
    w = np.asarray(w, dtype=float)
    gens, tangent = _orbit_tangent(pair, w, acting)
    k = gens.shape[1]
    g = rep.exp(rep.mats(w))
    gi = rep.inv(g)
    left = [rep.mul(gi, rep.mats(z), g) for z in gens.T]
    right = [rep.mul(g, rep.mats(pair.sigma.matrix @ z), gi) for z in gens.T]
    kill = alg.killing_matrix
    nu = 2.0 * np.asarray(a, dtype=float)
    s = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            acc = rep.lin(-0.5, rep.bracket(left[i], right[j]), -0.5, rep.bracket(left[j], right[i]))
            s[i, j] = s[j, i] = float((rep.coords(acc) @ kill @ nu).real)
    gram = tangent.T @ kill @ tangent
    mat = np.linalg.solve(gram, s) if k else np.zeros((0, 0))
    return ShapeData(tangent, gens, mat, s, gram)


def determinant_shape_eigenvalues(pair: SymmetricPairData, w: np.ndarray, a: np.ndarray, acting: str = "h") -> np.ndarray:
    """Roots of ``det(S - lambda G)`` for the orbit shape operator."""
    return algebraic_shape_operator(pair, w, a, acting).eigenvalues()


def _variation_once(pair: SymmetricPairData, w, a, z, h, acting, tangent):
    alg = pair.algebra
    rep = _Doubled(alg)
    zm = rep.mats(z)
    szm = rep.mats(pair.sigma.matrix @ np.asarray(z, dtype=complex))

    def f(t, s):
        p = rep.exp(rep.mats(2.0 * (np.asarray(w, dtype=float) + s * np.asarray(a, dtype=float))))
        return rep.mul(rep.exp(rep.lin(t, zm)), p, rep.exp(rep.lin(-t, szm)))

    def u_at(s):
        base = rep.inv(f(0.0, s))
        d = rep.lin(1 / (2 * h), f(h, s), -1 / (2 * h), f(-h, s))
        return rep.mul(base, d)

    f0i = rep.inv(f(0.0, 0.0))
    v = rep.mul(f0i, rep.lin(1 / (2 * h), f(0.0, h), -1 / (2 * h), f(0.0, -h)))
    u = u_at(0.0)
    du = rep.lin(1 / (2 * h), u_at(h), -1 / (2 * h), u_at(-h))
    jac = rep.lin(1.0, du, 0.5, rep.bracket(v, u))
    g = rep.exp(rep.mats(w))
    x = rep.coords(rep.adjoint(g, u))
    dj = rep.coords(rep.adjoint(g, jac))
    kill = alg.killing_matrix
    t = tangent.astype(complex)
    gram = t.T @ kill @ t
    proj_dj = t @ np.linalg.solve(gram, t.T @ kill @ dj)
    ax = -proj_dj
    return complex(np.vdot(x, ax) / np.vdot(x, x))


def variation_shape_estimate(
    pair: SymmetricPairData,
    w: np.ndarray,
    a: np.ndarray,
    z: np.ndarray,
    h: float = 1e-5,
    acting: str = "h",
    richardson_tol: float = 1e-3,
    extrapolate: bool = False,
) -> complex:
    """Finite-difference estimate of the shape eigenvalue on the tangent line generated by ``z``.

    ``z`` is a (complex) coordinate vector of the acting algebra whose
    tangent vector lies in one eigenline.  The variation
    ``F(t, s) = exp(tZ) exp(2(w + s a)) exp(-t sigma Z)`` is differenced
    centrally in ``t`` and ``s``; the covariant derivative of the normal
    field is ``d_s U + [V, U] / 2`` with ``U, V`` the left trivialized
    partials.  The estimate is repeated with ``h / 2``; a disagreement above
    ``richardson_tol`` (relative) raises ``StepTooLarge``.  With
    ``extrapolate`` the two are combined as ``(4 e(h/2) - e(h)) / 3``, which
    cancels the ``h^2`` term and suits larger steps such as ``1e-3``.
    """
    if h <= 0:
        raise InvalidParams("h must be positive")
    _, tangent = _orbit_tangent(pair, np.asarray(w, dtype=float), acting)
    est = _variation_once(pair, w, a, z, h, acting, tangent)
    half = _variation_once(pair, w, a, z, h / 2, acting, tangent)
    if abs(est - half) > richardson_tol * max(1.0, abs(half)):
        raise StepTooLarge(f"estimate moved by {abs(est - half):.2e} when halving h")
    if extrapolate:
        return (4 * half - est) / 3
    return half


def generator_for_tangent(pair: SymmetricPairData, w: np.ndarray, y: np.ndarray, acting: str = "h") -> np.ndarray:
    """Complex generator ``Z`` in the acting algebra whose moved tangent vector is ``y``."""
    gens, tangent = _orbit_tangent(pair, np.asarray(w, dtype=float), acting)
    c, *_ = np.linalg.lstsq(tangent.astype(complex), np.asarray(y, dtype=complex), rcond=None)
    if np.linalg.norm(tangent @ c - y) > 1e-8 * max(1.0, np.linalg.norm(y)):
        raise InvalidParams("y is not tangent to the orbit")
    return gens @ c


def variation_shape_estimate_raw(pair, w, a, z, h, acting: str = "h") -> complex:
    """Single finite-difference estimate, without the halving check."""
    _, tangent = _orbit_tangent(pair, np.asarray(w, dtype=float), acting)
    return _variation_once(pair, w, a, z, h, acting, tangent)


# ---------------------------------------------------------------------------
# focal determinant scans


def _sinhc(x):
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, 1 + x * x / 6, np.sinh(safe) / safe)


@dataclass(frozen=True, eq=False)
class FocalOperatorFamily:
    """``z -> cos(sqrt(-1) z ad v) - z sin(sqrt(-1) z ad v)/(sqrt(-1) z ad v) A`` on a tangent space.

    ``square`` is ``ad(v)^2`` on the tangent space and ``shape`` the shape
    matrix, both in the same basis.  ``ad(v)^2`` is diagonalized once; the
    family is then evaluated in its eigenbasis, where ``cos`` and ``sin/x``
    of ``z ad v`` are diagonal.
    """

    square: np.ndarray
    shape: np.ndarray
    _roots: np.ndarray = field(init=False, repr=False)
    _shape_eig: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        lam, p = np.linalg.eig(np.asarray(self.square, dtype=complex))
        object.__setattr__(self, "_roots", np.sqrt(lam))
        object.__setattr__(self, "_shape_eig", np.linalg.solve(p, np.asarray(self.shape, dtype=complex) @ p))

    @property
    def dim(self) -> int:
        return self.square.shape[0]

    def matrices(self, zs: np.ndarray) -> np.ndarray:
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        arg = zs[:, None] * self._roots[None, :]
        co = np.cosh(arg)
        si = _sinhc(arg)
        out = -(zs[:, None, None] * si[:, :, None]) * self._shape_eig[None, :, :]
        idx = np.arange(self.dim)
        out[:, idx, idx] += co
        return out

    def __call__(self, z: complex) -> np.ndarray:
        return self.matrices(np.array([z]))[0]

    def row_scale(self, z: complex) -> np.ndarray:
        """Row sizes free of cancellation: ``|cosh x|`` and ``|sinh x / x|`` are at most ``cosh(Re x)``."""
        bound = np.cosh(np.abs((z * self._roots).real))
        return bound * (1.0 + abs(z) * np.linalg.norm(self._shape_eig, axis=1))


def shape_focal_family(pair: SymmetricPairData, w: np.ndarray, a: np.ndarray, acting: str = "h") -> FocalOperatorFamily:
    """Focal family of the orbit through ``exp(w)H`` along the normal geodesic in direction ``a``."""
    sd = algebraic_shape_operator(pair, w, a, acting)
    ad = pair.algebra.ad(np.asarray(a, dtype=float))
    sq, *_ = np.linalg.lstsq(sd.tangent, ad @ ad @ sd.tangent, rcond=None)
    return FocalOperatorFamily(sq, sd.matrix)


def totally_geodesic_focal_family(algebra: MatrixLieAlgebra, v: np.ndarray, tangent: np.ndarray) -> FocalOperatorFamily:
    """Focal family of a totally geodesic submanifold with tangent space ``tangent`` at the base point."""
    ad = algebra.ad(np.asarray(v, dtype=float))
    sq, *_ = np.linalg.lstsq(tangent, ad @ ad @ tangent, rcond=None)
    return FocalOperatorFamily(sq, np.zeros_like(sq))


@dataclass(frozen=True)
class ScanReport:
    zeros_found: list[tuple[complex, int]]
    grid_resolution: float
    newton_iterations: int
    max_residual: float
    window: float = 0.0
    divergences: int = 0
    cauchy_riemann: float = 0.0
    winding: int = 0

    def zeros(self) -> np.ndarray:
        return np.array([z for z, _ in self.zeros_found], dtype=complex)


def _log_derivative(fam: Callable[[complex], np.ndarray], z: complex, step: float, known=()) -> complex:
    m = fam(z)
    dm = (fam(z + step) - fam(z - step)) / (2 * step)
    out = complex(np.trace(np.linalg.solve(m, dm)))
    # deflation: divide out the zeros already found
    return out - sum(k / (z - zk) for zk, k in known)


def _newton(fam, z: complex, window: float, known=(), max_iter: int = 60) -> tuple[complex, int]:
    """Newton iteration on ``f / f'`` (``f = det``), which converges for multiple zeros too.

    ``f / f' = 1 / L`` with ``L = tr(M^{-1} M')``; the update is ``z + L / L'``.
    ``M'`` uses central differences with step ``1e-6``.  Near a zero of
    multiplicity ``m``, ``|L|`` is about ``m / dist``, so ``L'`` is differenced
    with step ``0.1 / |L|``, which stays below the distance to the zero.
    ``known`` zeros ``(z_j, m_j)`` are deflated from ``L``.
    """
    best = None
    for it in range(1, max_iter + 1):
        try:
            lval = _log_derivative(fam, z, NEWTON_STEP, known)
            outer = min(NEWTON_STEP, 0.1 / max(abs(lval), 1e-300))
            lp = (_log_derivative(fam, z + outer, NEWTON_STEP, known) - _log_derivative(fam, z - outer, NEWTON_STEP, known)) / (2 * outer)
        except (np.linalg.LinAlgError, ZeroDivisionError):
            return z, it
        if not np.isfinite(lval) or not np.isfinite(lp) or lp == 0:
            return z, it
        dz = lval / lp
        if best is not None and abs(dz) > best[1] and best[1] < 1e-9 * max(1.0, abs(z)):
            # rounding noise dominates once the update stops shrinking
            return best[0], it
        best = (z + dz, abs(dz))
        z = z + dz
        if abs(z) > window + 1.0:
            raise NewtonDivergence(f"iterate left the window at {z}")
        if abs(dz) <= 1e-13 * max(1.0, abs(z)):
            return z, it
    raise NewtonDivergence("no convergence")


def winding_count(family: FocalOperatorFamily, radius: float, samples: int = 4096, max_samples: int = 1 << 18) -> int:
    """Zeros of ``det`` inside ``|z| < radius`` by the argument principle."""
    if family.dim == 0:
        return 0
    while True:
        z = radius * np.exp(2j * np.pi * np.arange(samples + 1) / samples)
        sign, _ = np.linalg.slogdet(family.matrices(z))
        steps = np.angle(sign[1:] / sign[:-1])
        if np.max(np.abs(steps)) < np.pi / 4 or samples >= max_samples:
            return int(round(steps.sum() / (2 * np.pi)))
        samples *= 2


def _kernel_dim(family: FocalOperatorFamily, z: complex) -> tuple[int, float]:
    # rows are scaled by a bound on their terms, so that growth of cosh along
    # one root does not swamp the others
    m = family(z)
    scale = family.row_scale(z)
    s = np.linalg.svd(m / scale[:, None], compute_uv=False)
    if s.size == 0:
        return 0, 0.0
    # scaled rows have size about one unless their terms cancel
    return int(np.sum(s < SV_ZERO)), float(s[-1])


def scaled_determinant(family: FocalOperatorFamily, z: complex) -> float:
    """``|det|`` after dividing each row by a bound on its terms."""
    return float(abs(np.linalg.det(family(z) / family.row_scale(z)[:, None])))


def cauchy_riemann_residual(fam: FocalOperatorFamily, points: np.ndarray, h: float = 1e-4) -> float:
    """``max |f_y - sqrt(-1) f_x| / |f_x|`` for ``f = det`` sampled at ``points``."""
    worst = 0.0
    for z in np.atleast_1d(points):
        fx = (np.linalg.det(fam(z + h)) - np.linalg.det(fam(z - h))) / (2 * h)
        fy = (np.linalg.det(fam(z + 1j * h)) - np.linalg.det(fam(z - 1j * h))) / (2 * h)
        scale = max(abs(fx), abs(fy), 1e-300)
        worst = max(worst, abs(fy - 1j * fx) / scale)
    return float(worst)


def determinant_focal_scan(
    family: FocalOperatorFamily,
    window: float,
    resolution: float = 0.05,
    chunk: int = 20000,
    cr_samples: int = 5,
    seed: int = 0,
) -> ScanReport:
    """Zeros of ``det`` of the focal family in the disc ``|z| <= window``.

    ``log|det|`` is sampled on a square grid; every grid local minimum seeds
    a Newton iteration.  The argument principle on ``|z| = window`` gives the
    expected count; while it is not reached the seeds are rerun with the
    zeros found so far deflated.  Polished zeros closer than ``1e-6`` are merged and
    kernel dimensions are counted as singular values below ``1e-8`` after
    dividing each row by the size of its terms before cancellation.  Newton failures
    are counted, not raised.
    """
    if resolution > 0.1 or resolution <= 0:
        raise InvalidParams("resolution must lie in (0, 0.1]")
    if family.dim == 0:
        return ScanReport([], resolution, 0, 0.0, window)
    n = int(np.ceil(window / resolution))
    axis = np.arange(-n, n + 1) * resolution
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    zz = xx + 1j * yy
    inside = np.abs(zz) <= window + 1e-12
    logdet = np.full(zz.shape, np.inf)
    flat = zz[inside]
    vals = np.empty(flat.size)
    for start in range(0, flat.size, chunk):
        _, la = np.linalg.slogdet(family.matrices(flat[start : start + chunk]))
        vals[start : start + chunk] = la
    logdet[inside] = vals
    padded = np.pad(logdet, 1, constant_values=np.inf)
    centre = padded[1:-1, 1:-1]
    is_min = inside.copy()
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            nb = padded[1 + dx : padded.shape[0] - 1 + dx, 1 + dy : padded.shape[1] - 1 + dy]
            is_min &= centre <= nb
    seeds = zz[is_min]
    expected = winding_count(family, window)
    zeros: list[list] = []
    iterations = 0
    divergences = 0
    worst = 0.0
    # later rounds restart every seed with the zeros found so far deflated
    for _ in range(MAX_DEFLATION_ROUNDS if expected > 0 else 0):
        found_before = len(zeros)
        known = [(z, k) for z, k in zeros]
        for s0 in seeds:
            if known and min(abs(s0 - zk) for zk, _ in known) < 1e-6:
                s0 = s0 + resolution / 3 * (1 + 1j)
            try:
                z, it = _newton(family, complex(s0), window, known)
            except NewtonDivergence:
                divergences += 1
                continue
            iterations += it
            if abs(z) > window:
                continue
            k, res = _kernel_dim(family, z)
            if k == 0:
                continue
            if any(abs(z - m[0]) <= 1e-6 for m in zeros):
                continue
            worst = max(worst, res)
            zeros.append([z, k])
        if sum(k for _, k in zeros) >= expected or len(zeros) == found_before:
            break
    zeros.sort(key=lambda m: (round(m[0].real, 8), round(m[0].imag, 8)))
    rng = np.random.default_rng(seed)
    pts = flat[rng.choice(flat.size, size=min(cr_samples, flat.size), replace=False)] if flat.size else flat
    cr = cauchy_riemann_residual(family, pts)
    return ScanReport([(complex(z), int(k)) for z, k in zeros], resolution, iterations, worst, window, divergences, cr, expected)


# ---------------------------------------------------------------------------
# Jacobi fields


@dataclass(frozen=True, eq=False)
class JacobiTrajectory:
    s: np.ndarray
    y: np.ndarray
    dy: np.ndarray

    def at(self, s: float) -> np.ndarray:
        i = int(np.argmin(np.abs(self.s - s)))
        if abs(self.s[i] - s) > 1e-9 * max(1.0, abs(s)):
            raise InvalidParams(f"s = {s} is not a grid point")
        return self.y[i]


def jacobi_integrate(algebra: MatrixLieAlgebra, v: np.ndarray, x0: np.ndarray, x0_prime: np.ndarray, s_max: float, steps: int = 1000) -> JacobiTrajectory:
    """RK4 for ``Y'' = ad(v)^2 Y``, the Jacobi equation ``Y'' + R(Y, v) v = 0`` in the left-translation gauge."""
    if steps < 100:
        raise InvalidParams("steps must be at least 100")
    ad = algebra.ad(np.asarray(v, dtype=float))
    k = ad @ ad
    h = s_max / steps
    y = np.asarray(x0, dtype=complex).copy()
    dy = np.asarray(x0_prime, dtype=complex).copy()
    ys = [y.copy()]
    dys = [dy.copy()]

    def rhs(yv, dyv):
        return dyv, k @ yv

    for _ in range(steps):
        k1y, k1d = rhs(y, dy)
        k2y, k2d = rhs(y + 0.5 * h * k1y, dy + 0.5 * h * k1d)
        k3y, k3d = rhs(y + 0.5 * h * k2y, dy + 0.5 * h * k2d)
        k4y, k4d = rhs(y + h * k3y, dy + h * k3d)
        y = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        dy = dy + h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d)
        ys.append(y.copy())
        dys.append(dy.copy())
    return JacobiTrajectory(np.linspace(0.0, s_max, steps + 1), np.array(ys), np.array(dys))


def jacobi_energy(algebra: MatrixLieAlgebra, v: np.ndarray, y: np.ndarray, dy: np.ndarray) -> complex:
    """``B(Y', Y') - B(ad(v)^2 Y, Y)``, conserved along the Jacobi equation."""
    ad = algebra.ad(np.asarray(v, dtype=float))
    kill = algebra.killing_matrix
    return complex(dy @ kill @ dy - (ad @ ad @ y) @ kill @ y)
