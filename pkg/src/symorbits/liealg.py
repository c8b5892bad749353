"""Matrix realizations of the classical real Lie algebras.

Every algebra is a real subspace of ``gl(N, C)`` (or ``gl(N, R)`` for the
real-entry families) that is closed under conjugate transpose, so that
``X -> -X*`` is a Cartan involution for all families at once.  Complex
entries are stored as complex numpy arrays, i.e. as pairs of real matrices.

The basis is the reduced row echelon form of the solution space of the
defining linear equations, taken in the real coordinates
``(Re X.ravel(), Im X.ravel())``.  Two consequences:

* the basis is canonical and reproducible bit for bit;
* the coordinates of a matrix that lies in the algebra are just its entries
  at the pivot positions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import _linalg
from .errors import AlgebraMismatch, InvalidParams, UnsupportedFamily

FAMILIES = (
    "sl_n_R",
    "su_p_q",
    "su_star_2n",
    "so_p_q",
    "so_star_2n",
    "sp_n_R",
    "sp_p_q",
    "sl_n_C_as_real",
    "so_n_C_as_real",
    "sp_n_C_as_real",
)

REAL_ENTRY_FAMILIES = frozenset({"sl_n_R", "so_p_q", "sp_n_R"})
COMPLEX_FAMILIES = frozenset({"sl_n_C_as_real", "so_n_C_as_real", "sp_n_C_as_real"})


def signature_matrix(p: int, q: int) -> np.ndarray:
    """``I_{p,q} = diag(1_p, -1_q)``."""
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def symplectic_form(n: int) -> np.ndarray:
    """``J_n = [[0, 1_n], [-1_n, 0]]``."""
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def _t(x: np.ndarray) -> np.ndarray:
    return np.swapaxes(x, -1, -2)


def _h(x: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(x, -1, -2))


def _trace(x: np.ndarray) -> np.ndarray:
    return np.trace(x, axis1=-2, axis2=-1)[..., None, None]


def ambient_size(family: str, params: tuple[int, ...]) -> int:
    if family in ("sl_n_R", "sl_n_C_as_real", "so_n_C_as_real"):
        return params[0]
    if family in ("su_p_q", "so_p_q"):
        return params[0] + params[1]
    if family in ("su_star_2n", "so_star_2n", "sp_n_R", "sp_n_C_as_real"):
        return 2 * params[0]
    if family == "sp_p_q":
        return 2 * (params[0] + params[1])
    raise UnsupportedFamily(family)


def expected_dim(family: str, params: tuple[int, ...]) -> int:
    """Known dimension formula per family."""
    if family == "sl_n_R":
        n = params[0]
        return n * n - 1
    if family == "su_p_q":
        n = params[0] + params[1]
        return n * n - 1
    if family == "su_star_2n":
        n = 2 * params[0]
        return n * n - 1
    if family == "so_p_q":
        n = params[0] + params[1]
        return n * (n - 1) // 2
    if family == "so_star_2n":
        n = params[0]
        return n * (2 * n - 1)
    if family == "sp_n_R":
        n = params[0]
        return n * (2 * n + 1)
    if family == "sp_p_q":
        n = params[0] + params[1]
        return n * (2 * n + 1)
    if family == "sl_n_C_as_real":
        n = params[0]
        return 2 * (n * n - 1)
    if family == "so_n_C_as_real":
        n = params[0]
        return n * (n - 1)
    if family == "sp_n_C_as_real":
        n = params[0]
        return 2 * n * (2 * n + 1)
    raise UnsupportedFamily(family)


def _check_params(family: str, params: tuple[int, ...]) -> None:
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unsupported family {family!r}")
    two = family in ("su_p_q", "so_p_q", "sp_p_q")
    if len(params) != (2 if two else 1) or any((not isinstance(x, (int, np.integer))) or x < 0 for x in params):
        raise InvalidParams(f"{family} expects {'(p, q)' if two else '(n,)'} with nonnegative integers, got {params}")
    total = sum(params)
    minimum = {
        "sl_n_R": 2,
        "su_p_q": 2,
        "su_star_2n": 1,
        "so_p_q": 3,
        "so_star_2n": 2,
        "sp_n_R": 1,
        "sp_p_q": 1,
        "sl_n_C_as_real": 2,
        "so_n_C_as_real": 3,
        "sp_n_C_as_real": 1,
    }[family]
    if total < minimum:
        raise InvalidParams(f"{family}{params} is not semisimple (need size >= {minimum})")


def _constraints(family: str, params: tuple[int, ...]):
    """R-linear maps whose common kernel is the algebra (batched over leading axes)."""
    if family == "sl_n_R":
        return [lambda x: x.imag, _trace]
    if family == "su_p_q":
        s = signature_matrix(*params)
        return [lambda x: _h(x) @ s + s @ x, _trace]
    if family == "su_star_2n":
        j = symplectic_form(params[0])
        return [lambda x: x @ j - j @ np.conj(x), _trace]
    if family == "so_p_q":
        s = signature_matrix(*params)
        return [lambda x: x.imag, lambda x: _t(x) @ s + s @ x]
    if family == "so_star_2n":
        j = symplectic_form(params[0])
        return [lambda x: x + _t(x), lambda x: _h(x) @ j + j @ x]
    if family == "sp_n_R":
        j = symplectic_form(params[0])
        return [lambda x: x.imag, lambda x: _t(x) @ j + j @ x]
    if family == "sp_p_q":
        p, q = params
        j = symplectic_form(p + q)
        s = signature_matrix(p, q)
        k = np.block([[s, np.zeros_like(s)], [np.zeros_like(s), s]])
        return [lambda x: _t(x) @ j + j @ x, lambda x: _h(x) @ k + k @ x]
    if family == "sl_n_C_as_real":
        return [_trace]
    if family == "so_n_C_as_real":
        return [lambda x: x + _t(x)]
    if family == "sp_n_C_as_real":
        j = symplectic_form(params[0])
        return [lambda x: _t(x) @ j + j @ x]
    raise UnsupportedFamily(family)


def _flatten_batch(x: np.ndarray, real_entries: bool) -> np.ndarray:
    lead = x.shape[:-2]
    flat = x.reshape(lead + (-1,))
    if real_entries:
        return np.real(flat)
    return np.concatenate([flat.real, flat.imag], axis=-1)


def _solve_basis(family: str, params: tuple[int, ...]) -> tuple[np.ndarray, list[int]]:
    n = ambient_size(family, params)
    real_entries = family in REAL_ENTRY_FAMILIES
    n_unk = n * n if real_entries else 2 * n * n
    units = np.zeros((n_unk, n * n), dtype=complex)
    idx = np.arange(n * n)
    units[idx, idx] = 1.0
    if not real_entries:
        units[n * n + idx, idx] = 1j
    units = units.reshape(n_unk, n, n)
    blocks = []
    for f in _constraints(family, params):
        img = np.asarray(f(units), dtype=complex)
        img = img.reshape(n_unk, -1)
        blocks.append(np.concatenate([img.real, img.imag], axis=1))
    a = np.concatenate(blocks, axis=1)  # (n_unk, rows): row m is the image of unit m
    gram = a @ a.T
    w, v = np.linalg.eigh(gram)
    kernel = v[:, w <= 1e-9 * max(w.max(), 1.0)]
    rows, pivots = _linalg.rref(kernel.T)
    rows = _linalg.snap_rational(rows)
    return rows, pivots


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    """A real Lie algebra with a fixed matrix basis.

    ``basis`` has shape ``(dim, N, N)``; it is real for the real-entry
    families and complex otherwise.  ``pivots`` index the flat real vector
    ``(Re X.ravel(), Im X.ravel())``.
    """

    family: str
    params: tuple[int, ...]
    basis: np.ndarray
    pivots: np.ndarray

    @property
    def ambient_size(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def real_entries(self) -> bool:
        return self.family in REAL_ENTRY_FAMILIES

    @property
    def is_complex(self) -> bool:
        return self.family in COMPLEX_FAMILIES

    @property
    def descriptor(self) -> str:
        return algebra_descriptor(self.family, self.params)

    def __repr__(self) -> str:
        return f"MatrixLieAlgebra({self.descriptor}, dim={self.dim})"

    # coordinates -------------------------------------------------------
    def flatten(self, x: np.ndarray) -> np.ndarray:
        return _flatten_batch(np.asarray(x), self.real_entries)

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of matrices that lie in the algebra (batched)."""
        return self.flatten(x)[..., self.pivots]

    def membership_residual(self, x: np.ndarray) -> float:
        x = np.asarray(x)
        back = self.matrix(self.coords(x))
        return float(np.linalg.norm(back - x) / max(np.linalg.norm(x), 1e-300))

    def matrix(self, c: np.ndarray) -> np.ndarray:
        """Matrix of real coordinate vector(s) ``c`` (last axis = coordinates)."""
        c = np.asarray(c)
        if np.iscomplexobj(c):
            if np.abs(c.imag).max(initial=0.0) > 1e-12 * max(1.0, np.abs(c).max()):
                raise ValueError("complex coordinates have no matrix in a real form; use complexified operators")
            c = c.real
        return np.tensordot(c, self.basis, axes=(-1, 0))

    # brackets ----------------------------------------------------------
    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bracket of two real coordinate vectors."""
        mx, my = self.matrix(x), self.matrix(y)
        return self.coords(mx @ my - my @ mx)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``ad(x)``; column j is the coordinate vector of ``[x, b_j]``."""
        mx = self.matrix(x)
        comm = mx @ self.basis - self.basis @ mx
        return self.coords(comm).T

    def ad_apply(self, x: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        """``ad(x)`` applied to the columns of ``vectors`` via matrix commutators."""
        mx = self.matrix(x)
        mv = self.matrix(np.asarray(vectors).T)
        return self.coords(mx @ mv - mv @ mx).T

    def ad_complex(self, x: np.ndarray) -> np.ndarray:
        """``ad`` of a complex coordinate vector on the complexification."""
        x = np.asarray(x)
        if not np.iscomplexobj(x):
            return self.ad(x)
        return self.ad(x.real) + 1j * self.ad(x.imag)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``c[i, j, k]`` with ``[b_i, b_j] = sum_k c[i, j, k] b_k``."""
        d = self.dim
        c = np.empty((d, d, d))
        for i in range(d):
            comm = self.basis[i] @ self.basis - self.basis @ self.basis[i]
            c[i] = self.coords(comm)
        return c

    @cached_property
    def killing_matrix(self) -> np.ndarray:
        """``B(b_i, b_j) = tr(ad b_i ad b_j)``.

        The trace over the algebra is taken with the pivot coordinate
        functionals, so ``tr(ad x ad y) = sum_k coord_k([x, [y, b_k]])``;
        the triple products are contracted directly without storing every
        ``ad`` matrix.
        """
        return _killing(self.basis, self.pivots, self.real_entries)

    def killing(self, x: np.ndarray, y: np.ndarray) -> complex:
        """Complex-bilinear Killing form on (possibly complex) coordinates."""
        return np.asarray(x) @ self.killing_matrix @ np.asarray(y)

    @cached_property
    def complex_structure(self) -> np.ndarray | None:
        """Multiplication by sqrt(-1) on coordinates, for complex algebras only."""
        if not self.is_complex:
            return None
        return self.coords(1j * self.basis).T

    def cartan_involution_matrix(self) -> np.ndarray:
        """Coordinates of ``X -> -X*``."""
        return self.coords(-np.conj(np.swapaxes(self.basis, -1, -2))).T

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal(self.dim)


def _killing(basis: np.ndarray, pivots: np.ndarray, real_entries: bool) -> np.ndarray:
    d, n, _ = basis.shape
    nn = n * n
    piv = np.asarray(pivots)
    is_im = piv >= nn
    loc = np.where(is_im, piv - nn, piv)
    rows, cols = np.divmod(loc, n)
    b = basis
    bflat = b.reshape(d, -1)
    total = np.zeros((d, d))
    for mask, part in ((~is_im, np.real), (is_im, np.imag)):
        if not mask.any():
            continue
        r, c = rows[mask], cols[mask]
        bk = b[mask]
        rr = bk[np.arange(len(r)), r, :]  # b_k[r_k, s]
        cc = bk[np.arange(len(r)), :, c]  # b_k[t, c_k]
        big_r = b[:, r, :]  # b_i[r_k, s]  (i, k, s)
        big_c = np.swapaxes(b[:, :, c], 1, 2)  # b_i[t, c_k]  (i, k, t)
        w1 = np.einsum("kt,iks->ist", cc, big_r, optimize=True)
        w4 = np.einsum("ks,ikt->ist", rr, big_c, optimize=True)
        t14 = (w1 + w4).reshape(d, -1) @ bflat.T
        x = np.einsum("iks,kst->ikt", big_r, bk, optimize=True)
        t2 = x.reshape(d, -1) @ big_c.reshape(d, -1).T
        total += part(t14 - t2 - t2.T)
    return 0.5 * (total + total.T)


@lru_cache(maxsize=64)
def construct_algebra(family: str, params: tuple[int, ...]) -> MatrixLieAlgebra:
    """Build the matrix realization of a classical family.

    >>> construct_algebra("sl_n_R", (2,)).dim
    3
    """
    params = tuple(int(x) for x in params)
    _check_params(family, params)
    rows, pivots = _solve_basis(family, params)
    n = ambient_size(family, params)
    if family in REAL_ENTRY_FAMILIES:
        basis = rows.reshape(-1, n, n).copy()
    else:
        nn = n * n
        basis = (rows[:, :nn] + 1j * rows[:, nn:]).reshape(-1, n, n)
    if basis.shape[0] != expected_dim(family, params):
        raise InvalidParams(f"{family}{params}: solved dimension {basis.shape[0]} != {expected_dim(family, params)}")
    basis.setflags(write=False)
    piv = np.asarray(pivots)
    piv.setflags(write=False)
    return MatrixLieAlgebra(family, params, basis, piv)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: MatrixLieAlgebra
    coords: np.ndarray

    def __post_init__(self) -> None:
        if np.asarray(self.coords).shape != (self.algebra.dim,):
            raise InvalidParams("coordinate vector length must equal the algebra dimension")

    @property
    def matrix(self) -> np.ndarray:
        return self.algebra.matrix(self.coords)

    @classmethod
    def from_matrix(cls, algebra: MatrixLieAlgebra, m: np.ndarray, tol: float = 1e-10) -> AlgebraElement:
        if algebra.membership_residual(m) > tol:
            raise InvalidParams("matrix does not lie in the algebra")
        return cls(algebra, algebra.coords(m))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same(self, other)
        return AlgebraElement(self.algebra, self.coords + other.coords)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        _same(self, other)
        return AlgebraElement(self.algebra, self.coords - other.coords)

    def __mul__(self, s: float) -> AlgebraElement:
        return AlgebraElement(self.algebra, s * self.coords)

    __rmul__ = __mul__


def _same(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.algebra is not y.algebra:
        raise AlgebraMismatch(f"{x.algebra.descriptor} vs {y.algebra.descriptor}")


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same(x, y)
    return AlgebraElement(x.algebra, x.algebra.bracket(x.coords, y.coords))


def ad_operator(x: AlgebraElement) -> np.ndarray:
    return x.algebra.ad(x.coords)


def is_semisimple_operator(op: np.ndarray, tol: float = 1e-8) -> bool:
    """Diagonalizability over C, by comparing ranks of (T - λ) and (T - λ)^2."""
    op = np.asarray(op, dtype=complex)
    n = op.shape[0]
    scale = max(np.linalg.norm(op, 2), 1e-300)
    if np.linalg.norm(op) <= 1e-14:
        return True
    t = op / scale
    eig = np.linalg.eigvals(t)
    # nilpotent perturbations spread eigenvalues like eps**(1/k); cluster loosely
    groups = _linalg.cluster(eig, rtol=max(tol, 1e-6) * 100, atol=1e-6)
    for g in groups:
        lam = eig[g].mean()
        m = t - lam * np.eye(n)
        r1 = _rank_gap(m, tol)
        r2 = _rank_gap(m @ m, tol)
        if r1 != r2:
            return False
    return True


def _rank_gap(m: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > max(tol, 1e-7)))


def is_semisimple_element(x: AlgebraElement | np.ndarray, tol: float = 1e-8, algebra: MatrixLieAlgebra | None = None) -> bool:
    """True iff ``ad(x)`` is diagonalizable over C."""
    if tol <= 0:
        raise InvalidParams("tol must be positive")
    if isinstance(x, AlgebraElement):
        op = ad_operator(x)
    else:
        if algebra is None:
            raise InvalidParams("coordinate input needs the algebra")
        op = algebra.ad(x)
    return is_semisimple_operator(op, tol)


# descriptors ----------------------------------------------------------------

_ALG_RE = re.compile(r"^(sl|su\*|su|so\*|so|sp)\((\d+)(?:,(\d+|r|c))?\)$")


def parse_algebra(text: str) -> tuple[str, tuple[int, ...]]:
    """Parse ``"sl(3,R)"``, ``"su(1,2)"``, ``"su*(4)"``, ``"sp(2,C)"`` and so on.

    Case-insensitive and whitespace-tolerant.  ``so(n)``, ``su(n)``, ``sp(n)``
    denote the compact forms ``(n, 0)``.
    """
    s = re.sub(r"\s+", "", text).lower()
    m = _ALG_RE.match(s)
    if not m:
        raise UnsupportedFamily(f"cannot parse algebra descriptor {text!r}")
    head, a, b = m.group(1), int(m.group(2)), m.group(3)
    if head == "sl":
        if b == "r":
            return "sl_n_R", (a,)
        if b == "c":
            return "sl_n_C_as_real", (a,)
        raise InvalidParams(f"{text!r}: sl needs R or C")
    if head in ("su*", "so*"):
        if b is not None or a % 2:
            raise InvalidParams(f"{text!r}: expected an even size and no second argument")
        return ("su_star_2n" if head == "su*" else "so_star_2n"), (a // 2,)
    if head == "su":
        if b in ("r", "c"):
            raise InvalidParams(text)
        return "su_p_q", (a, int(b) if b else 0)
    if head == "so":
        if b == "c":
            return "so_n_C_as_real", (a,)
        if b == "r":
            raise InvalidParams(f"{text!r}: write so(p,q)")
        return "so_p_q", (a, int(b) if b else 0)
    if head == "sp":
        if b == "r":
            return "sp_n_R", (a,)
        if b == "c":
            return "sp_n_C_as_real", (a,)
        return "sp_p_q", (a, int(b) if b else 0)
    raise UnsupportedFamily(text)


def algebra_descriptor(family: str, params: tuple[int, ...]) -> str:
    fmt = {
        "sl_n_R": "sl({0},R)",
        "su_p_q": "su({0},{1})",
        "su_star_2n": "su*({2})",
        "so_p_q": "so({0},{1})",
        "so_star_2n": "so*({2})",
        "sp_n_R": "sp({0},R)",
        "sp_p_q": "sp({0},{1})",
        "sl_n_C_as_real": "sl({0},C)",
        "so_n_C_as_real": "so({0},C)",
        "sp_n_C_as_real": "sp({0},C)",
    }[family]
    a = params[0]
    b = params[1] if len(params) > 1 else None
    return fmt.format(a, b, 2 * a)


def algebra_from_descriptor(text: str) -> MatrixLieAlgebra:
    return construct_algebra(*parse_algebra(text))
