"""Involutions of matrix Lie algebras and the subspaces they cut out.

An involution is stored as a recipe ``X -> g op(X) g^-1`` with ``op`` one of
identity, negative transpose, entrywise conjugation or negative conjugate
transpose, together with its matrix on basis coordinates.  All subspaces of
a pair are joint eigenspaces of commuting involutions, so every subspace the
rest of the package needs is addressed by a selector such as ``"q&p"`` or
``"q&q'"`` and computed from the product of the matching projectors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _linalg
from .errors import (
    DegenerateSubspace,
    InvalidParams,
    NonCommutingInvolutions,
    UnsupportedSigma,
)
from .liealg import MatrixLieAlgebra

OPS = ("inner", "neg_transpose", "conj", "neg_conj_transpose")


def _apply_op(op: str, x: np.ndarray) -> np.ndarray:
    if op == "inner":
        return x
    if op == "neg_transpose":
        return -np.swapaxes(x, -1, -2)
    if op == "conj":
        return np.conj(x)
    if op == "neg_conj_transpose":
        return -np.conj(np.swapaxes(x, -1, -2))
    raise UnsupportedSigma(f"unknown operation {op!r}")


@dataclass(frozen=True, eq=False)
class Involution:
    """``X -> g op(X) g^-1`` on an algebra, plus its coordinate matrix."""

    algebra: MatrixLieAlgebra
    matrix: np.ndarray
    recipe: str
    op: str = "inner"
    conjugator: np.ndarray | None = None

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        g = self.conjugator
        y = _apply_op(self.op, x)
        if g is None:
            return y
        return g @ y @ np.linalg.inv(g)

    def __call__(self, coords: np.ndarray) -> np.ndarray:
        return self.matrix @ coords

    def compose(self, other: Involution) -> np.ndarray:
        return self.matrix @ other.matrix


def make_involution(
    algebra: MatrixLieAlgebra,
    op: str,
    g: np.ndarray | None = None,
    recipe: str | None = None,
    tol: float = 1e-10,
) -> Involution:
    """Build and validate ``X -> g op(X) g^-1``.

    Raises UnsupportedSigma when the map leaves the algebra, is not an
    involution, or fails to be an automorphism.
    """
    if op not in OPS:
        raise UnsupportedSigma(f"unknown operation {op!r}")
    n = algebra.ambient_size
    b = algebra.basis
    img = _apply_op(op, b)
    if g is not None:
        g = np.asarray(g, dtype=complex)
        if g.shape != (n, n):
            raise UnsupportedSigma("conjugator has the wrong size")
        img = g @ img @ np.linalg.inv(g)
    if algebra.real_entries:
        if np.abs(np.imag(img)).max(initial=0.0) > tol:
            raise UnsupportedSigma("involution does not preserve the real form")
        img = np.real(img)
    m = algebra.coords(img).T
    back = algebra.matrix(m.T)
    if np.abs(back - img).max(initial=0.0) > tol * max(1.0, np.abs(img).max()):
        raise UnsupportedSigma(f"{recipe or op}: image leaves {algebra.descriptor}")
    if np.abs(m @ m - np.eye(algebra.dim)).max() > 1e-9:
        raise UnsupportedSigma(f"{recipe or op}: map is not an involution")
    m = _linalg.snap_rational(m, tol=1e-11)
    return Involution(algebra, m, recipe or op, op, g)


def cartan_involution(algebra: MatrixLieAlgebra) -> Involution:
    """The canonical ``X -> -X*`` (``-X^T`` on real matrices)."""
    return make_involution(algebra, "neg_conj_transpose", None, "cartan")


def check_automorphism(inv: Involution, tol: float = 1e-10) -> float:
    """Largest residual of ``s[X,Y] - [sX,sY]`` over basis pairs."""
    alg = inv.algebra
    c = alg.structure_constants
    m = inv.matrix
    lhs = np.einsum("ijk,lk->ijl", c, m)
    rhs = np.einsum("ai,bj,abk->ijk", m, m, c)
    return float(np.abs(lhs - rhs).max(initial=0.0))


# selectors ------------------------------------------------------------------

_TOKEN_SIGNS = {
    "h": ("sigma", 1),
    "q": ("sigma", -1),
    "f": ("theta", 1),
    "p": ("theta", -1),
    "h'": ("sigma_prime", 1),
    "q'": ("sigma_prime", -1),
    "l": ("sigma_sigma_prime", 1),
    "m": ("sigma_sigma_prime", -1),
}


def parse_selector(text: str) -> tuple[str, ...]:
    """Normalize ``"q∩p"``, ``"q&p"``, ``"q ∩ q′"`` to a sorted token tuple."""
    s = text.replace("∩", "&").replace("′", "'").replace("’", "'").replace(" ", "")
    if s in ("g", ""):
        return ()
    toks = tuple(sorted(set(s.split("&"))))
    for t in toks:
        if t not in _TOKEN_SIGNS:
            raise InvalidParams(f"unknown subspace selector {text!r}")
    return toks


@dataclass(frozen=True, eq=False)
class Subspace:
    """Real subspace of the algebra.

    ``basis`` columns are canonical (reduced echelon) coordinate vectors;
    ``orthonormal`` columns are B-orthonormal up to sign, with the positive
    (p-type) vectors first.
    """

    name: str
    basis: np.ndarray
    orthonormal: np.ndarray
    signature: tuple[int, int]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class SymmetricPairData:
    """An algebra with commuting involutions sigma, theta and optional sigma'."""

    algebra: MatrixLieAlgebra
    sigma: Involution
    theta: Involution
    sigma_prime: Involution | None = None
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def _operator(self, name: str) -> np.ndarray:
        if name == "sigma":
            return self.sigma.matrix
        if name == "theta":
            return self.theta.matrix
        if self.sigma_prime is None:
            raise InvalidParams("selector needs sigma' (use hermann_setup)")
        if name == "sigma_prime":
            return self.sigma_prime.matrix
        return self.sigma.matrix @ self.sigma_prime.matrix

    def projector(self, selector: str | tuple[str, ...]) -> np.ndarray:
        toks = parse_selector(selector) if isinstance(selector, str) else tuple(selector)
        d = self.algebra.dim
        p = np.eye(d)
        for t in toks:
            name, sign = _TOKEN_SIGNS[t]
            p = p @ (0.5 * (np.eye(d) + sign * self._operator(name)))
        return p

    def subspace(self, selector: str) -> Subspace:
        toks = parse_selector(selector)
        if toks in self._cache:
            return self._cache[toks]
        name = "&".join(toks) if toks else "g"
        basis = _linalg.canonical_basis(self.projector(toks)) if toks else np.eye(self.algebra.dim)
        basis = basis.reshape(self.algebra.dim, -1)
        # B is definite on the theta-eigenspaces, so orthonormalize piecewise
        pieces = []
        sig = [0, 0]
        theta_toks = {"f", "p"} & set(toks)
        for part, sign in (("p", 1), ("f", -1)):
            if theta_toks and part not in theta_toks:
                continue
            if theta_toks:
                sub = basis
            else:
                sub = _linalg.canonical_basis(self.projector(toks + (part,)))
                sub = sub.reshape(self.algebra.dim, -1)
            if sub.shape[1] == 0:
                continue
            gram = sign * (sub.T @ self.algebra.killing_matrix @ sub)
            try:
                chol = np.linalg.cholesky(gram)
            except np.linalg.LinAlgError as exc:
                raise DegenerateSubspace(f"Killing form is not definite on {name}&{part}") from exc
            pieces.append(np.linalg.solve(chol, sub.T).T)
            sig[0 if sign > 0 else 1] += sub.shape[1]
        ortho = np.hstack(pieces) if pieces else np.zeros((self.algebra.dim, 0))
        if ortho.shape[1] != basis.shape[1]:
            raise DegenerateSubspace(f"{name} does not split under theta")
        out = Subspace(name, basis, ortho, (sig[0], sig[1]))
        self._cache[toks] = out
        return out

    def dim(self, selector: str) -> int:
        return self.subspace(selector).dim

    @cached_property
    def h(self) -> Subspace:
        return self.subspace("h")

    @cached_property
    def q(self) -> Subspace:
        return self.subspace("q")

    @cached_property
    def f(self) -> Subspace:
        return self.subspace("f")

    @cached_property
    def p(self) -> Subspace:
        return self.subspace("p")

    def intersections(self) -> dict[str, int]:
        """Dimensions of all joint eigenspaces of the involutions present."""
        keys = ["h&f", "h&p", "q&f", "q&p"]
        if self.sigma_prime is not None:
            keys = [f"{k}&{s}" for k in keys for s in ("h'", "q'")]
        return {k: self.dim(k) for k in keys}


def _commute(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a @ b - b @ a).max(initial=0.0))


def build_pair_from_involution(sigma: Involution, theta: Involution | None = None, label: str = "") -> SymmetricPairData:
    alg = sigma.algebra
    theta = theta or cartan_involution(alg)
    if _commute(sigma.matrix, theta.matrix) > 1e-10:
        raise NonCommutingInvolutions(f"sigma and theta do not commute on {alg.descriptor}")
    pair = SymmetricPairData(alg, sigma, theta, None, label)
    for sel in ("h&f", "h&p", "q&f", "q&p"):
        pair.subspace(sel)
    return pair


def build_pair(algebra: MatrixLieAlgebra, sigma_spec: str, theta_spec: str | None = None) -> SymmetricPairData:
    """Pair from a sigma description.

    ``sigma_spec`` is either a subgroup name from the catalog such as
    ``"so(1,2)"`` or ``"SO0(1,2)"``, or a recipe string (see
    :func:`involution_from_recipe`).  ``theta_spec`` defaults to the
    canonical Cartan involution.
    """
    sigma = involution_from_spec(algebra, sigma_spec)
    theta = None if theta_spec is None else involution_from_spec(algebra, theta_spec)
    return build_pair_from_involution(sigma, theta, label=f"{algebra.descriptor}/{sigma_spec}")


def hermann_setup(pair: SymmetricPairData, sigma_prime_spec: str | Involution) -> SymmetricPairData:
    """Attach sigma' after checking it commutes with sigma and theta."""
    if isinstance(sigma_prime_spec, Involution):
        sp = sigma_prime_spec
    elif sigma_prime_spec.strip().lower() in ("theta", "cartan"):
        sp = pair.theta
    elif sigma_prime_spec.strip().lower() == "sigma":
        sp = pair.sigma
    else:
        sp = involution_from_spec(pair.algebra, sigma_prime_spec)
    if sp.algebra is not pair.algebra:
        raise InvalidParams("sigma' lives on a different algebra")
    if _commute(sp.matrix, pair.sigma.matrix) > 1e-10:
        raise NonCommutingInvolutions("sigma' does not commute with sigma")
    if _commute(sp.matrix, pair.theta.matrix) > 1e-10:
        raise NonCommutingInvolutions("sigma' does not commute with theta")
    out = SymmetricPairData(pair.algebra, pair.sigma, pair.theta, sp, pair.label)
    for sel in out.intersections():
        out.subspace(sel)
    return out


# recipes --------------------------------------------------------------------

_RECIPE_RE = re.compile(r"^([a-z_]+)(?:\(([-\d,\s]*)\))?$")


def conjugator_from_name(name: str, args: tuple[int, ...], n: int) -> np.ndarray:
    """Named conjugating matrices of size ``n``.

    * ``signature(a, b, ...)``: diagonal with alternating blocks of +1 and -1
      of the given sizes (``signature(p, q)`` is ``I_{p,q}``);
    * ``symplectic``: ``J = [[0, 1], [-1, 0]]``;
    * ``swap``: ``[[0, 1], [1, 0]]``;
    * ``identity``.
    """
    from .liealg import signature_matrix, symplectic_form

    if name == "identity":
        return np.eye(n)
    if name == "signature":
        signs = []
        for k, a in enumerate(args):
            signs += [1.0 if k % 2 == 0 else -1.0] * a
        if len(signs) != n:
            raise InvalidParams(f"signature blocks must add up to {n}")
        return np.diag(signs)
    if name == "symplectic":
        if n % 2:
            raise InvalidParams("symplectic form needs an even size")
        return symplectic_form(n // 2)
    if name == "swap":
        if n % 2:
            raise InvalidParams("swap needs an even size")
        m = n // 2
        return np.block([[np.zeros((m, m)), np.eye(m)], [np.eye(m), np.zeros((m, m))]])
    if name == "block_symplectic":
        # diag(J_a, J_b, ...); a negative size contributes -J_|a|
        if 2 * sum(abs(a) for a in args) != n:
            raise InvalidParams("block_symplectic size mismatch")
        out = np.zeros((n, n))
        start = 0
        for a in args:
            m = 2 * abs(a)
            out[start : start + m, start : start + m] = np.sign(a) * symplectic_form(abs(a))
            start += m
        return out
    if name == "block_swap":
        # diag(S_a, S_b, ...) with S_a = [[0, 1_a], [1_a, 0]]; negative sizes flip the sign
        if 2 * sum(abs(a) for a in args) != n:
            raise InvalidParams("block_swap size mismatch")
        out = np.zeros((n, n))
        start = 0
        for a in args:
            m = 2 * abs(a)
            out[start : start + m, start : start + m] = np.sign(a) * conjugator_from_name("swap", (), m)
            start += m
        return out
    if name == "double_signature":
        # diag(D, D) with D = signature(args)
        d = conjugator_from_name("signature", args, n // 2)
        return np.block([[d, np.zeros_like(d)], [np.zeros_like(d), d]])
    if name == "pq_signature":
        # diag(I_{p,q}, I_{p,q}), the form that cuts sp(p,q) out of sp(p+q,C)
        p, q = args
        if 2 * (p + q) != n:
            raise InvalidParams("pq_signature size mismatch")
        s = signature_matrix(p, q)
        return np.block([[s, np.zeros_like(s)], [np.zeros_like(s), s]])
    raise UnsupportedSigma(f"unknown conjugator {name!r}")


def involution_from_recipe(algebra: MatrixLieAlgebra, recipe: str) -> Involution:
    """Recipe strings of the form ``op:conjugator(args)``.

    ``op`` is one of ``inner``, ``neg_transpose``, ``conj``,
    ``neg_conj_transpose``; the conjugator part is optional.  Short forms:
    ``negative_transpose``, ``complex_conjugation``, ``signature(p,q)``
    (inner), ``symplectic`` (inner).
    """
    s = recipe.replace(" ", "")
    aliases = {"negative_transpose": "neg_transpose", "complex_conjugation": "conj", "cartan": "neg_conj_transpose"}
    if ":" in s:
        op, conj_part = s.split(":", 1)
    elif s in aliases or s in OPS:
        op, conj_part = s, ""
    else:
        op, conj_part = "inner", s
    op = aliases.get(op, op)
    g = None
    if conj_part:
        factors = conj_part.split("*")
        g = np.eye(algebra.ambient_size)
        for fac in factors:
            m = _RECIPE_RE.match(fac)
            if not m:
                raise UnsupportedSigma(f"cannot parse recipe {recipe!r}")
            args = tuple(int(x) for x in m.group(2).split(",") if x) if m.group(2) else ()
            g = g @ conjugator_from_name(m.group(1), args, algebra.ambient_size)
    return make_involution(algebra, op, g, recipe)


def involution_from_spec(algebra: MatrixLieAlgebra, spec: str) -> Involution:
    """Recipe string, or a subgroup name resolved through the catalog."""
    from . import catalog

    try:
        recipe = catalog.sigma_recipe_for_subgroup(algebra, spec)
    except UnsupportedSigma:
        recipe = None
    if recipe is not None:
        return involution_from_recipe(algebra, recipe)
    return involution_from_recipe(algebra, spec)
