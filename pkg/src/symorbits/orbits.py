"""Closed-form orbit geometry of isotropy orbits and partial tubes.

All vectors are coordinate vectors of the algebra, complexified when they
carry complex entries.  Tangent spaces are pulled back to ``q^c`` through
``g_*^{-1}``, so shape operators and Jacobi operators act on subspaces of
``q^c``.  ``sqrt(-1)`` is written ``1j`` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _linalg
from .errors import InvalidParams, NonAbelianSpan, NonSemisimpleW, SingularDirection
from .liealg import MatrixLieAlgebra, is_semisimple_operator
from .pairs import SymmetricPairData
from .roots import RestrictedRootSystem, Root

LATTICE_TOL = 1e-9
SERIES_CUTOFF = 1e-4

PARTS = ("q_part", "h_prime_part", "zero_part")


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    """The point ``exp(w)H``; ``w`` is a coordinate vector in ``q`` with ``ad(w)`` semisimple."""

    pair: SymmetricPairData
    w: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "w", w)
        if w.shape != (self.pair.algebra.dim,):
            raise InvalidParams(f"w must have length {self.pair.algebra.dim}")
        proj = self.pair.projector("q")
        if np.linalg.norm(proj @ w - w) > 1e-9 * max(1.0, np.linalg.norm(w)):
            raise InvalidParams("w does not lie in q")
        if not is_semisimple_operator(self.pair.algebra.ad(w)):
            raise NonSemisimpleW("ad(w) is not semisimple")


@dataclass(frozen=True)
class SpectrumEntry:
    root: Root | None
    eigenvalue: complex
    mult: int
    part: str
    space: np.ndarray | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True, eq=False)
class OrbitSpectrum:
    """Eigenvalues with multiplicities; ``flagged`` lists roots left out and why."""

    entries: list[SpectrumEntry]
    flagged: list[tuple[Root, str]] = field(default_factory=list)

    @property
    def total_mult(self) -> int:
        return sum(e.mult for e in self.entries)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues repeated by multiplicity."""
        vals = [e.eigenvalue for e in self.entries for _ in range(e.mult)]
        return np.array(vals, dtype=complex)

    def by_part(self, part: str) -> list[SpectrumEntry]:
        return [e for e in self.entries if e.part == part]


@dataclass(frozen=True)
class FocalFamily:
    """``z_k = offset + k * step`` for ``k`` in Z, each with multiplicity ``mult``."""

    root: Root
    offset: complex
    step: complex
    mult: int

    def member(self, k: int) -> complex:
        return self.offset + k * self.step


@dataclass(frozen=True, eq=False)
class FocalSet:
    families: list[FocalFamily]
    window_radius: float
    window: list[tuple[complex, int]]

    def radii(self) -> np.ndarray:
        return np.array([z for z, _ in self.window], dtype=complex)


# ---------------------------------------------------------------------------
# functional calculus


def _cosh(x):
    return np.cosh(x)


def _sinhc(x):
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, 1 + x2 / 6 + x2 * x2 / 120, np.sinh(safe) / safe)


def _kernel_cos(x):
    """``(cosh(x) - 1) / x``, i.e. ``(cos(sqrt(-1) x) - 1) / x``."""
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, x / 2 + x * x2 / 24 + x * x2 * x2 / 720, (np.cosh(safe) - 1) / safe)


def _kernel_sin(x):
    """``(x - sinh(x)) / x^2``, i.e. ``(sqrt(-1) sin(sqrt(-1) x) + x) / x^2``."""
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    return np.where(small, -(x / 6 + x * x2 / 120 + x * x2 * x2 / 5040), (safe - np.sinh(safe)) / (safe * safe))


# Taylor coefficients c_n of each kernel: f(x) = sum c_n x^n
def _series_coeffs(name: str, n: int) -> float:
    from math import factorial

    if name == "cosh":
        return 1.0 / factorial(n) if n % 2 == 0 else 0.0
    if name == "sinhc":
        return 1.0 / factorial(n + 1) if n % 2 == 0 else 0.0
    if name == "kernel_cos":
        return 1.0 / factorial(n + 1) if n % 2 == 1 else 0.0
    if name == "kernel_sin":
        return -1.0 / factorial(n + 2) if n % 2 == 1 else 0.0
    if name == "sinh":
        return 1.0 / factorial(n) if n % 2 == 1 else 0.0
    raise ValueError(name)


_SCALAR = {"cosh": _cosh, "sinhc": _sinhc, "kernel_cos": _kernel_cos, "kernel_sin": _kernel_sin, "sinh": np.sinh}


def matrix_function(op: np.ndarray, name: str) -> np.ndarray:
    """Evaluate one of the entire kernels on a square matrix.

    A diagonalizable operator goes through its eigendecomposition; otherwise
    the Taylor series is summed until the terms fall below ``1e-12``
    relative to the partial sum.
    """
    op = np.asarray(op, dtype=complex)
    n = op.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    if is_semisimple_operator(op):
        lam, vec = np.linalg.eig(op)
        if np.linalg.cond(vec) < 1e8:
            return vec @ np.diag(_SCALAR[name](lam)) @ np.linalg.inv(vec)
    total = np.zeros_like(op)
    power = np.eye(n, dtype=complex)
    for k in range(400):
        c = _series_coeffs(name, k)
        if c:
            term = c * power
            total = total + term
            if k > 2 and np.linalg.norm(term) <= 1e-12 * max(np.linalg.norm(total), 1e-300):
                break
        power = power @ op
    return total


def _restrict(op: np.ndarray, basis: np.ndarray | None) -> np.ndarray:
    if basis is None:
        return op
    c, *_ = np.linalg.lstsq(basis, op @ basis, rcond=None)
    return c


def dco_dsi(algebra: MatrixLieAlgebra, v: np.ndarray, z: complex, basis: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``cos(sqrt(-1) z ad v)`` and ``sin(sqrt(-1) z ad v) / (sqrt(-1) z ad v)``.

    Without ``basis`` the operators act on ``g^c`` coordinates; with a basis
    of an ``ad(v)^2``-invariant subspace (``q^c`` for instance) they are
    returned in that basis.
    """
    x = z * algebra.ad_complex(np.asarray(v))
    dco = matrix_function(x, "cosh")
    dsi = matrix_function(x, "sinhc")
    return _restrict(dco, basis), _restrict(dsi, basis)


def strong_jacobi_field(algebra: MatrixLieAlgebra, v: np.ndarray, x: np.ndarray, ax: np.ndarray, s: float) -> np.ndarray:
    """``Y(s) = (D^co_{sv} - s D^si_{sv} A_v) X`` with parallel transport taken as ``g_*``."""
    dco, dsi = dco_dsi(algebra, v, s)
    return dco @ np.asarray(x, dtype=complex) - s * (dsi @ np.asarray(ax, dtype=complex))


# ---------------------------------------------------------------------------
# isotropy orbits


def _lattice_distance(x: complex, shift: float = 0.0) -> float:
    """Distance of ``x`` to ``sqrt(-1) (pi Z + shift)``."""
    k = np.round((x.imag - shift) / np.pi)
    return float(abs(x - 1j * (np.pi * k + shift)))


def on_lattice(x: complex, tol: float = LATTICE_TOL) -> bool:
    """``x`` in ``sqrt(-1) pi Z`` up to ``tol``."""
    return _lattice_distance(complex(x)) <= tol


def _cartan_coeffs(system: RestrictedRootSystem, x: np.ndarray) -> np.ndarray:
    return system.coefficients(np.asarray(x, dtype=float))


def isotropy_tangent_split(point: OrbitPoint, system: RestrictedRootSystem, tol: float = LATTICE_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Complex bases (columns) of the pulled-back tangent and normal spaces at ``exp(w)H``."""
    t = _cartan_coeffs(system, point.w)
    dim = point.pair.algebra.dim
    tangent = [r.q_space for r in system.roots if not on_lattice(r(t), tol)]
    normal = [system.zero_q.astype(complex)] + [r.q_space for r in system.roots if on_lattice(r(t), tol)]
    tan = np.hstack(tangent) if tangent else np.zeros((dim, 0), dtype=complex)
    nor = np.hstack(normal) if normal else np.zeros((dim, 0), dtype=complex)
    return tan, nor


def isotropy_shape_spectrum(
    point: OrbitPoint,
    a: np.ndarray,
    system: RestrictedRootSystem,
    strict: bool = True,
    tol: float = LATTICE_TOL,
) -> OrbitSpectrum:
    """Eigenvalues ``-sqrt(-1) alpha(a) / tan(sqrt(-1) alpha(w))`` of ``A_a`` on each ``q_alpha^c``.

    Roots with ``alpha(w)`` on the lattice ``sqrt(-1) pi Z`` are normal
    directions; they are flagged, and with ``strict`` they raise
    ``SingularDirection`` because the orbit is then not principal.
    """
    tw = _cartan_coeffs(system, point.w)
    ta = _cartan_coeffs(system, a)
    entries = []
    flagged = []
    for r in system.roots:
        aw = r(tw)
        if on_lattice(aw, tol):
            flagged.append((r, "alpha(w) in sqrt(-1) pi Z"))
            continue
        lam = -1j * r(ta) / np.tan(1j * aw)
        entries.append(SpectrumEntry(r, complex(lam), r.mult, "q_part", r.q_space))
    if strict and flagged:
        raise SingularDirection(f"{len(flagged)} root(s) take values on sqrt(-1) pi Z at w")
    return OrbitSpectrum(entries, flagged)


def jacobi_spectrum(point: OrbitPoint, v: np.ndarray, system: RestrictedRootSystem) -> OrbitSpectrum:
    """Spectrum of ``ad(v)^2`` on ``q^c``: ``alpha(v)^2`` on each root space, 0 on ``z_q(a)``.

    The curvature operator ``R(., v) v`` is ``-ad(v)^2`` on ``q``.
    """
    tv = _cartan_coeffs(system, v)
    entries = [SpectrumEntry(r, complex(r(tv) ** 2), r.mult, "q_part", r.q_space) for r in system.roots]
    z = system.zero_q.shape[1]
    if z:
        entries.append(SpectrumEntry(None, 0j, z, "zero_part", system.zero_q))
    return OrbitSpectrum(entries)


def _window_members(offset: complex, step: complex, radius: float) -> list[complex]:
    k_max = int(np.ceil((abs(offset) + radius) / abs(step))) + 1
    out = []
    for k in range(-k_max, k_max + 1):
        z = offset + k * step
        if abs(z) <= radius:
            out.append(z)
    return out


def _focal_set(families: list[FocalFamily], window_radius: float) -> FocalSet:
    """Enumerate the lattices in the window, adding multiplicities of coinciding members."""
    merged: list[list] = []
    for fam in families:
        for z in _window_members(fam.offset, fam.step, window_radius):
            for m in merged:
                if abs(m[0] - z) <= 1e-9 * max(1.0, abs(z)):
                    m[1] += fam.mult
                    break
            else:
                merged.append([z, fam.mult])
    merged.sort(key=lambda m: (round(m[0].real, 9), round(m[0].imag, 9)))
    return FocalSet(families, float(window_radius), [(complex(z), int(k)) for z, k in merged])


def complex_focal_radii(
    point: OrbitPoint,
    a: np.ndarray,
    system: RestrictedRootSystem,
    window_radius: float,
    strict: bool = True,
    tol: float = LATTICE_TOL,
) -> FocalSet:
    """Focal lattices ``z_k = (k pi - sqrt(-1) beta(w)) / (sqrt(-1) beta(a))`` of the orbit along ``a``."""
    spectrum = isotropy_shape_spectrum(point, a, system, strict=strict, tol=tol)
    tw = _cartan_coeffs(system, point.w)
    ta = _cartan_coeffs(system, a)
    families = []
    for e in spectrum.entries:
        ba = e.root(ta)
        if abs(ba) <= tol:
            continue
        bw = e.root(tw)
        families.append(FocalFamily(e.root, complex(-1j * bw / (1j * ba)), complex(np.pi / (1j * ba)), e.mult))
    return _focal_set(families, window_radius)


def totally_geodesic_focal_radii(algebra: MatrixLieAlgebra, v: np.ndarray, tangent: np.ndarray, window_radius: float) -> FocalSet:
    """Focal radii of a totally geodesic orbit with tangent space ``tangent`` along ``v``.

    With ``A = 0`` the kernel condition reads ``cosh(z beta) = 0`` for each
    square root ``beta`` of an eigenvalue of ``ad(v)^2`` on the tangent space,
    so ``z_k = sqrt(-1) (pi / 2 + k pi) / beta``.
    """
    ad = algebra.ad(np.asarray(v, dtype=float))
    op, _ = restricted_operator(ad @ ad, tangent)
    lam = np.linalg.eigvals(op)
    families = []
    scale = max(1.0, float(np.abs(lam).max(initial=0.0)))
    for group in _linalg.cluster(lam, rtol=1e-9, atol=1e-9 * scale):
        mu = complex(lam[group].mean())
        if abs(mu) <= 1e-12 * scale:
            continue
        beta = np.sqrt(mu)
        families.append(FocalFamily(None, complex(0.5j * np.pi / beta), complex(1j * np.pi / beta), len(group)))
    return _focal_set(families, window_radius)


# ---------------------------------------------------------------------------
# partial tubes


def partial_tube_shape(
    algebra: MatrixLieAlgebra,
    v: np.ndarray,
    w: np.ndarray,
    x: np.ndarray,
    a_w_x: np.ndarray,
    a_v_x: np.ndarray,
    tol: float = 1e-9,
) -> np.ndarray:
    """Shape operator of a partial tube on the horizontal lift of ``X``.

    Evaluates, with ``D = ad(v)``,

        sqrt(-1) ad(w) sin(sqrt(-1) D) X
        - sqrt(-1) sin(sqrt(-1) D) / D (A_w X)
        + ((cos(sqrt(-1) D) - id) / D + (sqrt(-1) sin(sqrt(-1) D) + D) / D^2) ad(w) (A_v X)

    where ``A_w X`` and ``A_v X`` come from the base submanifold.
    """
    v = np.asarray(v)
    w = np.asarray(w)
    comm = algebra.ad_complex(v) @ w
    if np.linalg.norm(comm) > tol * max(1.0, np.linalg.norm(v) * np.linalg.norm(w)):
        raise NonAbelianSpan("span{v, w} is not abelian")
    d = algebra.ad_complex(v)
    adw = algebra.ad_complex(w)
    x = np.asarray(x, dtype=complex)
    # sqrt(-1) sin(sqrt(-1) D) = -sinh(D)
    term1 = -adw @ (matrix_function(d, "sinh") @ x)
    term2 = matrix_function(d, "sinhc") @ np.asarray(a_w_x, dtype=complex)
    kern = matrix_function(d, "kernel_cos") + matrix_function(d, "kernel_sin")
    term3 = kern @ (adw @ np.asarray(a_v_x, dtype=complex))
    return term1 + term2 + term3


def partial_tube_vertical(slice_shape: Callable[[np.ndarray], np.ndarray] | np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vertical vectors see the shape operator of the fibre slice."""
    if callable(slice_shape):
        return slice_shape(y)
    return np.asarray(slice_shape) @ y


def tangent_basis(spectrum: OrbitSpectrum) -> np.ndarray:
    """Concatenated eigenspaces of a spectrum (columns)."""
    blocks = [e.space for e in spectrum.entries if e.space is not None and e.space.shape[1]]
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    return np.hstack(blocks)


def operator_from_spectrum(spectrum: OrbitSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """``(V, A)``: basis of the tangent space and the shape matrix in that basis."""
    v = tangent_basis(spectrum)
    diag = np.concatenate([np.full(e.space.shape[1], e.eigenvalue) for e in spectrum.entries if e.space is not None and e.space.shape[1]]) if v.size else np.zeros(0)
    return v, np.diag(diag)


def restricted_operator(op: np.ndarray, basis: np.ndarray) -> tuple[np.ndarray, float]:
    """Matrix of ``op`` on span(basis) and the relative invariance residual."""
    img = op @ basis
    c, *_ = np.linalg.lstsq(basis, img, rcond=None)
    res = np.linalg.norm(basis @ c - img) / max(np.linalg.norm(img), 1e-300)
    return c, float(res)


def orthonormal(basis: np.ndarray) -> np.ndarray:
    return _linalg.orth(basis)
