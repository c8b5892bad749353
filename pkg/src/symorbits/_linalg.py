"""Small dense linear-algebra helpers used across modules."""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla


def rref(rows: np.ndarray, tol: float = 1e-9) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with partial pivoting.

    Returns the nonzero rows and their pivot columns. The result only depends
    on the row space of ``rows``, which makes it a canonical basis.
    """
    a = np.array(rows, dtype=float, copy=True)
    m, n = a.shape
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        i = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[i, c]) <= tol * scale:
            a[r:, c] = 0.0
            continue
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] /= a[r, c]
        col = a[:, c].copy()
        col[r] = 0.0
        nz = np.nonzero(col)[0]
        if nz.size:
            a[nz] -= np.outer(col[nz], a[r])
        pivots.append(c)
        r += 1
    return a[:r], pivots


def snap_rational(a: np.ndarray, max_den: int = 48, tol: float = 1e-10) -> np.ndarray:
    """Replace entries that are within ``tol`` of a small-denominator fraction."""
    a = np.asarray(a, dtype=float)
    out = a.copy()
    done = np.zeros(a.shape, dtype=bool)
    for q in range(1, max_den + 1):
        cand = np.round(a * q) / q
        hit = (~done) & (np.abs(a - cand) < tol)
        out[hit] = cand[hit]
        done |= hit
    return out


def null_space(a: np.ndarray, rtol: float = 1e-10, atol: float = 0.0) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of ``a``.

    Singular values at most ``max(rtol * s_max, atol)`` count as zero.
    """
    a = np.asarray(a)
    if a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=a.dtype)
    # the full right factor is needed only for wide matrices
    u, s, vh = np.linalg.svd(a, full_matrices=a.shape[0] < a.shape[1])
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > max(rtol * smax, atol)))
    return vh[rank:].conj().T


def orth(a: np.ndarray, rtol: float = 1e-10, atol: float = 0.0) -> np.ndarray:
    """Orthonormal basis (columns) of the range of ``a``.

    Singular values at most ``max(rtol * s_max, atol)`` are dropped.
    """
    a = np.asarray(a)
    if a.size == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=a.dtype)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((a.shape[0], 0), dtype=a.dtype)
    rank = int(np.sum(s > max(rtol * s[0], atol)))
    return u[:, :rank]


def canonical_basis(a: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Canonical real basis (columns) of the range of a real matrix."""
    q = orth(np.real_if_close(a), rtol)
    if q.shape[1] == 0:
        return q
    rows, _ = rref(q.T)
    return snap_rational(rows).T


def numerical_rank(a: np.ndarray, rtol: float = 1e-9, atol: float = 0.0) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > max(rtol * s[0], atol)))


def eigenspace(op: np.ndarray, mu: complex, k: int) -> np.ndarray:
    """Orthonormal basis of the ``k``-dimensional eigenspace of ``op`` at ``mu``.

    The right singular vectors of ``op - mu`` for its ``k`` smallest singular
    values; unlike eigenvectors from ``eig`` these stay accurate for repeated
    eigenvalues of non-normal matrices.
    """
    _, _, vh = np.linalg.svd(op - mu * np.eye(op.shape[0]))
    return vh[op.shape[0] - k :].conj().T


def cluster(values: np.ndarray, rtol: float = 1e-8, atol: float = 1e-10) -> list[np.ndarray]:
    """Group complex numbers whose pairwise distance is below the tolerance.

    Single-linkage on the sorted values; returns index arrays.
    """
    values = np.asarray(values, dtype=complex)
    if values.size == 0:
        return []
    scale = max(float(np.abs(values).max()), 1.0)
    tol = rtol * scale + atol
    order = np.lexsort((values.imag, values.real))
    groups: list[list[int]] = []
    for idx in order:
        placed = False
        for g in groups:
            if np.min(np.abs(values[g] - values[idx])) <= tol:
                g.append(int(idx))
                placed = True
                break
        if not placed:
            groups.append([int(idx)])
    # single linkage may need a merge pass
    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                d = np.min(np.abs(values[groups[i]][:, None] - values[groups[j]][None, :]))
                if d <= tol:
                    groups[i].extend(groups.pop(j))
                    merged = True
                    break
            if merged:
                break
    return [np.array(sorted(g)) for g in groups]


def complex_orthonormal(vectors: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    return orth(np.asarray(vectors, dtype=complex), rtol)


def intersect(u: np.ndarray, v: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of span(u) ∩ span(v) (columns)."""
    if u.shape[1] == 0 or v.shape[1] == 0:
        return np.zeros((u.shape[0], 0), dtype=np.result_type(u, v))
    qu = orth(u)
    qv = orth(v)
    k = null_space(np.hstack([qu, -qv]), rtol)
    return orth(qu @ k[: qu.shape[1]])


def solve_in_span(basis: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares coefficients of ``x`` in ``basis`` and the relative residual."""
    c, *_ = sla.lstsq(basis, x)
    res = np.linalg.norm(basis @ c - x) / max(np.linalg.norm(x), 1e-300)
    return c, float(res)
