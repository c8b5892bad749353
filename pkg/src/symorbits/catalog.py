"""Classical symmetric pairs of the cohomogeneity tables.

Each row knows how to realize ``sigma`` on the matrix model of ``G`` (as a
recipe string understood by :func:`symorbits.pairs.involution_from_recipe`),
the display labels of ``G/H``, ``K`` and ``L``, and the integer formulas for
the cohomogeneities of the ``K``- and ``L``-actions as listed in the tables.
The labels are metadata; the integers are computed elsewhere from ranks.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidParams, UnsupportedFamily, UnsupportedSigma
from .liealg import MatrixLieAlgebra, expected_dim, parse_algebra


def _half(n: int) -> int:
    return n // 2


@dataclass(frozen=True)
class CatalogRow:
    """One parametrized row of a table.

    ``space``, ``k_label``, ``l_label`` and ``h_label`` map the parameter
    tuple to display strings; ``realize`` maps it to ``(family, params,
    sigma recipe)``; ``cohom_k``/``cohom_l`` are the tabulated formulas
    (``None`` where the table entry is ambiguous).
    """

    table: int
    key: str
    names: tuple[str, ...]
    space: Callable[..., str]
    h_label: Callable[..., str]
    k_label: Callable[..., str]
    l_label: Callable[..., str]
    realize: Callable[..., tuple[str, tuple[int, ...], str]]
    valid: Callable[..., bool]
    listed: Callable[..., bool]
    cohom_k: Callable[..., int] | None
    cohom_l: Callable[..., int] | None
    note: str = ""


@dataclass(frozen=True)
class RowInstance:
    row: CatalogRow
    params: tuple[int, ...]

    @property
    def space(self) -> str:
        return self.row.space(*self.params)

    @property
    def k_label(self) -> str:
        return self.row.k_label(*self.params)

    @property
    def l_label(self) -> str:
        return self.row.l_label(*self.params)

    @property
    def h_label(self) -> str:
        return self.row.h_label(*self.params)

    def realization(self) -> tuple[str, tuple[int, ...], str]:
        return self.row.realize(*self.params)

    def expected(self) -> tuple[int | None, int | None]:
        k = self.row.cohom_k(*self.params) if self.row.cohom_k else None
        l = self.row.cohom_l(*self.params) if self.row.cohom_l else None
        return k, l


def _simple_so(n: int) -> bool:
    # so(4) type algebras split; they are not irreducible rows
    return n >= 3 and n != 4


def _ijk(p, q, i, j):
    # nontrivial splitting, one representative of (i,j) ~ (p-i,q-j)
    if not (0 <= i <= p and 0 <= j <= q):
        return False
    if (i, j) in ((0, 0), (p, q)):
        return False
    return (i, j) <= (p - i, q - j)


ROWS: list[CatalogRow] = [
    # ---------------------------------------------------------------- table 1
    CatalogRow(
        1, "sl_R/so_pq", ("n", "p"),
        lambda n, p: f"SL({n},R)/SO0({p},{n - p})",
        lambda n, p: f"SO0({p},{n - p})",
        lambda n, p: f"SO({n})",
        lambda n, p: f"(SL({p},R)xSL({n - p},R)).R*",
        lambda n, p: ("sl_n_R", (n,), f"neg_transpose:signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: n - 1,
        lambda n, p: p,
    ),
    CatalogRow(
        1, "sl_R/sl_sl", ("n", "p"),
        lambda n, p: f"SL({n},R)/(SL({p},R)xSL({n - p},R)).R*",
        lambda n, p: f"(SL({p},R)xSL({n - p},R)).R*",
        lambda n, p: f"SO({n})",
        lambda n, p: f"SO0({p},{n - p})",
        lambda n, p: ("sl_n_R", (n,), f"inner:signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        1, "sl_R/sp_R", ("n",),
        lambda n: f"SL({2 * n},R)/Sp({n},R)",
        lambda n: f"Sp({n},R)",
        lambda n: f"SO({2 * n})",
        lambda n: f"SL({n},C).U(1)",
        lambda n: ("sl_n_R", (2 * n,), "neg_transpose:symplectic"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n - 1,
        lambda n: n // 2,
    ),
    CatalogRow(
        1, "sl_R/sl_C", ("n",),
        lambda n: f"SL({2 * n},R)/SL({n},C).U(1)",
        lambda n: f"SL({n},C).U(1)",
        lambda n: f"SO({2 * n})",
        lambda n: f"Sp({n},R)",
        lambda n: ("sl_n_R", (2 * n,), "inner:symplectic"),
        lambda n: n >= 1,
        lambda n: n >= 2,
        lambda n: n,
        lambda n: n // 2,
    ),
    CatalogRow(
        1, "su*/so*", ("n",),
        lambda n: f"SU*({2 * n})/SO*({2 * n})",
        lambda n: f"SO*({2 * n})",
        lambda n: f"Sp({n})",
        lambda n: f"SL({n},C).U(1)",
        lambda n: ("su_star_2n", (n,), "neg_transpose"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n - 1,
        lambda n: n,
    ),
    CatalogRow(
        1, "su*/sl_C", ("n",),
        lambda n: f"SU*({2 * n})/SL({n},C).U(1)",
        lambda n: f"SL({n},C).U(1)",
        lambda n: f"Sp({n})",
        lambda n: f"SO*({2 * n})",
        lambda n: ("su_star_2n", (n,), f"inner:signature({n},{n})"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n // 2,
        lambda n: n,
    ),
    CatalogRow(
        1, "su*/sp_pq", ("n", "p"),
        lambda n, p: f"SU*({2 * n})/Sp({p},{n - p})",
        lambda n, p: f"Sp({p},{n - p})",
        lambda n, p: f"Sp({n})",
        lambda n, p: f"SU*({2 * p})xSU*({2 * n - 2 * p})xU(1)",
        lambda n, p: ("su_star_2n", (n,), f"neg_conj_transpose:pq_signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: n - 1,
        lambda n, p: p,
    ),
    CatalogRow(
        1, "su*/su*su*", ("n", "p"),
        lambda n, p: f"SU*({2 * n})/(SU*({2 * p})xSU*({2 * n - 2 * p})xU(1))",
        lambda n, p: f"SU*({2 * p})xSU*({2 * n - 2 * p})xU(1)",
        lambda n, p: f"Sp({n})",
        lambda n, p: f"Sp({p},{n - p})",
        lambda n, p: ("su_star_2n", (n,), f"inner:pq_signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        1, "su_pq/so_pq", ("p", "q"),
        lambda p, q: f"SU({p},{q})/SO0({p},{q})",
        lambda p, q: f"SO0({p},{q})",
        lambda p, q: f"S(U({p})xU({q}))",
        lambda p, q: f"SO0({p},{q})",
        lambda p, q: ("su_p_q", (p, q), "conj"),
        lambda p, q: p >= 1 and q >= 1,
        lambda p, q: 1 <= p <= q,
        lambda p, q: p,
        None,
        "cohom_L is printed as n-1 with n undefined",
    ),
    CatalogRow(
        1, "su_pp/so*", ("p",),
        lambda p: f"SU({p},{p})/SO*({2 * p})",
        lambda p: f"SO*({2 * p})",
        lambda p: f"S(U({p})xU({p}))",
        lambda p: f"Sp({p},R)",
        lambda p: ("su_p_q", (p, p), "neg_transpose:swap"),
        lambda p: p >= 2,
        lambda p: p >= 2,
        lambda p: p,
        lambda p: p - 1,
    ),
    CatalogRow(
        1, "su_pp/sp_R", ("p",),
        lambda p: f"SU({p},{p})/Sp({p},R)",
        lambda p: f"Sp({p},R)",
        lambda p: f"S(U({p})xU({p}))",
        lambda p: f"SO*({2 * p})",
        lambda p: ("su_p_q", (p, p), "neg_transpose:symplectic"),
        lambda p: p >= 1,
        lambda p: p >= 2,
        lambda p: p // 2,
        lambda p: p - 1,
    ),
    CatalogRow(
        1, "su_pp/sl_C", ("p",),
        lambda p: f"SU({p},{p})/SL({p},C).U(1)",
        lambda p: f"SL({p},C).U(1)",
        lambda p: f"S(U({p})xU({p}))",
        lambda p: f"SL({p},C).U(1)",
        lambda p: ("su_p_q", (p, p), "inner:swap"),
        lambda p: p >= 1,
        lambda p: p >= 2,
        lambda p: p,
        lambda p: p - 1,
    ),
    CatalogRow(
        1, "su_pq/sp_pq", ("p", "q"),
        lambda p, q: f"SU({2 * p},{2 * q})/Sp({p},{q})",
        lambda p, q: f"Sp({p},{q})",
        lambda p, q: f"S(U({2 * p})xU({2 * q}))",
        lambda p, q: f"Sp({p},{q})",
        lambda p, q: ("su_p_q", (2 * p, 2 * q), f"neg_transpose:block_symplectic({p},{q})"),
        lambda p, q: p >= 1 and q >= 1,
        lambda p, q: 1 <= p <= q,
        lambda p, q: p,
        None,
        "cohom_L is printed as n-1 with n undefined",
    ),
    CatalogRow(
        1, "su_pq/s(uu)", ("p", "q", "i", "j"),
        lambda p, q, i, j: f"SU({p},{q})/S(U({i},{j})xU({p - i},{q - j}))",
        lambda p, q, i, j: f"S(U({i},{j})xU({p - i},{q - j}))",
        lambda p, q, i, j: f"S(U({p})xU({q}))",
        lambda p, q, i, j: f"S(U({p - i},{j})xU({i},{q - j}))",
        lambda p, q, i, j: ("su_p_q", (p, q), f"inner:signature({i},{p - i},{j},{q - j})"),
        lambda p, q, i, j: p >= 1 and q >= 1 and _ijk(p, q, i, j),
        lambda p, q, i, j: 1 <= p <= q and _ijk(p, q, i, j),
        lambda p, q, i, j: min(p - i, j) + min(i, q - j),
        lambda p, q, i, j: min(i, p - i) + min(j, q - j),
    ),
    # ---------------------------------------------------------------- table 2
    CatalogRow(
        2, "sl_C/so_C", ("n",),
        lambda n: f"SL({n},C)/SO({n},C)",
        lambda n: f"SO({n},C)",
        lambda n: f"SU({n})",
        lambda n: f"SL({n},R)",
        lambda n: ("sl_n_C_as_real", (n,), "neg_transpose"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n - 1,
        lambda n: n - 1,
    ),
    CatalogRow(
        2, "sl_C/sl_R", ("n",),
        lambda n: f"SL({n},C)/SL({n},R)",
        lambda n: f"SL({n},R)",
        lambda n: f"SU({n})",
        lambda n: f"SO({n},C)",
        lambda n: ("sl_n_C_as_real", (n,), "conj"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n // 2,
        lambda n: n - 1,
    ),
    CatalogRow(
        2, "sl_C/sl_sl", ("n", "p"),
        lambda n, p: f"SL({n},C)/(SL({p},C)xSL({n - p},C)xU(1))",
        lambda n, p: f"SL({p},C)xSL({n - p},C)xU(1)",
        lambda n, p: f"SU({n})",
        lambda n, p: f"SU({p},{n - p})",
        lambda n, p: ("sl_n_C_as_real", (n,), f"inner:signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        2, "sl_C/su_pq", ("n", "p"),
        lambda n, p: f"SL({n},C)/SU({p},{n - p})",
        lambda n, p: f"SU({p},{n - p})",
        lambda n, p: f"SU({n})",
        lambda n, p: f"SL({p},C)xSL({n - p},C)xU(1)",
        lambda n, p: ("sl_n_C_as_real", (n,), f"neg_conj_transpose:signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: n - 2,
        lambda n, p: p,
    ),
    CatalogRow(
        2, "sl_C/sp_C", ("n",),
        lambda n: f"SL({2 * n},C)/Sp({n},C)",
        lambda n: f"Sp({n},C)",
        lambda n: f"SU({2 * n})",
        lambda n: f"SU*({2 * n})",
        lambda n: ("sl_n_C_as_real", (2 * n,), "neg_transpose:symplectic"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n - 1,
        lambda n: n - 1,
    ),
    CatalogRow(
        2, "sl_C/su*", ("n",),
        lambda n: f"SL({2 * n},C)/SU*({2 * n})",
        lambda n: f"SU*({2 * n})",
        lambda n: f"SU({2 * n})",
        lambda n: f"Sp({n},C)",
        lambda n: ("sl_n_C_as_real", (2 * n,), "conj:symplectic"),
        lambda n: n >= 1,
        lambda n: n >= 2,
        lambda n: n,
        lambda n: n - 1,
    ),
    CatalogRow(
        2, "so_pq/so_so", ("p", "q", "i", "j"),
        lambda p, q, i, j: f"SO0({p},{q})/SO0({i},{j})xSO0({p - i},{q - j})",
        lambda p, q, i, j: f"SO0({i},{j})xSO0({p - i},{q - j})",
        lambda p, q, i, j: f"SO({p})xSO({q})",
        lambda p, q, i, j: f"SO0({p - i},{j})xSO0({i},{q - j})",
        lambda p, q, i, j: ("so_p_q", (p, q), f"inner:signature({i},{p - i},{j},{q - j})"),
        lambda p, q, i, j: p >= 1 and q >= 1 and _simple_so(p + q) and _ijk(p, q, i, j),
        lambda p, q, i, j: 1 <= p <= q and _simple_so(p + q) and _ijk(p, q, i, j),
        lambda p, q, i, j: min(p - i, j) + min(i, q - j),
        lambda p, q, i, j: min(i, p - i) + min(j, q - j),
    ),
    CatalogRow(
        2, "so_pp/so_C", ("p",),
        lambda p: f"SO0({p},{p})/SO({p},C)",
        lambda p: f"SO({p},C)",
        lambda p: f"SO({p})xSO({p})",
        lambda p: f"SL({p},R).U(1)",
        lambda p: ("so_p_q", (p, p), "inner:symplectic"),
        lambda p: p >= 3,
        lambda p: p >= 3,
        lambda p: p,
        lambda p: p // 2,
    ),
    CatalogRow(
        2, "so_pp/sl_R", ("p",),
        lambda p: f"SO0({p},{p})/SL({p},R).U(1)",
        lambda p: f"SL({p},R).U(1)",
        lambda p: f"SO({p})xSO({p})",
        lambda p: f"SO({p},C)",
        lambda p: ("so_p_q", (p, p), "inner:swap"),
        lambda p: p >= 3,
        lambda p: p >= 3,
        lambda p: p // 2,
        lambda p: p // 2,
    ),
    CatalogRow(
        2, "so_pq/u_pq", ("p", "q"),
        lambda p, q: f"SO0({2 * p},{2 * q})/SU({p},{q}).U(1)",
        lambda p, q: f"SU({p},{q}).U(1)",
        lambda p, q: f"SO({2 * p})xSO({2 * q})",
        lambda p, q: f"SU({p},{q}).U(1)",
        lambda p, q: ("so_p_q", (2 * p, 2 * q), f"inner:block_symplectic({p},{q})"),
        lambda p, q: p >= 1 and q >= 1 and p + q >= 3,
        lambda p, q: 1 <= p <= q and p + q >= 3,
        lambda p, q: p,
        lambda p, q: p // 2 + q // 2,
    ),
    CatalogRow(
        2, "so*/so*so*", ("n", "p"),
        lambda n, p: f"SO*({2 * n})/SO*({2 * p})xSO*({2 * n - 2 * p})",
        lambda n, p: f"SO*({2 * p})xSO*({2 * n - 2 * p})",
        lambda n, p: f"U({n})",
        lambda n, p: f"SU({p},{n - p}).U(1)",
        lambda n, p: ("so_star_2n", (n,), f"inner:pq_signature({p},{n - p})"),
        lambda n, p: n >= 3 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        2, "so*/u_pq", ("n", "p"),
        lambda n, p: f"SO*({2 * n})/SU({p},{n - p}).U(1)",
        lambda n, p: f"SU({p},{n - p}).U(1)",
        lambda n, p: f"U({n})",
        lambda n, p: f"SO*({2 * p})xSO*({2 * n - 2 * p})",
        lambda n, p: ("so_star_2n", (n,), f"inner:symplectic*pq_signature({p},{n - p})"),
        lambda n, p: n >= 3 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p // 2 + (n - p) // 2,
        lambda n, p: p,
    ),
    CatalogRow(
        2, "so*/so_C", ("n",),
        lambda n: f"SO*({2 * n})/SO({n},C)",
        lambda n: f"SO({n},C)",
        lambda n: f"U({n})",
        lambda n: f"SO({n},C)",
        lambda n: ("so_star_2n", (n,), f"inner:signature({n},{n})"),
        lambda n: n >= 3,
        lambda n: n >= 3,
        lambda n: n // 2,
        lambda n: n,
    ),
    CatalogRow(
        2, "so*/su*", ("n",),
        lambda n: f"SO*({4 * n})/SU*({2 * n}).U(1)",
        lambda n: f"SU*({2 * n}).U(1)",
        lambda n: f"U({2 * n})",
        lambda n: f"SU*({2 * n}).U(1)",
        lambda n: ("so_star_2n", (2 * n,), f"inner:block_symplectic({n},{-n})"),
        lambda n: n >= 2,
        lambda n: n >= 2,
        lambda n: n - 1,
        lambda n: n - 1,
    ),
    CatalogRow(
        2, "so_C/so_so", ("n", "p"),
        lambda n, p: f"SO({n},C)/SO({p},C)xSO({n - p},C)",
        lambda n, p: f"SO({p},C)xSO({n - p},C)",
        lambda n, p: f"SO({n})",
        lambda n, p: f"SO0({p},{n - p})",
        lambda n, p: ("so_n_C_as_real", (n,), f"inner:signature({p},{n - p})"),
        lambda n, p: _simple_so(n) and 1 <= p < n,
        lambda n, p: _simple_so(n) and 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        2, "so_C/so_pq", ("n", "p"),
        lambda n, p: f"SO({n},C)/SO0({p},{n - p})",
        lambda n, p: f"SO0({p},{n - p})",
        lambda n, p: f"SO({n})",
        lambda n, p: f"SO({p},C)xSO({n - p},C)",
        lambda n, p: ("so_n_C_as_real", (n,), f"conj:signature({p},{n - p})"),
        lambda n, p: _simple_so(n) and 1 <= p < n,
        lambda n, p: _simple_so(n) and 1 <= p <= n / 2,
        lambda n, p: p // 2 + (n - p) // 2,
        lambda n, p: p,
    ),
    CatalogRow(
        2, "so_C/gl_C", ("n",),
        lambda n: f"SO({2 * n},C)/SL({n},C).SO(2,C)",
        lambda n: f"SL({n},C).SO(2,C)",
        lambda n: f"SO({2 * n})",
        lambda n: f"SO*({2 * n})",
        lambda n: ("so_n_C_as_real", (2 * n,), "inner:symplectic"),
        lambda n: n >= 3,
        lambda n: n >= 3,
        lambda n: n // 2,
        lambda n: n // 2,
    ),
    CatalogRow(
        2, "so_C/so*", ("n",),
        lambda n: f"SO({2 * n},C)/SO*({2 * n})",
        lambda n: f"SO*({2 * n})",
        lambda n: f"SO({2 * n})",
        lambda n: f"SL({n},C).SO(2,C)",
        lambda n: ("so_n_C_as_real", (2 * n,), "conj:symplectic"),
        lambda n: n >= 3,
        lambda n: n >= 3,
        lambda n: n,
        lambda n: n // 2,
    ),
    # ---------------------------------------------------------------- table 3
    CatalogRow(
        3, "sp_R/u_pq", ("n", "p"),
        lambda n, p: f"Sp({n},R)/SU({p},{n - p}).U(1)",
        lambda n, p: f"SU({p},{n - p}).U(1)",
        lambda n, p: f"U({n})",
        lambda n, p: f"Sp({p},R)xSp({n - p},R)",
        lambda n, p: ("sp_n_R", (n,), f"inner:symplectic*pq_signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: n,
        lambda n, p: p,
    ),
    CatalogRow(
        3, "sp_R/sp_sp", ("n", "p"),
        lambda n, p: f"Sp({n},R)/Sp({p},R)xSp({n - p},R)",
        lambda n, p: f"Sp({p},R)xSp({n - p},R)",
        lambda n, p: f"U({n})",
        lambda n, p: f"SU({p},{n - p}).U(1)",
        lambda n, p: ("sp_n_R", (n,), f"inner:pq_signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        3, "sp_R/gl_R", ("n",),
        lambda n: f"Sp({n},R)/SL({n},R).U(1)",
        lambda n: f"SL({n},R).U(1)",
        lambda n: f"U({n})",
        lambda n: f"SL({n},R).U(1)",
        lambda n: ("sp_n_R", (n,), f"inner:signature({n},{n})"),
        lambda n: n >= 1,
        lambda n: n >= 2,
        lambda n: n - 1,
        lambda n: n - 1,
    ),
    CatalogRow(
        3, "sp_R/sp_C", ("n",),
        lambda n: f"Sp({2 * n},R)/Sp({n},C)",
        lambda n: f"Sp({n},C)",
        lambda n: f"U({2 * n})",
        lambda n: f"Sp({n},C)",
        lambda n: ("sp_n_R", (2 * n,), f"inner:block_symplectic({n},{-n})"),
        lambda n: n >= 1,
        lambda n: n >= 1,
        lambda n: n,
        lambda n: n,
    ),
    CatalogRow(
        3, "sp_pq/u_pq", ("p", "q"),
        lambda p, q: f"Sp({p},{q})/SU({p},{q}).U(1)",
        lambda p, q: f"SU({p},{q}).U(1)",
        lambda p, q: f"Sp({p})xSp({q})",
        lambda p, q: f"SU({p},{q}).U(1)",
        lambda p, q: ("sp_p_q", (p, q), f"inner:signature({p + q},{p + q})"),
        lambda p, q: p >= 1 and q >= 1,
        lambda p, q: 1 <= p <= q,
        lambda p, q: p,
        lambda p, q: p + q,
    ),
    CatalogRow(
        3, "sp_pp/su*", ("p",),
        lambda p: f"Sp({p},{p})/SU*({2 * p}).U(1)",
        lambda p: f"SU*({2 * p}).U(1)",
        lambda p: f"Sp({p})xSp({p})",
        lambda p: f"Sp({p},C)",
        lambda p: ("sp_p_q", (p, p), f"inner:block_swap({p},{-p})"),
        lambda p: p >= 1,
        lambda p: p >= 1,
        lambda p: p,
        lambda p: p,
    ),
    CatalogRow(
        3, "sp_pp/sp_C", ("p",),
        lambda p: f"Sp({p},{p})/Sp({p},C)",
        lambda p: f"Sp({p},C)",
        lambda p: f"Sp({p})xSp({p})",
        lambda p: f"SU*({2 * p}).U(1)",
        lambda p: ("sp_p_q", (p, p), f"inner:block_swap({p},{p})"),
        lambda p: p >= 1,
        lambda p: p >= 1,
        lambda p: p - 1,
        lambda p: p,
    ),
    CatalogRow(
        3, "sp_pq/sp_sp", ("p", "q", "i", "j"),
        lambda p, q, i, j: f"Sp({p},{q})/Sp({i},{j})xSp({p - i},{q - j})",
        lambda p, q, i, j: f"Sp({i},{j})xSp({p - i},{q - j})",
        lambda p, q, i, j: f"Sp({p})xSp({q})",
        lambda p, q, i, j: f"Sp({p - i},{j})xSp({i},{q - j})",
        lambda p, q, i, j: ("sp_p_q", (p, q), f"inner:double_signature({i},{p - i},{j},{q - j})"),
        lambda p, q, i, j: p >= 1 and q >= 1 and _ijk(p, q, i, j),
        lambda p, q, i, j: 1 <= p <= q and _ijk(p, q, i, j),
        lambda p, q, i, j: min(p - i, j) + min(i, q - j),
        lambda p, q, i, j: min(i, p - i) + min(j, q - j),
    ),
    CatalogRow(
        3, "sp_C/gl_C", ("n",),
        lambda n: f"Sp({n},C)/SL({n},C).SO(2,C)",
        lambda n: f"SL({n},C).SO(2,C)",
        lambda n: f"Sp({n})",
        lambda n: f"Sp({n},R)",
        lambda n: ("sp_n_C_as_real", (n,), f"inner:signature({n},{n})"),
        lambda n: n >= 1,
        lambda n: n >= 2,
        lambda n: n,
        lambda n: n,
    ),
    CatalogRow(
        3, "sp_C/sp_R", ("n",),
        lambda n: f"Sp({n},C)/Sp({n},R)",
        lambda n: f"Sp({n},R)",
        lambda n: f"Sp({n})",
        lambda n: f"SL({n},C).SO(2,C)",
        lambda n: ("sp_n_C_as_real", (n,), "conj"),
        lambda n: n >= 1,
        lambda n: n >= 1,
        lambda n: n,
        lambda n: n,
    ),
    CatalogRow(
        3, "sp_C/sp_sp", ("n", "p"),
        lambda n, p: f"Sp({n},C)/Sp({p},C)xSp({n - p},C)",
        lambda n, p: f"Sp({p},C)xSp({n - p},C)",
        lambda n, p: f"Sp({n})",
        lambda n, p: f"Sp({p},{n - p})",
        lambda n, p: ("sp_n_C_as_real", (n,), f"inner:pq_signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: p,
        lambda n, p: p,
    ),
    CatalogRow(
        3, "sp_C/sp_pq", ("n", "p"),
        lambda n, p: f"Sp({n},C)/Sp({p},{n - p})",
        lambda n, p: f"Sp({p},{n - p})",
        lambda n, p: f"Sp({n})",
        lambda n, p: f"Sp({p},C)xSp({n - p},C)",
        lambda n, p: ("sp_n_C_as_real", (n,), f"neg_conj_transpose:pq_signature({p},{n - p})"),
        lambda n, p: n >= 2 and 1 <= p < n,
        lambda n, p: 1 <= p <= n / 2,
        lambda n, p: n,
        lambda n, p: p,
    ),
]


def rows_for_table(table_id: int) -> list[CatalogRow]:
    if table_id not in (1, 2, 3):
        raise UnsupportedFamily(f"table {table_id} is not a classical table")
    return [r for r in ROWS if r.table == table_id]


def instances(table_id: int, bound: int, listed_only: bool = True) -> list[RowInstance]:
    """All parameter tuples with every parameter at most ``bound``.

    Parameters are the letters of the row (``n``, ``p``, ``q``, ``i``, ``j``);
    the bound applies to each of them, which keeps the largest algebras at
    the size of ``sp(6,6)``.
    """
    out = []
    for row in rows_for_table(table_id):
        for params in itertools.product(range(0, bound + 1), repeat=len(row.names)):
            ok = row.valid(*params) and (row.listed(*params) if listed_only else True)
            if ok:
                out.append(RowInstance(row, params))
    return out


# descriptors -----------------------------------------------------------------

def normalize_label(text: str) -> str:
    s = text.replace("×", "x").replace("·", ".").replace("∗", "*").replace("₀", "0")
    s = re.sub(r"\s+", "", s).lower()
    s = s.replace("so0(", "so(")
    s = s.replace("r_*", "r*")
    return s


_GROUP_RE = re.compile(r"^(sl|su\*|su|so\*|so0|so|sp)\((\d+)(?:,(\d+|r|c))?\)$")


def parse_group(text: str) -> tuple[str, tuple[int, ...]]:
    """Group descriptor ``SL(3,R)``, ``SO0(2,3)``, ``Sp(2,C)`` to an algebra."""
    s = normalize_label(text)
    return parse_algebra(s)


def find_instance(space: str, max_param: int = 12) -> RowInstance:
    """Resolve ``"G/H"`` to a catalog row instance."""
    if "/" not in space:
        raise InvalidParams(f"pair descriptor {space!r} needs the form G/H")
    g_text, h_text = space.split("/", 1)
    family, params = parse_group(g_text)
    target_h = _strip_outer(normalize_label(h_text))
    return _match(family, params, target_h, max_param, space)


def _strip_outer(s: str) -> str:
    while s.startswith("(") and _balanced_outer(s):
        s = s[1:-1]
    return s


def _balanced_outer(s: str) -> bool:
    depth = 0
    for k, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and k < len(s) - 1:
            return False
    return s.endswith(")")


def _match(family: str, params: tuple[int, ...], target_h: str, max_param: int, text: str) -> RowInstance:
    for row in ROWS:
        for combo in itertools.product(range(0, max_param + 1), repeat=len(row.names)):
            if not row.valid(*combo):
                continue
            fam, alg_params, _ = row.realize(*combo)
            if fam != family or alg_params != params:
                continue
            if _strip_outer(normalize_label(row.h_label(*combo))) == target_h:
                return RowInstance(row, combo)
    raise UnsupportedSigma(f"no catalog entry for {text!r}")


def sigma_recipe_for_subgroup(algebra: MatrixLieAlgebra, h_text: str) -> str | None:
    """Recipe for sigma when ``h_text`` names a catalog subgroup of ``algebra``."""
    target = _strip_outer(normalize_label(h_text))
    if ":" in h_text or not re.search(r"[A-Za-z]+\(", h_text):
        return None
    bound = max(algebra.ambient_size, 2)
    inst = _match(algebra.family, algebra.params, target, bound, h_text)
    return inst.realization()[2]


# label dimensions ------------------------------------------------------------

_FACTOR_RE = re.compile(r"^(sl|su\*|su|so\*|so|sp|u|gl)\((\d+)(?:,(\d+|r|c))?\)$")


def label_dimension(label: str) -> int:
    """Real dimension of a group label such as ``S(U(1,2)xU(2))`` or ``SL(3,C).U(1)``."""
    s = normalize_label(label)
    return _dim_expr(s)


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "x.":
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p for p in parts if p]


def _dim_expr(s: str) -> int:
    parts = _split_top(s)
    if len(parts) > 1:
        return sum(_dim_expr(p) for p in parts)
    s = parts[0]
    if s in ("r*", "r"):
        return 1
    if s.startswith("s(") and s.endswith(")"):
        return _dim_expr(s[2:-1]) - 1
    if s.startswith("(") and _balanced_outer(s):
        return _dim_expr(s[1:-1])
    m = _FACTOR_RE.match(s)
    if not m:
        raise InvalidParams(f"cannot size group label {s!r}")
    head, a, b = m.group(1), int(m.group(2)), m.group(3)
    if head == "u":
        n = a + (int(b) if b and b.isdigit() else 0)
        return n * n
    if head == "gl":
        return a * a * (2 if b == "c" else 1)
    fam, params = parse_algebra(s)
    return expected_dim(fam, params)
