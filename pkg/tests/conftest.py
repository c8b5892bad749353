from __future__ import annotations

import functools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from symorbits import liealg, pairs, roots
from symorbits.verify import PairConfig

settings.register_profile(
    "symorbits",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("symorbits")


@functools.lru_cache(maxsize=None)
def algebra(family: str, *params: int) -> liealg.MatrixLieAlgebra:
    return liealg.construct_algebra(family, params)


@functools.lru_cache(maxsize=None)
def catalog_pair(space: str, sigma_prime: str | None = None) -> pairs.SymmetricPairData:
    return PairConfig(space, sigma_prime).build()


@functools.lru_cache(maxsize=None)
def root_system(space: str, seed: int = 0) -> roots.RestrictedRootSystem:
    pair = catalog_pair(space)
    cartan = roots.maximal_abelian(pair, "q", seed=seed)
    return roots.restricted_roots(pair, cartan, "q", seed=seed)


@functools.lru_cache(maxsize=None)
def sl2_hyperbolic() -> pairs.SymmetricPairData:
    """sl(2,R) with h = span{H}, so q = span{E, F} contains E + F."""
    return pairs.build_pair(algebra("sl_n_R", 2), "signature(1,1)")


def sl2_elements() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    alg = algebra("sl_n_R", 2)
    h = alg.coords(np.diag([1.0, -1.0]))
    e = alg.coords(np.array([[0.0, 1.0], [0.0, 0.0]]))
    f = alg.coords(np.array([[0.0, 0.0], [1.0, 0.0]]))
    return h, e, f


@functools.lru_cache(maxsize=None)
def sl2_system() -> roots.RestrictedRootSystem:
    pair = sl2_hyperbolic()
    cartan = roots.maximal_abelian(pair, "q", seed=0)
    return roots.restricted_roots(pair, cartan, "q", seed=0)


# one algebra per family, small parameters
SMALL_ALGEBRAS = [
    ("sl_n_R", (3,)),
    ("su_p_q", (1, 2)),
    ("su_star_2n", (2,)),
    ("so_p_q", (1, 3)),
    ("so_star_2n", (3,)),
    ("sp_n_R", (2,)),
    ("sp_p_q", (1, 1)),
    ("sl_n_C_as_real", (2,)),
    ("so_n_C_as_real", (3,)),
    ("sp_n_C_as_real", (1,)),
]

SMALL_SPACES = [
    "SL(3,R)/SO0(1,2)",
    "SU(1,2)/SO0(1,2)",
    "SU*(4)/Sp(1,1)",
    "SO0(1,4)/SO0(0,2)xSO0(1,2)",
    "SO*(6)/SO(3,C)",
    "Sp(2,R)/SL(2,R).U(1)",
    "Sp(1,1)/SU(1,1).U(1)",
    "SL(2,C)/SU(1,1)",
    "SO(3,C)/SO0(1,2)",
    "Sp(1,C)/Sp(1,R)",
]


@pytest.fixture(params=SMALL_ALGEBRAS, ids=lambda p: f"{p[0]}{p[1]}")
def small_algebra(request) -> liealg.MatrixLieAlgebra:
    family, params = request.param
    return algebra(family, *params)


@pytest.fixture(params=SMALL_SPACES)
def small_space(request) -> str:
    return request.param
