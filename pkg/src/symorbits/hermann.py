"""Hermann-type actions: orbit spectra and the cohomogeneity tables.

A Hermann configuration is a pair with a second involution ``sigma'``
commuting with ``sigma`` and ``theta``.  The orbits of ``H'`` through
``exp(w)H`` with ``w`` in a Cartan subspace ``b`` of ``q & q'`` have normal
space ``b`` and tangent space split along the roots of ``b`` on ``q^c``
into an ``h'`` part and a ``q'`` part.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import catalog, liealg, pairs, roots
from .errors import InvalidParams, NonSemisimpleW, SingularDirection, UnsupportedFamily
from .orbits import LATTICE_TOL, OrbitSpectrum, SpectrumEntry, _lattice_distance
from .pairs import SymmetricPairData

MAX_TABLE_BOUND = 8
GENERIC_MARGIN = 1e-6
CSV_COLUMNS = ("space", "K", "L", "cohom_K", "cohom_L")


@dataclass(frozen=True, eq=False)
class RootSplit:
    root: roots.Root
    h_prime: np.ndarray
    q_prime: np.ndarray


@dataclass(frozen=True, eq=False)
class HermannConfiguration:
    """Pair with ``sigma'``, a Cartan subspace ``b`` of ``q & q'`` and the root splittings."""

    pair: SymmetricPairData
    b: roots.CartanSubspace
    system: roots.RestrictedRootSystem
    splits: list[RootSplit]
    zero_h_prime: np.ndarray
    zero_q_prime: np.ndarray

    def split_residual(self) -> int:
        """``sum_beta |dim q_beta - dim(q_beta & h') - dim(q_beta & q')|``."""
        return sum(abs(s.root.mult - s.h_prime.shape[1] - s.q_prime.shape[1]) for s in self.splits)

    def random_generic(self, rng: np.random.Generator, margin: float = GENERIC_MARGIN, tries: int = 1000) -> np.ndarray:
        """Random element of ``b`` whose root values keep ``margin`` off every singular lattice."""
        for _ in range(tries):
            t = rng.uniform(-1.5, 1.5, self.b.dim)
            if all(_generic_value(s.root(t), margin) for s in self.splits):
                return self.b.element(t)
        raise SingularDirection("no generic element found")


def _generic_value(x: complex, margin: float) -> bool:
    # the q' branch is singular on sqrt(-1) pi Z, the h' branch on sqrt(-1)(pi/2 + pi Z)
    return _lattice_distance(x) > margin and _lattice_distance(x, np.pi / 2) > margin


def _sigma_prime_part(pair: SymmetricPairData, space: np.ndarray, sign: int) -> np.ndarray:
    if space.shape[1] == 0:
        return space
    proj = 0.5 * (np.eye(pair.algebra.dim) + sign * pair.sigma_prime.matrix)
    img = proj @ space
    return roots._linalg.orth(img, rtol=1e-9, atol=1e-9 * max(1.0, np.linalg.norm(space)))


def hermann_configuration(pair: SymmetricPairData, seed: int = 0) -> HermannConfiguration:
    """Build ``b`` in ``q & q'`` and split every root space of ``b`` on ``q^c`` by ``sigma'``."""
    if pair.sigma_prime is None:
        raise InvalidParams("the pair has no sigma' (use hermann_setup)")
    b = roots.maximal_abelian(pair, "q&q'", seed=seed)
    system = roots.restricted_roots(pair, b, "q", seed=seed)
    splits = [
        RootSplit(r, _sigma_prime_part(pair, r.q_space, 1), _sigma_prime_part(pair, r.q_space, -1))
        for r in system.roots
    ]
    zq = system.zero_q
    return HermannConfiguration(pair, b, system, splits, _sigma_prime_part(pair, zq, 1), _sigma_prime_part(pair, zq, -1))


def hermann_orbit_spectrum(config: HermannConfiguration, w: np.ndarray, v: np.ndarray, tol: float = LATTICE_TOL) -> OrbitSpectrum:
    """Shape spectrum of the ``H'``-orbit through ``exp(w)H`` in the normal direction ``v``.

    ``sqrt(-1) beta(v) tan(sqrt(-1) beta(w))`` on ``q_beta & h'``,
    ``-sqrt(-1) beta(v) / tan(sqrt(-1) beta(w))`` on ``q_beta & q'`` and 0 on
    ``z_q(b) & h'``.
    """
    alg = config.pair.algebra
    w = np.asarray(w, dtype=float)
    if not liealg.is_semisimple_operator(alg.ad(w)):
        raise NonSemisimpleW("ad(w) is not semisimple")
    tw = config.system.coefficients(w)
    tv = config.system.coefficients(np.asarray(v, dtype=float))
    entries = []
    for s in config.splits:
        bw, bv = s.root(tw), s.root(tv)
        if s.h_prime.shape[1]:
            if _lattice_distance(bw, np.pi / 2) <= tol:
                raise SingularDirection("cos(sqrt(-1) beta(w)) vanishes on an h' root space")
            entries.append(SpectrumEntry(s.root, complex(1j * bv * np.tan(1j * bw)), s.h_prime.shape[1], "h_prime_part", s.h_prime))
        if s.q_prime.shape[1]:
            if _lattice_distance(bw) <= tol:
                raise SingularDirection("sin(sqrt(-1) beta(w)) vanishes on a q' root space")
            entries.append(SpectrumEntry(s.root, complex(-1j * bv / np.tan(1j * bw)), s.q_prime.shape[1], "q_part", s.q_prime))
    if config.zero_h_prime.shape[1]:
        entries.append(SpectrumEntry(None, 0j, config.zero_h_prime.shape[1], "zero_part", config.zero_h_prime))
    return OrbitSpectrum(entries)


def avoidance_margin(config: HermannConfiguration, spectrum: OrbitSpectrum, v: np.ndarray) -> float:
    """``min |lambda -+ beta(v)|`` over the eigenvalues ``lambda`` on each ``q_beta``."""
    tv = config.system.coefficients(np.asarray(v, dtype=float))
    margin = np.inf
    for e in spectrum.entries:
        if e.root is None:
            continue
        bv = e.root(tv)
        margin = min(margin, abs(e.eigenvalue - bv), abs(e.eigenvalue + bv))
    return float(margin)


# ---------------------------------------------------------------------------
# cohomogeneity


@dataclass(frozen=True)
class CohomogeneityRow:
    space: str
    K_group: str
    L_group: str
    cohom_K: int
    cohom_L: int

    def as_dict(self) -> dict:
        return {"space": self.space, "K": self.K_group, "L": self.L_group, "cohom_K": self.cohom_K, "cohom_L": self.cohom_L}


def cohomogeneity(pair: SymmetricPairData, space: str = "", k_label: str = "", l_label: str = "", seeds: int = 5) -> CohomogeneityRow:
    """``cohom_K = rank(q & p)`` and ``cohom_L = rank(q & f)``."""
    ck = roots.rank(pair, "q&p", seeds=seeds)
    cl = roots.rank(pair, "q&f", seeds=seeds)
    return CohomogeneityRow(space or pair.label, k_label, l_label, ck, cl)


def pair_for_instance(inst: catalog.RowInstance) -> SymmetricPairData:
    family, params, recipe = inst.realization()
    alg = liealg.construct_algebra(family, params)
    return pairs.build_pair_from_involution(pairs.involution_from_recipe(alg, recipe), label=inst.space)


def instance_row(inst: catalog.RowInstance, seeds: int = 5) -> CohomogeneityRow:
    return cohomogeneity(pair_for_instance(inst), inst.space, inst.k_label, inst.l_label, seeds=seeds)


def generate_table(table_id: int, param_bound: int, seeds: int = 5) -> list[CohomogeneityRow]:
    """Computed rows of a classical table with every parameter at most ``param_bound``."""
    if table_id in (4, 5, 6):
        raise UnsupportedFamily(f"table {table_id} lists exceptional groups, which have no matrix model here")
    if param_bound > MAX_TABLE_BOUND:
        raise InvalidParams(f"param_bound must be at most {MAX_TABLE_BOUND}")
    return [instance_row(inst, seeds) for inst in catalog.instances(table_id, param_bound)]


def paper_table(table_id: int, param_bound: int) -> list[tuple[catalog.RowInstance, int | None, int | None]]:
    """Rows with the tabulated formulas evaluated (``None`` for ambiguous entries)."""
    return [(inst, *inst.expected()) for inst in catalog.instances(table_id, param_bound)]


def rows_to_csv(rows: list[CohomogeneityRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.space, r.K_group, r.L_group, r.cohom_K, r.cohom_L])
    return buf.getvalue()


def read_csv(text: str) -> list[CohomogeneityRow]:
    reader = csv.DictReader(io.StringIO(text))
    out = []
    for rec in reader:
        out.append(CohomogeneityRow(rec["space"], rec["K"], rec["L"], int(rec["cohom_K"]), int(rec["cohom_L"])))
    return out
