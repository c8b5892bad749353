"""Cross-checks of the closed forms against the oracle, shared by the CLI and the tests."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import catalog, hermann, liealg, oracle, orbits, pairs, roots
from .errors import SymOrbitsError

GENERIC_MARGIN = 1e-6
SPECTRUM_DET_TOL = 1e-8
SPECTRUM_FD_TOL = 1e-4
FOCAL_TOL = 1e-6
FOCAL_WINDOW = 8.0
HERMANN_TOL = 1e-8
JACOBI_TOL = 1e-6
ROOT_TOL = 1e-8


@dataclass(frozen=True)
class PairConfig:
    space: str
    sigma_prime: str | None = None

    @property
    def name(self) -> str:
        return self.space if self.sigma_prime is None else f"{self.space}; sigma'={self.sigma_prime}"

    def build(self) -> pairs.SymmetricPairData:
        inst = catalog.find_instance(self.space)
        family, params, recipe = inst.realization()
        alg = liealg.construct_algebra(family, params)
        pair = pairs.build_pair_from_involution(pairs.involution_from_recipe(alg, recipe), label=inst.space)
        if self.sigma_prime is not None:
            pair = pairs.hermann_setup(pair, self.sigma_prime)
        return pair

    def algebra_dim(self) -> int:
        family, params, _ = catalog.find_instance(self.space).realization()
        return liealg.expected_dim(family, params)


# one pair per classical family, parameters at most 4
ISOTROPY_CONFIGS = (
    PairConfig("SL(3,R)/SO0(1,2)"),
    PairConfig("SU(1,2)/SO0(1,2)"),
    PairConfig("SU*(4)/Sp(1,1)"),
    PairConfig("SO0(1,4)/SO0(0,2)xSO0(1,2)"),
    PairConfig("SO*(6)/SO(3,C)"),
    PairConfig("Sp(2,R)/SL(2,R).U(1)"),
    PairConfig("Sp(1,1)/SU(1,1).U(1)"),
    PairConfig("SL(2,C)/SU(1,1)"),
    PairConfig("SO(3,C)/SO0(1,2)"),
    PairConfig("Sp(1,C)/Sp(1,R)"),
)

HERMANN_CONFIGS = (
    PairConfig("SL(3,R)/SO0(1,2)", "theta"),
    PairConfig("SU(1,2)/SO0(1,2)", "theta"),
    PairConfig("Sp(2,R)/SL(2,R).U(1)", "theta"),
    PairConfig("SL(4,R)/SO0(2,2)", "Sp(2,R)"),
    PairConfig("SO0(1,4)/SO0(0,2)xSO0(1,2)", "theta"),
)


# ---------------------------------------------------------------------------
# sampling and matching


def generic_coefficients(system: roots.RestrictedRootSystem, rng: np.random.Generator, margin: float = GENERIC_MARGIN, tries: int = 1000) -> np.ndarray:
    """Cartan coordinates whose root values stay ``margin`` away from ``sqrt(-1) pi Z``."""
    for _ in range(tries):
        t = rng.uniform(-1.0, 1.0, system.cartan.dim)
        if all(orbits._lattice_distance(r(t)) > margin for r in system.roots):
            return t
    raise SymOrbitsError("no generic sample found")


def match_error(closed: np.ndarray, other: np.ndarray) -> float:
    """Largest relative deviation ``|x - y| / max(1, |x|)`` under the best pairing."""
    closed = np.asarray(closed, dtype=complex)
    other = np.asarray(other, dtype=complex)
    if closed.shape != other.shape:
        return float("inf")
    if closed.size == 0:
        return 0.0
    cost = np.abs(closed[:, None] - other[None, :]) / np.maximum(1.0, np.abs(closed))[:, None]
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


# ---------------------------------------------------------------------------
# individual checks


def root_check(pair: pairs.SymmetricPairData, seed: int = 0) -> dict:
    cartan = roots.maximal_abelian(pair, "q", seed=seed)
    system = roots.restricted_roots(pair, cartan, "q", seed=seed)
    brute = oracle.brute_force_roots(pair, cartan)
    if len(brute.roots) != len(system.roots):
        return {"ok": False, "error": float("inf"), "detail": "root counts differ"}
    a = np.array([r.values for r in system.roots]).reshape(len(system.roots), -1)
    b = np.array([r.values for r in brute.roots]).reshape(len(brute.roots), -1)
    # roots come in +- pairs; compare up to sign
    cost = np.minimum(np.abs(a[:, None] - b[None]).max(-1), np.abs(a[:, None] + b[None]).max(-1)) if len(a) else np.zeros((0, 0))
    r, c = linear_sum_assignment(cost)
    err = float(cost[r, c].max()) if len(r) else 0.0
    mults = all(system.roots[i].mult == brute.roots[j].mult for i, j in zip(r, c))
    dim_q, total = system.completeness()
    ok = err <= ROOT_TOL and mults and total == dim_q and brute.total == dim_q
    return {"ok": bool(ok), "error": err}


def spectrum_check(pair, cartan, system, tw, ta, fd: bool = True, h: float = 1e-5) -> dict:
    """Closed-form isotropy spectrum against the determinant and the variation estimates."""
    w, a = cartan.element(tw), cartan.element(ta)
    spec = orbits.isotropy_shape_spectrum(orbits.OrbitPoint(pair, w), a, system)
    det_err = match_error(spec.eigenvalues(), oracle.determinant_shape_eigenvalues(pair, w, a))
    fd_err = 0.0
    if fd:
        for e in spec.entries:
            for y in e.space.T:
                z = oracle.generator_for_tangent(pair, w, y)
                est = oracle.variation_shape_estimate(pair, w, a, z, h=h)
                fd_err = max(fd_err, abs(est - e.eigenvalue) / max(1.0, abs(e.eigenvalue)))
    ok = det_err <= SPECTRUM_DET_TOL and fd_err <= SPECTRUM_FD_TOL
    return {"ok": bool(ok), "det_error": det_err, "fd_error": fd_err}


def focal_check(pair, cartan, system, tw, ta, window: float = FOCAL_WINDOW, seed: int = 0) -> dict:
    """Closed-form focal lattice against the determinant scan, both ways, with multiplicities."""
    w, a = cartan.element(tw), cartan.element(ta)
    focal = orbits.complex_focal_radii(orbits.OrbitPoint(pair, w), a, system, window)
    report = oracle.determinant_focal_scan(oracle.shape_focal_family(pair, w, a), window, seed=seed)
    missing = [z for z, m in focal.window if not any(abs(z - y) <= FOCAL_TOL and m == k for y, k in report.zeros_found)]
    extra = [y for y, k in report.zeros_found if not any(abs(z - y) <= FOCAL_TOL and m == k for z, m in focal.window)]
    ok = not missing and not extra
    return {"ok": ok, "closed": len(focal.window), "scanned": len(report.zeros_found), "missing": missing, "extra": extra, "report": report}


def hermann_check(config: hermann.HermannConfiguration, w: np.ndarray, v: np.ndarray) -> dict:
    """Eigenbasis residual, commutator with the Jacobi operator and avoidance margin.

    The shape matrix comes from the oracle; the eigenvectors and eigenvalues
    from the closed form.
    """
    pair = config.pair
    spec = hermann.hermann_orbit_spectrum(config, w, v)
    shape = oracle.algebraic_shape_operator(pair, w, v, acting="h'")
    tangent = shape.tangent.astype(complex)
    vecs, lam = orbits.operator_from_spectrum(spec)
    coords, *_ = np.linalg.lstsq(tangent, vecs, rcond=None)
    span_res = np.linalg.norm(tangent @ coords - vecs) / max(np.linalg.norm(vecs), 1e-300)
    amat = shape.matrix
    resid = np.linalg.norm(amat @ coords - coords @ lam) / max(np.linalg.norm(amat) * np.linalg.norm(coords), 1e-300)
    ad = pair.algebra.ad(v)
    rmat, _ = orbits.restricted_operator(-(ad @ ad), shape.tangent)
    comm = np.linalg.norm(amat @ rmat - rmat @ amat)
    scale = np.linalg.norm(amat) * np.linalg.norm(rmat)
    comm_rel = float(comm / scale) if scale > 0 else float(comm)
    margin = hermann.avoidance_margin(config, spec, v)
    ok = span_res <= HERMANN_TOL and resid <= HERMANN_TOL and comm_rel <= HERMANN_TOL and margin >= GENERIC_MARGIN
    return {"ok": bool(ok), "span_residual": float(span_res), "eigen_residual": float(resid), "commutator": comm_rel, "margin": float(margin)}


def jacobi_check(pair, cartan, system, tv, rng: np.random.Generator, steps: int = 1000) -> dict:
    """Closed-form strongly Jacobi field against RK4 at ``s = 0.5, 1, 2``."""
    alg = pair.algebra
    v = cartan.element(tv)
    q = pair.subspace("q").orthonormal
    x = q @ rng.normal(size=q.shape[1])
    ax = q @ rng.normal(size=q.shape[1])
    traj = oracle.jacobi_integrate(alg, v, x, -ax, 2.0, steps)
    err = 0.0
    for s in (0.5, 1.0, 2.0):
        y = orbits.strong_jacobi_field(alg, v, x, ax, s)
        err = max(err, float(np.linalg.norm(traj.at(s) - y) / max(1.0, np.linalg.norm(y))))
    return {"ok": err <= JACOBI_TOL, "error": err}


# ---------------------------------------------------------------------------
# suites


def _setup(cfg: PairConfig, seed: int):
    pair = cfg.build()
    cartan = roots.maximal_abelian(pair, "q", seed=seed)
    system = roots.restricted_roots(pair, cartan, "q", seed=seed)
    return pair, cartan, system


def run_suite(suite: str, max_dim: int, seed: int, samples: int = 3) -> dict:
    """Run the named checks on the built-in configurations with algebra dimension at most ``max_dim``."""
    suites = ("roots", "spectrum", "focal", "hermann", "jacobi") if suite == "all" else (suite,)
    rng = np.random.default_rng(seed)
    checks = []

    def record(kind, cfg, result):
        entry = {"suite": kind, "pair": cfg.name, "ok": bool(result["ok"])}
        for key, val in result.items():
            if isinstance(val, (int, float)) and not isinstance(val, bool):
                entry[key] = float(format(val, ".12g")) if isinstance(val, float) else val
        checks.append(entry)

    for kind in suites:
        configs = HERMANN_CONFIGS if kind == "hermann" else ISOTROPY_CONFIGS
        for cfg in configs:
            if cfg.algebra_dim() > max_dim:
                continue
            try:
                if kind == "hermann":
                    config = hermann.hermann_configuration(cfg.build(), seed=seed)
                    for _ in range(samples):
                        record(kind, cfg, hermann_check(config, config.random_generic(rng), config.random_generic(rng)))
                    continue
                pair, cartan, system = _setup(cfg, seed)
                if kind == "roots":
                    record(kind, cfg, root_check(pair, seed))
                for _ in range(samples if kind != "roots" else 0):
                    tw = generic_coefficients(system, rng)
                    ta = rng.uniform(-1.0, 1.0, cartan.dim)
                    if kind == "spectrum":
                        record(kind, cfg, spectrum_check(pair, cartan, system, tw, ta))
                    elif kind == "focal":
                        res = focal_check(pair, cartan, system, tw, ta)
                        record(kind, cfg, {k: v for k, v in res.items() if k in ("ok", "closed", "scanned")})
                    elif kind == "jacobi":
                        record(kind, cfg, jacobi_check(pair, cartan, system, ta, rng))
            except SymOrbitsError as exc:
                checks.append({"suite": kind, "pair": cfg.name, "ok": False, "error_code": exc.code, "message": str(exc)})
    return {"suite": suite, "max_dim": max_dim, "seed": seed, "checks": checks, "ok": all(c["ok"] for c in checks)}
