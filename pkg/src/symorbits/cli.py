"""Command-line front end: ``symorbits <verb> [options]``.

Output is JSON (sorted keys, floats with 12 significant digits) unless
``--csv`` is given.  Every JSON object carries ``schema_version``; the
matching schemas live in ``docs/schemas/v<version>/``.  Usage errors exit with status 2; computation errors
exit with status 1 and a JSON object ``{"error": {"code", "message"}}``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, TextIO

import numpy as np

from . import catalog, hermann, liealg, oracle, orbits, pairs, roots
from .errors import InvalidParams, SymOrbitsError

DEFAULT_SEED = 42
SCHEMA_VERSION = 1
VERIFY_SUITES = ("roots", "spectrum", "focal", "hermann", "jacobi", "all")


# ---------------------------------------------------------------------------
# serialization


def _real(x: float) -> float:
    v = float(format(float(x), ".12g"))
    return 0.0 if v == 0 else v


def _complex(z: complex) -> dict[str, float]:
    z = complex(z)
    return {"re": _real(z.real), "im": _real(z.imag)}


def _vector(v) -> list[float]:
    # coordinates below 1e-12 are round-off from the basis construction
    v = np.asarray(v, dtype=float)
    return [_real(x) for x in np.where(np.abs(v) < 1e-12, 0.0, v)]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# argument parsing


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from exc


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return v


def _add_space(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("pair")
    g.add_argument("--space", help='catalog descriptor "G/H", e.g. "SL(3,R)/SO0(1,2)"')
    g.add_argument("--algebra", help='algebra descriptor such as "sl(3,R)" (with --sigma)')
    g.add_argument("--sigma", help="involution recipe or subgroup name (with --algebra)")
    g.add_argument("--theta", help="Cartan involution recipe (default: the standard one)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def _add_point(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sigma-prime", dest="sigma_prime", help="second involution (Hermann action): recipe, subgroup, theta or sigma")
    p.add_argument("--w", type=_float_list, help="orbit point, coordinates in the emitted Cartan basis")
    p.add_argument("--a", type=_float_list, help="normal direction, coordinates in the emitted Cartan basis")
    p.add_argument("--tol", type=_positive, default=orbits.LATTICE_TOL, help="lattice tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symorbits", description="Orbit geometry of symmetric spaces.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("pairs", help="dimensions of h, q and their intersections")
    _add_space(p)
    p.add_argument("--sigma-prime", dest="sigma_prime")

    p = sub.add_parser("roots", help="restricted root system of a Cartan subspace")
    _add_space(p)
    p.add_argument("--within", default="q", choices=("q", "q&p", "q&f"))
    p.add_argument("--tol", type=_positive, default=1e-8)

    p = sub.add_parser("spectrum", help="shape operator spectrum of an orbit")
    _add_space(p)
    _add_point(p)

    p = sub.add_parser("focal", help="complex focal radii of an isotropy orbit")
    _add_space(p)
    _add_point(p)
    p.add_argument("--window", type=_positive, default=8.0)
    p.add_argument("--scan", action="store_true", help="also run the determinant scan")

    p = sub.add_parser("cohom", help="cohomogeneities of the K- and L-actions")
    _add_space(p)

    p = sub.add_parser("table", help="computed rows of a cohomogeneity table")
    p.add_argument("--id", dest="table_id", type=int, required=True, choices=range(1, 7), metavar="{1..6}")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("verify", help="cross-check closed forms against the oracle")
    p.add_argument("--suite", choices=VERIFY_SUITES, default="all")
    p.add_argument("--max-dim", dest="max_dim", type=int, default=20)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if hasattr(args, "space"):
        if args.space and (args.algebra or args.sigma):
            parser.error("--space excludes --algebra/--sigma")
        if not args.space and not (args.algebra and args.sigma):
            parser.error("give --space, or both --algebra and --sigma")
    if args.verb == "table" and args.bound < 0:
        parser.error("--bound must be nonnegative")
    if args.verb == "verify" and args.max_dim <= 0:
        parser.error("--max-dim must be positive")


# ---------------------------------------------------------------------------
# verbs


def _pair(args) -> tuple[pairs.SymmetricPairData, str]:
    if args.space:
        inst = catalog.find_instance(args.space)
        family, params, recipe = inst.realization()
        alg = liealg.construct_algebra(family, params)
        sigma = pairs.involution_from_recipe(alg, recipe)
        theta = pairs.involution_from_recipe(alg, args.theta) if args.theta else None
        return pairs.build_pair_from_involution(sigma, theta, label=inst.space), inst.space
    family, params = liealg.parse_algebra(args.algebra)
    alg = liealg.construct_algebra(family, params)
    pair = pairs.build_pair(alg, args.sigma, args.theta)
    label = f"{args.algebra}/{args.sigma}"
    return pair, label


def _with_sigma_prime(pair, spec):
    return pairs.hermann_setup(pair, spec) if spec else pair


def _root_json(root: roots.Root) -> dict:
    return {"values": [_complex(x) for x in root.values], "mult": int(root.mult)}


def _cartan_json(cartan: roots.CartanSubspace) -> dict:
    return {
        "basis": [_vector(c) for c in np.asarray(cartan.basis).T],
        "n_hyperbolic": int(cartan.n_hyperbolic),
        "within": cartan.selector,
    }


def cmd_pairs(args) -> dict:
    pair, label = _pair(args)
    pair = _with_sigma_prime(pair, args.sigma_prime)
    alg = pair.algebra
    return {
        "space": label,
        "algebra": {"family": alg.family, "params": list(alg.params), "dim": alg.dim},
        "dims": {s: pair.dim(s) for s in ("h", "q", "f", "p")},
        "intersections": pair.intersections(),
    }


def cmd_roots(args) -> dict:
    pair, label = _pair(args)
    cartan = roots.maximal_abelian(pair, args.within, seed=args.seed)
    system = roots.restricted_roots(pair, cartan, "q", rtol=args.tol, seed=args.seed)
    dim_q, total = system.completeness()
    return {
        "space": label,
        "cartan": _cartan_json(cartan),
        "roots": [_root_json(r) for r in system.roots],
        "zero_dim": int(system.zero_q.shape[1]),
        "completeness": {"sum": int(total), "dim_q": int(dim_q)},
    }


def _coords(name: str, given, dim: int, rng: np.random.Generator) -> np.ndarray:
    if given is None:
        return rng.uniform(-1.0, 1.0, dim)
    if len(given) != dim:
        raise InvalidParams(f"--{name} needs {dim} coordinates, got {len(given)}")
    return np.asarray(given, dtype=float)


def _spectrum_json(spec: orbits.OrbitSpectrum) -> dict:
    return {
        "entries": [
            {
                "root": None if e.root is None else [_complex(x) for x in e.root.values],
                "eigenvalue": _complex(e.eigenvalue),
                "mult": int(e.mult),
                "part": e.part,
            }
            for e in spec.entries
        ],
        "total_mult": int(spec.total_mult),
        "flagged": [{"root": [_complex(x) for x in r.values], "reason": why} for r, why in spec.flagged],
    }


def _isotropy_setup(args):
    pair, label = _pair(args)
    cartan = roots.maximal_abelian(pair, "q", seed=args.seed)
    system = roots.restricted_roots(pair, cartan, "q", seed=args.seed)
    rng = np.random.default_rng(args.seed)
    tw = _coords("w", args.w, cartan.dim, rng)
    ta = _coords("a", args.a, cartan.dim, rng)
    return pair, label, cartan, system, tw, ta


def cmd_spectrum(args) -> dict:
    if args.sigma_prime:
        pair, label = _pair(args)
        pair = pairs.hermann_setup(pair, args.sigma_prime)
        config = hermann.hermann_configuration(pair, seed=args.seed)
        rng = np.random.default_rng(args.seed)
        tw = args.w
        if tw is None:
            w = config.random_generic(rng)
            tw = config.system.coefficients(w)
        tw = _coords("w", tw, config.b.dim, rng)
        ta = _coords("a", args.a, config.b.dim, rng)
        spec = hermann.hermann_orbit_spectrum(config, config.b.element(tw), config.b.element(ta), tol=args.tol)
        out = _spectrum_json(spec)
        out.update(space=label, action="hermann", cartan=_cartan_json(config.b), w=_vector(tw), a=_vector(ta))
        out["avoidance_margin"] = _real(hermann.avoidance_margin(config, spec, config.b.element(ta)))
        return out
    pair, label, cartan, system, tw, ta = _isotropy_setup(args)
    point = orbits.OrbitPoint(pair, cartan.element(tw))
    spec = orbits.isotropy_shape_spectrum(point, cartan.element(ta), system, tol=args.tol)
    out = _spectrum_json(spec)
    out.update(space=label, action="isotropy", cartan=_cartan_json(cartan), w=_vector(tw), a=_vector(ta))
    return out


def cmd_focal(args) -> dict:
    if args.sigma_prime:
        raise InvalidParams("focal radii are computed for isotropy orbits; drop --sigma-prime")
    pair, label, cartan, system, tw, ta = _isotropy_setup(args)
    w, a = cartan.element(tw), cartan.element(ta)
    point = orbits.OrbitPoint(pair, w)
    focal = orbits.complex_focal_radii(point, a, system, args.window, tol=args.tol)
    out = {
        "space": label,
        "cartan": _cartan_json(cartan),
        "w": _vector(tw),
        "a": _vector(ta),
        "window_radius": _real(args.window),
        "families": [
            {"root": [_complex(x) for x in f.root.values], "offset": _complex(f.offset), "step": _complex(f.step), "mult": int(f.mult)}
            for f in focal.families
        ],
        "window": [{"z": _complex(z), "mult": int(m)} for z, m in focal.window],
    }
    if args.scan:
        out["scan"] = _scan_json(oracle.determinant_focal_scan(oracle.shape_focal_family(pair, w, a), args.window, seed=args.seed))
    return out


def _scan_json(rep: oracle.ScanReport) -> dict:
    return {
        "zeros_found": [{"z": _complex(z), "mult": int(m)} for z, m in rep.zeros_found],
        "grid_resolution": _real(rep.grid_resolution),
        "newton_iterations": int(rep.newton_iterations),
        "max_residual": _real(rep.max_residual),
        "divergences": int(rep.divergences),
        "winding": int(rep.winding),
        "cauchy_riemann": _real(rep.cauchy_riemann),
    }


def cmd_cohom(args) -> dict:
    pair, label = _pair(args)
    if args.space:
        inst = catalog.find_instance(args.space)
        row = hermann.cohomogeneity(pair, inst.space, inst.k_label, inst.l_label)
        exp_k, exp_l = inst.expected()
        out = row.as_dict()
        out["table"] = inst.row.table
        out["tabulated"] = {"cohom_K": exp_k, "cohom_L": exp_l}
        return out
    return hermann.cohomogeneity(pair, label).as_dict()


def cmd_table(args) -> dict | str:
    rows = hermann.generate_table(args.table_id, args.bound)
    if args.csv:
        return hermann.rows_to_csv(rows)
    return {"table": args.table_id, "bound": args.bound, "rows": [r.as_dict() for r in rows]}


def cmd_verify(args) -> tuple[dict, int]:
    from . import verify

    report = verify.run_suite(args.suite, args.max_dim, args.seed)
    return report, 0 if report["ok"] else 1


COMMANDS = {
    "pairs": cmd_pairs,
    "roots": cmd_roots,
    "spectrum": cmd_spectrum,
    "focal": cmd_focal,
    "cohom": cmd_cohom,
    "table": cmd_table,
}


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    """Parse ``argv``, execute the verb and write its output; returns the exit status."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        if args.verb == "verify":
            result, code = cmd_verify(args)
        else:
            result, code = COMMANDS[args.verb](args), 0
    except SymOrbitsError as exc:
        out.write(dumps({"error": {"code": exc.code, "message": str(exc)}, "schema_version": SCHEMA_VERSION}) + "\n")
        return 1
    if isinstance(result, str):
        out.write(result)
    else:
        out.write(dumps({**result, "schema_version": SCHEMA_VERSION}) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
