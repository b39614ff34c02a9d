"""Command-line entry point: ``axicurv <subcommand> ...``.

Reports are JSON (keys sorted, so seeded runs are byte-identical); ladders can
also be written as CSV and as two-column plot-data files.  Exit status is 0 on
success, 1 when a guaranteed inequality or property fails beyond tolerance and
2 on bad input.

Profiles are given as a JSON file or as a preset: ``sphere:R``,
``dimple:R,eps`` or ``doublesphere:r,A0``.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import families, geometry, inequalities, rearrange, sampling, variation
from .mesh import export_mesh
from .profile import VALIDATE_TOL, NotAdmissibleError, ProfileError, dump_profile, load_profile, sphere_profile, validate

SUBCOMMANDS = ("validate", "summary", "rearrange", "check", "family", "variation", "export-mesh")
INEQUALITIES = ("minkowski", "absolute", "bonnesen", "critical", "all")
SEED_ENV = "AXICURV_SEED"
DEFAULT_STEPS = (1e-3, 5e-4, 2.5e-4)


class InputError(ValueError):
    """Bad command-line input; maps to exit status 2."""


@dataclass
class RunConfig:
    subcommand: str
    inputs: tuple = ()
    output: str = None
    tolerances: dict = field(default_factory=dict)
    n_grid: int = None
    seed: int = 0
    ladder: int = 0
    emit_profile: str = None
    emit_csv: str = None
    emit_plot_data: str = None
    options: dict = field(default_factory=dict)


def _json_default(obj):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(data):
    return json.dumps(data, indent=2, sort_keys=True, default=_json_default) + "\n"


def _floats(text, count, spec):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"bad numbers in {spec!r}") from None
    if len(vals) != count:
        raise InputError(f"{spec!r} needs {count} comma-separated numbers")
    return vals


def resolve_profile(spec):
    """Load a profile from a JSON path or a ``name:params`` preset."""
    name, sep, params = spec.partition(":")
    try:
        if sep and name == "sphere":
            return sphere_profile(*_floats(params, 1, spec))
        if sep and name == "dimple":
            return families.build_dimple(*_floats(params, 2, spec)).profile
        if sep and name == "doublesphere":
            return families.build_double_sphere(*_floats(params, 2, spec)).profile
        return load_profile(spec)
    except (OSError, ProfileError, families.InfeasibleParametersError) as exc:
        raise InputError(str(exc)) from None


def _write_columns(path, a, b, header):
    np.savetxt(path, np.column_stack([a, b]), header=header, fmt="%.17g")


def _plot_profile(profile, directory, n=1024):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    s = np.union1d(np.linspace(0.0, profile.length, n + 1), profile.s)
    pos = profile.curve.position(s)
    _write_columns(out / "s_theta.dat", s, profile.theta_at(s), "s theta")
    _write_columns(out / "s_x.dat", s, pos.real, "s x")
    _write_columns(out / "s_z.dat", s, pos.imag, "s z")


def _write_csv(path, rows):
    keys = list(rows[0])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(float(v)) if isinstance(v, float) else v for k, v in row.items()})


def _single(config):
    if len(config.inputs) != 1:
        raise InputError(f"{config.subcommand} takes exactly one profile")
    return resolve_profile(config.inputs[0])


def _cmd_validate(config):
    prof = _single(config)
    report = validate(prof, config.tolerances.get("validate", VALIDATE_TOL))
    return report.to_dict(), 0 if report.admissible else 2


def _cmd_summary(config):
    prof = _single(config)
    out = geometry.summarize(prof).to_dict()
    out["area_residual"] = geometry.area_methods(prof).residual
    out["mean_curvature_residual"] = geometry.mean_curvature_methods(prof).residual
    out["admissibility"] = prof.admissibility.to_dict()
    if config.emit_plot_data:
        _plot_profile(prof, config.emit_plot_data)
    return out, 0


def _fold_properties(source, result, tol):
    """Fold checks: x unchanged at source breakpoints, z not lowered, int H bounded by int |H|."""
    L = source.length
    x_err = float(np.max(np.abs(result.curve.x(source.s) - source.curve.x_at_breakpoints())))
    z_drop = float(np.max(source.curve.z_at_breakpoints() - result.curve.z(source.s)))
    h_fold = geometry.total_mean_curvature(result)
    h_abs = geometry.total_abs_mean_curvature(source)
    violations = []
    if x_err > tol * L:
        violations.append(["x_preserved", x_err])
    if z_drop > tol * L:
        violations.append(["z_not_lowered", z_drop])
    if h_fold > h_abs + 1e-8:
        violations.append(["mean_curvature_bound", h_fold - h_abs])
    return {
        "x_error": x_err,
        "z_drop": z_drop,
        "total_mean_curvature_fold": h_fold,
        "total_abs_mean_curvature_source": h_abs,
        "area_source": geometry.area(source),
        "area_fold": geometry.area(result),
        "violations": violations,
        "ok": not violations,
    }


def _cmd_rearrange(config):
    prof = _single(config)
    if not prof.admissibility.admissible:
        raise InputError(f"profile is not admissible: {prof.admissibility.diagnostics}")
    mode = config.options.get("mode", "monotone")
    if mode == "fold":
        rp = rearrange.fold(prof)
        report = _fold_properties(prof, rp.result, config.tolerances.get("fold", 1e-12))
    else:
        try:
            rp = rearrange.monotone_rearrange(
                prof, n_grid=config.n_grid or rearrange.N_GRID, method=config.options.get("method", "exact")
            )
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report = rearrange.check_rearrangement_properties(prof, rp.result).to_dict()
    if config.emit_profile:
        dump_profile(rp.result, config.emit_profile)
    out = {"mode": mode, "properties": report, "result_admissibility": rp.report.to_dict()}
    out["result"] = rp.result.to_dict()
    return out, 0 if report["ok"] else 1


def _check_one(prof, which, tol):
    """Inequality records for one profile plus the list of guaranteed ones that fail."""
    adm = prof.admissibility
    rec, failed = {"axiconvex": adm.is_axiconvex, "inner_convex": adm.is_inner_convex}, []
    summary = geometry.summarize(prof)
    root = math.sqrt(4 * math.pi * summary.area)
    gap_tol = tol.get("gap", inequalities.GAP_TOL)
    if which in ("minkowski", "all"):
        gap = summary.total_mean_curvature - root
        rec["minkowski_gap"] = gap
        if adm.is_axiconvex and gap < -gap_tol:
            failed.append("minkowski")
    if which in ("absolute", "all"):
        gap = summary.total_abs_mean_curvature - root
        rec["abs_minkowski_gap"] = gap
        if gap < -gap_tol:
            failed.append("absolute")
    if which in ("bonnesen", "all"):
        value, residuals = inequalities.bonnesen_check(prof)
        rec["bonnesen_value"] = value
        rec["identity_residuals"] = list(residuals)
        if adm.is_inner_convex and value > gap_tol:
            failed.append("bonnesen")
        if max(abs(r) for r in residuals) > tol.get("identity", 1e-8) * max(1.0, abs(value)):
            failed.append("bonnesen_identity")
    if which in ("critical", "all"):
        rec["critical_residual"] = inequalities.critical_point_residual(prof)
    rec["is_sphere"] = inequalities.detect_sphere(prof, tol.get("sphere", inequalities.SPHERE_TOL))
    rec["failed"] = failed
    return rec


def _cmd_check(config):
    which = config.options.get("inequality", "all")
    kind = config.options.get("random")
    if kind:
        if config.inputs:
            raise InputError("give either --profile or --random, not both")
        try:
            profiles = sampling.random_suite(kind, config.options.get("count", 1), config.seed)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        if not config.inputs:
            raise InputError("check needs --profile or --random")
        profiles = [resolve_profile(p) for p in config.inputs]
    records = []
    for prof in profiles:
        if not prof.admissibility.admissible:
            raise InputError(f"profile is not admissible: {prof.admissibility.diagnostics}")
        records.append(_check_one(prof, which, config.tolerances))
    failures = sum(bool(r["failed"]) for r in records)
    out = {"inequality": which, "seed": config.seed if kind else None, "profiles": records, "failures": failures}
    if kind:
        out["random"] = kind
    return out, 1 if failures else 0


def _ladder(base, k):
    return [base * 2.0**-j for j in range(k + 1)]


def _family_dimple(config):
    R, eps0 = config.options["R"], config.options["eps"]
    rows, points = [], []
    try:
        sols = [families.build_dimple(R, e) for e in _ladder(eps0, config.ladder)]
    except families.InfeasibleParametersError as exc:
        raise InputError(str(exc)) from None
    for sol in sorted(sols, key=lambda d: d.eps):
        rec = sol.to_dict()
        if sol.eps < math.pi * R / 8:
            agg = families.multi_dimple_aggregate(R, sol.eps)
            rec["packing_count"] = agg.n_dimples
            rec["multi_dimple"] = agg.to_dict()
        points.append(rec)
        rows.append(
            {
                "eps": sol.eps,
                "phi_R": sol.phi_R,
                "s0": sol.s0,
                "area": sol.summary.area,
                "total_mean_curvature": sol.summary.total_mean_curvature,
                "total_abs_mean_curvature": sol.summary.total_abs_mean_curvature,
            }
        )
    out = {"family": "dimple", "R": R, "points": points}
    if len(sols) >= 2:
        out["fits"] = {
            "phi_R_over_eps": families.fit_asymptotics([(s.eps, s.phi_R / s.eps) for s in sols], 1).to_dict(),
            "mean_curvature_over_pi": families.fit_asymptotics(
                [(s.eps, s.summary.total_mean_curvature / math.pi) for s in sols], 1
            ).to_dict(),
            "area_over_2pi_minus_2R2": families.fit_asymptotics(
                [(s.eps, s.summary.area / (2 * math.pi) - 2 * R**2) for s in sols], 2
            ).to_dict(),
        }
    if config.emit_profile:
        dump_profile(min(sols, key=lambda d: d.eps).profile if len(sols) > 1 else sols[0].profile, config.emit_profile)
    return out, rows, "eps"


def _family_doublesphere(config):
    r0, A0 = config.options["r"], config.options["area"]
    try:
        sols = [families.build_double_sphere(r, A0) for r in _ladder(r0, config.ladder)]
    except families.InfeasibleParametersError as exc:
        raise InputError(str(exc)) from None
    points, rows = [], []
    for sol in sorted(sols, key=lambda d: d.r):
        rec = sol.to_dict()
        root = math.sqrt(4 * math.pi * sol.summary.area)
        rec["minkowski_gap"] = sol.summary.total_mean_curvature - root
        rec["abs_minkowski_gap"] = sol.summary.total_abs_mean_curvature - root
        rec["closed_form_mean_curvature"] = families.double_sphere_mean_curvature(sol.r, sol.delta)
        points.append(rec)
        rows.append(
            {
                "eps": sol.r,
                "R": sol.R,
                "area": sol.summary.area,
                "total_mean_curvature": sol.summary.total_mean_curvature,
                "total_abs_mean_curvature": sol.summary.total_abs_mean_curvature,
            }
        )
    out = {"family": "doublesphere", "A0": A0, "points": points}
    if config.emit_profile:
        dump_profile(min(sols, key=lambda d: d.r).profile, config.emit_profile)
    return out, rows, "r"


def _cmd_family(config):
    name = config.options.get("family")
    if name == "dimple":
        out, rows, key = _family_dimple(config)
    elif name == "doublesphere":
        out, rows, key = _family_doublesphere(config)
    else:
        raise InputError(f"unknown family {name!r}")
    if key != "eps":
        for row in rows:
            row[key] = row.pop("eps")
        rows = [{key: row[key], **{k: v for k, v in row.items() if k != key}} for row in rows]
    if config.emit_csv:
        _write_csv(config.emit_csv, rows)
    if config.emit_plot_data:
        _write_columns(
            config.emit_plot_data,
            [row[key] for row in rows],
            [row["total_mean_curvature"] for row in rows],
            f"{key} total_mean_curvature",
        )
    return out, 0


def _cmd_variation(config):
    prof = _single(config)
    if not prof.admissibility.admissible:
        raise InputError(f"profile is not admissible: {prof.admissibility.diagnostics}")
    n_grid = config.n_grid or variation.N_GRID
    phi_spec = config.options.get("phi", "one")
    try:
        if phi_spec in variation.PRESETS:
            phi = variation.PerturbationField.preset(prof, phi_spec, n_grid)
        else:
            phi = variation.PerturbationField.load(phi_spec)
        reports = variation.first_variation_check(
            prof,
            phi,
            config.options.get("steps", DEFAULT_STEPS),
            n_grid=n_grid,
            scheme=config.options.get("scheme", "forward"),
            tol=config.tolerances.get("reconstruction", variation.RECONSTRUCTION_TOL),
        )
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    return {"phi": phi_spec, "n_grid": n_grid, "reports": [r.to_dict() for r in reports]}, 0


def _cmd_export_mesh(config):
    prof = _single(config)
    try:
        mesh = export_mesh(prof, config.options.get("n_s", 64), config.options.get("n_t", 64))
    except (NotAdmissibleError, ValueError) as exc:
        raise InputError(str(exc)) from None
    text = mesh.to_obj()
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
        return {"vertices": len(mesh.vertices), "faces": len(mesh.faces), "surface_area": mesh.surface_area()}, 0
    sys.stdout.write(text)
    return None, 0


COMMANDS = {
    "validate": _cmd_validate,
    "summary": _cmd_summary,
    "rearrange": _cmd_rearrange,
    "check": _cmd_check,
    "family": _cmd_family,
    "variation": _cmd_variation,
    "export-mesh": _cmd_export_mesh,
}


def run(config, stdout=None):
    """Execute one subcommand; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        data, status = COMMANDS[config.subcommand](config)
    except (InputError, NotAdmissibleError) as exc:
        print(f"axicurv: error: {exc}", file=sys.stderr)
        return 2
    if data is not None:
        text = to_json(data)
        if config.output and config.subcommand != "export-mesh":
            Path(config.output).write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
    return status


def _steps(text):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad step list {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("steps must be positive")
    return vals


def build_parser():
    parser = argparse.ArgumentParser(prog="axicurv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, profile=True):
        if profile:
            p.add_argument("profile", help="profile JSON path or preset (sphere:R, dimple:R,eps, doublesphere:r,A0)")
        p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
        return p

    p = common(sub.add_parser("validate", help="admissibility report"))
    p.add_argument("--tol", type=float, default=VALIDATE_TOL, help="relative endpoint tolerance (default %(default)g)")

    p = common(sub.add_parser("summary", help="area and curvature integrals"))
    p.add_argument("--plot-data", help="directory for s/theta, s/x and s/z two-column files")

    p = common(sub.add_parser("rearrange", help="monotone rearrangement or fold"))
    p.add_argument("--mode", choices=("monotone", "fold"), default="monotone")
    p.add_argument("--method", choices=("exact", "sample"), default="exact")
    p.add_argument("--n-grid", type=int, default=rearrange.N_GRID, help="grid for --method sample (default %(default)d)")
    p.add_argument("--fold-tol", type=float, default=1e-12, help="relative x/z tolerance of the fold checks")
    p.add_argument("--emit-profile", help="write the rearranged profile JSON here")

    p = common(sub.add_parser("check", help="inequality checks"), profile=False)
    p.add_argument("--inequality", choices=INEQUALITIES, default="all")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--profile", action="append", help="profile JSON path or preset; repeatable")
    src.add_argument("--random", choices=sampling.KINDS, help="draw a seeded random suite of this class")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help=f"suite seed; {SEED_ENV} overrides it")
    p.add_argument("--gap-tol", type=float, default=inequalities.GAP_TOL)
    p.add_argument("--identity-tol", type=float, default=1e-8)
    p.add_argument("--sphere-tol", type=float, default=inequalities.SPHERE_TOL)

    p = common(sub.add_parser("family", help="dimple and double-sphere families"), profile=False)
    fam = p.add_subparsers(dest="family", required=True)
    d = fam.add_parser("dimple")
    d.add_argument("--R", type=float, required=True)
    d.add_argument("--eps", type=float, required=True)
    ds = fam.add_parser("doublesphere")
    ds.add_argument("--r", type=float, required=True)
    ds.add_argument("--area", type=float, required=True, help="target area A0")
    for q in (d, ds):
        q.add_argument("--ladder", type=int, default=0, help="also halve the parameter this many times")
        q.add_argument("--emit-profile", help="write the profile of the smallest parameter here")
        q.add_argument("--csv", help="write the ladder as CSV")
        q.add_argument("--plot-data", help="write parameter vs total mean curvature as two columns")
        q.add_argument("-o", "--output", default=argparse.SUPPRESS)

    p = common(sub.add_parser("variation", help="first-variation finite-difference check"), profile=False)
    p.add_argument("--profile", required=True, help="profile JSON path or preset")
    p.add_argument("--phi", default="one", help=f"preset ({', '.join(variation.PRESETS)}) or two-column file s, phi")
    p.add_argument("--steps", type=_steps, default=DEFAULT_STEPS, help="comma-separated step sizes")
    p.add_argument("--scheme", choices=("forward", "central"), default="forward")
    p.add_argument("--n-grid", type=int, default=variation.N_GRID)
    p.add_argument("--reconstruction-tol", type=float, default=variation.RECONSTRUCTION_TOL)

    p = common(sub.add_parser("export-mesh", help="triangle mesh of the surface"))
    p.add_argument("--n-s", type=int, default=64)
    p.add_argument("--n-t", type=int, default=64)
    return parser


def config_from_args(args, environ=None):
    environ = os.environ if environ is None else environ
    a = vars(args)
    cmd = a["subcommand"]
    cfg = RunConfig(subcommand=cmd, output=a.get("output"))
    if cmd == "check":
        cfg.inputs = tuple(a["profile"] or ())
        seed = a["seed"]
        if environ.get(SEED_ENV):
            try:
                seed = int(environ[SEED_ENV])
            except ValueError:
                raise InputError(f"{SEED_ENV} must be an integer") from None
        cfg.seed = seed
        cfg.options = {"inequality": a["inequality"], "random": a["random"], "count": a["count"]}
        cfg.tolerances = {"gap": a["gap_tol"], "identity": a["identity_tol"], "sphere": a["sphere_tol"]}
    elif cmd == "family":
        cfg.ladder = a["ladder"]
        cfg.emit_profile, cfg.emit_csv, cfg.emit_plot_data = a["emit_profile"], a["csv"], a["plot_data"]
        keys = ("R", "eps") if a["family"] == "dimple" else ("r", "area")
        cfg.options = {"family": a["family"], **{k: a[k] for k in keys}}
    elif cmd == "variation":
        cfg.inputs = (a["profile"],)
        cfg.n_grid = a["n_grid"]
        cfg.options = {"phi": a["phi"], "steps": a["steps"], "scheme": a["scheme"]}
        cfg.tolerances = {"reconstruction": a["reconstruction_tol"]}
    else:
        cfg.inputs = (a["profile"],)
        if cmd == "validate":
            cfg.tolerances = {"validate": a["tol"]}
        elif cmd == "summary":
            cfg.emit_plot_data = a["plot_data"]
        elif cmd == "rearrange":
            cfg.n_grid = a["n_grid"]
            cfg.emit_profile = a["emit_profile"]
            cfg.options = {"mode": a["mode"], "method": a["method"]}
            cfg.tolerances = {"fold": a["fold_tol"]}
        elif cmd == "export-mesh":
            cfg.options = {"n_s": a["n_s"], "n_t": a["n_t"]}
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except InputError as exc:
        print(f"axicurv: error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
