"""Command-line front end: scenario in, CSV traces, SVG plots and a run summary out.

Exit status: 0 success, 2 configuration error, 3 a solve did not converge
(artifacts are still written and flagged), 4 a catalogue self-check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .blowup import blowup_sequence, classify_limit, ode_brute_force, write_ode_csv, write_sequence_csv
from .catalog import (Coefficients, Scenario, ScenarioError, counterexample_boundary_data,
                      load_scenario, preset_scenarios)
from .free_boundary import (cone_test, decompose, density_ratios, dyadic_radii, extract_gamma,
                            nondegeneracy_trace, tangency_profile, write_decomposition_csv,
                            write_polylines_csv)
from .grid import HalfDisk, sup_on_half_ball
from .monotonicity import acf_phi, check_monotone, tangential_derivative_parts, weiss_phi
from .solver import SolverConfig, solve
from .svg import plot_field, plot_traces
from .verify import catalog_checks

__all__ = ["DIAGNOSTICS", "RunManifest", "RunResult", "load_manifest", "run",
           "run_counterexample_sweep", "write_sweep_csv", "main"]

DIAGNOSTICS = ("solve", "weiss", "acf", "density", "tangency", "blowup", "ode", "catalog-verify")
EXIT_OK, EXIT_CONFIG, EXIT_NOT_CONVERGED, EXIT_VERIFY = 0, 2, 3, 4

WEISS_RADII = tuple(round(0.1 * k, 10) for k in range(2, 9))
DENSITY_RADII = tuple(dyadic_radii(0.5, 5))
TANGENCY_RADII = tuple(dyadic_radii(0.25, 3))
BLOWUP_SCALES = (0.25, 0.125, 0.0625)
DEFAULT_SWEEP = ((0.08, 0.2), (0.02, 0.18), (0.005, 0.16), (1e-5, 0.14))

COLUMNS = {
    "field.csv": {
        "i": "row index of the node (x1 direction)",
        "j": "column index of the node (x2 direction)",
        "x1": "node coordinate normal to the flat boundary",
        "x2": "node coordinate along the flat boundary",
        "u": "discrete solution value",
        "region": "omega_plus (u > tau_u), omega_minus (u < -tau_u), lambda (|u| <= tau_u and "
                  "|grad u| <= tau_g) or band (unclassified)",
    },
    "energy.csv": {
        "sweep": "sweep count, 0 is the initial guess",
        "energy": "discrete energy J_h after the sweep",
    },
    "gamma.csv": {
        "polyline": "index of the free-boundary polyline",
        "vertex": "index of the vertex along its polyline",
        "x1": "vertex coordinate normal to the flat boundary",
        "x2": "vertex coordinate along the flat boundary",
    },
    "weiss.csv": {"r": "half-ball radius about the origin",
                  "value": "boundary-adjusted Weiss energy Phi(r)"},
    "acf.csv": {"r": "ball radius about the origin",
                "value": "ACF product phi(r) of (D_x2 u)^+ and (D_x2 u)^-"},
    "density.csv": {
        "r": "ball radius about the origin",
        "ratio_plus": "area fraction of Omega+ in the half ball",
        "ratio_minus": "area fraction of Omega- in the half ball",
        "ratio_lambda": "area fraction of Lambda in the half ball",
    },
    "nondegeneracy.csv": {"r": "half-ball radius about the origin",
                          "value": "sup of |u| over the half ball divided by r^2"},
    "tangency.csv": {
        "r": "outer radius of the annulus r/2 < |x| <= r",
        "sigma_hat": "max of x1/|x2| over free-boundary vertices in the annulus, -inf if none, "
                     "inf if a vertex lies on x2 = 0",
        "count": "number of free-boundary vertices in the annulus",
    },
    "blowup.csv": {
        "scale": "blow-up radius d",
        "mode": "normalisation, supnorm divides by sup over the half ball of radius d",
        "sup": "sup of |u| over the half ball of radius d",
        "factor": "d^2 / divisor; the rescaled field solves the problem with coefficients times this factor",
        "tag": "nearest global solution class",
        "parameter": "fitted class parameter (offset a, slope alpha or linear slope)",
        "distance": "sup-norm distance to the fitted global solution on the reference half ball",
    },
    "ode.csv": {
        "start": "index of the starting profile, 0 is the zero profile",
        "amplitude": "amplitude of the random start",
        "converged": "1 if Newton reached the tolerance",
        "iterations": "Newton iterations used",
        "residual": "final fixed-point residual",
        "sup": "sup norm of the converged profile",
        "cluster": "index of the nontrivial cluster the start joined (-1: trivial or not converged); "
                   "summary.json maps indices to positive, negative or spurious",
    },
    "verify.csv": {"name": "self-check", "passed": "1 if the check passed",
                   "value": "measured quantity", "bound": "threshold it is compared to"},
    "sweep.csv": {
        "delta": "bump height on the flat boundary",
        "eps": "offset of the parabola x1 = eps",
        "c0": "sup of |u| over the half ball of radius 1/8, divided by (1/8)^2",
        "cone_flag": "1 if a free-boundary vertex with |x| < 1/4 lies in the cone x1 > |x2|/2",
        "n_cone": "number of such vertices",
        "data_sup": "sup of |data| on the flat boundary",
        "converged": "1 if the solve converged",
    },
}


# --------------------------------------------------------------------------
# manifest


@dataclass
class RunManifest:
    scenario: str
    h: float = 1.0 / 128
    diagnostics: list[str] = field(default_factory=lambda: ["solve"])
    out: str = "out"
    seed: int = 0
    tol: float = 1e-11
    max_sweeps: int = 200_000

    def validate(self) -> None:
        if not self.diagnostics:
            raise ScenarioError("diagnostics: list is empty")
        for k, d in enumerate(self.diagnostics):
            if d not in DIAGNOSTICS:
                raise ScenarioError(f"diagnostics[{k}]: unknown diagnostic {d!r}")
        if not (isinstance(self.h, (int, float)) and 0 < self.h <= 0.25):
            raise ScenarioError(f"h: must lie in (0, 1/4], got {self.h!r}")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0):
            raise ScenarioError(f"tol: must be positive, got {self.tol!r}")
        if not (isinstance(self.max_sweeps, int) and self.max_sweeps >= 1):
            raise ScenarioError(f"max_sweeps: must be a positive integer, got {self.max_sweeps!r}")
        if not isinstance(self.seed, int):
            raise ScenarioError(f"seed: must be an integer, got {self.seed!r}")
        out = Path(self.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            probe = out / ".write_probe"
            probe.write_text("")
            probe.unlink()
        except OSError as exc:
            raise ScenarioError(f"out: directory {str(out)!r} is not writable ({exc.strerror})") from None


def load_manifest(path) -> RunManifest:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from None
    if not isinstance(raw, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    unknown = sorted(set(raw) - {"scenario", "h", "diagnostics", "out", "seed", "tol", "max_sweeps"})
    if unknown:
        raise ScenarioError(f"{unknown[0]}: unknown manifest field")
    if "scenario" not in raw:
        raise ScenarioError("scenario: missing")
    m = RunManifest(**raw)
    # a relative scenario path is read relative to the manifest
    sp = Path(path).parent / m.scenario
    if m.scenario not in preset_scenarios() and sp.exists():
        m.scenario = str(sp)
    return m


def resolve_scenario(name: str) -> Scenario:
    presets = preset_scenarios()
    if name in presets:
        return presets[name]
    p = Path(name)
    if not p.exists():
        raise ScenarioError(f"scenario: {name!r} is neither a preset ({', '.join(presets)}) "
                            "nor an existing file")
    return load_scenario(p)


# --------------------------------------------------------------------------
# output helpers


def _num(x):
    """Full-precision text for a CSV cell."""
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return x


def write_csv(path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_num(v) for v in row])


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return obj


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# run


@dataclass
class RunResult:
    status: int
    summary: dict
    artifacts: list[str]


def _needs_half_disk(diag: str, sc: Scenario) -> None:
    if not isinstance(sc.domain, HalfDisk):
        raise ScenarioError(f"diagnostics: {diag} needs a half-disk domain, "
                            f"scenario {sc.name!r} has {type(sc.domain).__name__}")


def run(manifest: RunManifest) -> RunResult:
    """Execute the requested diagnostics and write their artifacts to ``manifest.out``."""
    try:
        manifest.validate()
        sc = resolve_scenario(manifest.scenario)
        diags = list(dict.fromkeys(manifest.diagnostics))
        for d in diags:
            if d in ("weiss", "density", "tangency", "blowup"):
                _needs_half_disk(d, sc)
        if "weiss" in diags and not sc.zero_pi_data():
            raise ScenarioError("diagnostics: weiss needs zero data on x1 = 0, "
                                f"scenario {sc.name!r} has nonzero data there")
    except ScenarioError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return RunResult(EXIT_CONFIG, {}, [])

    out = Path(manifest.out)
    h = float(manifest.h)
    arts: list[str] = []
    summary: dict = {
        "scenario": sc.to_dict(),
        "h": h,
        "seed": manifest.seed,
        "diagnostics": diags,
        "thresholds": {"solver_tol": manifest.tol, "max_sweeps": manifest.max_sweeps},
        "measured": {},
        "columns": {},
        "flags": [],
    }
    meas = summary["measured"]
    status = EXIT_OK

    def emit(name, header, rows):
        write_csv(out / name, header, rows)
        arts.append(name)

    needs_solution = [d for d in diags if d not in ("ode", "catalog-verify")]
    u = decomp = gamma = None
    if needs_solution:
        u, rep = solve(sc, h, SolverConfig(tol=manifest.tol, max_sweeps=manifest.max_sweeps))
        decomp = decompose(u)
        gamma = extract_gamma(u, 0.0, sc.coeffs)
        summary["thresholds"].update({"tau_u": decomp.tau_u, "tau_g": decomp.tau_g,
                                      "gamma_tau_u": 0.0})
        meas["solve"] = {"converged": rep.converged, "sweeps": rep.sweeps_used,
                         "final_update": rep.final_update, "final_residual": rep.final_residual,
                         "relaxation": rep.relaxation, "energy_final": float(rep.energy_trace[-1]),
                         "energy_monotone": rep.energy_monotone(),
                         "region_nodes": {"omega_plus": int(decomp.omega_plus.sum()),
                                          "omega_minus": int(decomp.omega_minus.sum()),
                                          "lambda": int(decomp.lambda_set.sum()),
                                          "band": int(decomp.band.sum())},
                         "gamma_polylines": len(gamma)}
        if not rep.converged:
            summary["flags"].append("solve did not converge: artifacts come from the last iterate")
            status = EXIT_NOT_CONVERGED
        if "solve" in diags:
            write_decomposition_csv(decomp, out / "field.csv")
            write_polylines_csv(gamma, out / "gamma.csv")
            emit("energy.csv", ["sweep", "energy"], enumerate(rep.energy_trace))
            arts += ["field.csv", "gamma.csv"]
            _write_text(out / "regions.svg", plot_field(u, decomp, gamma, f"{sc.name}, h = {h:.6g}"))
            arts.append("regions.svg")

    traces = {}
    if "weiss" in diags:
        tr = weiss_phi(u, sc.coeffs, WEISS_RADII)
        emit("weiss.csv", ["r", "value"], tr.entries)
        slack = 1e-3 * float(np.max(np.abs(tr.values)))
        mr = check_monotone(tr, slack)
        meas["weiss"] = {"min": float(tr.values.min()), "max": float(tr.values.max()),
                         "monotone": mr.is_monotone, "worst_violation": mr.worst_violation,
                         "slack": slack, "pi_over_16": math.pi / 16}
        traces["weiss"] = tr
    if "acf" in diags:
        hp, hm = tangential_derivative_parts(u)
        try:
            tr = acf_phi(hp, hm, WEISS_RADII)
        except ValueError as exc:
            summary["flags"].append(f"acf not evaluated: {exc}")
        else:
            emit("acf.csv", ["r", "value"], tr.entries)
            slack = 1e-3 * float(np.max(np.abs(tr.values)))
            mr = check_monotone(tr, slack)
            meas["acf"] = {"min": float(tr.values.min()), "max": float(tr.values.max()),
                           "monotone": mr.is_monotone, "worst_violation": mr.worst_violation,
                           "slack": slack}
            traces["acf"] = tr
    if "density" in diags:
        dt = density_ratios(decomp, DENSITY_RADII)
        emit("density.csv", ["r", "ratio_plus", "ratio_minus", "ratio_lambda"], dt.rows())
        # sup over B_r needs r > 2h; unresolved radii are dropped and flagged
        nd_radii = [r for r in DENSITY_RADII if r > 2 * h]
        if len(nd_radii) < len(DENSITY_RADII):
            summary["flags"].append(f"nondegeneracy: radii below 2h = {2 * h:.6g} skipped")
        nd = nondegeneracy_trace(u, nd_radii)
        emit("nondegeneracy.csv", ["r", "value"], nd.entries)
        meas["density"] = {"notes": dt.notes, "c_min": float(nd.values.min())}
        if len(dt.radii) >= 2:
            _write_text(out / "density.svg", plot_traces(
                {"Omega+": (dt.radii, dt.ratio_plus), "Omega-": (dt.radii, dt.ratio_minus),
                 "Lambda": (dt.radii, dt.ratio_lambda)}, f"{sc.name}: density ratios",
                "r", "area fraction", logx=True))
            arts.append("density.svg")
    if "tangency" in diags:
        tp = tangency_profile(gamma, TANGENCY_RADII)
        emit("tangency.csv", ["r", "sigma_hat", "count"], tp.rows())
        meas["tangency"] = {"sigma_hat": tp.sigma_hat.tolist()}
    if "blowup" in diags:
        try:
            seq = blowup_sequence(u, BLOWUP_SCALES, mode="supnorm")
        except ValueError as exc:
            summary["flags"].append(f"blowup not evaluated: {exc}")
        else:
            classes = [classify_limit(f, seq.coefficients(k, sc.coeffs))
                       for k, f in enumerate(seq.fields)]
            write_sequence_csv(seq, classes, out / "blowup.csv")
            arts.append("blowup.csv")
            meas["blowup"] = {"labels": [c.label() for c in classes],
                              "distances": [c.distance for c in classes]}
            _write_text(out / "blowup_limit.svg", plot_field(
                seq.fields[-1], decompose(seq.fields[-1]), extract_gamma(seq.fields[-1]),
                f"{sc.name}: blow-up at d = {BLOWUP_SCALES[-1]}, {classes[-1].label()}"))
            arts.append("blowup_limit.svg")
    if "ode" in diags:
        rep_o = ode_brute_force(sc.coeffs, n_starts=100, grid_m=800, seed=manifest.seed)
        write_ode_csv(rep_o, out / "ode.csv")
        arts.append("ode.csv")
        meas["ode"] = {"clusters": rep_o.candidates, "deviations": rep_o.deviations,
                       "n_starts": rep_o.n_starts, "spurious": rep_o.spurious,
                       "n_nontrivial": rep_o.n_nontrivial}
        summary["thresholds"].update({"ode_grid_m": 800, "ode_starts": 100})
    if "catalog-verify" in diags:
        checks = catalog_checks()
        emit("verify.csv", ["name", "passed", "value", "bound"],
             [(c.name, c.passed, c.value, c.bound) for c in checks])
        n_fail = sum(not c.passed for c in checks)
        meas["catalog_verify"] = {"checks": len(checks), "failed": n_fail}
        if n_fail and status == EXIT_OK:
            status = EXIT_VERIFY

    radial = {k: (t.radii, t.values) for k, t in traces.items()}
    if radial:
        _write_text(out / "traces.svg", plot_traces(radial, f"{sc.name}: monotonicity functionals",
                                                    "r", "value"))
        arts.append("traces.svg")

    for name in arts:
        if name in COLUMNS:
            summary["columns"][name] = COLUMNS[name]
    summary["artifacts"] = sorted(set(arts) | {"summary.json"})
    summary["exit_status"] = status
    _write_text(out / "summary.json", json.dumps(_json_safe(summary), indent=2, sort_keys=True) + "\n")
    return RunResult(status, summary, summary["artifacts"])


# --------------------------------------------------------------------------
# counterexample sweep


def run_counterexample_sweep(pairs: Sequence[tuple[float, float]], h: float = 1.0 / 128,
                             w: float = 0.06, s: float = 0.1, tol: float = 1e-11,
                             coeffs: Coefficients = Coefficients()) -> list[dict]:
    """Solve the offset-parabola-plus-bump family for each ``(delta, eps)`` pair.

    Each row holds ``c0 = sup_{B_{1/8}^+}|u| / (1/8)^2``, whether a free
    boundary vertex of ``B_{1/4}`` lies in the cone ``x1 > |x2|/2``, and the
    sup of the data on ``x1 = 0``.
    """
    pairs = [(float(a), float(b)) for a, b in pairs]
    if not pairs:
        raise ValueError("need at least one (delta, eps) pair")
    for (d0, e0), (d1, e1) in zip(pairs, pairs[1:]):
        if not (d1 < d0 and e1 <= e0):
            raise ValueError("pairs must shrink: delta strictly decreasing, eps non-increasing")
    base = preset_scenarios()["counterexample"]
    x2 = np.linspace(-1.0, 1.0, 4001)
    rows = []
    for delta, eps in pairs:
        sc = Scenario(f"counterexample({delta:g}, {eps:g})", base.domain, coeffs,
                      counterexample_boundary_data(delta, eps, w, s))
        u, rep = solve(sc, h, SolverConfig(tol=tol))
        pts = extract_gamma(u, 0.0, coeffs).points
        near = pts[np.hypot(pts[:, 0], pts[:, 1]) < 0.25] if len(pts) else pts
        n_cone = int(cone_test(near, 0.5).sum()) if len(near) else 0
        data_sup = float(np.max(np.abs(sc.boundary_function()(np.zeros_like(x2), x2))))
        rows.append({"delta": delta, "eps": eps,
                     "c0": sup_on_half_ball(u, 0.125) / 0.125 ** 2,
                     "cone_flag": n_cone > 0, "n_cone": n_cone, "data_sup": data_sup,
                     "converged": rep.converged})
    return rows


SWEEP_HEADER = ["delta", "eps", "c0", "cone_flag", "n_cone", "data_sup", "converged"]


def write_sweep_csv(rows: list[dict], path) -> None:
    write_csv(path, SWEEP_HEADER, ([r[k] for k in SWEEP_HEADER] for r in rows))


def _parse_pairs(text: str) -> list[tuple[float, float]]:
    out = []
    for k, part in enumerate(p for p in text.split(";") if p.strip()):
        try:
            a, b = (float(v) for v in part.split(","))
        except ValueError:
            raise ScenarioError(f"pairs[{k}]: expected 'delta,eps', got {part!r}") from None
        out.append((a, b))
    return out


def _sweep_command(args) -> int:
    try:
        pairs = _parse_pairs(args.pairs) if args.pairs else list(DEFAULT_SWEEP)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        rows = run_counterexample_sweep(pairs, h=args.h, tol=args.tol)
    except (ScenarioError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    write_sweep_csv(rows, out / "sweep.csv")
    _write_text(out / "sweep.svg", plot_traces(
        {"c0(1/8)": ([r["delta"] for r in rows], [r["c0"] for r in rows])},
        "counterexample sweep", "delta", "c0", logx=True))
    status = EXIT_OK if all(r["converged"] for r in rows) else EXIT_NOT_CONVERGED
    summary = {"h": args.h, "thresholds": {"solver_tol": args.tol, "gamma_tau_u": 0.0,
                                           "cone_eps": 0.5, "cone_radius": 0.25, "c0_radius": 0.125},
               "rows": rows, "columns": {"sweep.csv": COLUMNS["sweep.csv"]},
               "artifacts": ["summary.json", "sweep.csv", "sweep.svg"], "exit_status": status}
    _write_text(out / "summary.json", json.dumps(_json_safe(summary), indent=2, sort_keys=True) + "\n")
    for r in rows:
        print(f"delta={r['delta']:g} eps={r['eps']:g} c0={r['c0']:.6g} cone={int(r['cone_flag'])} "
              f"data_sup={r['data_sup']:.6g}")
    return status


# --------------------------------------------------------------------------
# argument parsing


SUBCOMMANDS = {
    "solve": ["solve"],
    "plot": ["solve"],
    "blowup": ["blowup"],
    "ode": ["ode"],
    "verify": ["catalog-verify"],
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twophase", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scenario=True):
        if scenario:
            sp.add_argument("--scenario", required=True,
                            help="preset name or path to a scenario JSON file")
        sp.add_argument("--h", type=float, default=1.0 / 128, help="mesh width (default 1/128)")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomised diagnostics")
        sp.add_argument("--tol", type=float, default=1e-11, help="solver update tolerance")

    common(sub.add_parser("solve", help="solve and write the field, energy trace, Gamma and a region map"))
    common(sub.add_parser("plot", help="same artifacts as solve, region map included"))
    tr = sub.add_parser("trace", help="radial traces: weiss, acf, density, tangency")
    common(tr)
    tr.add_argument("--functional", action="append", choices=["weiss", "acf", "density", "tangency"],
                    help="repeatable; default is all four")
    common(sub.add_parser("blowup", help="supnorm blow-ups at d = 1/4, 1/8, 1/16 and their classes"))
    common(sub.add_parser("ode", help="brute-force search of the homogeneous profile ODE"))
    common(sub.add_parser("verify", help="catalogue self-checks"), scenario=False)
    sw = sub.add_parser("sweep", help="counterexample family over shrinking (delta, eps)")
    common(sw, scenario=False)
    sw.add_argument("--pairs", help="'d1,e1;d2,e2;...' (default: four built-in pairs)")
    rn = sub.add_parser("run", help="run a JSON manifest")
    rn.add_argument("--manifest", required=True)
    sub.add_parser("list", help="list the preset scenarios")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for name, sc in preset_scenarios().items():
            print(f"{name}: {type(sc.domain).__name__}, data {sc.data.preset}")
        return EXIT_OK
    if args.command == "sweep":
        return _sweep_command(args)
    if args.command == "run":
        try:
            manifest = load_manifest(args.manifest)
        except (ScenarioError, TypeError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        if args.command == "trace":
            diags = args.functional or ["weiss", "acf", "density", "tangency"]
        else:
            diags = SUBCOMMANDS[args.command]
        scenario = getattr(args, "scenario", None) or "zero"
        manifest = RunManifest(scenario, args.h, diags, args.out, args.seed, args.tol)
    result = run(manifest)
    if result.status != EXIT_CONFIG:
        for name in result.artifacts:
            print(Path(manifest.out) / name)
    return result.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
