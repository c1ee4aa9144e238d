"""Blow-ups at the touch point, limit classification and the homogeneous ODE check."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import solve_banded
from scipy.optimize import minimize_scalar

from .catalog import Coefficients
from .grid import BOUNDARY, Field, GridSpec, HalfDisk, build_mask, interpolate_many, sup_on_half_ball

__all__ = ["REFERENCE_RADIUS", "REFERENCE_H", "reference_mask", "BlowupSequence",
           "GlobalSolutionClass", "ODEBruteForceReport", "rescale_quadratic", "rescale_supnorm",
           "blowup_sequence", "classify_limit", "homogeneity_defect", "ode_brute_force",
           "barrier_check", "write_sequence_csv", "write_ode_csv"]

REFERENCE_RADIUS = 1.0
REFERENCE_H = 1.0 / 128

TAGS = ("PositiveParabolic", "NegativeParabolic", "PositiveWithLinear", "NegativeWithLinear",
        "Linear", "Zero")


@lru_cache(maxsize=8)
def reference_mask(radius: float = REFERENCE_RADIUS, h: float = REFERENCE_H):
    """The fixed half-disk grid every blow-up is resampled onto."""
    dom = HalfDisk(radius)
    return build_mask(dom, GridSpec.covering(dom, h))


# --------------------------------------------------------------------------
# rescaling


def _resample(u: Field, d: float, denom: float, ref=None) -> Field:
    ref = reference_mask() if ref is None else ref
    X1, X2 = ref.grid.coords()
    inside = ref.inside
    pts = np.column_stack([X1[inside], X2[inside]]) * d
    try:
        vals = interpolate_many(u, pts)
        arms = np.full(ref.cut.shape, np.nan)
        if ref.cut.any():
            arms[ref.cut] = interpolate_many(u, ref.arm_points[ref.cut] * d)
    except ValueError as exc:
        raise ValueError(f"scale {d} too large for the source domain: {exc}") from None
    out = np.full(X1.shape, np.nan)
    out[inside] = vals / denom
    return Field(ref, out, arms / denom)


def rescale_quadratic(u: Field, d: float, ref=None) -> Field:
    """``u(d x) / d^2`` on the reference half-disk."""
    if not d > 0:
        raise ValueError("scale must be positive")
    return _resample(u, d, d * d, ref)


def rescale_supnorm(u: Field, d: float, ref=None) -> Field:
    """``u(d x) / sup_{B_d^+} |u|`` on the reference half-disk."""
    if not d > 0:
        raise ValueError("scale must be positive")
    s = sup_on_half_ball(u, d)
    if s <= 0:
        raise ValueError(f"sup of |u| over the half ball of radius {d} is zero; "
                         "use the quadratic scaling")
    return _resample(u, d, s, ref)


@dataclass
class BlowupSequence:
    """Rescalings of one field at decreasing scales, all on the reference grid.

    ``factors[j]`` is ``d_j^2 / denominator_j``: the rescaled field solves the
    problem with coefficients multiplied by this factor.
    """

    scales: list[float]
    fields: list[Field]
    mode: str
    sups: list[float]
    factors: list[float]

    def __post_init__(self):
        if any(b >= a for a, b in zip(self.scales, self.scales[1:])):
            raise ValueError("blow-up scales must be decreasing")
        if self.mode not in ("quadratic", "supnorm"):
            raise ValueError("mode must be 'quadratic' or 'supnorm'")

    def coefficients(self, j: int, coeffs: Coefficients) -> Coefficients:
        return coeffs.scaled(self.factors[j])


def blowup_sequence(u: Field, scales: Sequence[float], mode: str = "supnorm",
                    ref=None) -> BlowupSequence:
    scales = [float(d) for d in scales]
    fields, sups, factors = [], [], []
    for d in scales:
        s = sup_on_half_ball(u, d)
        if mode == "supnorm":
            fields.append(rescale_supnorm(u, d, ref))
            factors.append(d * d / s)
        else:
            fields.append(rescale_quadratic(u, d, ref))
            factors.append(1.0)
        sups.append(s)
    return BlowupSequence(scales, fields, mode, sups, factors)


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class GlobalSolutionClass:
    tag: str
    parameter: float
    distance: float
    candidates: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")

    @property
    def is_parabolic(self) -> bool:
        return self.tag in ("PositiveParabolic", "NegativeParabolic")

    def label(self) -> str:
        return self.tag if self.tag == "Zero" else f"{self.tag}({self.parameter:.6g})"


def _pi_sup(u: Field) -> float:
    X1, _ = u.grid.coords()
    sel = (u.mask.node_class == BOUNDARY) & (np.abs(X1) <= 1e-12)
    return float(np.max(np.abs(u.values[sel]))) if sel.any() else 0.0


def classify_limit(u_ref: Field, coeffs: Coefficients, pi_tol: float = 1e-6) -> GlobalSolutionClass:
    """Fit every global-solution form and return the one closest in sup norm.

    Parameters are least-squares fits clamped to ``a >= 0``, ``alpha >= 0``.
    A tie (distances equal to ``1e-9`` relative) goes to the smaller parameter,
    and to ``Zero`` when the parameters agree too.
    """
    vals = u_ref.values
    scale = max(1.0, float(np.nanmax(np.abs(vals))))
    pi = _pi_sup(u_ref)
    if pi > pi_tol * scale:
        raise ValueError(f"data on x1 = 0 is not zero (max |u| = {pi:.3e})")
    X1, _ = u_ref.grid.coords()
    inside = u_ref.mask.inside
    x = X1[inside]
    v = vals[inside]
    lp, lm = coeffs.lambda_plus, coeffs.lambda_minus
    a_max = float(x.max())

    def sup(r):
        return float(np.max(np.abs(r)))

    fits = {}
    for tag, sign, lam in (("PositiveParabolic", 1, lp), ("NegativeParabolic", -1, lm)):
        def sse(a, sign=sign, lam=lam):
            return float(np.sum((v - sign * 0.5 * lam * np.maximum(x - a, 0.0) ** 2) ** 2))
        res = minimize_scalar(sse, bounds=(0.0, a_max), method="bounded",
                              options={"xatol": 1e-10})
        a = float(res.x) if sse(res.x) < sse(0.0) else 0.0
        fits[tag] = (a, sup(v - sign * 0.5 * lam * np.maximum(x - a, 0.0) ** 2))
    xx = float(x @ x)
    for tag, sign, lam in (("PositiveWithLinear", 1, lp), ("NegativeWithLinear", -1, lm)):
        rest = sign * v - 0.5 * lam * x * x
        alpha = max(0.0, float(rest @ x) / xx)
        fits[tag] = (alpha, sup(rest - alpha * x))
    slope = float(v @ x) / xx
    fits["Linear"] = (slope, sup(v - slope * x))
    fits["Zero"] = (0.0, sup(v))
    best = None
    # Zero goes first so that it wins every tie at parameter 0
    for tag in ("Zero",) + TAGS[:-1]:
        p, dist = fits[tag]
        if best is None:
            best = (tag, p, dist)
            continue
        tie = abs(dist - best[2]) <= 1e-9 * scale
        if (dist < best[2] and not tie) or (tie and abs(p) < abs(best[1])):
            best = (tag, p, dist)
    return GlobalSolutionClass(best[0], best[1], best[2], fits)


def homogeneity_defect(u: Field, radii: Sequence[tuple[float, float]], n_dirs: int = 129) -> float:
    """``max |u(s w)/s^2 - u(r w)/r^2|`` over half-circle directions and radius pairs."""
    th = np.linspace(-0.5 * math.pi, 0.5 * math.pi, n_dirs)
    w = np.column_stack([np.cos(th), np.sin(th)])
    w[:, 0] = np.maximum(w[:, 0], 0.0)
    worst = 0.0
    for rho, sigma in radii:
        a = interpolate_many(u, sigma * w) / sigma ** 2
        b = interpolate_many(u, rho * w) / rho ** 2
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


# --------------------------------------------------------------------------
# homogeneous profiles: phi'' + 4 phi = l+ chi{phi>0} - l- chi{phi<0} on (0, pi)


@dataclass
class ODEBruteForceReport:
    theta: np.ndarray
    profiles: list[np.ndarray]
    deviations: list[float]
    candidates: list[str]
    n_starts: int
    starts: list[dict]
    spurious: list[dict] = field(default_factory=list)

    @property
    def n_nontrivial(self) -> int:
        return len(self.profiles)


def _prox_map(phi, diag, bp, bm):
    s = np.zeros_like(phi)
    s[1:] += phi[:-1]
    s[:-1] += phi[1:]
    out = np.where(s > bp, (s - bp) / diag, np.where(s < -bm, (s + bm) / diag, 0.0))
    active = (s > bp) | (s < -bm)
    return out, active


def _newton(phi, diag, bp, bm, tol=1e-13, max_iter=200):
    """Semismooth Newton on ``phi - P(phi) = 0`` with backtracking."""
    n = len(phi)
    P, act = _prox_map(phi, diag, bp, bm)
    F = phi - P
    nf = float(np.max(np.abs(F)))
    for it in range(1, max_iter + 1):
        if nf < tol * max(1.0, float(np.max(np.abs(phi)))):
            return phi, True, it - 1, nf
        off = np.where(act, -1.0 / diag, 0.0)
        ab = np.zeros((3, n))
        ab[1] = 1.0
        ab[0, 1:] = off[:-1]  # row k, column k+1
        ab[2, :-1] = off[1:]  # row k, column k-1
        try:
            step = solve_banded((1, 1), ab, -F)
        except (np.linalg.LinAlgError, ValueError):
            return phi, False, it, nf
        t = 1.0
        while t > 1e-8:
            cand = phi + t * step
            Pc, actc = _prox_map(cand, diag, bp, bm)
            nc = float(np.max(np.abs(cand - Pc)))
            if nc < (1 - 1e-4 * t) * nf or nc < tol * max(1.0, float(np.max(np.abs(cand)))):
                break
            t *= 0.5
        else:
            return phi, False, it, nf
        phi, P, act, nf = cand, Pc, actc, nc
        F = phi - P
    return phi, nf < tol * max(1.0, float(np.max(np.abs(phi)))), max_iter, nf


def _solve_ode(phi0, m, coeffs):
    d = math.pi / m
    diag = 2.0 - 4.0 * d * d
    return _newton(phi0, diag, d * d * coeffs.lambda_plus, d * d * coeffs.lambda_minus)


def ode_brute_force(coeffs: Coefficients, n_starts: int = 100, grid_m: int = 800,
                    seed: int = 0, modes: int = 6) -> ODEBruteForceReport:
    """Search for all nontrivial profiles from random starts.

    Each start is a random combination of ``modes`` sine modes scaled to an
    amplitude drawn from ``[-2 max l, 2 max l]``.  Nontrivial solutions are
    recomputed on the doubled grid and Richardson-extrapolated before the
    comparison with ``±(l±/2) sin^2``.  A cluster whose representative moves
    by more than 1% of its size under that refinement is not a discretisation
    of a continuum solution (the near-resonant ``sin 2theta`` mode produces
    such profiles with amplitude of order ``m^2``); it is listed in
    ``spurious`` and not counted.
    """
    if n_starts < 50:
        raise ValueError("need at least 50 starts")
    if grid_m < 200:
        raise ValueError("need grid_m >= 200")
    rng = np.random.default_rng(seed)
    m = grid_m
    theta = np.linspace(0.0, math.pi, m + 1)
    inner = theta[1:-1]
    lam_max = coeffs.max
    trivial_tol = 1e-8 * lam_max
    cluster_tol = 1e-3 * lam_max
    clusters: list[np.ndarray] = []
    starts = []
    for k in range(n_starts):
        if k == 0:
            phi0 = np.zeros(m - 1)
            amp = 0.0
        else:
            c = rng.standard_normal(modes) / np.arange(1, modes + 1)
            prof = sum(ci * np.sin((i + 1) * inner) for i, ci in enumerate(c))
            amp = float(rng.uniform(-2 * lam_max, 2 * lam_max))
            phi0 = amp * prof / np.max(np.abs(prof))
        phi, ok, iters, res = _solve_ode(phi0, m, coeffs)
        row = {"start": k, "amplitude": amp, "converged": ok, "iterations": iters,
               "residual": res, "cluster": -1, "sup": float(np.max(np.abs(phi)))}
        if ok and row["sup"] > trivial_tol:
            for ci, rep in enumerate(clusters):
                if np.max(np.abs(rep - phi)) < cluster_tol * max(1.0, row["sup"]):
                    row["cluster"] = ci
                    break
            else:
                clusters.append(phi)
                row["cluster"] = len(clusters) - 1
        starts.append(row)
    profiles, devs, names, spurious = [], [], [], []
    for ci, rep in enumerate(clusters):
        full = np.concatenate([[0.0], rep, [0.0]])
        size = float(np.max(np.abs(full)))
        # refine on the doubled grid starting from the coarse profile
        fine0 = np.interp(np.linspace(0, math.pi, 2 * m + 1), theta, full)[1:-1]
        fine, ok, _, _ = _solve_ode(fine0, 2 * m, coeffs)
        fine_full = np.concatenate([[0.0], fine, [0.0]])
        shift = float(np.max(np.abs(fine_full[::2] - full)))
        if not ok or shift > 1e-2 * size:
            spurious.append({"cluster": ci, "sup": size, "refined_sup": float(np.max(np.abs(fine))),
                             "refined_converged": bool(ok)})
            continue
        full = (4.0 * fine_full[::2] - full) / 3.0
        sign = 1 if full[m // 2] > 0 else -1
        lam = coeffs.lambda_plus if sign > 0 else coeffs.lambda_minus
        exact = sign * 0.5 * lam * np.sin(theta) ** 2
        profiles.append(full)
        devs.append(float(np.max(np.abs(full - exact))))
        names.append("positive" if sign > 0 else "negative")
    return ODEBruteForceReport(theta, profiles, devs, names, n_starts, starts, spurious)


def barrier_check(grid: GridSpec, C: float = 0.0) -> float:
    """``max |Delta_h U|`` for ``U = x1^4 + x2^4 - 6 x1^2 x2^2 + C`` (5-point stencil)."""
    X1, X2 = grid.coords()
    U = X1 ** 4 + X2 ** 4 - 6.0 * X1 ** 2 * X2 ** 2 + C
    h = grid.h
    lap = (U[2:, 1:-1] + U[:-2, 1:-1] + U[1:-1, 2:] + U[1:-1, :-2] - 4.0 * U[1:-1, 1:-1]) / (h * h)
    return float(np.max(np.abs(lap)))


# --------------------------------------------------------------------------
# export


def write_sequence_csv(seq: BlowupSequence, classes: Sequence[GlobalSolutionClass], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["scale", "mode", "sup", "factor", "tag", "parameter", "distance"])
        for d, s, f, c in zip(seq.scales, seq.sups, seq.factors, classes):
            w.writerow([repr(d), seq.mode, repr(s), repr(f), c.tag, repr(c.parameter),
                        repr(c.distance)])


def write_ode_csv(report: ODEBruteForceReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["start", "amplitude", "converged", "iterations", "residual", "sup", "cluster"])
        for r in report.starts:
            w.writerow([r["start"], repr(r["amplitude"]), int(r["converged"]), r["iterations"],
                        repr(r["residual"]), repr(r["sup"]), r["cluster"]])
