"""Region decomposition, free-boundary extraction and scale diagnostics."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .catalog import Coefficients
from .grid import BOUNDARY, INTERIOR, Field, gradient_field, sup_on_half_ball
from .monotonicity import RadialTrace

__all__ = ["RegionDecomposition", "FreeBoundaryCurve", "TangencyProfile", "DensityTrace",
           "decompose", "extract_gamma", "density_ratios", "tangency_profile", "cone_test",
           "nondegeneracy_trace", "growth_check", "normal_slope_at_origin",
           "write_decomposition_csv", "write_polylines_csv", "dyadic_radii"]

PLUS, MINUS, LAMBDA, BAND = 1, -1, 0, 2


@dataclass(eq=False)
class RegionDecomposition:
    field: Field
    labels: np.ndarray  # PLUS / MINUS / LAMBDA / BAND on interior nodes, BAND elsewhere
    tau_u: float
    tau_g: float

    @property
    def omega_plus(self) -> np.ndarray:
        return self.labels == PLUS

    @property
    def omega_minus(self) -> np.ndarray:
        return self.labels == MINUS

    @property
    def lambda_set(self) -> np.ndarray:
        return self.labels == LAMBDA

    @property
    def band(self) -> np.ndarray:
        return (self.labels == BAND) & self.field.mask.interior


def decompose(u: Field, tau_u: float | None = None, tau_g: float | None = None
              ) -> RegionDecomposition:
    """Classify interior nodes into Omega+, Omega-, Lambda or the unclassified band.

    Defaults ``tau_u = h^2`` and ``tau_g = 4h``.
    """
    h = u.grid.h
    tau_u = h * h if tau_u is None else tau_u
    tau_g = 4 * h if tau_g is None else tau_g
    v = u.values
    inter = u.mask.interior
    g = np.linalg.norm(gradient_field(u), axis=-1)
    labels = np.full(v.shape, BAND, dtype=np.int8)
    with np.errstate(invalid="ignore"):
        labels[inter & (v > tau_u)] = PLUS
        labels[inter & (v < -tau_u)] = MINUS
        labels[inter & (np.abs(v) <= tau_u) & (g <= tau_g)] = LAMBDA
    return RegionDecomposition(u, labels, tau_u, tau_g)


@dataclass
class FreeBoundaryCurve:
    polylines: list[np.ndarray]
    field: Field | None = None

    @property
    def points(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.unique(np.concatenate(self.polylines), axis=0)

    def __len__(self) -> int:
        return len(self.polylines)


def _edge_vertex(pa, pb, ua, ub, sa, sb, lam):
    """Free-boundary point on the edge from node a to node b."""
    if sa != 0 and sb != 0:
        t = ua / (ua - ub)
        return pa + t * (pb - pa)
    # one endpoint on the plateau: invert the one-phase profile u = lam/2 d^2
    if sa == 0:
        pa, pb, ua = pb, pa, ub
    if lam is None:
        t = 0.5
    else:
        t = min(math.sqrt(2.0 * abs(ua) / lam) / float(np.linalg.norm(pb - pa)), 1.0)
    return pa + t * (pb - pa)


def extract_gamma(u: Field, tau_u: float = 0.0, coeffs: Coefficients | None = None
                  ) -> FreeBoundaryCurve:
    """Marching-squares reconstruction of Gamma = (dOmega+ ∪ dOmega-) ∩ D.

    Nodes are labelled +1, -1 or 0 (``|u| <= tau_u``, the plateau).  Every grid
    edge with differing labels carries one vertex: sign changes use the
    linear zero crossing, plateau edges the offset ``sqrt(2|u|/lambda)`` of the
    one-phase quadratic profile (edge midpoint when ``coeffs`` is None).
    Edges touching a Dirichlet node count only for genuine sign changes, so
    the fixed boundary itself never shows up as free boundary.
    """
    mask, grid = u.mask, u.grid
    v = np.nan_to_num(u.values)
    cls = mask.node_class
    lab = np.where(v > tau_u, 1, np.where(v < -tau_u, -1, 0)).astype(np.int8)
    X1, X2 = grid.coords()
    n1, n2 = v.shape
    vertices: dict[tuple, np.ndarray] = {}

    def lam_for(s):
        if coeffs is None:
            return None
        return coeffs.lambda_plus if s > 0 else coeffs.lambda_minus

    def edge(a, b):
        key = (a, b)
        if key in vertices:
            return key
        (i, j), (k, l) = a, b
        if cls[i, j] == 0 or cls[k, l] == 0:
            return None
        sa, sb = lab[i, j], lab[k, l]
        if sa == sb:
            return None
        if INTERIOR not in (cls[i, j], cls[k, l]):
            return None
        if (cls[i, j] == BOUNDARY or cls[k, l] == BOUNDARY) and (sa == 0 or sb == 0):
            return None
        pa = np.array([X1[i, j], X2[i, j]])
        pb = np.array([X1[k, l], X2[k, l]])
        lam = lam_for(sa if sa != 0 else sb)
        vertices[key] = _edge_vertex(pa, pb, v[i, j], v[k, l], sa, sb, lam)
        return key

    segments = []
    quad = np.stack([lab[:-1, :-1], lab[1:, :-1], lab[:-1, 1:], lab[1:, 1:]])
    mixed = quad.min(axis=0) != quad.max(axis=0)
    for i, j in np.argwhere(mixed):
        i, j = int(i), int(j)
        keys = [edge((i, j), (i + 1, j)), edge((i + 1, j), (i + 1, j + 1)),
                edge((i, j + 1), (i + 1, j + 1)), edge((i, j), (i, j + 1))]
        keys = [k for k in keys if k is not None]
        if len(keys) == 2:
            segments.append((keys[0], keys[1]))
        elif len(keys) >= 3:
            centre = ("c", i, j)
            vertices[centre] = np.mean([vertices[k] for k in keys], axis=0)
            segments.extend((centre, k) for k in keys)
        elif len(keys) == 1:
            segments.append((keys[0], keys[0]))
    return FreeBoundaryCurve(_chain(segments, vertices), u)


def _chain(segments, vertices) -> list[np.ndarray]:
    adj: dict = {}
    for a, b in segments:
        adj.setdefault(a, []).append(b)
        if a != b:
            adj.setdefault(b, []).append(a)
    used = set()
    lines = []

    def walk(start):
        path = [start]
        cur = start
        while True:
            nxt = None
            for nb in adj[cur]:
                e = frozenset((cur, nb))
                if e not in used:
                    used.add(e)
                    nxt = nb
                    break
            if nxt is None or nxt == cur:
                return path
            path.append(nxt)
            cur = nxt

    # open chains start at endpoints, then loops
    starts = [k for k, nb in adj.items() if len(nb) != 2] + list(adj)
    for s in starts:
        while any(frozenset((s, nb)) not in used for nb in adj[s]):
            path = walk(s)
            lines.append(np.array([vertices[k] for k in path]))
    return lines


@dataclass
class TangencyProfile:
    radii: np.ndarray
    sigma_hat: np.ndarray
    counts: np.ndarray

    def rows(self):
        return list(zip(self.radii.tolist(), self.sigma_hat.tolist(), self.counts.tolist()))


def dyadic_radii(r_max: float, levels: int) -> list[float]:
    return [r_max * 2.0 ** -k for k in range(levels)]


def tangency_profile(gamma, radii: Sequence[float]) -> TangencyProfile:
    """Max of ``x1/|x2|`` over Gamma vertices in each annulus ``(r/2, r]``."""
    pts = gamma.points if isinstance(gamma, FreeBoundaryCurve) else np.asarray(gamma)
    radii = np.asarray(sorted(radii, reverse=True), dtype=float)
    rho = np.hypot(pts[:, 0], pts[:, 1]) if len(pts) else np.zeros(0)
    sig = np.full(len(radii), -np.inf)
    cnt = np.zeros(len(radii), dtype=int)
    for k, r in enumerate(radii):
        sel = (rho > r / 2) & (rho <= r)
        cnt[k] = int(sel.sum())
        if cnt[k]:
            p = pts[sel]
            with np.errstate(divide="ignore"):
                ratio = np.where(np.abs(p[:, 1]) > 0, p[:, 0] / np.abs(p[:, 1]), np.inf)
            sig[k] = float(ratio.max())
    return TangencyProfile(radii, sig, cnt)


def cone_test(points, eps: float) -> np.ndarray:
    """``x1 > eps * |x2|`` for each point (membership in the cone K_eps)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if p.size == 0:
        return np.zeros(0, dtype=bool)
    return p[:, 0] > eps * np.abs(p[:, 1])


@dataclass
class DensityTrace:
    radii: np.ndarray
    ratio_plus: np.ndarray
    ratio_minus: np.ndarray
    ratio_lambda: np.ndarray
    notes: list[str] = field(default_factory=list)

    def rows(self):
        return list(zip(self.radii.tolist(), self.ratio_plus.tolist(),
                        self.ratio_minus.tolist(), self.ratio_lambda.tolist()))


def density_ratios(decomp: RegionDecomposition, radii: Sequence[float],
                   center=(0.0, 0.0)) -> DensityTrace:
    """Area fractions of Omega+, Omega-, Lambda in ``B_r ∩ D`` by node counting.

    Denominator is the exact area of the half ball when the centre lies on Pi
    and the ball stays inside the domain, otherwise the cell area of all
    domain nodes in the ball.
    """
    u = decomp.field
    h = u.grid.h
    X1, X2 = u.grid.coords()
    dist = np.hypot(X1 - center[0], X2 - center[1])
    keep, rp, rm, rl, notes = [], [], [], [], []
    for r in radii:
        if r <= 4 * h:
            notes.append(f"radius {r} skipped: not above 4h = {4 * h}")
            continue
        sel = u.mask.interior & (dist <= r)
        if center[0] == 0.0 and u.mask.contains((r * 0.999, center[1])):
            denom = 0.5 * math.pi * r * r
        else:
            denom = (u.mask.inside & (dist <= r)).sum() * h * h
        cell = h * h
        keep.append(r)
        rp.append((decomp.omega_plus & sel).sum() * cell / denom)
        rm.append((decomp.omega_minus & sel).sum() * cell / denom)
        rl.append((decomp.lambda_set & sel).sum() * cell / denom)
    return DensityTrace(np.array(keep), np.array(rp), np.array(rm), np.array(rl), notes)


def nondegeneracy_trace(u: Field, radii: Sequence[float], center=(0.0, 0.0)) -> RadialTrace:
    """``c(r) = sup_{B_r(center) ∩ D} |u| / r^2``."""
    entries = [(float(r), sup_on_half_ball(u, r, center) / r ** 2) for r in sorted(radii)]
    return RadialTrace(entries, {"functional": "nondegeneracy", "center": tuple(center)})


def normal_slope_at_origin(u: Field) -> float:
    """``D_{x1} u(0)`` by the one-sided second-order difference."""
    i, j = u.grid.index_of((0.0, 0.0))
    if u.mask.node_class[i, j] != BOUNDARY or abs(u.grid.node(i, j)[0]) > 1e-12:
        raise ValueError("origin is not a node of the flat boundary x1 = 0")
    v = u.values
    return float((-3 * v[i, j] + 4 * v[i + 1, j] - v[i + 2, j]) / (2 * u.grid.h))


def growth_check(u: Field, radii: Sequence[float]) -> RadialTrace:
    """``C(r) = sup_{B_r^+} |u - D_{x1}u(0) x1| / r^2``."""
    slope = normal_slope_at_origin(u)
    X1, _ = u.grid.coords()
    w = u.with_values(u.values - slope * X1)
    entries = [(float(r), sup_on_half_ball(w, r) / r ** 2) for r in sorted(radii)]
    return RadialTrace(entries, {"functional": "growth", "slope": slope})


def write_decomposition_csv(decomp: RegionDecomposition, path) -> None:
    X1, X2 = decomp.field.grid.coords()
    names = {PLUS: "omega_plus", MINUS: "omega_minus", LAMBDA: "lambda", BAND: "band"}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "j", "x1", "x2", "u", "region"])
        for i, j in np.argwhere(decomp.field.mask.interior):
            w.writerow([int(i), int(j), repr(float(X1[i, j])), repr(float(X2[i, j])),
                        repr(float(decomp.field.values[i, j])), names[int(decomp.labels[i, j])]])


def write_polylines_csv(gamma: FreeBoundaryCurve, path) -> None:
    with open(Path(path), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["polyline", "vertex", "x1", "x2"])
        for k, line in enumerate(gamma.polylines):
            for m, (a, b) in enumerate(line):
                w.writerow([k, m, repr(float(a)), repr(float(b))])
