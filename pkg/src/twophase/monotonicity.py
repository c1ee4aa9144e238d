"""ACF and Weiss monotonicity functionals on sampled radii (n = 2)."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import trapezoid

from .catalog import Coefficients
from .grid import BOUNDARY, Field, gradient_field, interpolate_many

__all__ = ["RadialTrace", "MonotonicityReport", "disk_rect_area", "ball_integral",
           "acf_phi", "weiss_phi", "check_monotone", "tangential_derivative_parts",
           "write_trace_csv", "read_trace_csv"]


@dataclass
class RadialTrace:
    entries: list[tuple[float, float]]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        r = [e[0] for e in self.entries]
        if any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("radii of a trace must be strictly increasing")

    @property
    def radii(self) -> np.ndarray:
        return np.array([e[0] for e in self.entries])

    @property
    def values(self) -> np.ndarray:
        return np.array([e[1] for e in self.entries])

    def __len__(self):
        return len(self.entries)


@dataclass
class MonotonicityReport:
    is_monotone: bool
    worst_violation: float  # size of the largest decrease, 0 if none
    is_constant: bool
    spread: float


def check_monotone(trace: RadialTrace, slack: float = 0.0) -> MonotonicityReport:
    v = trace.values
    if len(v) < 3:
        raise ValueError("need at least 3 trace entries")
    worst = float(max(0.0, -np.min(np.diff(v))))
    spread = float(v.max() - v.min())
    return MonotonicityReport(worst <= slack, worst, spread <= slack, spread)


# --------------------------------------------------------------------------
# cut-cell quadrature


def _quadrant_area(x, y, r):
    """Signed area of ``{(s, t) between 0 and (x, y)} ∩ {s^2 + t^2 <= r^2}``."""
    sx, sy = np.sign(x), np.sign(y)
    x = np.minimum(np.abs(x), r)
    y = np.minimum(np.abs(y), r)
    s_star = np.sqrt(np.maximum(r * r - y * y, 0.0))
    inside = x <= s_star

    def F(s):
        return 0.5 * (s * np.sqrt(np.maximum(r * r - s * s, 0.0)) + r * r * np.arcsin(np.clip(s / r, -1, 1)))

    part = y * s_star + F(x) - F(s_star)
    return sx * sy * np.where(inside, x * y, part)


def disk_rect_area(x0, x1, y0, y1, r):
    """Exact area of ``[x0, x1] x [y0, y1]`` intersected with the disk ``|x| <= r``."""
    a = (_quadrant_area(x1, y1, r) - _quadrant_area(x0, y1, r)
         - _quadrant_area(x1, y0, r) + _quadrant_area(x0, y0, r))
    # cancellation can leave a few ulps outside [0, cell area]
    return np.clip(a, 0.0, (x1 - x0) * (y1 - y0))


def _cells(field_: Field):
    """Corner values of every cell whose four corners carry values."""
    v = field_.values
    c = np.stack([v[:-1, :-1], v[1:, :-1], v[:-1, 1:], v[1:, 1:]])
    ok = ~np.isnan(c).any(axis=0)
    return np.where(ok, c, 0.0), ok


def _cell_slopes(F: np.ndarray, ok: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Centred (one-sided at gaps) differences of cell values, zero if isolated."""
    out = []
    for axis in (0, 1):
        Fv = np.where(ok, F, np.nan)
        fwd = np.full(F.shape, np.nan)
        bwd = np.full(F.shape, np.nan)
        sl = [slice(None)] * 2
        a, b = list(sl), list(sl)
        a[axis], b[axis] = slice(1, None), slice(None, -1)
        diff = (Fv[tuple(a)] - Fv[tuple(b)]) / h
        fwd[tuple(b)] = diff
        bwd[tuple(a)] = diff
        both = ~np.isnan(fwd) & ~np.isnan(bwd)
        g = np.where(both, 0.5 * (np.nan_to_num(fwd) + np.nan_to_num(bwd)),
                     np.nan_to_num(fwd) + np.nan_to_num(bwd))
        out.append(np.where(ok, g, 0.0))
    return out[0], out[1]


_GL_X, _GL_W = np.polynomial.legendre.leggauss(2)


def _moment_1d(x0, x1, y0, y1, r):
    """``∫∫ x dA`` over ``[x0, x1] x [y0, y1]`` intersected with ``|x| <= r``.

    Along ``y`` the inner integral is piecewise quadratic with breaks where
    the circle meets the lines ``x = x0``, ``x = x1`` and at ``y = ±r``,
    so two Gauss points per piece are exact.
    """
    cands = [np.full_like(y0, -r), np.full_like(y0, r)]
    for xe in (x0, x1):
        q = np.sqrt(np.maximum(r * r - xe * xe, 0.0))
        cands += [q, -q]
    br = np.sort(np.clip(np.stack([y0, y1] + cands, axis=1), y0[:, None], y1[:, None]), axis=1)
    lo, hi = br[:, :-1], br[:, 1:]
    mid, rad = 0.5 * (lo + hi), 0.5 * (hi - lo)
    total = np.zeros_like(y0)
    for xg, wg in zip(_GL_X, _GL_W):
        y = mid + rad * xg
        S = np.sqrt(np.maximum(r * r - y * y, 0.0))
        xh = np.minimum(x1[:, None], S)
        xl = np.maximum(x0[:, None], -S)
        f = np.where(xh > xl, 0.5 * (xh * xh - xl * xl), 0.0)
        total += np.sum(wg * rad * f, axis=1)
    return total


def _cut_moments(x0, x1, y0, y1, r):
    """First moments of ``[x0, x1] x [y0, y1]`` intersected with ``|x| <= r``."""
    return _moment_1d(x0, x1, y0, y1, r), _moment_1d(y0, y1, x0, x1, r)


def ball_integral(cell_values: np.ndarray, ok: np.ndarray, grid, r: float,
                  center=(0.0, 0.0), linear: bool = True) -> float:
    """Integrate a cell density over ``B_r(center)``.

    Full cells contribute value times area.  Cells cut by the circle use the
    exact area and, with ``linear``, a linear model of the density through
    the cell centre, so a smooth density costs ``O(h^2)`` per unit length of
    circle rather than ``O(h)``.
    """
    h = grid.h
    x0 = grid.x1[:-1] - center[0]
    y0 = grid.x2[:-1] - center[1]
    X0, Y0 = np.meshgrid(x0, y0, indexing="ij")
    # cheap reject of cells clearly outside the ball
    dmin = np.hypot(np.maximum(0, np.maximum(X0, -(X0 + h))), np.maximum(0, np.maximum(Y0, -(Y0 + h))))
    near = ok & (dmin < r)
    if not near.any():
        return 0.0
    a0, b0 = X0[near], Y0[near]
    A = disk_rect_area(a0, a0 + h, b0, b0 + h, r)
    total = float(np.sum(A * cell_values[near]))
    if not linear:
        return total
    cut = (A > 0) & (A < h * h * (1 - 1e-12))
    if cut.any():
        s1, s2 = _cell_slopes(cell_values, ok, h)
        a, b = a0[cut], b0[cut]
        mx, my = _cut_moments(a, a + h, b, b + h, r)
        c1, c2 = a + 0.5 * h, b + 0.5 * h
        Ac = A[cut]
        total += float(np.sum(s1[near][cut] * (mx - c1 * Ac) + s2[near][cut] * (my - c2 * Ac)))
    return total


def _second_differences(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Undivided second differences along each axis.

    The first and last lines copy their neighbour; entries next to missing
    values come out as NaN.
    """
    d11 = np.full(v.shape, np.nan)
    d22 = np.full(v.shape, np.nan)
    d11[1:-1] = v[2:] - 2 * v[1:-1] + v[:-2]
    d22[:, 1:-1] = v[:, 2:] - 2 * v[:, 1:-1] + v[:, :-2]
    d11[0], d11[-1] = d11[1], d11[-2]
    d22[:, 0], d22[:, -1] = d22[:, 1], d22[:, -2]
    return d11, d22


def _grad_sq_cells(f: Field):
    """Cell averages of ``|grad u|^2``, exact for quadratic ``u`` on full cells.

    The centre value of the averaged forward differences is lifted to the
    cell mean by ``h^2/24`` times the Laplacian of the cell values.
    """
    c, ok = _cells(f)
    h = f.grid.h
    g1 = (c[1] - c[0] + c[3] - c[2]) / (2 * h)
    g2 = (c[2] - c[0] + c[3] - c[1]) / (2 * h)
    G = np.where(ok, g1 * g1 + g2 * g2, np.nan)
    d11, d22 = _second_differences(G)
    return np.where(ok, G + np.nan_to_num(d11 + d22) / 24.0, 0.0), ok


def _cell_means(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cell averages of nodal data, exact for quadratics on full cells.

    The corner mean overshoots the cell mean by ``h^2/12`` times the
    Laplacian; the undivided 5-point Laplacian removes it.
    """
    d11, d22 = _second_differences(v)
    lap = np.nan_to_num(d11 + d22)
    lap = np.where(np.isnan(v), np.nan, lap)
    c = np.stack([v[:-1, :-1], v[1:, :-1], v[:-1, 1:], v[1:, 1:]])
    ok = ~np.isnan(c).any(axis=0)
    lc = np.stack([lap[:-1, :-1], lap[1:, :-1], lap[:-1, 1:], lap[1:, 1:]])
    mean = np.where(ok, c, 0.0).mean(axis=0) - np.where(ok, lc, 0.0).mean(axis=0) / 12.0
    return np.where(ok, mean, 0.0), ok


def _interp_corrected(u: Field, pts: np.ndarray) -> np.ndarray:
    """Bilinear interpolation plus its leading error term (exact for quadratics)."""
    grid = u.grid
    base = interpolate_many(u, pts)
    d11, d22 = _second_differences(u.values)
    inside = ~np.isnan(u.values)
    f11 = Field(u.mask, np.where(inside, np.nan_to_num(d11), np.nan))
    f22 = Field(u.mask, np.where(inside, np.nan_to_num(d22), np.nan))
    s = (pts[:, 0] - grid.origin[0]) / grid.h
    t = (pts[:, 1] - grid.origin[1]) / grid.h
    fs, ft = s - np.floor(s), t - np.floor(t)
    return base - 0.5 * (fs * (1 - fs) * interpolate_many(f11, pts)
                         + ft * (1 - ft) * interpolate_many(f22, pts))


# --------------------------------------------------------------------------
# functionals


def _value_at(f: Field, point) -> float:
    return float(interpolate_many(f, np.asarray(point, dtype=float)[None, :])[0])


def acf_phi(h1: Field, h2: Field, radii: Sequence[float], center=(0.0, 0.0),
            tol: float = 1e-9) -> RadialTrace:
    """``phi(r) = r^-4 (∫_{B_r} |grad h1|^2)(∫_{B_r} |grad h2|^2)``.

    Both functions are taken as zero outside the domain.
    """
    a, b = np.nan_to_num(h1.values), np.nan_to_num(h2.values)
    scale = max(1.0, np.abs(a).max(), np.abs(b).max())
    for name, v in (("h1", a), ("h2", b)):
        if v.min() < -tol * scale:
            i, j = np.unravel_index(np.argmin(v), v.shape)
            raise ValueError(f"{name} is negative at node ({i}, {j}): {v[i, j]}")
    prod = a * b
    if prod.max() > tol * scale * scale:
        i, j = np.unravel_index(np.argmax(prod), prod.shape)
        raise ValueError(f"h1 and h2 overlap at node ({i}, {j}): product {prod[i, j]}")
    for name, f in (("h1", h1), ("h2", h2)):
        if abs(_value_at(f, center)) > max(tol * scale, 10 * f.grid.h * scale):
            raise ValueError(f"{name} does not vanish at the centre {tuple(center)}")
    g1, ok1 = _grad_sq_cells(h1)
    g2, ok2 = _grad_sq_cells(h2)
    entries = []
    for r in radii:
        i1 = ball_integral(g1, ok1, h1.grid, r, center)
        i2 = ball_integral(g2, ok2, h2.grid, r, center)
        entries.append((float(r), i1 * i2 / r ** 4))
    return RadialTrace(entries, {"functional": "acf", "center": tuple(center),
                                 "h": h1.grid.h})


def _pi_data_sup(u: Field) -> float:
    X1, _ = u.grid.coords()
    on_pi = (u.mask.node_class == BOUNDARY) & (np.abs(X1) <= 1e-12)
    return float(np.max(np.abs(u.values[on_pi]))) if on_pi.any() else 0.0


def weiss_phi(u: Field, coeffs: Coefficients, radii: Sequence[float],
              n_surface: int = 1024, pi_tol: float = 1e-9,
              allow_nonzero_pi: bool = False) -> RadialTrace:
    """Weiss' boundary-adjusted energy on half balls about the origin.

    ``Phi(r) = r^-4 ∫_{B_r^+} (|grad u|^2 + 2 l+ u^+ + 2 l- u^-)
              - r^-5 ∫_{∂B_r ∩ {x1>0}} 2 u^2``

    The volume term uses exact cut-cell areas with cell means exact for
    quadratics, the surface term the trapezoid rule on ``n_surface + 1``
    samples of the bilinear interpolant corrected to second order.
    """
    if n_surface < 256:
        raise ValueError("surface quadrature needs at least 256 samples")
    pi_sup = _pi_data_sup(u)
    if pi_sup > pi_tol and not allow_nonzero_pi:
        raise ValueError(f"data on x1 = 0 is not zero (max |u| = {pi_sup:.3e})")
    g, ok = _grad_sq_cells(u)
    v = u.values
    with np.errstate(invalid="ignore"):
        P = 2 * coeffs.lambda_plus * np.maximum(v, 0) + 2 * coeffs.lambda_minus * np.maximum(-v, 0)
    pot, _ = _cell_means(np.where(np.isnan(v), np.nan, P))
    dens = g + pot
    theta = np.linspace(-0.5 * math.pi, 0.5 * math.pi, n_surface + 1)
    entries = []
    for r in radii:
        vol = ball_integral(dens, ok, u.grid, r)
        pts = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        pts[:, 0] = np.maximum(pts[:, 0], 0.0)
        vals = _interp_corrected(u, pts)
        surf = trapezoid(2 * vals ** 2, theta) * r
        entries.append((float(r), vol / r ** 4 - surf / r ** 5))
    return RadialTrace(entries, {"functional": "weiss", "h": u.grid.h, "n_surface": n_surface,
                                 "pi_data_sup": pi_sup})


def tangential_derivative_parts(u: Field) -> tuple[Field, Field]:
    """``(D_{x2} u)^+`` and ``(D_{x2} u)^-`` on the domain nodes.

    Interior nodes use the stencil gradient; nodes on the flat boundary
    differentiate the data along it.  Outside the domain both are zero.
    """
    g = gradient_field(u)[..., 1]
    v = u.values
    X1, _ = u.grid.coords()
    h = u.grid.h
    d = np.where(u.mask.interior, g, np.nan)
    bnd = u.mask.node_class == BOUNDARY
    n2 = v.shape[1]
    for i, j in np.argwhere(bnd):
        lo = j - 1 if j > 0 and bnd[i, j - 1] else None
        hi = j + 1 if j + 1 < n2 and bnd[i, j + 1] else None
        if abs(X1[i, j]) > 1e-12:
            # curved part: fall back to the neighbouring interior value
            d[i, j] = 0.0
            continue
        if lo is not None and hi is not None:
            d[i, j] = (v[i, hi] - v[i, lo]) / (2 * h)
        elif hi is not None:
            d[i, j] = (v[i, hi] - v[i, j]) / h
        elif lo is not None:
            d[i, j] = (v[i, j] - v[i, lo]) / h
        else:
            d[i, j] = 0.0
    d = np.where(u.mask.inside, d, np.nan)
    plus = Field(u.mask, np.maximum(d, 0.0))
    minus = Field(u.mask, np.maximum(-d, 0.0))
    return plus, minus


def write_trace_csv(trace: RadialTrace, path, header=("r", "value")) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r, val in trace.entries:
            w.writerow([repr(float(r)), repr(float(val))])


def read_trace_csv(path) -> RadialTrace:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return RadialTrace([(float(a), float(b)) for a, b in rows[1:]])
