"""Uniform Cartesian grids, domain masks and finite-difference stencils.

Node ``(i, j)`` sits at ``origin + (i*h, j*h)``; axis 0 is ``x1`` (normal to
the flat boundary ``x1 = 0``) and axis 1 is ``x2``.  Curved boundaries are
handled by recording, for every interior node, the fractional length of each
of its four arms to the true boundary (Shortley--Weller style).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "EXTERIOR", "BOUNDARY", "INTERIOR", "DIRECTIONS",
    "GridSpec", "Rectangle", "Disk", "HalfDisk", "Annulus", "shape_from_dict",
    "DomainMask", "Field", "build_mask",
    "laplacian_at", "laplacian_field", "gradient_at", "gradient_field",
    "interpolate", "interpolate_many", "sup_on_half_ball",
]

EXTERIOR, BOUNDARY, INTERIOR = 0, 1, 2

# arm order used everywhere: +x1, -x1, +x2, -x2
DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))

_NO_HIT = np.inf


@dataclass(frozen=True)
class GridSpec:
    n1: int
    n2: int
    h: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"mesh width must be positive, got {self.h}")
        if self.n1 < 3 or self.n2 < 3:
            raise ValueError(f"need at least 3 nodes per axis, got {self.n1}x{self.n2}")

    @classmethod
    def covering(cls, shape, h: float, pad: int = 0) -> "GridSpec":
        """Smallest grid with nodes on integer multiples of ``h`` covering ``shape``."""
        (a1, b1), (a2, b2) = shape.bbox()
        i0 = math.floor(a1 / h + 1e-9) - pad
        j0 = math.floor(a2 / h + 1e-9) - pad
        i1 = math.ceil(b1 / h - 1e-9) + pad
        j1 = math.ceil(b2 / h - 1e-9) + pad
        return cls(i1 - i0 + 1, j1 - j0 + 1, h, (i0 * h, j0 * h))

    @property
    def x1(self) -> np.ndarray:
        return self.origin[0] + self.h * np.arange(self.n1)

    @property
    def x2(self) -> np.ndarray:
        return self.origin[1] + self.h * np.arange(self.n2)

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x1, self.x2, indexing="ij")

    def node(self, i: int, j: int) -> tuple[float, float]:
        return (self.origin[0] + i * self.h, self.origin[1] + j * self.h)

    def index_of(self, point: Sequence[float]) -> tuple[int, int]:
        """Index of the node nearest to ``point``."""
        i = int(round((point[0] - self.origin[0]) / self.h))
        j = int(round((point[1] - self.origin[1]) / self.h))
        return i, j

    def extent(self) -> tuple[tuple[float, float], tuple[float, float]]:
        x1, x2 = self.x1, self.x2
        return (x1[0], x1[-1]), (x2[0], x2[-1])


# --------------------------------------------------------------------------
# shapes


def _circle_hits(p1, p2, d, center, radius):
    """Positive ray parameters where ``p + t*d`` crosses a circle (nan if none)."""
    q1, q2 = p1 - center[0], p2 - center[1]
    b = q1 * d[0] + q2 * d[1]
    c = q1 * q1 + q2 * q2 - radius * radius
    disc = b * b - c
    with np.errstate(invalid="ignore"):
        s = np.sqrt(disc)
    t_lo, t_hi = -b - s, -b + s
    t_lo = np.where((disc >= 0) & (t_lo > 0), t_lo, _NO_HIT)
    t_hi = np.where((disc >= 0) & (t_hi > 0), t_hi, _NO_HIT)
    return np.minimum(t_lo, t_hi)


def _plane_hit(p, dcomp, level):
    """Ray parameter to the axis plane ``x = level`` along one coordinate."""
    if dcomp == 0:
        return np.full(np.shape(p), _NO_HIT)
    t = (level - p) / dcomp
    return np.where(t > 0, t, _NO_HIT)


@dataclass(frozen=True)
class Rectangle:
    x1min: float
    x1max: float
    x2min: float
    x2max: float
    kind = "rectangle"

    def bbox(self):
        return (self.x1min, self.x1max), (self.x2min, self.x2max)

    def level(self, x1, x2):
        return np.maximum(np.maximum(self.x1min - x1, x1 - self.x1max),
                          np.maximum(self.x2min - x2, x2 - self.x2max))

    def ray_hit(self, x1, x2, d):
        t = np.minimum(_plane_hit(x1, d[0], self.x1min), _plane_hit(x1, d[0], self.x1max))
        return np.minimum(t, np.minimum(_plane_hit(x2, d[1], self.x2min),
                                        _plane_hit(x2, d[1], self.x2max)))

    def to_dict(self):
        return {"kind": self.kind, "x1min": self.x1min, "x1max": self.x1max,
                "x2min": self.x2min, "x2max": self.x2max}


@dataclass(frozen=True)
class Disk:
    radius: float = 1.0
    center: tuple[float, float] = (0.0, 0.0)
    kind = "disk"

    def bbox(self):
        c, r = self.center, self.radius
        return (c[0] - r, c[0] + r), (c[1] - r, c[1] + r)

    def level(self, x1, x2):
        return np.hypot(x1 - self.center[0], x2 - self.center[1]) - self.radius

    def ray_hit(self, x1, x2, d):
        return _circle_hits(x1, x2, d, self.center, self.radius)

    def to_dict(self):
        return {"kind": self.kind, "radius": self.radius, "center": list(self.center)}


@dataclass(frozen=True)
class HalfDisk:
    """``B_R^+``: the part of the disk of radius R about 0 with ``x1 > 0``."""

    radius: float = 1.0
    kind = "half_disk"

    def bbox(self):
        return (0.0, self.radius), (-self.radius, self.radius)

    def level(self, x1, x2):
        return np.maximum(np.hypot(x1, x2) - self.radius, -x1)

    def ray_hit(self, x1, x2, d):
        return np.minimum(_circle_hits(x1, x2, d, (0.0, 0.0), self.radius),
                          _plane_hit(x1, d[0], 0.0))

    def to_dict(self):
        return {"kind": self.kind, "radius": self.radius}


@dataclass(frozen=True)
class Annulus:
    inner: float
    outer: float
    center: tuple[float, float] = (0.0, 0.0)
    kind = "annulus"

    def __post_init__(self):
        if not 0 < self.inner < self.outer:
            raise ValueError("annulus needs 0 < inner < outer")

    def bbox(self):
        c, r = self.center, self.outer
        return (c[0] - r, c[0] + r), (c[1] - r, c[1] + r)

    def level(self, x1, x2):
        rho = np.hypot(x1 - self.center[0], x2 - self.center[1])
        return np.maximum(self.inner - rho, rho - self.outer)

    def ray_hit(self, x1, x2, d):
        return np.minimum(_circle_hits(x1, x2, d, self.center, self.inner),
                          _circle_hits(x1, x2, d, self.center, self.outer))

    def to_dict(self):
        return {"kind": self.kind, "inner": self.inner, "outer": self.outer,
                "center": list(self.center)}


_SHAPES = {"rectangle": Rectangle, "disk": Disk, "half_disk": HalfDisk, "annulus": Annulus}


def shape_from_dict(d: dict):
    d = dict(d)
    kind = d.pop("kind")
    try:
        cls = _SHAPES[kind]
    except KeyError:
        raise ValueError(f"unknown domain shape {kind!r}; expected one of {sorted(_SHAPES)}")
    if "center" in d:
        d["center"] = tuple(float(c) for c in d["center"])
    return cls(**d)


# --------------------------------------------------------------------------
# masks and fields


@dataclass(frozen=True, eq=False)
class DomainMask:
    """Node classification plus per-arm boundary geometry.

    ``theta[i, j, k]`` is the arm length toward direction ``DIRECTIONS[k]`` in
    units of ``h`` (1 for a full arm); ``cut[i, j, k]`` marks arms that end on
    the true boundary at ``arm_points[i, j, k]`` rather than at a node.
    """

    shape: object
    grid: GridSpec
    node_class: np.ndarray
    theta: np.ndarray
    cut: np.ndarray
    arm_points: np.ndarray

    @property
    def interior(self) -> np.ndarray:
        return self.node_class == INTERIOR

    @property
    def boundary(self) -> np.ndarray:
        return self.node_class == BOUNDARY

    @property
    def inside(self) -> np.ndarray:
        """Interior or boundary nodes (everything carrying a value)."""
        return self.node_class != EXTERIOR

    def counts(self) -> dict[str, int]:
        return {"interior": int(self.interior.sum()), "boundary": int(self.boundary.sum()),
                "exterior": int((self.node_class == EXTERIOR).sum())}

    def contains(self, point, tol: float | None = None) -> bool:
        tol = 1e-9 * self.grid.h if tol is None else tol
        return bool(self.shape.level(point[0], point[1]) <= tol)


def build_mask(shape, grid: GridSpec) -> DomainMask:
    (a1, b1), (a2, b2) = shape.bbox()
    (g1, G1), (g2, G2) = grid.extent()
    slack = 1e-9 * grid.h
    if a1 < g1 - slack or b1 > G1 + slack or a2 < g2 - slack or b2 > G2 + slack:
        raise ValueError(
            f"{shape.kind} with bounding box [{a1}, {b1}]x[{a2}, {b2}] does not fit in "
            f"grid extent [{g1}, {G1}]x[{g2}, {G2}]")
    X1, X2 = grid.coords()
    lev = shape.level(X1, X2)
    eps = 1e-9 * grid.h
    node_class = np.full(X1.shape, EXTERIOR, dtype=np.int8)
    node_class[lev <= eps] = BOUNDARY
    node_class[lev < -eps] = INTERIOR

    n1, n2, h = grid.n1, grid.n2, grid.h
    theta = np.ones((n1, n2, 4))
    cut = np.zeros((n1, n2, 4), dtype=bool)
    arm_points = np.full((n1, n2, 4, 2), np.nan)
    interior = node_class == INTERIOR
    for k, d in enumerate(DIRECTIONS):
        # interior nodes never sit on the grid edge, so the shifted neighbour exists
        nb = np.full((n1, n2), EXTERIOR, dtype=np.int8)
        src = node_class[max(d[0], 0):n1 + min(d[0], 0), max(d[1], 0):n2 + min(d[1], 0)]
        nb[max(-d[0], 0):n1 + min(-d[0], 0), max(-d[1], 0):n2 + min(-d[1], 0)] = src
        t = shape.ray_hit(X1, X2, d)
        is_cut = interior & ((t < h * (1 - 1e-9)) | (nb == EXTERIOR))
        tt = np.clip(np.where(is_cut, t, h) / h, 1e-9, 1.0)
        theta[..., k] = np.where(is_cut, tt, 1.0)
        cut[..., k] = is_cut
        arm_points[..., k, 0] = np.where(is_cut, X1 + tt * h * d[0], np.nan)
        arm_points[..., k, 1] = np.where(is_cut, X2 + tt * h * d[1], np.nan)
    return DomainMask(shape, grid, node_class, theta, cut, arm_points)


@dataclass(frozen=True, eq=False)
class Field:
    """Nodal values on a mask; exterior entries are NaN and never read.

    ``arm_values`` holds the boundary values at the ends of cut arms, which the
    unequal-arm stencils need.  It may be ``None`` for purely nodal fields.
    """

    mask: DomainMask
    values: np.ndarray
    arm_values: np.ndarray | None = dc_field(default=None)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.mask.grid.n1, self.mask.grid.n2):
            raise ValueError(f"values shape {v.shape} does not match grid")
        v[self.mask.node_class == EXTERIOR] = np.nan
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        if self.arm_values is not None:
            a = np.array(self.arm_values, dtype=float)
            a[~self.mask.cut] = np.nan
            a.flags.writeable = False
            object.__setattr__(self, "arm_values", a)

    @property
    def grid(self) -> GridSpec:
        return self.mask.grid

    @classmethod
    def sample(cls, mask: DomainMask, func: Callable) -> "Field":
        """Evaluate ``func(x1, x2)`` (vectorised) at nodes and cut-arm endpoints."""
        X1, X2 = mask.grid.coords()
        inside = mask.inside
        vals = np.full(X1.shape, np.nan)
        vals[inside] = func(X1[inside], X2[inside])
        arms = np.full(mask.cut.shape, np.nan)
        if mask.cut.any():
            p = mask.arm_points[mask.cut]
            arms[mask.cut] = func(p[:, 0], p[:, 1])
        return cls(mask, vals, arms)

    def with_values(self, values: np.ndarray, arm_values: np.ndarray | None = None) -> "Field":
        return Field(self.mask, values, self.arm_values if arm_values is None else arm_values)

    def map(self, func: Callable[[np.ndarray], np.ndarray]) -> "Field":
        """Apply ``func`` to every value, arm values included."""
        arms = None if self.arm_values is None else func(self.arm_values)
        return Field(self.mask, func(self.values), arms)


# --------------------------------------------------------------------------
# stencils

def _arm_values(field: Field, k: int) -> np.ndarray:
    """Value at the far end of arm ``k`` for every node (NaN where unavailable)."""
    d = DIRECTIONS[k]
    n1, n2 = field.values.shape
    nb = np.full((n1, n2), np.nan)
    nb[max(-d[0], 0):n1 + min(-d[0], 0), max(-d[1], 0):n2 + min(-d[1], 0)] = \
        field.values[max(d[0], 0):n1 + min(d[0], 0), max(d[1], 0):n2 + min(d[1], 0)]
    cut = field.mask.cut[..., k]
    if cut.any():
        if field.arm_values is None:
            raise ValueError("field has cut arms but no boundary arm values; "
                             "build it with Field.sample or from a solve")
        nb = np.where(cut, field.arm_values[..., k], nb)
    return nb


def laplacian_field(field: Field) -> np.ndarray:
    """Five-point Laplacian with Shortley--Weller arms at every interior node."""
    h = field.grid.h
    th = field.mask.theta
    u = field.values
    out = np.full(u.shape, np.nan)
    lap = np.zeros(u.shape)
    for kp, km in ((0, 1), (2, 3)):
        a, b = th[..., km] * h, th[..., kp] * h
        up, um = _arm_values(field, kp), _arm_values(field, km)
        with np.errstate(invalid="ignore"):
            lap = lap + 2.0 / (a + b) * ((up - u) / b + (um - u) / a)
    inter = field.mask.interior
    out[inter] = lap[inter]
    return out


def gradient_field(field: Field) -> np.ndarray:
    """Gradient at interior nodes, shape ``(n1, n2, 2)``; NaN elsewhere.

    Central differences on full arms; the three-point unequal-arm formula
    (exact on quadratics) next to curved boundaries.
    """
    h = field.grid.h
    th = field.mask.theta
    u = field.values
    out = np.full(u.shape + (2,), np.nan)
    inter = field.mask.interior
    for axis, (kp, km) in enumerate(((0, 1), (2, 3))):
        a, b = th[..., km] * h, th[..., kp] * h
        up, um = _arm_values(field, kp), _arm_values(field, km)
        with np.errstate(invalid="ignore"):
            g = (a * a * (up - u) - b * b * (um - u)) / (a * b * (a + b))
        out[..., axis][inter] = g[inter]
    return out


def _check_interior(field: Field, node) -> tuple[int, int]:
    i, j = node
    n1, n2 = field.values.shape
    if not (0 <= i < n1 and 0 <= j < n2) or field.mask.node_class[i, j] != INTERIOR:
        raise ValueError(f"node {node} is not an interior node")
    return i, j


def laplacian_at(field: Field, node: tuple[int, int]) -> float:
    i, j = _check_interior(field, node)
    h = field.grid.h
    u = field.values[i, j]
    total = 0.0
    for kp, km in ((0, 1), (2, 3)):
        a = field.mask.theta[i, j, km] * h
        b = field.mask.theta[i, j, kp] * h
        up, um = _node_arm(field, i, j, kp), _node_arm(field, i, j, km)
        total += 2.0 / (a + b) * ((up - u) / b + (um - u) / a)
    return float(total)


def gradient_at(field: Field, node: tuple[int, int]) -> np.ndarray:
    i, j = _check_interior(field, node)
    h = field.grid.h
    u = field.values[i, j]
    g = np.empty(2)
    for axis, (kp, km) in enumerate(((0, 1), (2, 3))):
        a = field.mask.theta[i, j, km] * h
        b = field.mask.theta[i, j, kp] * h
        up, um = _node_arm(field, i, j, kp), _node_arm(field, i, j, km)
        g[axis] = (a * a * (up - u) - b * b * (um - u)) / (a * b * (a + b))
    return g


def _node_arm(field: Field, i: int, j: int, k: int) -> float:
    if field.mask.cut[i, j, k]:
        if field.arm_values is None:
            raise ValueError("field has cut arms but no boundary arm values")
        return float(field.arm_values[i, j, k])
    d = DIRECTIONS[k]
    return float(field.values[i + d[0], j + d[1]])


# --------------------------------------------------------------------------
# interpolation and norms


def interpolate_many(field: Field, points: np.ndarray) -> np.ndarray:
    """Bilinear interpolation at an ``(m, 2)`` array of physical points.

    Cells with exterior corners (only next to curved boundaries) fall back to
    the bilinear weights renormalised over the corners that carry values.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    mask, grid = field.mask, field.grid
    lev = mask.shape.level(pts[:, 0], pts[:, 1])
    bad = lev > 1e-9 * grid.h
    if bad.any():
        p = pts[np.argmax(bad)]
        raise ValueError(f"point ({p[0]}, {p[1]}) lies outside the {mask.shape.kind} domain")
    s = (pts[:, 0] - grid.origin[0]) / grid.h
    t = (pts[:, 1] - grid.origin[1]) / grid.h
    i = np.clip(np.floor(s).astype(int), 0, grid.n1 - 2)
    j = np.clip(np.floor(t).astype(int), 0, grid.n2 - 2)
    fs, ft = s - i, t - j
    corners = [(0, 0, (1 - fs) * (1 - ft)), (1, 0, fs * (1 - ft)),
               (0, 1, (1 - fs) * ft), (1, 1, fs * ft)]
    num = np.zeros(len(pts))
    den = np.zeros(len(pts))
    for di, dj, w in corners:
        v = field.values[i + di, j + dj]
        ok = ~np.isnan(v)
        num += np.where(ok, w * np.where(ok, v, 0.0), 0.0)
        den += np.where(ok, w, 0.0)
    if np.any(den <= 0):
        raise ValueError("interpolation cell has no valid corners")
    return num / den


def interpolate(field: Field, point: Sequence[float]) -> float:
    return float(interpolate_many(field, np.asarray(point, dtype=float)[None, :])[0])


def sup_on_half_ball(field: Field, r: float, center: Sequence[float] = (0.0, 0.0)) -> float:
    """``max |u|`` over nodes of the domain within distance ``r`` of ``center``."""
    h = field.grid.h
    if r <= 2 * h:
        raise ValueError(f"radius {r} too small for mesh width {h} (need r > 2h)")
    X1, X2 = field.grid.coords()
    sel = field.mask.inside & (np.hypot(X1 - center[0], X2 - center[1]) <= r * (1 + 1e-12))
    if sel.sum() < 5:
        raise ValueError(f"only {int(sel.sum())} nodes inside the ball of radius {r}")
    return float(np.max(np.abs(field.values[sel])))
