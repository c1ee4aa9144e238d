"""Discrete two-phase obstacle problem: energy, pointwise prox and the sweep solver.

The discrete energy is

    J_h(u) = sum_edges w_e (u_a - u_b)^2 + h^2 sum_nodes a_i (2 l+ u_i^+ + 2 l- u_i^-)

with edge weight ``1/theta`` on an arm of fractional length ``theta`` and node
weight ``a_i`` the mean arm half-sum.  Minimising ``J_h`` in a single nodal
coordinate is a soft-threshold (``pointwise_prox``), so nonlinear Gauss-Seidel
is exact coordinate descent on a strictly convex function.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .catalog import Coefficients, Scenario
from .grid import (BOUNDARY, DIRECTIONS, DomainMask, Field, GridSpec,
                   build_mask, laplacian_field)

__all__ = ["SolverConfig", "SolveReport", "Discretization", "source_selector", "energy",
           "pointwise_prox", "solve", "solve_on_mask", "residual", "discrete_residual"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-11
    max_sweeps: int = 200_000
    relaxation: float | None = None  # None: estimate the optimal SOR factor
    sweep_order: str = "lexicographic"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.relaxation is not None and not 1.0 <= self.relaxation < 2.0:
            raise ValueError("relaxation must lie in [1, 2)")
        if self.sweep_order not in ("lexicographic", "red-black"):
            raise ValueError("sweep_order must be 'lexicographic' or 'red-black'")


@dataclass
class SolveReport:
    sweeps_used: int
    final_update: float
    final_residual: float
    energy_trace: np.ndarray
    converged: bool
    relaxation: float
    config: SolverConfig = field(default_factory=SolverConfig)

    def energy_monotone(self, slack: float = 1e-12) -> bool:
        e = self.energy_trace
        return bool(np.all(np.diff(e) <= slack * np.maximum(1.0, np.abs(e[1:]))))


def source_selector(u, coeffs: Coefficients):
    """``lambda+ chi{u>0} - lambda- chi{u<0}``, zero at ``u = 0``."""
    u = np.asarray(u, dtype=float)
    return np.where(u > 0, coeffs.lambda_plus, np.where(u < 0, -coeffs.lambda_minus, 0.0))


def pointwise_prox(S: float, h: float, coeffs: Coefficients, diag: float = 4.0,
                   area: float = 1.0) -> float:
    """Solve ``diag*u + h^2*area*g(u) ∋ S`` for ``u``."""
    bp = h * h * area * coeffs.lambda_plus
    bm = h * h * area * coeffs.lambda_minus
    if S > bp:
        return (S - bp) / diag
    if S < -bm:
        return (S + bm) / diag
    return 0.0


class Discretization:
    """Edge weights, node weights and sweep orderings for one mask."""

    def __init__(self, mask: DomainMask):
        self.mask = mask
        grid = mask.grid
        self.h = grid.h
        self.weights = np.where(mask.interior[..., None], 1.0 / mask.theta, 0.0)
        th = mask.theta
        area = np.zeros(mask.node_class.shape)
        inter = mask.interior
        area[inter] = (0.5 * (th[..., 0] + th[..., 1]) + 0.5 * (th[..., 2] + th[..., 3]))[inter] / 2
        cells_in = self._cells_inside()
        quad = np.zeros((grid.n1 + 1, grid.n2 + 1))
        quad[1:-1, 1:-1] = cells_in
        # boundary nodes: fraction of the four surrounding cells inside the domain
        frac = (quad[1:, 1:] + quad[:-1, 1:] + quad[1:, :-1] + quad[:-1, :-1]) / 4.0
        bnd = mask.boundary
        area[bnd] = frac[bnd]
        self.area = area
        self.cells_in = cells_in
        self.interior_idx = np.argwhere(inter).astype(np.int64)
        nodal = mask.inside
        self.nodal_idx = np.argwhere(nodal).astype(np.int64)
        self.nodal_area = area[nodal]
        ij = self.interior_idx
        even = (ij.sum(axis=1) % 2) == 0
        self.red_black = np.ascontiguousarray(np.concatenate([ij[even], ij[~even]]))

    def _cells_inside(self) -> np.ndarray:
        grid = self.mask.grid
        c1 = grid.x1[:-1] + grid.h / 2
        c2 = grid.x2[:-1] + grid.h / 2
        C1, C2 = np.meshgrid(c1, c2, indexing="ij")
        return (self.mask.shape.level(C1, C2) < 0).astype(float)

    def boundary_edge_energy(self, u: np.ndarray) -> float:
        """Constant energy of edges joining two boundary nodes."""
        cls = self.mask.node_class
        total = 0.0
        cin = np.pad(self.cells_in, 1)
        # x1-edges (i,j)-(i+1,j): adjacent cells (i, j-1) and (i, j)
        both = (cls[:-1, :] == BOUNDARY) & (cls[1:, :] == BOUNDARY)
        w = (cin[1:-1, :-1] + cin[1:-1, 1:]) / 2.0
        d = np.where(both, u[1:, :] - u[:-1, :], 0.0)
        total += float(np.sum(np.where(both, w * d * d, 0.0)))
        both = (cls[:, :-1] == BOUNDARY) & (cls[:, 1:] == BOUNDARY)
        w = (cin[:-1, 1:-1] + cin[1:, 1:-1]) / 2.0
        d = np.where(both, u[:, 1:] - u[:, :-1], 0.0)
        total += float(np.sum(np.where(both, w * d * d, 0.0)))
        return total

    def default_relaxation(self) -> float:
        (a1, b1), (a2, b2) = self.mask.shape.bbox()
        h = self.h
        rho = 0.5 * (math.cos(math.pi * h / (b1 - a1)) + math.cos(math.pi * h / (b2 - a2)))
        return min(2.0 / (1.0 + math.sqrt(1.0 - rho * rho)), 1.99)

    def energy(self, u: np.ndarray, armval: np.ndarray, coeffs: Coefficients) -> float:
        h2 = self.h * self.h
        e = _kernels.energy(u, self.mask.node_class, self.interior_idx, self.weights,
                            np.nan_to_num(armval), self.mask.cut, self.nodal_idx,
                            self.nodal_area, 2.0 * h2 * coeffs.lambda_plus,
                            2.0 * h2 * coeffs.lambda_minus)
        return e + self.boundary_edge_energy(np.nan_to_num(u))


def _discretization(mask: DomainMask) -> Discretization:
    disc = getattr(mask, "_disc_cache", None)
    if disc is None:
        disc = Discretization(mask)
        object.__setattr__(mask, "_disc_cache", disc)
    return disc


def energy(field: Field, coeffs: Coefficients) -> float:
    """Discrete energy ``J_h`` of a field (the quantity the solver minimises)."""
    arms = field.arm_values if field.arm_values is not None else np.zeros(field.mask.cut.shape)
    return _discretization(field.mask).energy(np.nan_to_num(field.values), arms, coeffs)


def discrete_residual(field: Field, coeffs: Coefficients) -> float:
    """Max distance of the discrete equation from holding, in Laplacian units."""
    disc = _discretization(field.mask)
    mask = field.mask
    u = np.nan_to_num(field.values)
    arms = np.nan_to_num(field.arm_values) if field.arm_values is not None else None
    S = np.zeros(u.shape)
    for k, (a, b) in enumerate(DIRECTIONS):
        nb = np.zeros(u.shape)
        n1, n2 = u.shape
        nb[max(-a, 0):n1 + min(-a, 0), max(-b, 0):n2 + min(-b, 0)] = \
            u[max(a, 0):n1 + min(a, 0), max(b, 0):n2 + min(b, 0)]
        if arms is not None:
            nb = np.where(mask.cut[..., k], arms[..., k], nb)
        S += disc.weights[..., k] * nb
    diag = disc.weights.sum(axis=-1)
    inter = mask.interior
    scale = disc.h ** 2 * disc.area
    r = (S - diag * u)[inter] / scale[inter]
    v = u[inter]
    lo = np.where(v > 0, coeffs.lambda_plus, np.where(v < 0, -coeffs.lambda_minus, -coeffs.lambda_minus))
    hi = np.where(v > 0, coeffs.lambda_plus, np.where(v < 0, -coeffs.lambda_minus, coeffs.lambda_plus))
    # the equation reads sum w (u_j - u_i) / (h^2 a) ∈ [lo, hi]
    dist = np.maximum(np.maximum(lo - r, r - hi), 0.0)
    return float(dist.max()) if dist.size else 0.0


def solve_on_mask(mask: DomainMask, boundary, coeffs: Coefficients,
                  config: SolverConfig = SolverConfig(), initial: Field | None = None
                  ) -> tuple[Field, SolveReport]:
    """Minimise ``J_h`` on ``mask`` with Dirichlet data ``boundary(x1, x2)``."""
    disc = _discretization(mask)
    X1, X2 = mask.grid.coords()
    u = np.zeros(mask.node_class.shape)
    bnd = mask.boundary
    u[bnd] = boundary(X1[bnd], X2[bnd])
    armval = np.zeros(mask.cut.shape)
    if mask.cut.any():
        p = mask.arm_points[mask.cut]
        armval[mask.cut] = boundary(p[:, 0], p[:, 1])
    if initial is not None:
        inter = mask.interior
        u[inter] = np.nan_to_num(initial.values)[inter]
    h2 = disc.h ** 2
    band_plus = h2 * disc.area * coeffs.lambda_plus
    band_minus = h2 * disc.area * coeffs.lambda_minus
    omega = disc.default_relaxation() if config.relaxation is None else config.relaxation
    order = disc.interior_idx if config.sweep_order == "lexicographic" else disc.red_black
    trace = [disc.energy(u, armval, coeffs)]
    upd = math.inf
    sweeps = 0
    while sweeps < config.max_sweeps:
        upd = _kernels.sweep(u, order, disc.weights, armval, mask.cut, band_plus,
                             band_minus, omega)
        sweeps += 1
        trace.append(disc.energy(u, armval, coeffs))
        if upd < config.tol:
            break
    converged = upd < config.tol
    if not converged:
        log.warning("solver stopped after %d sweeps with update %.3e > tol %.1e",
                    sweeps, upd, config.tol)
    out = Field(mask, u, np.where(mask.cut, armval, np.nan))
    report = SolveReport(sweeps, float(upd), discrete_residual(out, coeffs), np.array(trace),
                         bool(converged), float(omega), config)
    return out, report


def solve(scenario: Scenario, grid: GridSpec | float, config: SolverConfig = SolverConfig(),
          initial: Field | None = None) -> tuple[Field, SolveReport]:
    """Solve ``scenario`` on ``grid`` (or on the covering grid of mesh width ``grid``)."""
    if not isinstance(grid, GridSpec):
        grid = GridSpec.covering(scenario.domain, float(grid))
    mask = build_mask(scenario.domain, grid)
    return solve_on_mask(mask, scenario.boundary_function(), scenario.coeffs, config, initial)


def residual(field: Field, coeffs: Coefficients, dead_band: float | None = None) -> float:
    """``max |Delta_h u - g(u)|`` over interior nodes with ``|u| > dead_band``.

    Uses the Shortley--Weller Laplacian; ``dead_band`` defaults to ``h^2``.
    """
    tau = field.grid.h ** 2 if dead_band is None else dead_band
    lap = laplacian_field(field)
    u = field.values
    sel = field.mask.interior & (np.abs(np.nan_to_num(u)) > tau)
    if not sel.any():
        return 0.0
    return float(np.max(np.abs(lap[sel] - source_selector(u[sel], coeffs))))
