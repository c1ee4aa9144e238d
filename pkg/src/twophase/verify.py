"""Self-checks of the solution catalogue (run by ``twophase verify``)."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .catalog import (BoundaryDataSpec, Coefficients, HalfSpaceParabolic, HalfSpaceWithLinear,
                      HomogeneousProfile, ball_solution_eval, ball_solution_radial_derivative,
                      dini_integral, homogeneous_profile_eval, preset_scenarios,
                      validate_condition_cond)
from .grid import Field, GridSpec, HalfDisk, build_mask
from .solver import residual

__all__ = ["Check", "ball_laplacian_defect", "ball_truncation_bound", "catalog_checks"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    bound: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.value:.6g} (bound {self.bound:.6g})"


def _check(name, value, bound) -> Check:
    value = float(value)
    return Check(name, bool(value <= bound), value, float(bound))


def ball_laplacian_defect(lam: float, R: float, h: float, r_in: float, r_out: float) -> float:
    """``max |Delta_h V - lam|`` (5-point) over grid nodes with ``r_in <= |x| <= r_out``.

    ``V`` is defined on the whole punctured plane, so every stencil uses
    exact neighbour values and no boundary treatment enters.
    """
    k = np.arange(-math.ceil(r_out / h), math.ceil(r_out / h) + 1)
    X1, X2 = np.meshgrid(k * h, k * h, indexing="ij")
    rho = np.hypot(X1, X2)
    sel = (rho >= r_in - 1e-12) & (rho <= r_out + 1e-12)

    def V(x1, x2):
        r = np.hypot(x1, x2)
        return lam * r ** 2 / 4 - 0.5 * lam * R ** 2 * np.log(r / R) - lam * R ** 2 / 4

    a, b = X1[sel], X2[sel]
    lap = (V(a + h, b) + V(a - h, b) + V(a, b + h) + V(a, b - h) - 4 * V(a, b)) / (h * h)
    return float(np.max(np.abs(lap - lam)))


def ball_truncation_bound(lam: float, R: float, h: float, r_in: float) -> float:
    """Leading 5-point truncation ``(lam R^2 h^2 / 2) |cos 4theta| / r^4`` at its worst."""
    return 0.5 * lam * R ** 2 * h * h / r_in ** 4


def catalog_checks(h: float = 1.0 / 64) -> list[Check]:
    """Every stated property of the catalogue, evaluated at mesh width ``h``."""
    out = []
    for lam, R, n in ((1.0, 1.0, 2), (2.0, 0.5, 2), (1.0, 1.0, 3), (0.5, 2.0, 4)):
        out.append(_check(f"ball V(R)=0 (lam={lam}, R={R}, n={n})",
                          abs(ball_solution_eval(lam, R, n, [R] + [0.0] * (n - 1))), 1e-12))
        out.append(_check(f"ball V'(R)=0 (lam={lam}, R={R}, n={n})",
                          abs(ball_solution_radial_derivative(lam, R, n, R)), 1e-12))
        r = np.linspace(1e-3 * R, 2 * R, 2001)
        vmin = min(ball_solution_eval(lam, R, n, [t] + [0.0] * (n - 1)) for t in r)
        out.append(_check(f"ball V >= 0 on (0, 2R] (lam={lam}, R={R}, n={n})", max(-vmin, 0.0), 1e-14))
    out.append(_check("ball V(1/2) = -3/16 + ln(2)/2",
                      abs(ball_solution_eval(1.0, 1.0, 2, [0.5, 0.0]) - (-3 / 16 + math.log(2) / 2)),
                      1e-12))
    # discrete Laplacian of the ball solution: second order, below its truncation bound
    d1 = ball_laplacian_defect(1.0, 1.0, h, 0.25, 1.5)
    d2 = ball_laplacian_defect(1.0, 1.0, h / 2, 0.25, 1.5)
    out.append(_check("ball Delta_h V - 1 within the truncation bound",
                      d1, 1.05 * ball_truncation_bound(1.0, 1.0, h, 0.25)))
    out.append(_check("ball Delta_h V defect ratio under h halving, |ratio - 4|",
                      abs(d1 / d2 - 4.0), 0.5))
    # half-space solutions: vanish on Pi, discrete residual O(h^2)
    dom = HalfDisk(1.0)
    mask = build_mask(dom, GridSpec.covering(dom, h))
    X1, X2 = mask.grid.coords()
    on_pi = mask.boundary & (np.abs(X1) <= 1e-12)
    for coeffs in (Coefficients(1.0, 1.0), Coefficients(2.0, 0.5)):
        for sol in (HalfSpaceParabolic(0.0, 1), HalfSpaceParabolic(0.0, -1),
                    HalfSpaceParabolic(0.3, 1), HalfSpaceParabolic(0.3, -1),
                    HalfSpaceWithLinear(0.5, 1), HalfSpaceWithLinear(0.5, -1)):
            tag = f"{type(sol).__name__}{sol.to_dict()} lambda=({coeffs.lambda_plus}, {coeffs.lambda_minus})"
            f = Field.sample(mask, lambda a, b: sol(a, b, coeffs))
            out.append(_check(f"{tag} vanishes on Pi", np.max(np.abs(f.values[on_pi])), 0.0))
            out.append(_check(f"{tag} residual <= 10 h^2", residual(f, coeffs), 10 * h * h))
            # -u solves the flipped problem, whose exact member has the opposite sign
            neg = Field.sample(mask, lambda a, b: -sol(a, b, coeffs))
            mirror = replace(sol, sign=-sol.sign)
            flipped = Field.sample(mask, lambda a, b: mirror(a, b, coeffs.swapped()))
            data = Field.sample(mask, lambda a, b: BoundaryDataSpec.from_exact(sol).negated()(
                a, b, coeffs.swapped()))
            out.append(_check(f"{tag} flipped data is -f",
                              np.nanmax(np.abs(neg.values - data.values)), 1e-15))
            out.append(_check(f"{tag} sign symmetry",
                              np.nanmax(np.abs(neg.values - flipped.values)), 1e-15))
    # homogeneous profile: finite-difference ODE residual away from the sign change
    for sign in (1, -1):
        for lam in (0.5, 2.0):
            m = 400
            th = np.linspace(0.0, math.pi, m + 1)
            d = th[1]
            phi = homogeneous_profile_eval(sign, lam, th)
            res = (phi[2:] - 2 * phi[1:-1] + phi[:-2]) / d ** 2 + 4 * phi[1:-1] - sign * lam
            out.append(_check(f"homogeneous profile ODE (sign={sign}, lam={lam})",
                              np.max(np.abs(res)), 2.0 * lam * d * d))
        hp = HomogeneousProfile(sign)
        co = Coefficients(1.5, 0.5)
        f = Field.sample(mask, lambda a, b: hp(a, b, co))
        out.append(_check(f"homogeneous profile residual (sign={sign})", residual(f, co), 10 * h * h))
    # scenarios that reference an exact solution carry its trace
    for name, sc in preset_scenarios().items():
        if sc.exact is None:
            continue
        xa = np.linspace(0.0, 1.0, 51)
        tb = np.linspace(-0.5 * math.pi, 0.5 * math.pi, 101)
        p1 = np.concatenate([np.zeros_like(xa), np.cos(tb)])
        p2 = np.concatenate([2 * xa - 1, np.sin(tb)])
        gap = np.max(np.abs(sc.boundary_function()(p1, p2) - sc.exact_function()(p1, p2)))
        out.append(_check(f"scenario {name}: data equals exact trace", gap, 1e-14))
    # the vanishing condition f = Df = D^2 f = 0 at 0 and the Dini integral
    out.append(_check("vanishing condition holds for x2^3", 0.0 if validate_condition_cond(lambda t: t ** 3).passed else 1.0, 0.0))
    out.append(_check("vanishing condition fails for x2^2", 1.0 if validate_condition_cond(lambda t: t ** 2).passed else 0.0, 0.0))
    out.append(_check("vanishing condition holds for 0", 0.0 if validate_condition_cond(lambda t: 0.0 * t).passed else 1.0, 0.0))
    out.append(_check("Dini integral of x2^3 vs 6", abs(dini_integral(lambda t: t ** 3, interval=(0.0, 1.0)).integral - 6.0), 0.3))
    out.append(_check("Dini integral of x2^2", abs(dini_integral(lambda t: t ** 2).integral), 1e-6))
    return out
