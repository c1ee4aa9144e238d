"""Closed-form solutions, boundary-data families and scenario files.

Everything here is a pure function of its parameters.  Boundary data are
described by a preset name plus a parameter dict so that scenarios can be
stored as JSON and reloaded bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Union

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import gamma as _gamma

from .grid import HalfDisk, Rectangle, shape_from_dict

__all__ = [
    "Coefficients", "ClassParams",
    "HalfSpaceParabolic", "HalfSpaceWithLinear", "BallSolution", "HomogeneousProfile",
    "ExactSolution", "exact_from_dict",
    "BoundaryDataSpec", "Scenario",
    "ball_solution_eval", "ball_solution_constants", "halfspace_solution_eval",
    "homogeneous_profile_eval", "counterexample_boundary_data",
    "validate_condition_cond", "CondReport", "dini_integral", "DiniReport",
    "preset_scenarios", "load_scenario", "save_scenario", "scenario_from_dict",
    "ScenarioError",
]


class ScenarioError(ValueError):
    """Invalid scenario description; the message names the offending field."""


@dataclass(frozen=True)
class Coefficients:
    lambda_plus: float = 1.0
    lambda_minus: float = 1.0

    def __post_init__(self):
        if not (self.lambda_plus > 0 and self.lambda_minus > 0):
            raise ValueError("both lambda_plus and lambda_minus must be strictly positive")

    def swapped(self) -> "Coefficients":
        return Coefficients(self.lambda_minus, self.lambda_plus)

    def scaled(self, s: float) -> "Coefficients":
        return Coefficients(self.lambda_plus * s, self.lambda_minus * s)

    @property
    def max(self) -> float:
        return max(self.lambda_plus, self.lambda_minus)

    @property
    def min(self) -> float:
        return min(self.lambda_plus, self.lambda_minus)


@dataclass(frozen=True)
class ClassParams:
    """Constants (M, R, c0, r0) of the uniform class of solutions."""

    M: float = 1.0
    R: float = 1.0
    c0: float = 0.1
    r0: float = 0.5

    def __post_init__(self):
        if min(self.M, self.R, self.c0, self.r0) <= 0:
            raise ValueError("class parameters M, R, c0, r0 must all be positive")


# --------------------------------------------------------------------------
# exact solutions


def _sign_lambda(sign: int, coeffs: Coefficients) -> float:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return coeffs.lambda_plus if sign > 0 else coeffs.lambda_minus


@dataclass(frozen=True)
class HalfSpaceParabolic:
    """``sign * lambda_sign/2 * ((x1 - a)_+)^2``."""

    a: float = 0.0
    sign: int = 1
    variant = "half_space_parabolic"

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("offset a must be non-negative")

    def __call__(self, x1, x2, coeffs: Coefficients):
        lam = _sign_lambda(self.sign, coeffs)
        return self.sign * 0.5 * lam * np.maximum(np.asarray(x1) - self.a, 0.0) ** 2 + 0.0 * x2

    def to_dict(self):
        return {"variant": self.variant, "a": self.a, "sign": self.sign}


@dataclass(frozen=True)
class HalfSpaceWithLinear:
    """``sign * (lambda_sign/2 * x1^2 + alpha * x1)``."""

    alpha: float = 0.0
    sign: int = 1
    variant = "half_space_with_linear"

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")

    def __call__(self, x1, x2, coeffs: Coefficients):
        lam = _sign_lambda(self.sign, coeffs)
        x1 = np.asarray(x1)
        return self.sign * (0.5 * lam * x1 ** 2 + self.alpha * x1) + 0.0 * x2

    def to_dict(self):
        return {"variant": self.variant, "alpha": self.alpha, "sign": self.sign}


@dataclass(frozen=True)
class BallSolution:
    """Radial ball solution about ``center`` (value independent of coefficients)."""

    lam: float = 1.0
    R: float = 1.0
    n: int = 2
    center: tuple[float, float] = (0.0, 0.0)
    variant = "ball_solution"

    def __call__(self, x1, x2, coeffs: Coefficients | None = None):
        r = np.hypot(np.asarray(x1) - self.center[0], np.asarray(x2) - self.center[1])
        return _ball_V(self.lam, self.R, self.n, r)

    def to_dict(self):
        return {"variant": self.variant, "lam": self.lam, "R": self.R, "n": self.n,
                "center": list(self.center)}


@dataclass(frozen=True)
class HomogeneousProfile:
    """Degree-two homogeneous solution ``r^2 phi(theta)`` with ``phi = +-lam/2 sin^2``."""

    sign: int = 1
    variant = "homogeneous_profile"

    def __call__(self, x1, x2, coeffs: Coefficients):
        lam = _sign_lambda(self.sign, coeffs)
        r = np.hypot(x1, x2)
        theta = np.arctan2(x1, x2)  # angle measured from the x2 axis, in [0, pi] on x1 >= 0
        return r ** 2 * homogeneous_profile_eval(self.sign, lam, theta)

    def to_dict(self):
        return {"variant": self.variant, "sign": self.sign}


ExactSolution = Union[HalfSpaceParabolic, HalfSpaceWithLinear, BallSolution, HomogeneousProfile]

_EXACT = {c.variant: c for c in (HalfSpaceParabolic, HalfSpaceWithLinear, BallSolution,
                                 HomogeneousProfile)}


def exact_from_dict(d: dict) -> ExactSolution:
    d = dict(d)
    variant = d.pop("variant", None)
    if variant not in _EXACT:
        raise ScenarioError(f"exact.variant: unknown exact solution {variant!r}")
    if "center" in d:
        d["center"] = tuple(d["center"])
    return _EXACT[variant](**d)


def _unit_sphere_area(n: int) -> float:
    """Surface area of the unit sphere in R^n."""
    return 2.0 * math.pi ** (n / 2) / _gamma(n / 2)


def ball_solution_constants(lam: float, R: float, n: int) -> tuple[float, float]:
    """Return ``(C_R, C)``.

    ``U`` is the fundamental solution with ``Delta U = delta_0``, so
    ``dU/dr = 1 / (omega r^(n-1))``; the flux condition ``C_R U'(R) = lam R / n``
    gives ``C_R = lam * omega * R^n / n`` and ``V(R) = 0`` fixes ``C``.
    """
    if n < 2:
        raise ValueError("dimension n must be at least 2")
    omega = _unit_sphere_area(n)
    c_r = lam * omega * R ** n / n
    c = c_r * _fundamental(n, R) - lam * R ** 2 / (2 * n)
    return c_r, c


def _fundamental(n: int, r):
    r = np.asarray(r, dtype=float)
    if n == 2:
        return np.log(r) / (2 * math.pi)
    return -1.0 / ((n - 2) * _unit_sphere_area(n) * r ** (n - 2))


def _ball_V(lam, R, n, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("ball solution is singular at the centre (|x| = 0)")
    c_r, c = ball_solution_constants(lam, R, n)
    return lam * r ** 2 / (2 * n) - c_r * _fundamental(n, r) + c


def ball_solution_eval(lam: float, R: float, n: int, x) -> float:
    """``V(x) = lam/(2n)|x|^2 - C_R U(|x|) + C``; vanishes with its gradient on ``|x| = R``."""
    r = float(np.linalg.norm(np.asarray(x, dtype=float)))
    return float(_ball_V(lam, R, n, r))


def ball_solution_radial_derivative(lam: float, R: float, n: int, r: float) -> float:
    c_r, _ = ball_solution_constants(lam, R, n)
    return lam * r / n - c_r / (_unit_sphere_area(n) * r ** (n - 1))


def halfspace_solution_eval(variant, x, coeffs: Coefficients) -> float:
    if x[0] < 0:
        raise ValueError("half-space solutions are defined for x1 >= 0 only")
    return float(variant(np.asarray(x[0]), np.asarray(x[1]), coeffs))


def homogeneous_profile_eval(sign: int, lam: float, theta):
    return sign * 0.5 * lam * np.sin(theta) ** 2


# --------------------------------------------------------------------------
# boundary data


def _bump(x2, delta, w, s):
    """Quartic spline ``delta * max(0, 1 - ((x2 - s)/w)^2)^2``."""
    q = 1.0 - ((np.asarray(x2) - s) / w) ** 2
    return delta * np.maximum(q, 0.0) ** 2


def _polyval(coefs, x):
    out = np.zeros_like(np.asarray(x, dtype=float))
    for c in reversed(coefs):
        out = out * x + c
    return out


def _ball_piece(x1, x2, p, coeffs):
    """Ball solution of radius R about c, kept inside (``part='inside'``) or outside."""
    lam = _sign_lambda(p["sign"], coeffs)
    c = p["center"]
    r = np.hypot(np.asarray(x1) - c[0], np.asarray(x2) - c[1])
    r_safe = np.where(r > 0, r, 1.0)
    v = _ball_V(lam, p["R"], 2, r_safe)
    keep = r < p["R"] if p.get("part", "inside") == "inside" else r >= p["R"]
    return p["sign"] * np.where(keep & (r > 0), v, 0.0)


def _trig(x1, x2, p, coeffs):
    out = np.full(np.shape(np.asarray(x1) + np.asarray(x2)), float(p.get("offset", 0.0)))
    for a, (w1, w2), ph in zip(p["amp"], p["wave"], p["phase"]):
        out = out + a * np.cos(w1 * x1 + w2 * x2 + ph)
    return out


def _evaluate_preset(preset: str, params: dict, x1, x2, coeffs: Coefficients, on_pi):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if preset == "zero":
        return np.zeros(np.broadcast(x1, x2).shape)
    if preset == "exact":
        sol = exact_from_dict(params["solution"])
        return sol(x1, x2, coeffs) * np.ones(np.broadcast(x1, x2).shape)
    if preset == "counterexample":
        lam = coeffs.lambda_plus
        parab = 0.5 * lam * np.maximum(x1 - params["eps"], 0.0) ** 2
        bump = np.where(on_pi, _bump(x2, params["delta"], params["w"], params["s"]), 0.0)
        return parab + bump
    if preset == "bump":
        return np.where(on_pi, _bump(x2, params["delta"], params["w"], params["s"]), 0.0)
    if preset == "odd_symmetric":
        # kappa sin(2 psi), psi the polar angle from the x1 axis; zero on Pi
        r2 = x1 ** 2 + x2 ** 2
        r2 = np.where(r2 > 0, r2, 1.0)
        s2 = 2.0 * x1 * x2 / r2
        return np.where(on_pi, 0.0, params["kappa"] * s2)
    if preset == "perturbed_parabola":
        lam = coeffs.lambda_plus
        return np.where(on_pi, 0.0, 0.5 * lam * x1 ** 2
                        + params["eta"] * (x1 ** 3 - 3.0 * x1 * x2 ** 2))
    if preset == "two_phase_arc":
        # arc data a_plus*cos^2 on the upper part, -a_minus on the lower, zero on Pi
        r = np.hypot(x1, x2)
        r = np.where(r > 0, r, 1.0)
        c = x1 / r
        val = np.where(x2 >= params.get("split", 0.0), params["a_plus"], -params["a_minus"]) * c
        return np.where(on_pi, 0.0, val)
    if preset == "parabola_x2":
        # sign * l/2 * ((x2 - a)_+)^2: an exact solution whose free boundary
        # {x2 = a} meets Pi at a right angle, and whose trace on Pi has f''(0) != 0
        sign = int(params.get("sign", 1))
        lam = _sign_lambda(sign, coeffs)
        return sign * 0.5 * lam * np.maximum(x2 - params.get("a", 0.0), 0.0) ** 2 + 0.0 * x1
    if preset == "polynomial":
        return _polyval(params["coefs"], x2) + 0.0 * x1
    if preset == "ball_piece":
        return _ball_piece(x1, x2, params, coeffs)
    if preset == "trig":
        return _trig(x1, x2, params, coeffs)
    if preset == "sum":
        total = np.zeros(np.broadcast(x1, x2).shape)
        for term in params["terms"]:
            total = total + _evaluate_preset(term["preset"], term.get("params", {}),
                                             x1, x2, coeffs, on_pi)
        return total
    if preset == "scaled":
        inner = params["data"]
        co = coeffs.swapped() if params.get("swap", False) else coeffs
        return params["factor"] * _evaluate_preset(inner["preset"], inner.get("params", {}),
                                                   x1, x2, co, on_pi)
    raise ScenarioError(f"boundary_data.preset: unknown preset {preset!r}")


PRESETS = ("zero", "exact", "counterexample", "bump", "odd_symmetric", "perturbed_parabola",
           "two_phase_arc", "parabola_x2", "polynomial", "ball_piece", "trig", "sum", "scaled")


@dataclass(frozen=True)
class BoundaryDataSpec:
    """Boundary data named by preset; evaluation splits Pi = {x1 = 0} from the rest."""

    preset: str = "zero"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ScenarioError(f"boundary_data.preset: unknown preset {self.preset!r}")

    def __call__(self, x1, x2, coeffs: Coefficients):
        x1 = np.asarray(x1, dtype=float)
        on_pi = np.abs(x1) <= 1e-12
        return _evaluate_preset(self.preset, self.params, x1, x2, coeffs, on_pi)

    def pi_part(self, coeffs: Coefficients) -> Callable:
        """The data restricted to Pi, as a function of ``x2``."""
        return lambda x2: self(np.zeros_like(np.asarray(x2, dtype=float)), x2, coeffs)

    def negated(self) -> "BoundaryDataSpec":
        """Data of the sign-flipped problem: ``-f``, read with swapped coefficients.

        The flipped scenario exchanges ``lambda_plus`` and ``lambda_minus``, so
        the inner data is evaluated with the coefficients swapped back and
        the flipped trace is exactly ``-f`` for every coefficient pair.
        """
        return BoundaryDataSpec("scaled", {"factor": -1.0, "swap": True, "data": self.to_dict()})

    def to_dict(self) -> dict:
        return {"preset": self.preset, "params": _plain(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "BoundaryDataSpec":
        if "preset" not in d:
            raise ScenarioError("boundary_data.preset: missing")
        spec = cls(d["preset"], dict(d.get("params", {})))
        # evaluate once so missing or malformed parameters surface at load time
        try:
            spec(np.array([0.0, 0.5]), np.array([0.25, -0.5]), Coefficients())
        except KeyError as exc:
            raise ScenarioError(f"boundary_data.params.{exc.args[0]}: missing") from None
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"boundary_data.params: {exc}") from None
        return spec

    @classmethod
    def from_exact(cls, sol) -> "BoundaryDataSpec":
        return cls("exact", {"solution": sol.to_dict()})


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def counterexample_boundary_data(delta: float, eps: float, w: float, s: float) -> BoundaryDataSpec:
    """Offset-parabola trace plus a small bump on Pi centred at ``(0, s)``.

    The bump vanishes on ``|x2 - s| >= w``; ``s > w`` keeps it away from the
    touch point so that f = Df = D^2 f = 0 holds at 0.
    """
    if delta < 0 or eps < 0 or w <= 0:
        raise ValueError("need delta >= 0, eps >= 0 and w > 0")
    if s <= w:
        raise ValueError(f"bump centre s={s} must exceed its half-width w={w}")
    return BoundaryDataSpec("counterexample", {"delta": delta, "eps": eps, "w": w, "s": s})


@dataclass
class CondReport:
    value: float
    first: float
    second: float
    passed: bool
    steps: list[float]
    second_estimates: list[float]


def validate_condition_cond(f: Callable, tol: float = 1e-6) -> CondReport:
    """Check ``f(0) = f'(0) = f''(0) = 0`` for a function of ``x2`` on Pi.

    Derivatives come from five-point stencils at steps ``0.1 * 2^-k``; a
    second-derivative sequence that grows under refinement means ``f`` is not
    twice differentiable at 0 and is rejected.
    """
    steps = [0.1 * 2.0 ** -k for k in range(7)]
    d1, d2 = [], []
    for s in steps:
        fm2, fm1, f0, fp1, fp2 = (float(f(np.array(t))) for t in (-2 * s, -s, 0.0, s, 2 * s))
        d1.append((fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * s))
        d2.append((-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * s * s))
    jumps = np.abs(np.diff(d2))
    scale = 1.0 + abs(d2[0])
    if jumps[-1] > 1e-3 * scale and jumps[-1] >= 0.9 * jumps[-2]:
        raise ValueError("boundary data is not twice differentiable at 0 "
                         f"(second-derivative estimates {d2[-3:]} do not settle)")
    value = float(f(np.array(0.0)))
    passed = abs(value) <= tol and abs(d1[-1]) <= tol and abs(d2[-1]) <= tol
    return CondReport(value, d1[-1], d2[-1], bool(passed), steps, d2)


@dataclass
class DiniReport:
    integral: float
    exponent: float
    divergent: bool
    s: np.ndarray
    omega: np.ndarray


def dini_integral(f: Callable, samples: int = 2001, interval=(-1.0, 1.0)) -> DiniReport:
    """Estimate the modulus of continuity of ``f''`` and integrate ``omega(s)/s``.

    ``f''`` is sampled by central differences on ``samples`` points; ``omega(s)``
    is the largest oscillation of ``f''`` over windows of width ``s``, and the
    integral runs over ``[h_min, 1]`` by the trapezoid rule on a log grid.
    """
    lo, hi = interval
    x = np.linspace(lo, hi, samples)
    dx = x[1] - x[0]
    e = 1e-4
    d2 = (f(x + e) - 2 * f(x) + f(x - e)) / e ** 2
    d2 = np.asarray(d2, dtype=float)
    lags = np.unique(np.round(np.geomspace(1, min(samples - 1, int(round(1.0 / dx))), 60)).astype(int))
    s = lags * dx
    omega = np.array([np.max(np.abs(d2[k:] - d2[:-k])) for k in lags])
    omega = np.where(omega < 1e-7 * (1 + np.abs(d2).max()), 0.0, omega)
    integral = float(trapezoid(omega, np.log(s)))
    # the first few lags are resolution limited, so the trend starts at 4 dx
    small = (s >= 4 * dx) & (s <= 0.1) & (omega > 0)
    if small.sum() >= 3:
        exponent = float(np.polyfit(np.log(s[small]), np.log(omega[small]), 1)[0])
    else:
        exponent = math.inf if not np.any(omega > 0) else math.nan
    divergent = bool(np.isfinite(exponent) and exponent <= 1e-3)
    return DiniReport(integral, exponent, divergent, s, omega)


# --------------------------------------------------------------------------
# scenarios


@dataclass(frozen=True)
class Scenario:
    name: str
    domain: object
    coeffs: Coefficients
    data: BoundaryDataSpec
    exact: ExactSolution | None = None
    class_params: ClassParams = ClassParams()

    def boundary_function(self) -> Callable:
        return lambda x1, x2: self.data(x1, x2, self.coeffs)

    def exact_function(self) -> Callable | None:
        if self.exact is None:
            return None
        return lambda x1, x2: self.exact(x1, x2, self.coeffs)

    def sign_flipped(self) -> "Scenario":
        """Negated data with ``lambda_plus`` and ``lambda_minus`` exchanged."""
        exact = self.exact
        if exact is not None:
            exact = replace(exact, sign=-exact.sign) if hasattr(exact, "sign") else None
        return replace(self, name=self.name + "_flipped", coeffs=self.coeffs.swapped(),
                       data=self.data.negated(), exact=exact)

    def with_data(self, data: BoundaryDataSpec, name: str | None = None) -> "Scenario":
        return replace(self, data=data, exact=None, name=name or self.name)

    def zero_pi_data(self) -> bool:
        return isinstance(self.domain, HalfDisk) and _vanishes_on_pi(self)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "domain": self.domain.to_dict(),
            "coefficients": {"lambda_plus": self.coeffs.lambda_plus,
                             "lambda_minus": self.coeffs.lambda_minus},
            "boundary_data": self.data.to_dict(),
            "exact": None if self.exact is None else self.exact.to_dict(),
            "class_params": {"M": self.class_params.M, "R": self.class_params.R,
                             "c0": self.class_params.c0, "r0": self.class_params.r0},
        }


def _vanishes_on_pi(sc: Scenario) -> bool:
    R = sc.domain.radius
    x2 = np.linspace(-R, R, 401)
    return bool(np.max(np.abs(sc.data(np.zeros_like(x2), x2, sc.coeffs))) <= 1e-12)


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ScenarioError(f"{where}{key}: missing")
    return d[key]


def scenario_from_dict(d: dict) -> Scenario:
    if not isinstance(d, dict):
        raise ScenarioError("scenario: top level must be an object")
    name = d.get("name", "scenario")
    try:
        domain = shape_from_dict(_require(d, "domain", ""))
    except (TypeError, ValueError, KeyError) as exc:
        raise ScenarioError(f"domain: {exc}") from None
    co = d.get("coefficients", {})
    try:
        coeffs = Coefficients(float(co.get("lambda_plus", 1.0)), float(co.get("lambda_minus", 1.0)))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"coefficients: {exc}") from None
    data = BoundaryDataSpec.from_dict(_require(d, "boundary_data", ""))
    exact = d.get("exact")
    exact = None if exact is None else exact_from_dict(exact)
    cp = d.get("class_params", {})
    try:
        params = ClassParams(**cp)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"class_params: {exc}") from None
    return Scenario(name, domain, coeffs, data, exact, params)


def load_scenario(path) -> Scenario:
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return scenario_from_dict(raw)


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2) + "\n")


def _exact_scenario(name, sol, coeffs=Coefficients(), domain=HalfDisk(1.0)):
    return Scenario(name, domain, coeffs, BoundaryDataSpec.from_exact(sol), sol)


def preset_scenarios() -> dict[str, Scenario]:
    """The scenario catalogue used by the demos and the acceptance suite."""
    one = Coefficients(1.0, 1.0)
    half = HalfDisk(1.0)
    out = {
        "zero": Scenario("zero", half, one, BoundaryDataSpec("zero")),
        "parabola_plus": _exact_scenario("parabola_plus", HalfSpaceParabolic(0.0, 1)),
        "parabola_minus": _exact_scenario("parabola_minus", HalfSpaceParabolic(0.0, -1)),
        "offset_plus": _exact_scenario("offset_plus", HalfSpaceParabolic(0.3, 1)),
        "offset_minus": _exact_scenario("offset_minus", HalfSpaceParabolic(0.3, -1)),
        "with_linear": _exact_scenario("with_linear", HalfSpaceWithLinear(0.5, 1)),
        "homogeneous": _exact_scenario("homogeneous", HomogeneousProfile(1)),
        "odd_symmetric": Scenario("odd_symmetric", half, one,
                                  BoundaryDataSpec("odd_symmetric", {"kappa": 1.05})),
        "perturbed_parabola": Scenario("perturbed_parabola", half, one,
                                       BoundaryDataSpec("perturbed_parabola", {"eta": -0.3})),
        "two_phase_arc": Scenario("two_phase_arc", half, Coefficients(1.0, 2.0),
                                  BoundaryDataSpec("two_phase_arc",
                                                   {"a_plus": 1.0, "a_minus": 0.6, "split": 0.2})),
        "counterexample": Scenario("counterexample", half, one,
                                   counterexample_boundary_data(0.02, 0.18, 0.06, 0.1)),
    }
    # "typical" representatives on the rectangle [0, 1] x [-1, 1]
    rect = Rectangle(0.0, 1.0, -1.0, 1.0)
    out["typical_a"] = Scenario("typical_a", rect, one, BoundaryDataSpec("sum", {"terms": [
        {"preset": "ball_piece", "params": {"sign": 1, "center": [1.2, 0.6], "R": 1.0}},
        {"preset": "ball_piece", "params": {"sign": -1, "center": [1.2, -0.6], "R": 1.0}},
    ]}))
    out["typical_b"] = Scenario("typical_b", rect, one, BoundaryDataSpec("sum", {"terms": [
        {"preset": "ball_piece", "params": {"sign": -1, "center": [1.3, 0.0], "R": 1.2}},
        {"preset": "bump", "params": {"delta": 0.05, "w": 0.2, "s": 0.6}},
    ]}))
    out["typical_c"] = Scenario("typical_c", rect, one,
                                BoundaryDataSpec("parabola_x2", {"a": 0.0, "sign": 1}))
    return out
