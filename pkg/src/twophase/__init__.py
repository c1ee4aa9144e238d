"""Numerical toolkit for the two-phase obstacle problem near a flat fixed boundary.

Modules: ``grid`` (masked grids and fields), ``catalog`` (coefficients,
exact solutions, boundary data, scenarios), ``solver`` (energy
minimisation), ``monotonicity`` (ACF and Weiss functionals),
``free_boundary`` (regions, free boundary and its diagnostics), ``blowup``
(rescalings, classification, homogeneous profiles) and ``cli``.
"""

from .catalog import Coefficients, Scenario, ScenarioError, load_scenario, preset_scenarios
from .free_boundary import decompose, extract_gamma
from .grid import Field, GridSpec, HalfDisk, build_mask
from .monotonicity import acf_phi, weiss_phi
from .solver import SolverConfig, solve

__version__ = "0.1.0"

__all__ = ["Coefficients", "Scenario", "ScenarioError", "load_scenario", "preset_scenarios",
           "decompose", "extract_gamma", "Field", "GridSpec", "HalfDisk", "build_mask",
           "acf_phi", "weiss_phi", "SolverConfig", "solve"]
