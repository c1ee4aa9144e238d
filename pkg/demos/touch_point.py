"""Solve one scenario near a touch point and look at it from every angle.

The free boundary of ``perturbed_parabola`` meets the flat boundary at the
origin.  The script prints the Weiss energy, the ACF product, the density of
the zero set and the blow-up classes, and writes a region map next to itself.

    python3 demos/touch_point.py [scenario] [h]
"""

import sys
from pathlib import Path

import numpy as np

from twophase import decompose, extract_gamma, preset_scenarios, solve
from twophase.blowup import blowup_sequence, classify_limit
from twophase.free_boundary import density_ratios, dyadic_radii, nondegeneracy_trace
from twophase.monotonicity import acf_phi, check_monotone, tangential_derivative_parts, weiss_phi
from twophase.svg import plot_field

RADII = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]


def main(name="perturbed_parabola", h=1 / 128):
    sc = preset_scenarios()[name]
    u, rep = solve(sc, h)
    print(f"{name}: converged={rep.converged} after {rep.sweeps_used} sweeps, "
          f"energy {rep.energy_trace[0]:.6f} -> {rep.energy_trace[-1]:.6f}")

    # Weiss: non-decreasing, constant only on degree-2 homogeneous solutions
    w = weiss_phi(u, sc.coeffs, RADII)
    mw = check_monotone(w, 1e-3 * np.abs(w.values).max())
    print("Weiss  ", " ".join(f"{v:.5f}" for v in w.values), "monotone" if mw.is_monotone else "NOT monotone")

    # ACF on the positive and negative parts of the tangential derivative
    a = acf_phi(*tangential_derivative_parts(u), RADII)
    print("ACF    ", " ".join(f"{v:.5f}" for v in a.values))

    # quadratic growth and the share of the zero set near the origin
    c = nondegeneracy_trace(u, dyadic_radii(0.5, 4))
    d = density_ratios(decompose(u), dyadic_radii(0.5, 4))
    growth = dict(zip(c.radii, c.values))
    for r, lam in zip(d.radii, d.ratio_lambda):
        print(f"r = {r:<7g} c(r) = {growth[r]:.4f}  Lambda fraction = {lam:.3f}")

    # sup-normalised blow-ups approach a half-space parabola
    seq = blowup_sequence(u, (1 / 4, 1 / 8, 1 / 16))
    for k, d_k in enumerate(seq.scales):
        cl = classify_limit(seq.fields[k], seq.coefficients(k, sc.coeffs))
        print(f"blow-up at d = {d_k:g}: {cl.label()}, distance {cl.distance:.4f}")

    out = Path(__file__).with_name(f"{name}.svg")
    out.write_text(plot_field(u, decompose(u), extract_gamma(u, 0.0, sc.coeffs), name))
    print(f"region map written to {out}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "perturbed_parabola", float(args[1]) if len(args) > 1 else 1 / 128)
