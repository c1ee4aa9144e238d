"""Brute-force search for degree-2 homogeneous solutions.

Writing ``u = r^2 phi(theta)`` turns the equation into
``phi'' + 4 phi = l+ chi{phi > 0} - l- chi{phi < 0}`` on ``(0, pi)`` with zero
end values.  A hundred random starts per coefficient pair all land on
``phi = 0`` or on one of the two profiles ``+-(l+-/2) sin^2``.

    python3 demos/homogeneous_profiles.py
"""

from twophase import Coefficients
from twophase.blowup import ode_brute_force

for lp in (0.5, 1.0, 2.0):
    for lm in (0.5, 1.0, 2.0):
        rep = ode_brute_force(Coefficients(lp, lm), n_starts=100, grid_m=800)
        trivial = sum(1 for s in rep.starts if s["converged"] and s["cluster"] < 0)
        found = ", ".join(f"{n} (dev {d:.1e})" for n, d in zip(rep.candidates, rep.deviations))
        print(f"l+ = {lp:<3} l- = {lm:<3} trivial starts {trivial:>3}, profiles: {found}, "
              f"discarded grid modes: {len(rep.spurious)}")
