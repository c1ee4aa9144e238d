import math

import numpy as np
import pytest

from twophase.blowup import (ODEBruteForceReport, barrier_check, blowup_sequence, classify_limit,
                             TAGS, homogeneity_defect, ode_brute_force, reference_mask,
                             rescale_quadratic, rescale_supnorm, write_ode_csv,
                             write_sequence_csv)
from twophase.catalog import Coefficients, preset_scenarios
from twophase.grid import Field, GridSpec, Rectangle, sup_on_half_ball
from twophase.monotonicity import check_monotone, weiss_phi
from twophase.solver import solve


@pytest.fixture(scope="module")
def ref():
    return reference_mask(1.0, 1 / 64)


def sample(mask, fn):
    return Field.sample(mask, fn)


def inside_values(f):
    return f.values[f.mask.inside]


def x1_of(f):
    X1, _ = f.grid.coords()
    return X1[f.mask.inside]


# --------------------------------------------------------------------------
# rescaling


@pytest.mark.parametrize("d", [0.9, 0.5, 0.13])
def test_quadratic_rescale_keeps_parabola(ref, d):
    u = sample(ref, lambda a, b: 0.5 * a * a + 0 * b)
    r = rescale_quadratic(u, d, ref)
    # bilinear interpolation of a quadratic: error h^2/8 times the curvature, over d^2
    assert np.max(np.abs(inside_values(r) - 0.5 * x1_of(r) ** 2)) <= ref.grid.h ** 2 / (8 * d * d) + 1e-14


def test_quadratic_rescale_of_offset_is_zero(ref):
    a = 0.3
    u = sample(ref, lambda x1, x2: 0.5 * np.maximum(x1 - a, 0.0) ** 2 + 0 * x2)
    r = rescale_quadratic(u, 0.1, ref)
    assert np.all(inside_values(r) == 0.0)


def test_quadratic_rescale_halves_cubic(ref):
    u = sample(ref, lambda a, b: a ** 3 + 0 * b)
    r = rescale_quadratic(u, 0.5, ref)
    assert np.max(np.abs(inside_values(r) - 0.5 * x1_of(r) ** 3)) < 1e-3


def test_rescale_rejections(ref):
    u = sample(ref, lambda a, b: a + 0 * b)
    with pytest.raises(ValueError, match="too large"):
        rescale_quadratic(u, 1.5, ref)
    with pytest.raises(ValueError, match="positive"):
        rescale_quadratic(u, 0.0, ref)
    with pytest.raises(ValueError, match="zero"):
        rescale_supnorm(sample(ref, lambda a, b: 0 * a), 0.5, ref)


def test_supnorm_rescale_examples(ref):
    lam = 1.7
    u = sample(ref, lambda a, b: 0.5 * lam * a * a + 0 * b)
    r = rescale_supnorm(u, 0.5, ref)
    assert np.max(np.abs(inside_values(r) - x1_of(r) ** 2)) < 2e-3
    alpha = 3.0
    v = sample(ref, lambda a, b: alpha * a + 0 * b)
    r = rescale_supnorm(v, 0.25, ref)
    assert np.max(np.abs(inside_values(r) - x1_of(r))) < 1e-12
    assert np.nanmax(np.abs(r.values)) == pytest.approx(1.0, abs=1e-12)


def test_supnorm_rescale_has_unit_sup(ref):
    u = sample(ref, lambda a, b: a * (1 + np.sin(3 * b)) + a * a * b)
    grad_bound = 6.0  # |grad u| <= 4 sqrt(2) on the unit half-disk
    for d in (0.8, 0.4, 0.2):
        r = rescale_supnorm(u, d, ref)
        s = sup_on_half_ball(u, d)
        # the nodal sup over B_d and the interpolated one differ by at most one mesh width
        assert abs(np.nanmax(np.abs(r.values)) - 1.0) <= grad_bound * ref.grid.h / s


def test_scaling_consistency(ref):
    u = sample(ref, lambda a, b: np.sin(2 * a) * np.cos(b) + a * b)
    d1, d2 = 0.6, 0.5
    once = rescale_quadratic(u, d1 * d2, ref)
    twice = rescale_quadratic(rescale_quadratic(u, d1, ref), d2, ref)
    # each bilinear pass costs h^2/8 times the second derivatives of the rescaled field
    slack = 2 * ref.grid.h ** 2 / 8 * 8 / (d1 * d2) ** 2
    assert np.max(np.abs(inside_values(once) - inside_values(twice))) <= slack


def test_blowup_sequence_validation(ref):
    u = sample(ref, lambda a, b: 0.5 * a * a + 0 * b)
    with pytest.raises(ValueError, match="decreasing"):
        blowup_sequence(u, (0.25, 0.5), ref=ref)
    with pytest.raises(ValueError, match="mode"):
        blowup_sequence(u, (0.5, 0.25), mode="cubic", ref=ref)
    seq = blowup_sequence(u, (0.5, 0.25), mode="supnorm", ref=ref)
    assert all(f.mask is ref for f in seq.fields)
    # supnorm factor d^2 / sup = 1 / (lambda/2) for the parabola
    assert seq.factors == pytest.approx([2.0, 2.0], rel=1e-12)
    assert seq.coefficients(0, Coefficients(1.0, 1.0)).lambda_plus == pytest.approx(2.0)


# --------------------------------------------------------------------------
# classification


def test_classify_negative_parabola(ref):
    co = Coefficients(1.0, 1.5)
    c = classify_limit(sample(ref, lambda a, b: -0.75 * a * a + 0 * b), co)
    assert c.tag == "NegativeParabolic"
    assert c.parameter == pytest.approx(0.0, abs=1e-9)
    assert c.distance < 1e-12
    assert c.is_parabolic


def test_classify_linear(ref):
    c = classify_limit(sample(ref, lambda a, b: 0.7 * a + 0 * b), Coefficients())
    assert c.tag == "Linear" and c.parameter == pytest.approx(0.7) and c.distance < 1e-12
    assert c.label() == "Linear(0.7)"


def test_classify_zero(ref):
    c = classify_limit(sample(ref, lambda a, b: 0 * a), Coefficients())
    assert c.tag == "Zero" and c.distance == 0.0 and c.label() == "Zero"


def test_classify_perturbed_parabola(ref):
    pert = lambda a, b: 0.1 * np.sin(math.pi * a) * b
    u = sample(ref, lambda a, b: 0.5 * a * a + pert(a, b))
    c = classify_limit(u, Coefficients())
    size = np.nanmax(np.abs(sample(ref, pert).values))
    assert c.tag == "PositiveParabolic"
    assert c.distance == pytest.approx(size, rel=0.05)
    assert c.parameter >= 0.0
    assert all(dist >= 0 for _, dist in c.candidates.values())
    assert c.candidates["PositiveWithLinear"][0] >= 0.0


def test_classify_rejects_pi_data(ref):
    with pytest.raises(ValueError, match="not zero"):
        classify_limit(sample(ref, lambda a, b: 1.0 + a + 0 * b), Coefficients())


def test_homogeneity_defect_examples(ref):
    pairs = [(0.2, 0.4), (0.3, 0.8)]
    assert homogeneity_defect(sample(ref, lambda a, b: 0.5 * a * a + 0 * b), pairs) < 1e-3
    assert homogeneity_defect(sample(ref, lambda a, b: 0 * a), pairs) == 0.0
    d = homogeneity_defect(sample(ref, lambda a, b: a ** 3 + 0 * b), pairs)
    assert d == pytest.approx(0.5, rel=1e-2)


def test_weiss_constancy_agrees_with_homogeneity():
    mask = reference_mask(1.0, 1 / 128)
    radii = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    pairs = [(0.2, 0.8), (0.4, 0.6)]
    sc = preset_scenarios()
    for name, homogeneous in (("parabola_plus", True), ("homogeneous", True),
                              ("with_linear", False), ("offset_plus", False)):
        s = sc[name]
        u = Field.sample(mask, s.exact_function())
        tr = weiss_phi(u, s.coeffs, radii)
        slack = 1e-3 * max(np.abs(tr.values).max(), 1e-12)
        constant = check_monotone(tr, slack).is_constant
        defect = homogeneity_defect(u, pairs)
        assert constant == homogeneous, name
        assert (defect < 1e-3) == homogeneous, name


@pytest.mark.parametrize("scenario", ["parabola_plus", "parabola_minus"])
def test_solved_blowup_is_parabolic(ref, scenario):
    sc = preset_scenarios()[scenario]
    u, rep = solve(sc, 1 / 64)
    assert rep.converged
    seq = blowup_sequence(u, (1 / 4, 1 / 8, 1 / 16), mode="supnorm", ref=ref)
    classes = [classify_limit(f, seq.coefficients(k, sc.coeffs)) for k, f in enumerate(seq.fields)]
    assert all(c.is_parabolic and c.parameter == 0.0 for c in classes)
    # solver error h^2 is magnified by 1/d^2 in the rescaled field
    assert all(c.distance <= 8 * (1 / 64) ** 2 / d ** 2 for c, d in zip(classes, seq.scales))


def test_solved_perturbed_blowup_approaches_parabola(ref):
    sc = preset_scenarios()["perturbed_parabola"]
    u, _ = solve(sc, 1 / 64)
    seq = blowup_sequence(u, (1 / 4, 1 / 8, 1 / 16), mode="supnorm", ref=ref)
    classes = [classify_limit(f, seq.coefficients(k, sc.coeffs)) for k, f in enumerate(seq.fields)]
    assert [c.tag for c in classes] == ["PositiveParabolic"] * 3
    dist = [c.distance for c in classes]
    assert dist[0] > dist[1] > dist[2]


def test_quadratic_blowup_of_degenerate_scenario_is_zero(ref):
    sc = preset_scenarios()["offset_plus"]
    u, _ = solve(sc, 1 / 64)
    seq = blowup_sequence(u, (1 / 4, 1 / 8), mode="quadratic", ref=ref)
    classes = [classify_limit(f, sc.coeffs) for f in seq.fields]
    assert [c.tag for c in classes] == ["Zero", "Zero"]


# --------------------------------------------------------------------------
# homogeneous ODE


@pytest.fixture(scope="module")
def ode_unit():
    return ode_brute_force(Coefficients(1.0, 1.0), n_starts=100, grid_m=800, seed=0)


def test_ode_unit_coefficients(ode_unit):
    assert isinstance(ode_unit, ODEBruteForceReport)
    assert ode_unit.n_nontrivial == 2
    assert sorted(ode_unit.candidates) == ["negative", "positive"]
    assert max(ode_unit.deviations) <= 1e-6
    assert all(d >= 0 for d in ode_unit.deviations)
    assert ode_unit.n_starts == len(ode_unit.starts) == 100


def test_ode_zero_start_is_trivial(ode_unit):
    first = ode_unit.starts[0]
    assert first["amplitude"] == 0.0 and first["converged"]
    assert first["sup"] == 0.0 and first["cluster"] == -1


def test_ode_unequal_coefficients():
    rep = ode_brute_force(Coefficients(2.0, 1.0), n_starts=60, grid_m=400, seed=1)
    assert rep.n_nontrivial == 2
    peaks = {name: prof[len(prof) // 2] for name, prof in zip(rep.candidates, rep.profiles)}
    assert peaks["positive"] == pytest.approx(1.0, abs=1e-6)
    assert peaks["negative"] == pytest.approx(-0.5, abs=1e-6)


def test_ode_is_seeded():
    a = ode_brute_force(Coefficients(0.5, 2.0), n_starts=50, grid_m=200, seed=3)
    b = ode_brute_force(Coefficients(0.5, 2.0), n_starts=50, grid_m=200, seed=3)
    assert a.starts == b.starts


def test_ode_validation():
    with pytest.raises(ValueError, match="50"):
        ode_brute_force(Coefficients(), n_starts=49)
    with pytest.raises(ValueError, match="200"):
        ode_brute_force(Coefficients(), grid_m=199)


# --------------------------------------------------------------------------
# barrier


def test_barrier_check():
    g = GridSpec.covering(Rectangle(-1, 1, -1, 1), 1 / 32)
    d = barrier_check(g)
    # 5-point truncation (h^2/12)(U_1111 + U_2222) = 4 h^2, bounded by 2 h^2 * 24
    assert d <= 48 * g.h ** 2
    assert d == pytest.approx(4 * g.h ** 2, rel=1e-6)
    assert barrier_check(g, C=5.0) == pytest.approx(d, rel=1e-9)
    g2 = GridSpec.covering(Rectangle(-1, 1, -1, 1), 1 / 64)
    assert d / barrier_check(g2) == pytest.approx(4.0, rel=1e-3)


# --------------------------------------------------------------------------
# export


def test_csv_writers(tmp_path, ref):
    u = sample(ref, lambda a, b: 0.5 * a * a + 0 * b)
    seq = blowup_sequence(u, (0.5, 0.25), ref=ref)
    classes = [classify_limit(f, seq.coefficients(k, Coefficients())) for k, f in enumerate(seq.fields)]
    p = tmp_path / "blowup.csv"
    write_sequence_csv(seq, classes, p)
    lines = p.read_bytes().decode().split("\n")
    assert lines[0] == "scale,mode,sup,factor,tag,parameter,distance"
    first = lines[1].split(",")
    assert first[:2] == ["0.5", "supnorm"] and first[4] in TAGS
    assert len(lines) == 4 and lines[-1] == ""
    rep = ode_brute_force(Coefficients(), n_starts=50, grid_m=200)
    q = tmp_path / "ode.csv"
    write_ode_csv(rep, q)
    rows = q.read_text().splitlines()
    assert rows[0] == "start,amplitude,converged,iterations,residual,sup,cluster"
    assert len(rows) == 51
    assert b"\r" not in q.read_bytes()
