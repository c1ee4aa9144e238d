import math

import numpy as np
import pytest

from twophase.catalog import preset_scenarios
from twophase.free_boundary import (FreeBoundaryCurve, cone_test, decompose, density_ratios,
                                    dyadic_radii, extract_gamma, growth_check, nondegeneracy_trace,
                                    tangency_profile, write_decomposition_csv, write_polylines_csv)
from twophase.grid import Field
from twophase.solver import solve


def test_decompose_parabola(half_disk_mask):
    h = half_disk_mask.grid.h
    u = Field.sample(half_disk_mask, lambda a, b: 0.5 * a * a)
    d = decompose(u)
    assert d.tau_u == h * h and d.tau_g == 4 * h
    X1, _ = half_disk_mask.grid.coords()
    inter = half_disk_mask.interior
    assert np.array_equal(d.omega_plus, inter & (X1 > math.sqrt(2) * h))
    assert not d.omega_minus.any()
    assert not (d.omega_plus & d.lambda_set).any()
    covered = d.omega_plus | d.omega_minus | d.lambda_set | d.band
    assert np.array_equal(covered, inter)


def test_decompose_zero_and_line(half_disk_mask):
    z = decompose(Field.sample(half_disk_mask, lambda a, b: 0 * a))
    assert np.array_equal(z.lambda_set, half_disk_mask.interior)
    d = decompose(Field.sample(half_disk_mask, lambda a, b: a - 0.5))
    X1, _ = half_disk_mask.grid.coords()
    near = half_disk_mask.interior & (np.abs(X1 - 0.5) < 0.5 * half_disk_mask.grid.h)
    assert near.any()
    assert not d.lambda_set.any()
    assert np.all(d.band[near])


def test_gamma_examples(half_disk_mask):
    h = half_disk_mask.grid.h
    assert len(extract_gamma(Field.sample(half_disk_mask, lambda a, b: 0.5 * a * a))) == 0
    off = extract_gamma(Field.sample(half_disk_mask, lambda a, b: 0.5 * np.maximum(a - 0.4, 0) ** 2))
    p = off.points
    assert len(p) > 20 and np.max(np.abs(p[:, 0] - 0.4)) <= h
    cross = extract_gamma(Field.sample(half_disk_mask, lambda a, b: a * a - b * b)).points
    assert np.max(np.abs(np.abs(cross[:, 0]) - np.abs(cross[:, 1]))) <= h


def test_gamma_vertices_on_straddling_edges(half_disk_mask):
    u = Field.sample(half_disk_mask, lambda a, b: (a - 0.3) * (b + 0.2) - 0.01)
    g = extract_gamma(u)
    h = half_disk_mask.grid.h
    for x1, x2 in g.points[::7]:
        on_h = abs(x1 / h - round(x1 / h)) < 1e-9
        on_v = abs(x2 / h - round(x2 / h)) < 1e-9
        assert on_h or on_v


def test_density_examples(half_disk_mask):
    h = half_disk_mask.grid.h
    radii = [0.25, 0.5, 0.75]
    dp = density_ratios(decompose(Field.sample(half_disk_mask, lambda a, b: 0.5 * a * a)), radii)
    assert np.all(dp.ratio_plus >= 1 - 6 * h / dp.radii)
    dz = density_ratios(decompose(Field.sample(half_disk_mask, lambda a, b: 0 * a)), radii)
    assert np.all(dz.ratio_lambda >= 1 - 3 * h / dz.radii)
    odd = Field.sample(half_disk_mask, lambda a, b: a * b * np.exp(-a * a - b * b))
    do = density_ratios(decompose(odd), radii)
    assert np.allclose(do.ratio_plus, do.ratio_minus)
    assert np.all(np.abs(do.ratio_plus - 0.5) <= 6 * h / do.radii)
    skipped = density_ratios(decompose(Field.sample(half_disk_mask, lambda a, b: 0 * a)), [3 * h, 0.5])
    assert len(skipped.radii) == 1 and skipped.notes


def test_tangency_examples():
    s = np.linspace(-0.5, 0.5, 2001)
    par = FreeBoundaryCurve([np.column_stack([s ** 2, s])])
    tp = tangency_profile(par, dyadic_radii(0.25, 4))
    # the outermost vertex has s^2 + s^4 = r^2 and slope ratio |s|, close to r
    s_star = np.sqrt((np.sqrt(1 + 4 * tp.radii ** 2) - 1) / 2)
    assert np.allclose(tp.sigma_hat, s_star, rtol=0, atol=s[1] - s[0])
    assert np.allclose(tp.sigma_hat, tp.radii, rtol=0.05)
    empty = tangency_profile(FreeBoundaryCurve([]), dyadic_radii(0.25, 3))
    assert np.all(empty.sigma_hat == -np.inf) and np.all(empty.counts == 0)
    t = np.linspace(1e-3, 0.3, 500)
    ray = tangency_profile(FreeBoundaryCurve([np.column_stack([t, t])]), dyadic_radii(0.25, 3))
    assert np.allclose(ray.sigma_hat, 1.0)


def test_cone_examples():
    assert list(cone_test([(0.5, 0.1), (0.1, 0.5), (0.3, 0.3)], 1.0)) == [True, False, False]
    assert cone_test(np.zeros((0, 2)), 0.5).size == 0


def test_nondegeneracy_and_growth_examples(half_disk_mask):
    radii = [0.125, 0.25, 0.5]
    par = Field.sample(half_disk_mask, lambda a, b: 0.5 * a * a)
    assert np.allclose(nondegeneracy_trace(par, radii).values, 0.5)
    off = Field.sample(half_disk_mask, lambda a, b: 0.5 * np.maximum(a - 0.6, 0) ** 2)
    assert np.all(nondegeneracy_trace(off, radii).values == 0)
    lin = Field.sample(half_disk_mask, lambda a, b: 0.5 * a * a + 0.7 * a)
    g = growth_check(lin, radii)
    assert np.allclose(g.values, 0.5, atol=1e-9) and g.meta["slope"] == pytest.approx(0.7)
    assert np.allclose(growth_check(Field.sample(half_disk_mask, lambda a, b: 0.3 * a), radii).values, 0,
                       atol=1e-12)


def test_growth_rejects_off_pi_origin():
    from twophase.grid import Disk, GridSpec, build_mask
    d = Disk(1.0)
    m = build_mask(d, GridSpec.covering(d, 1 / 16))
    with pytest.raises(ValueError, match="flat boundary"):
        growth_check(Field.sample(m, lambda a, b: a), [0.5])


@pytest.fixture(scope="module")
def solved_catalogue():
    out = {}
    for name, sc in preset_scenarios().items():
        if sc.zero_pi_data():
            u, _ = solve(sc, 1 / 64)
            out[name] = (sc, u)
    return out


def test_trichotomy_at_fine_scale(solved_catalogue):
    # the prescribed thresholds put the first node row off Pi into Lambda, an
    # O(h / r) layer worth about 0.16 of the half ball at r = 8h; r = 32h
    # is the first dyadic level where it drops below the 0.1 margin
    h = 1 / 64
    expected = {"zero": "ratio_lambda", "parabola_plus": "ratio_plus",
                "parabola_minus": "ratio_minus", "with_linear": "ratio_plus",
                "homogeneous": "ratio_plus", "perturbed_parabola": "ratio_plus"}
    for name, key in expected.items():
        _, u = solved_catalogue[name]
        dt = density_ratios(decompose(u), [32 * h])
        winners = [k for k in ("ratio_plus", "ratio_minus", "ratio_lambda") if getattr(dt, k)[0] > 0.9]
        assert winners == [key], name
    for name in ("offset_plus", "offset_minus"):
        _, u = solved_catalogue[name]
        dt = density_ratios(decompose(u), [16 * h])
        assert dt.ratio_lambda[0] > 0.9


def test_nondegeneracy_density_pairing(solved_catalogue):
    h = 1 / 64
    radii = [8 * h, 16 * h, 32 * h]
    for name, (sc, u) in solved_catalogue.items():
        c = nondegeneracy_trace(u, radii).values
        dt = density_ratios(decompose(u), [r + 1e-12 for r in radii])
        if c.min() >= 0.1:
            assert np.all(dt.ratio_plus + dt.ratio_minus >= 0.15), name
        elif c.max() == 0:
            assert np.all(dt.ratio_plus + dt.ratio_minus == 0) and np.all(dt.ratio_lambda > 0.85), name


def test_growth_bounded_on_catalogue(solved_catalogue):
    h = 1 / 64
    for name, (sc, u) in solved_catalogue.items():
        g = growth_check(u, [4 * h, 8 * h, 16 * h, 32 * h])
        assert g.values.max() <= 10 * sc.coeffs.max, name


def test_csv_exports(tmp_path, half_disk_mask):
    u = Field.sample(half_disk_mask, lambda a, b: a * a - b * b)
    d = decompose(u)
    write_decomposition_csv(d, tmp_path / "d.csv")
    rows = (tmp_path / "d.csv").read_text().splitlines()
    assert rows[0] == "i,j,x1,x2,u,region"
    assert len(rows) - 1 == half_disk_mask.interior.sum()
    g = extract_gamma(u)
    write_polylines_csv(g, tmp_path / "g.csv")
    body = (tmp_path / "g.csv").read_text().splitlines()[1:]
    pts = np.array([[float(v) for v in r.split(",")[2:]] for r in body])
    assert np.allclose(np.unique(pts, axis=0), g.points)
