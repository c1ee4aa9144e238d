import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twophase.grid import (BOUNDARY, EXTERIOR, INTERIOR, Annulus, Disk, Field, GridSpec, HalfDisk,
                           Rectangle, build_mask, gradient_at, interpolate, interpolate_many,
                           laplacian_at, laplacian_field, shape_from_dict, sup_on_half_ball)


def test_unit_square_counts():
    sq = Rectangle(0.0, 1.0, 0.0, 1.0)
    m = build_mask(sq, GridSpec.covering(sq, 0.25))
    c = m.counts()
    assert c["interior"] == 9
    assert c["boundary"] == 16


def test_half_disk_left_half_exterior():
    dom = HalfDisk(1.0)
    m = build_mask(dom, GridSpec.covering(dom, 1 / 16, pad=2))
    X1, _ = m.grid.coords()
    assert np.all(m.node_class[X1 < -1e-12] == EXTERIOR)
    assert np.all(m.node_class[np.abs(X1) < 1e-12][1:-1] != INTERIOR)


def test_disk_node_arms():
    # (1/2, 1/2) is inside the disk but (1, 1/2) is not, so two arms are cut
    dom = Disk(1.0)
    m = build_mask(dom, GridSpec.covering(dom, 0.5))
    i, j = m.grid.index_of((0.5, 0.5))
    assert m.node_class[i, j] == INTERIOR
    th = m.theta[i, j]
    assert np.sum(th < 1) == 2
    assert np.all(th > 0) and np.all(th <= 1)
    expected = math.sqrt(1 - 0.25) - 0.5
    assert np.allclose(sorted(th)[:2], [expected / 0.5] * 2)


def test_shape_outside_grid_rejected():
    dom = Disk(1.0)
    g = GridSpec(9, 9, 0.125, (0.0, 0.0))
    with pytest.raises(ValueError, match="disk"):
        build_mask(dom, g)


@pytest.mark.parametrize("shape", [Rectangle(0, 1, -1, 1), Disk(0.8, (0.1, 0.0)), HalfDisk(1.0),
                                   Annulus(0.3, 1.0)])
def test_shape_roundtrip(shape):
    assert shape_from_dict(shape.to_dict()) == shape


def _full_arm_nodes(m):
    return [tuple(ij) for ij in np.argwhere(m.interior & np.all(m.theta == 1.0, axis=-1))]


def test_laplacian_quadratic_exact(half_disk_mask):
    f = Field.sample(half_disk_mask, lambda a, b: a ** 2)
    lap = laplacian_field(f)
    assert np.nanmax(np.abs(lap[half_disk_mask.interior] - 2.0)) < 1e-8
    for node in _full_arm_nodes(half_disk_mask)[::97]:
        assert laplacian_at(f, node) == pytest.approx(2.0, abs=1e-9)


def test_laplacian_barrier_node():
    dom = Rectangle(0.0, 1.0, 0.0, 1.0)
    m = build_mask(dom, GridSpec.covering(dom, 1 / 8))
    f = Field.sample(m, lambda a, b: a ** 4 + b ** 4 - 6 * a ** 2 * b ** 2)
    assert abs(laplacian_at(f, m.grid.index_of((0.25, 0.25)))) <= 0.2


def test_laplacian_constant_and_contract(half_disk_mask):
    f = Field.sample(half_disk_mask, lambda a, b: 3.0 + 0 * a)
    assert np.nanmax(np.abs(laplacian_field(f)[half_disk_mask.interior])) < 1e-9
    i, j = half_disk_mask.grid.index_of((0.0, 0.0))
    with pytest.raises(ValueError):
        laplacian_at(f, (i, j))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=6, max_size=6))
def test_stencils_exact_on_quadratics(c):
    dom = Rectangle(0.0, 1.0, -1.0, 1.0)
    m = build_mask(dom, GridSpec.covering(dom, 1 / 16))

    def p(a, b):
        return c[0] + c[1] * a + c[2] * b + c[3] * a * a + c[4] * a * b + c[5] * b * b

    f = Field.sample(m, p)
    for node in [(3, 5), (8, 16), (12, 30)]:
        x1, x2 = m.grid.node(*node)
        assert laplacian_at(f, node) == pytest.approx(2 * c[3] + 2 * c[5], abs=1e-8)
        g = gradient_at(f, node)
        assert g[0] == pytest.approx(c[1] + 2 * c[3] * x1 + c[4] * x2, abs=1e-10)
        assert g[1] == pytest.approx(c[2] + c[4] * x1 + 2 * c[5] * x2, abs=1e-10)


def test_gradient_examples(half_disk_mask):
    m = half_disk_mask
    node = m.grid.index_of((0.5, 0.25))
    assert np.allclose(gradient_at(Field.sample(m, lambda a, b: a), node), [1, 0])
    assert np.allclose(gradient_at(Field.sample(m, lambda a, b: 3 * b), node), [0, 3])
    assert np.allclose(gradient_at(Field.sample(m, lambda a, b: a * a), node), [1.0, 0], atol=1e-12)


def test_interpolation_examples(half_disk_mask):
    m = half_disk_mask
    lin = Field.sample(m, lambda a, b: 2 * a - 3 * b + 1)
    pts = np.array([[0.3, 0.2], [0.11, -0.57], [0.7, 0.01]])
    assert np.allclose(interpolate_many(lin, pts), 2 * pts[:, 0] - 3 * pts[:, 1] + 1)
    f = Field.sample(m, lambda a, b: np.sin(5 * a) * b)
    i, j = m.grid.index_of((0.25, 0.5))
    assert interpolate(f, m.grid.node(i, j)) == f.values[i, j]
    # the cell [0, 1]^2 of a unit-spaced grid carries corner values {0, 0, 0, 1}
    sq = Rectangle(0.0, 2.0, 0.0, 2.0)
    g = Field.sample(build_mask(sq, GridSpec.covering(sq, 1.0)), lambda a, b: a * b)
    assert interpolate(g, (0.5, 0.5)) == pytest.approx(0.25)
    with pytest.raises(ValueError, match="outside"):
        interpolate(f, (-0.1, 0.0))


def test_sup_on_half_ball(half_disk_mask):
    m = half_disk_mask
    h = m.grid.h
    assert sup_on_half_ball(Field.sample(m, lambda a, b: 0.5 * a * a), 0.5) == pytest.approx(0.125, abs=h * h)
    assert sup_on_half_ball(Field.sample(m, lambda a, b: 0 * a), 0.5) == 0.0
    assert sup_on_half_ball(Field.sample(m, lambda a, b: b), 0.5) == pytest.approx(0.5, abs=h)
    with pytest.raises(ValueError):
        sup_on_half_ball(Field.sample(m, lambda a, b: b), 1.5 * h)


def test_boundary_nodes_carry_data(half_disk_mask):
    f = Field.sample(half_disk_mask, lambda a, b: a + b)
    X1, X2 = half_disk_mask.grid.coords()
    b = half_disk_mask.node_class == BOUNDARY
    assert np.allclose(f.values[b], X1[b] + X2[b])
    assert np.all(np.isnan(f.values[half_disk_mask.node_class == EXTERIOR]))
