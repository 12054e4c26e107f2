"""Dimension constants, point types and closed-form kernel evaluation."""

import math

import numpy as np
import pytest

from harmint.geometry import (
    HORIZONTAL_DIPOLE,
    MONOPOLE,
    RAW,
    SCALED,
    VERTICAL_DIPOLE,
    DimensionError,
    HalfSpacePoint,
    KernelKind,
    MirrorNode,
    SourcePoint,
    constants,
    eval_kernel,
    eval_kernel_derivative,
    eval_kernel_field_gradient,
    mirror,
    reflect,
    replication_constant,
)
from harmint.oracle import finite_difference

SCALED_MONO = KernelKind(MONOPOLE, convention=SCALED)
RAW_MONO = KernelKind(MONOPOLE, convention=RAW)
VDIP = KernelKind(VERTICAL_DIPOLE, convention=SCALED)


def test_constants_r3_r4():
    c3 = constants(3)
    assert c3.unit_ball_volume == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
    assert c3.c_n == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-15)
    assert c3.d_n == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-15)
    c4 = constants(4)
    assert c4.c_n == pytest.approx(1.0 / math.pi**2, rel=1e-15)
    assert c4.d_n == pytest.approx(1.0 / (4.0 * math.pi**2), rel=1e-15)


@pytest.mark.parametrize("n", range(3, 11))
def test_constant_identities(n):
    c = constants(n)
    assert c.d_n == pytest.approx(c.c_n / (2.0 * (n - 2)), rel=1e-15)
    assert c.c_n * n * c.unit_ball_volume == pytest.approx(2.0, rel=1e-14)


def test_dimension_floor():
    with pytest.raises(DimensionError):
        constants(2)
    with pytest.raises(DimensionError):
        eval_kernel(SCALED_MONO, HalfSpacePoint([0.0], 1.0), SourcePoint([0.0], -1.0))


def test_mirror_examples():
    node = mirror(SourcePoint([1.0, 2.0], -3.0))
    assert node.p_h == 3.0
    np.testing.assert_allclose(node.t, [1.0, 2.0])
    assert mirror(SourcePoint([0.0, 0.0, 0.0], -0.5)).p_h == 0.5


def test_mirror_reflect_involution():
    s = SourcePoint([0.3, -0.7], -1.25)
    back = reflect(mirror(s))
    np.testing.assert_allclose(back.coords, s.coords)


def test_point_validation():
    with pytest.raises(ValueError):
        HalfSpacePoint([0.0, 0.0], -0.1)
    with pytest.raises(ValueError):
        SourcePoint([0.0, 0.0], 0.0)
    with pytest.raises(ValueError):
        MirrorNode([0.0, 0.0], 0.0)


def test_eval_kernel_goldens():
    Z = HalfSpacePoint([0.0, 0.0], 1.0)
    S = SourcePoint([0.0, 0.0], -1.0)
    # scaled monopole n=3: d3 / |Z-S| = 1/(8 pi)
    assert eval_kernel(SCALED_MONO, Z, S) == pytest.approx(1.0 / (8.0 * math.pi), rel=1e-14)
    # raw monopole n=4: |Z-S|^-2 = 1/4
    Z4 = HalfSpacePoint([0.0, 0.0, 0.0], 1.0)
    S4 = SourcePoint([0.0, 0.0, 0.0], -1.0)
    assert eval_kernel(RAW_MONO, Z4, S4) == pytest.approx(0.25, rel=1e-14)
    # vertical dipole scaled n=3: -(c3/2) * 2 / 8 = -1/(16 pi)
    assert eval_kernel(VDIP, Z, S) == pytest.approx(-1.0 / (16.0 * math.pi), rel=1e-14)


def test_kernel_kind_validation():
    with pytest.raises(ValueError):
        KernelKind("sextupole")
    with pytest.raises(ValueError):
        KernelKind(MONOPOLE, convention="other")
    with pytest.raises(ValueError):
        KernelKind(HORIZONTAL_DIPOLE)  # axis required
    with pytest.raises(ValueError):
        KernelKind(MONOPOLE, axis=1)  # axis meaningless
    kind = KernelKind(HORIZONTAL_DIPOLE, axis=3)
    with pytest.raises(ValueError):
        kind.validate_for_dimension(3)  # axis 3 > n-1 = 2


def test_source_partial_golden():
    Z = HalfSpacePoint([0.0, 0.0], 1.0)
    S = SourcePoint([0.0, 0.0], -1.0)
    # d/dw of the scaled monopole: +c3/8 = 1/(16 pi)
    got = eval_kernel_derivative(SCALED_MONO, Z, S, direction=3)
    assert got == pytest.approx(1.0 / (16.0 * math.pi), rel=1e-14)
    # equals minus the vertical field derivative
    fld = eval_kernel_derivative(SCALED_MONO, Z, S, direction=3, with_respect_to="field")
    assert got == pytest.approx(-fld, rel=1e-14)


@pytest.mark.parametrize(
    "kind",
    [SCALED_MONO, RAW_MONO, VDIP, KernelKind(HORIZONTAL_DIPOLE, axis=1)],
)
@pytest.mark.parametrize("direction", [1, 2, 3])
def test_derivative_matches_finite_difference(kind, direction):
    Z = HalfSpacePoint([0.4, -0.3], 0.8)
    S = SourcePoint([-0.2, 0.6], -1.1)

    def fn(coords):
        return eval_kernel(kind, HalfSpacePoint(coords[:2], coords[2]), S)

    analytic = eval_kernel_derivative(
        kind, Z, S, direction=direction, with_respect_to="field"
    )
    numeric = finite_difference(fn, Z.coords, axis=direction - 1)
    assert analytic == pytest.approx(numeric, rel=1e-8)


def test_horizontal_source_partial_sign_identity(rng):
    kind = KernelKind(HORIZONTAL_DIPOLE, axis=2)
    for _ in range(20):
        Z = HalfSpacePoint(rng.normal(size=2), float(rng.uniform(0.1, 2.0)))
        S = SourcePoint(rng.normal(size=2), float(-rng.uniform(0.1, 2.0)))
        for direction in (1, 2):
            src = eval_kernel_derivative(kind, Z, S, direction, with_respect_to="source")
            fld = eval_kernel_derivative(kind, Z, S, direction, with_respect_to="field")
            assert src == pytest.approx(-fld, rel=1e-10)


def test_translation_invariance(rng):
    for _ in range(10):
        shift = rng.normal(size=2)
        Z = HalfSpacePoint(rng.normal(size=2), 0.7)
        S = SourcePoint(rng.normal(size=2), -1.3)
        base = eval_kernel(SCALED_MONO, Z, S)
        moved = eval_kernel(
            SCALED_MONO, HalfSpacePoint(Z.t + shift, Z.h), SourcePoint(S.t + shift, S.w)
        )
        assert moved == pytest.approx(base, rel=1e-13)


def test_sign_properties(rng):
    for _ in range(25):
        Z = HalfSpacePoint(rng.normal(size=2), float(rng.uniform(0.0, 3.0)))
        S = SourcePoint(rng.normal(size=2), float(-rng.uniform(0.05, 3.0)))
        assert eval_kernel(SCALED_MONO, Z, S) > 0
        assert eval_kernel(VDIP, Z, S) < 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_harmonicity_discrete_laplacian(n, rng):
    kind = KernelKind(MONOPOLE, convention=SCALED)
    for _ in range(5):
        S = SourcePoint(rng.normal(size=n - 1), float(-rng.uniform(0.5, 2.0)))
        Zc = np.append(rng.normal(size=n - 1), rng.uniform(0.5, 2.0))
        step = 1e-3
        center = eval_kernel(kind, HalfSpacePoint(Zc[:-1], Zc[-1]), S)
        lap = 0.0
        for ax in range(n):
            e = np.zeros(n)
            e[ax] = step
            up = eval_kernel(kind, HalfSpacePoint((Zc + e)[:-1], (Zc + e)[-1]), S)
            dn = eval_kernel(kind, HalfSpacePoint((Zc - e)[:-1], (Zc - e)[-1]), S)
            lap += (up - 2.0 * center + dn) / step**2
        assert abs(lap) <= 1e-6 * max(abs(center), 1.0)


def test_field_gradient_consistency():
    Z = HalfSpacePoint([0.4, -0.3], 0.8)
    S = SourcePoint([-0.2, 0.6], -1.1)
    grad = eval_kernel_field_gradient(SCALED_MONO, Z, S)
    for direction in (1, 2, 3):
        comp = eval_kernel_derivative(
            SCALED_MONO, Z, S, direction, with_respect_to="field"
        )
        assert grad[direction - 1] == pytest.approx(comp, rel=1e-14)


def test_replication_constants():
    assert replication_constant(SCALED_MONO, 3) == 0.5
    assert replication_constant(SCALED_MONO, 4) == 0.5
    # raw R^3 monopole carries 1/(2 d3) = 2 pi
    assert replication_constant(RAW_MONO, 3) == pytest.approx(2.0 * math.pi, rel=1e-14)


def test_second_derivative_supported_orders():
    Z = HalfSpacePoint([0.0, 0.0], 1.0)
    S = SourcePoint([0.0, 0.0], -1.0)
    eval_kernel_derivative(SCALED_MONO, Z, S, direction=1, order=2)
    with pytest.raises(ValueError):
        eval_kernel_derivative(SCALED_MONO, Z, S, direction=1, order=3)
