"""Quadrature oracle self-tests: goldens, honesty, failure modes."""

import math

import numpy as np
import pytest

from harmint.complexfit import LogPairField, PairedLogSource, RationalField
from harmint.fields import FourierField, PointSourceSum
from harmint.geometry import MONOPOLE, SCALED, VERTICAL_DIPOLE, KernelKind
from harmint.oracle import (
    DivergentIntegralError,
    QuadratureSpec,
    ToleranceError,
    finite_difference,
    line_integral_inner,
    quad_complex,
    quad_dirichlet_rn,
    quad_surface_rn,
)

SCALED_MONO = KernelKind(MONOPOLE, convention=SCALED)
VDIP = KernelKind(VERTICAL_DIPOLE, convention=SCALED)


def test_dirichlet_oracle_replication_n3():
    kernel = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), SCALED_MONO)])
    f = PointSourceSum(3, [(1.0, (0.0, 0.0, -2.0), SCALED_MONO)])
    res = quad_dirichlet_rn(kernel, f, 3)
    # (1/2) f(P) with P = (0,0,1): f(P) = d3/3
    assert res.agrees_with(1.0 / (24.0 * math.pi), 1e-3)
    assert res.error_bound <= 1e-3 * abs(res.value)


def test_dirichlet_oracle_self_energy_nonnegative():
    f = PointSourceSum(
        3,
        [
            (1.0, (0.0, 0.0, -1.0), SCALED_MONO),
            (-0.8, (1.0, 0.5, -1.5), VDIP),
        ],
    )
    res = quad_dirichlet_rn(f, f, 3)
    assert res.value >= 0


def test_dirichlet_oracle_rejects_unsupported_dimension():
    f = PointSourceSum(5, [(1.0, (0.0, 0.0, 0.0, 0.0, -1.0), SCALED_MONO)])
    with pytest.raises(ValueError):
        quad_dirichlet_rn(f, f, 5)


def test_surface_oracle_divergence_diagnosis():
    f = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), SCALED_MONO)])
    with pytest.raises(DivergentIntegralError):
        quad_surface_rn(f, f, 3)


def test_surface_oracle_honesty_refinement():
    dip = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), VDIP)])
    ref = 1.0 / (32.0 * math.pi)
    small = QuadratureSpec(
        radius=1e4, radial_nodes=24, polar_nodes=12, azimuthal_nodes=24, target_tol=1.0
    )
    big = QuadratureSpec(
        radius=2e4, radial_nodes=48, polar_nodes=24, azimuthal_nodes=48, target_tol=1.0
    )
    res_small = quad_surface_rn(dip, dip, 3, small)
    res_big = quad_surface_rn(dip, dip, 3, big)
    assert abs(res_big.value - ref) <= abs(res_small.value - ref) + 1e-14
    assert res_big.error_bound <= res_small.error_bound
    assert res_big.tail_bound <= res_small.tail_bound


def test_tolerance_error_on_starved_budget():
    kernel = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), SCALED_MONO)])
    f = PointSourceSum(3, [(1.0, (0.0, 0.0, -2.0), SCALED_MONO)])
    starved = QuadratureSpec(radius=5.0, target_tol=1e-9)
    with pytest.raises(ToleranceError):
        quad_dirichlet_rn(kernel, f, 3, starved)


def test_complex_oracle_goldens():
    F = RationalField([(1j, -1j)])
    res = quad_complex("sigma", F, F)
    assert res.agrees_with(0.5, 1e-6)
    Fd = RationalField([(1.0, -1j)])
    res = quad_complex("dirichlet", Fd, Fd)
    assert res.agrees_with(0.125, 1e-6)


def test_complex_oracle_log_pair():
    pair = PairedLogSource(-1j, -2j)
    xi = LogPairField([(1.0, pair)])
    res = quad_complex("dirichlet", xi, xi)
    assert res.agrees_with(0.5 * math.log(9.0 / 8.0), 1e-5)


def test_complex_oracle_unknown_setting():
    F = RationalField([(1j, -1j)])
    with pytest.raises(ValueError):
        quad_complex("volume", F, F)


def test_line_integral_inner_fourier():
    f = FourierField(4.0, [(1.0, 0.0, 1.0, 0.0, 0.0, 0.0)])
    got = line_integral_inner(f, np.array([0.0, 0.0]), 1.0)
    assert got == pytest.approx(math.exp(-1.0), rel=1e-9)


def test_finite_difference_basics():
    assert finite_difference(
        lambda p: math.sin(p[0]), np.array([0.0]), axis=0
    ) == pytest.approx(1.0, abs=1e-10)
    assert finite_difference(lambda p: 7.5, np.array([1.0, 2.0]), axis=1) == 0.0
    # second derivative of x^3 at x = 2 is 12
    assert finite_difference(
        lambda p: p[0] ** 3, np.array([2.0]), axis=0, order=2
    ) == pytest.approx(12.0, rel=1e-6)
    with pytest.raises(ValueError):
        finite_difference(lambda p: p[0], np.array([0.0]), axis=0, order=3)


def test_finite_difference_matches_rational_derivative():
    f = RationalField([(1.0, -2j)])
    # d/dx of f along the real axis at z = i
    got = finite_difference(
        lambda p: f.value(complex(p[0], 1.0)), np.array([0.0]), axis=0
    )
    assert got == pytest.approx(f.derivative(1j), abs=1e-8)
