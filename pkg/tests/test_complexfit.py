"""Upper-half-plane kernels: Hermitian assembly, replication, energies."""

import math

import numpy as np
import pytest

from harmint.complexfit import (
    ComplexPole,
    FittedComplexField,
    LogPairField,
    PairedLogSource,
    RationalField,
    assemble_dirichlet_cx,
    assemble_log,
    assemble_sigma,
    evaluate_cx,
    field_norm_sq_cx,
    higher_pole_inner,
    solve_hermitian,
)

F_TARGET = RationalField([(1.0, -2j)])  # f(z) = 1/(z + 2i)


def test_sigma_assembly_goldens():
    ne = assemble_sigma([ComplexPole(-1j), ComplexPole(-1 - 1j)], F_TARGET)
    assert ne.T[0, 0] == pytest.approx(0.5, abs=1e-15)
    assert ne.T[0, 1] == pytest.approx((2 + 1j) / 5, abs=1e-15)
    assert ne.T[1, 0] == pytest.approx((2 - 1j) / 5, abs=1e-15)
    assert ne.A[0] == pytest.approx(-1j / 3, abs=1e-15)
    np.testing.assert_allclose(ne.T, ne.T.conj().T, atol=1e-14)
    np.testing.assert_allclose(ne.q, [1j, -1 + 1j])


def test_dirichlet_assembly_goldens():
    ne = assemble_dirichlet_cx([ComplexPole(-1j), ComplexPole(-1 - 1j)], F_TARGET)
    assert ne.T[0, 0] == pytest.approx(0.125, abs=1e-15)
    assert ne.T[0, 1] == pytest.approx((3 + 4j) / 50, abs=1e-15)
    assert ne.A[0] == pytest.approx(1.0 / 18.0, abs=1e-15)
    np.testing.assert_allclose(ne.T, ne.T.conj().T, atol=1e-14)


def test_dirichlet_one_pole_solve():
    ne = assemble_dirichlet_cx([ComplexPole(-1j)], F_TARGET)
    fit = solve_hermitian(ne)
    assert fit.mu[0] == pytest.approx(4.0 / 9.0, abs=1e-14)
    # the interpolated functional phi'(i)/2 equals f'(i)/2 = 1/18
    phi = FittedComplexField(ne.basis, fit.mu, "dirichlet")
    assert 0.5 * phi.derivative(1j) == pytest.approx(1.0 / 18.0, abs=1e-13)


def test_log_assembly_goldens():
    pair = PairedLogSource(-1j, -2j)
    ne = assemble_log([pair], F_TARGET)
    assert ne.T[0, 0] == pytest.approx(0.5 * math.log(9.0 / 8.0), abs=1e-13)
    assert ne.A[0] == pytest.approx(-1j / 24, abs=1e-15)


def test_log_psi_special_case():
    # pairing every source against a fixed point z' = -i gives
    # A = (f(q_k) - f(i)) / 2 directly from the pair formula
    pair = PairedLogSource(-0.5 - 1j, -1j)
    ne = assemble_log([pair], F_TARGET)
    want = 0.5 * (F_TARGET.value(-0.5 + 1j) - F_TARGET.value(1j))
    assert ne.A[0] == pytest.approx(want, abs=1e-15)


def test_higher_pole_inners():
    p2 = ComplexPole(-1j, order=2)  # m = 1
    assert higher_pole_inner("sigma", p2, F_TARGET) == pytest.approx(
        1.0 / 9.0, abs=1e-14
    )  # f'(i) = -1/(3i)^2
    assert higher_pole_inner("dirichlet", p2, F_TARGET) == pytest.approx(
        1j / 27, abs=1e-14
    )  # f''(i)/2
    p1 = ComplexPole(-1j, order=1)
    assert higher_pole_inner("sigma", p1, F_TARGET) == pytest.approx(
        F_TARGET.value(1j), abs=1e-15
    )
    assert higher_pole_inner("dirichlet", p1, F_TARGET) == pytest.approx(
        0.5 * F_TARGET.derivative(1j), abs=1e-15
    )
    with pytest.raises(ValueError):
        higher_pole_inner("other", p1, F_TARGET)


def test_sigma_worked_solve_chain():
    ne = assemble_sigma([ComplexPole(-1j)], F_TARGET)
    fit = solve_hermitian(ne)
    assert fit.mu[0] == pytest.approx(-2j / 3, abs=1e-14)
    # ||f||^2 in the sigma norm is 1/4 via replication at q = 2i
    assert ne.f_norm_sq == pytest.approx(0.25, abs=1e-15)
    assert fit.error_energy == pytest.approx(1.0 / 36.0, abs=1e-14)
    # interpolation at q1 = i and evaluation at the origin
    assert evaluate_cx(ne.basis, fit.mu, 1j, "sigma") == pytest.approx(
        -1j / 3, abs=1e-14
    )
    assert evaluate_cx(ne.basis, fit.mu, 0.0, "sigma") == pytest.approx(
        -2j / 3, abs=1e-14
    )


def test_identity_system_real_rhs():
    from harmint._solve import solve_spd

    mu, _ = solve_spd(np.eye(2, dtype=complex), np.array([1.0, 2.0], dtype=complex))
    np.testing.assert_allclose(mu, [1.0, 2.0])


def test_evaluate_zero_mu():
    basis = (ComplexPole(-1j), ComplexPole(-2j))
    assert evaluate_cx(basis, np.zeros(2, dtype=complex), 0.5 + 0.5j, "sigma") == 0


def test_pole_validation():
    with pytest.raises(ValueError):
        ComplexPole(1j)
    with pytest.raises(ValueError):
        ComplexPole(1.0)  # on the axis
    with pytest.raises(ValueError):
        ComplexPole(-1j, order=0)
    with pytest.raises(ValueError):
        PairedLogSource(-1j, -1j)
    with pytest.raises(ValueError):
        assemble_sigma([ComplexPole(-1j), ComplexPole(-1j)], F_TARGET)


def _random_poles(rng, N):
    zs = set()
    while len(zs) < N:
        z = complex(round(rng.uniform(-3, 3), 4), -round(rng.uniform(0.5, 2.5), 4))
        zs.add(z)
    return [ComplexPole(z) for z in zs]


def test_hermitian_symmetry_random(rng):
    for _ in range(10):
        poles = _random_poles(rng, 6)
        for assemble in (assemble_sigma, assemble_dirichlet_cx):
            ne = assemble(poles, F_TARGET)
            np.testing.assert_allclose(ne.T, ne.T.conj().T, atol=1e-14)
            assert np.all(np.diag(ne.T).real > 0)
            assert np.max(np.abs(np.diag(ne.T).imag)) < 1e-15


def test_interpolation_residuals_per_setting(rng):
    f = RationalField([(1.0 + 0.5j, -2j), (-0.7j, 1.5 - 1.8j)])
    for _ in range(10):
        poles = _random_poles(rng, 5)
        # sigma: value interpolation at q_k
        fit = solve_hermitian(assemble_sigma(poles, f))
        phi = FittedComplexField(tuple(poles), fit.mu, "sigma")
        for p in poles:
            got, want = phi.value(p.q), f.value(p.q)
            assert abs(got - want) <= 1e-10 * max(abs(want), 1e-3)
        # dirichlet: derivative interpolation at q_k
        fit = solve_hermitian(assemble_dirichlet_cx(poles, f))
        phi = FittedComplexField(tuple(poles), fit.mu, "dirichlet")
        for p in poles:
            got, want = phi.derivative(p.q), f.derivative(p.q)
            assert abs(got - want) <= 1e-10 * max(abs(want), 1e-3)


def test_log_difference_interpolation(rng):
    f = RationalField([(1.0, -2j), (0.5j, 1.0 - 1.5j)])
    pairs = [
        PairedLogSource(-1j, -2j),
        PairedLogSource(1.0 - 1j, 1.0 - 2.5j),
        PairedLogSource(-1.5 - 0.8j, -1.5 - 1.6j),
    ]
    fit = solve_hermitian(assemble_log(pairs, f))
    phi = FittedComplexField(tuple(pairs), fit.mu, "dirichlet")
    for p in pairs:
        got = phi.value(p.q) - phi.value(p.q_prime)
        want = f.value(p.q) - f.value(p.q_prime)
        assert abs(got - want) <= 1e-10 * max(abs(want), 1e-3)


def test_log_field_norm_closed_form():
    f = LogPairField([(1.0, PairedLogSource(-1j, -2j))])
    assert field_norm_sq_cx(f, "dirichlet") == pytest.approx(
        0.5 * math.log(9.0 / 8.0), abs=1e-13
    )


def test_nested_pole_set_monotone_energies(rng):
    f = RationalField([(1.0, -2j), (-0.4 + 0.2j, 2.0 - 3j)])
    poles = _random_poles(rng, 8)
    for assemble, setting in ((assemble_sigma, "sigma"), (assemble_dirichlet_cx, "dirichlet")):
        f_norm = field_norm_sq_cx(f, setting)
        prev_fit, prev_err = -np.inf, np.inf
        for N in (2, 4, 8):
            fit = solve_hermitian(assemble(poles[:N], f))
            assert fit.fit_energy >= prev_fit - 1e-12
            assert fit.fit_energy <= f_norm + 1e-12
            assert fit.error_energy <= prev_err + 1e-12
            assert fit.error_energy >= -1e-12
            prev_fit, prev_err = fit.fit_energy, fit.error_energy


def test_mixed_order_and_log_system():
    basis = (
        ComplexPole(-1j, order=1),
        ComplexPole(-1j, order=2),
        PairedLogSource(-1 - 1j, -1 - 2j),
    )
    from harmint.complexfit import _assemble

    ne = _assemble(basis, F_TARGET, "dirichlet")
    np.testing.assert_allclose(ne.T, ne.T.conj().T, atol=1e-13)
    fit = solve_hermitian(ne)
    resid = np.abs(ne.T @ fit.mu - ne.A)
    assert np.max(resid) <= 1e-12
