"""Dirichlet-energy normal equations: assembly, solve, energies."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from harmint.dirichlet import (
    SourceBasisSpec,
    assemble_dirichlet,
    energies,
    evaluate,
    field_norm_sq,
    solve,
)
from harmint.fields import PointSourceSum
from harmint.geometry import (
    HORIZONTAL_DIPOLE,
    MONOPOLE,
    RAW,
    SCALED,
    VERTICAL_DIPOLE,
    HalfSpacePoint,
    KernelKind,
    SourcePoint,
)
from harmint.oracle import finite_difference

SCALED_MONO = KernelKind(MONOPOLE, convention=SCALED)
RAW_MONO = KernelKind(MONOPOLE, convention=RAW)
VDIP = KernelKind(VERTICAL_DIPOLE, convention=SCALED)


def worked_example():
    """One scaled monopole at (0,0,-1) fitting a monopole field at (0,0,-2)."""
    basis = SourceBasisSpec(3, (((0.0, 0.0, -1.0), SCALED_MONO),))
    f = PointSourceSum(3, [(1.0, (0.0, 0.0, -2.0), SCALED_MONO)])
    return basis, f


def test_worked_example_assembly():
    basis, f = worked_example()
    ne = assemble_dirichlet(basis, f)
    assert ne.T[0, 0] == pytest.approx(1.0 / (16.0 * math.pi), rel=1e-14)
    assert ne.A[0] == pytest.approx(1.0 / (24.0 * math.pi), rel=1e-14)
    assert ne.f_norm_sq == pytest.approx(1.0 / (32.0 * math.pi), rel=1e-14)


def test_worked_example_solution_chain():
    basis, f = worked_example()
    ne = assemble_dirichlet(basis, f)
    fit = solve(ne)
    assert fit.mu[0] == pytest.approx(2.0 / 3.0, rel=1e-13)
    # phi at the origin: (2/3) d3 = 1/(6 pi)
    assert evaluate(basis, fit.mu, np.zeros(3)) == pytest.approx(
        1.0 / (6.0 * math.pi), rel=1e-13
    )
    # interpolation at the mirror node P1 = (0,0,1): phi(P1) = f(P1) = d3/3
    d3 = 1.0 / (4.0 * math.pi)
    assert evaluate(basis, fit.mu, np.array([0.0, 0.0, 1.0])) == pytest.approx(
        d3 / 3.0, rel=1e-13
    )
    assert fit.fit_energy == pytest.approx(1.0 / (36.0 * math.pi), rel=1e-12)
    assert fit.error_energy == pytest.approx(1.0 / (288.0 * math.pi), rel=1e-12)


def test_raw_r3_gram_goldens():
    basis = SourceBasisSpec(
        3, (((0.0, 0.0, -1.0), RAW_MONO), ((1.0, 0.0, -1.0), RAW_MONO))
    )
    f = PointSourceSum(3, [(1.0, (0.0, 0.0, -3.0), RAW_MONO)])
    ne = assemble_dirichlet(basis, f)
    # T[j,k] = 2 pi / |P_j - S_k|: diagonal 2 pi / 2 = pi, cross 2 pi / sqrt(5)
    assert ne.T[0, 0] == pytest.approx(math.pi, rel=1e-13)
    assert ne.T[0, 1] == pytest.approx(2.0 * math.pi / math.sqrt(5.0), rel=1e-13)
    np.testing.assert_allclose(ne.T, ne.T.T, rtol=1e-14)


def test_identity_system():
    from harmint._solve import solve_spd

    mu, diag = solve_spd(np.eye(3), np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(mu, [1.0, 2.0, 3.0])
    assert not diag.ridge_used


def test_zero_mu_energies():
    basis, f = worked_example()
    ne = assemble_dirichlet(basis, f)
    fit_e, err_e = energies(basis, np.zeros(1), ne, f)
    assert fit_e == 0.0
    assert err_e == pytest.approx(ne.f_norm_sq, rel=1e-14)


def test_evaluate_zero_mu_and_vectorized():
    basis, _ = worked_example()
    assert evaluate(basis, np.zeros(1), np.array([0.3, 0.1, 0.5])) == 0.0
    pts = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    vals = evaluate(basis, np.array([1.0]), pts)
    assert vals.shape == (2,)


def test_near_duplicate_sources_use_ridge():
    basis = SourceBasisSpec(
        3,
        (
            ((0.0, 0.0, -1.0), SCALED_MONO),
            ((1e-8, 0.0, -1.0), SCALED_MONO),
        ),
    )
    f = PointSourceSum(3, [(1.0, (0.0, 0.0, -2.0), SCALED_MONO)])
    fit = solve(assemble_dirichlet(basis, f))
    assert fit.diagnostics.ridge_used or fit.diagnostics.condition_estimate > 1e12
    assert np.all(np.isfinite(fit.mu))


def test_coincident_entries_rejected():
    with pytest.raises(ValueError):
        SourceBasisSpec(
            3, (((0.0, 0.0, -1.0), SCALED_MONO), ((0.0, 0.0, -1.0), SCALED_MONO))
        )


def test_mixed_convention_rejected():
    with pytest.raises(ValueError):
        SourceBasisSpec(
            3, (((0.0, 0.0, -1.0), SCALED_MONO), ((1.0, 0.0, -1.0), RAW_MONO))
        )


def test_from_nodes_reflects():
    basis = SourceBasisSpec.from_nodes(
        3, [np.array([0.5, -0.5, 2.0])], [SCALED_MONO]
    )
    src, _ = basis.entries[0]
    assert src.w == -2.0
    np.testing.assert_allclose(src.t, [0.5, -0.5])
    with pytest.raises(ValueError):
        SourceBasisSpec.from_nodes(3, [HalfSpacePoint([0.0, 0.0], 0.0)], [SCALED_MONO])


def test_dipole_rhs_rows_match_field_derivatives():
    basis = SourceBasisSpec(
        3,
        (
            ((0.0, 0.0, -1.0), VDIP),
            ((0.5, 0.0, -1.0), KernelKind(HORIZONTAL_DIPOLE, axis=1)),
        ),
    )
    f = PointSourceSum(3, [(1.0, (0.3, -0.2, -2.0), SCALED_MONO)])
    ne = assemble_dirichlet(basis, f)
    # vertical-dipole row: (1/2) df/dh at P = (0,0,1)
    dh = finite_difference(f.value, np.array([0.0, 0.0, 1.0]), axis=2)
    assert ne.A[0] == pytest.approx(0.5 * dh, rel=1e-8)
    # horizontal row: (1/2) df/dx1 at P = (0.5,0,1)
    dx = finite_difference(f.value, np.array([0.5, 0.0, 1.0]), axis=0)
    assert ne.A[1] == pytest.approx(0.5 * dx, rel=1e-8)


def _random_basis(rng, n, N, kind=SCALED_MONO, spread=3.0, depth=(0.6, 1.8)):
    pts = set()
    entries = []
    while len(entries) < N:
        t = tuple(np.round(rng.uniform(-spread, spread, size=n - 1), 6))
        if t in pts:
            continue
        pts.add(t)
        entries.append((SourcePoint(np.array(t), -float(rng.uniform(*depth))), kind))
    return SourceBasisSpec(n, tuple(entries))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_gram_positive_definite(n, rng):
    for _ in range(5):
        basis = _random_basis(rng, n, int(rng.integers(2, 13)))
        f = PointSourceSum(n, [(1.0, (0.0,) * (n - 1) + (-2.0,), SCALED_MONO)])
        ne = assemble_dirichlet(basis, f)
        np.testing.assert_allclose(ne.T, ne.T.T, rtol=1e-12, atol=1e-18)
        assert np.linalg.eigvalsh(ne.T).min() > 0


def test_interpolation_and_residual_orthogonality(rng):
    for _ in range(10):
        n = int(rng.choice([3, 4]))
        basis = _random_basis(rng, n, 6)
        f = PointSourceSum(
            n,
            [
                (float(rng.normal()), (0.5,) + (0.0,) * (n - 2) + (-2.0,), SCALED_MONO),
                (float(rng.normal()), (-1.0,) + (0.0,) * (n - 2) + (-2.5,), VDIP),
            ],
        )
        ne = assemble_dirichlet(basis, f)
        fit = solve(ne)
        if fit.diagnostics.condition_estimate > 1e8:
            continue
        scale = max(np.max(np.abs(ne.A / ne.replication_constants)), 1e-300)
        assert np.max(np.abs(fit.node_residuals)) <= 1e-9 * scale
        # phi(P_k) = f(P_k) at the monopole rows
        P = basis.mirror_nodes()
        phi_vals = evaluate(basis, fit.mu, P)
        f_vals = f.value_many(P)
        np.testing.assert_allclose(phi_vals, f_vals, rtol=1e-8, atol=1e-12 * scale)


def test_nested_basis_monotone_norm_chain(rng):
    n = 3
    f = PointSourceSum(
        n,
        [
            (1.0, (0.0, 0.0, -2.0), SCALED_MONO),
            (-0.4, (1.0, 1.0, -2.5), SCALED_MONO),
        ],
    )
    f_norm = field_norm_sq(f)
    big = _random_basis(rng, n, 9)
    prev_fit = -np.inf
    prev_phi = np.inf
    for N in (3, 6, 9):
        sub = SourceBasisSpec(n, big.entries[:N])
        fit = solve(assemble_dirichlet(sub, f))
        assert fit.fit_energy >= prev_fit - 1e-12
        assert fit.fit_energy <= f_norm + 1e-12
        assert fit.error_energy <= prev_phi + 1e-12
        assert fit.error_energy >= -1e-12
        prev_fit = fit.fit_energy
        prev_phi = fit.error_energy


@given(
    st.lists(
        st.tuples(
            st.floats(-2.0, 2.0),
            st.floats(-2.0, 2.0),
            st.floats(-2.0, -0.5),
        ),
        min_size=1,
        max_size=8,
        unique=True,
    )
)
def test_error_energy_nonnegative_property(coords):
    entries = tuple((np.array(c), SCALED_MONO) for c in coords)
    try:
        basis = SourceBasisSpec(3, entries)
    except ValueError:
        return
    f = PointSourceSum(3, [(1.0, (0.3, -0.1, -3.0), SCALED_MONO)])
    fit = solve(assemble_dirichlet(basis, f))
    if fit.diagnostics.condition_estimate > 1e10:
        return
    assert fit.error_energy >= -1e-10
