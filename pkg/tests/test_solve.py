import numpy as np
from pytest import approx
import plateflow.plate as pl
from plateflow.plate.assembly import LinearSystem, build_grams, assemble_system
from plateflow.plate.solve import lu_solve, estimate_lambda1, dense_lambda1, dense_lambda2, prestress_regime, linear, NearSingular, NotConverged


def dense_system(matrix, rhs):
    """Wrap a plain matrix as a `LinearSystem` at alpha = 0."""
    matrix = np.asarray(matrix, dtype=float)
    return LinearSystem(matrix, np.zeros_like(matrix), np.asarray(rhs, dtype=float), pl.PlateParameters(), pl.make_grid(3, 1))


def test_small_systems():
    report = lu_solve(dense_system(np.eye(3), [1.0, 0.0, 0.0]))
    assert np.all(report.solution == [1.0, 0.0, 0.0])
    assert report.residual_norm == 0.0
    assert report.finite
    report = lu_solve(dense_system([[2.0, 1.0], [1.0, 3.0]], [3.0, 4.0]))
    assert report.solution == approx([1.0, 1.0], abs=1e-14)
    assert report.residual_norm < 1e-14
    # The 1-norm condition number is 3.2, and the estimate never exceeds it
    assert 1.0 <= report.condition_estimate <= 3.2 + 1e-12
    assert report.runtime >= 0.0


def test_random_system():
    rng = np.random.default_rng(5)
    n = 40
    M = rng.uniform(-1, 1, (n, n))
    A = M @ M.T + n * np.eye(n)
    b = rng.uniform(-1, 1, n)
    report = lu_solve(dense_system(A, b))
    assert report.residual_norm < 1e-12
    # Linear in the right-hand side
    scaled = lu_solve(dense_system(A, 7.0 * b))
    assert np.max(np.abs(scaled.solution - 7.0 * report.solution)) < 1e-12 * np.max(np.abs(scaled.solution))


def test_near_singular():
    try:
        lu_solve(dense_system([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0]))
        assert False
    except NearSingular as error:
        assert error.report.pivot_min == 0.0
        assert error.report.condition_estimate == float('inf')
    try:
        lu_solve(dense_system([[1.0, 0.0], [0.0, 1e-20]], [1.0, 1.0]))
        assert False
    except NearSingular as error:
        assert error.report.pivot_min == 1e-20
    try:
        lu_solve(dense_system(np.eye(2), [1.0, 2.0, 3.0]))
        assert False
    except ValueError:
        assert True
    try:
        lu_solve(dense_system([[1.0, np.nan], [0.0, 1.0]], [1.0, 1.0]))
        assert False
    except ValueError:
        assert True


def test_plate_system():
    grid = pl.make_grid(8, 2)
    basis = pl.basis.build_basis(grid, verbose=False)
    grams = build_grams(basis)
    params = pl.PlateParameters()
    report = lu_solve(assemble_system(grams, params, grid))
    assert report.residual_norm < 1e-8
    assert np.all(np.isfinite(report.solution))
    # No forcing, no displacement
    report = lu_solve(assemble_system(grams, params.replace(g_const=0.0), grid))
    assert np.all(report.solution == 0.0)
    assert report.residual_norm == 0.0
    # The solution scales with the forcing
    one = lu_solve(assemble_system(grams, params.replace(alpha=-125.0), grid))
    two = lu_solve(assemble_system(grams, params.replace(alpha=-125.0, g_const=2.0), grid))
    assert np.max(np.abs(two.solution - 2.0 * one.solution)) < 1e-12 * np.max(np.abs(two.solution))


def test_linear():
    grid = pl.make_grid(8, 2)
    field, report = linear(pl.PlateParameters(alpha=-10.0), grid)
    assert field.grid == grid
    assert field.comment == 'alpha=-10.0'
    assert report.residual_norm < 1e-8
    try:
        linear(pl.PlateParameters(half_width=0.3), grid)
        assert False
    except ValueError:
        assert True


def test_lambda1():
    sigma = 0.2
    grid = pl.make_grid(6, 2)
    grams = build_grams(pl.basis.build_basis(grid, verbose=False))
    estimate = estimate_lambda1(grams, sigma, grid)
    assert estimate > 0
    assert estimate == approx(dense_lambda1(grams, sigma), rel=1e-8)
    # Nested refinement can only lower the first eigenvalue
    fine_grid = pl.make_grid(10, 4)
    fine = estimate_lambda1(build_grams(pl.basis.build_basis(fine_grid, verbose=False)), sigma, fine_grid)
    assert fine <= estimate * (1 + 1e-6)
    try:
        estimate_lambda1(grams, sigma, grid, tol=0.0, maxiter=3)
        assert False
    except NotConverged:
        assert True
    try:
        estimate_lambda1(grams, sigma, fine_grid)
        assert False
    except ValueError:
        assert True


def test_prestress_regime():
    sigma = 0.2
    grams = build_grams(pl.basis.build_basis(pl.make_grid(8, 2), verbose=False))
    lambda1 = dense_lambda1(grams, sigma)
    lambda2 = dense_lambda2(grams, sigma)
    assert 0 < lambda1 < lambda2
    assert prestress_regime(-1.0, lambda1, lambda2) == 'none'
    assert prestress_regime(0.0, lambda1, lambda2) == 'none'
    assert prestress_regime(0.5 * lambda1, lambda1, lambda2) == 'strong'
    assert prestress_regime(lambda1, lambda1, lambda2) == 'weak'
    assert prestress_regime(0.5 * (lambda1 + lambda2), lambda1, lambda2) == 'weak'
    assert prestress_regime(lambda2, lambda1, lambda2) == 'beyond'
    assert prestress_regime(2.0 * lambda2, lambda1, lambda2) == 'beyond'
    try:
        prestress_regime(1.0, lambda2, lambda1)
        assert False
    except ValueError:
        assert True
