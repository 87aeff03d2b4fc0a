"""
# Description

Self-check suite of the discretization on a small grid.
Each check compares a computed quantity against an independent value
(brute-force quadrature, a dense eigensolver, an exact identity)
and reports the measured error next to its tolerance.

Two deliberate faults can be injected to confirm that the suite catches them:
`'flip_corner'` flips the sign of the $(1-\\sigma)$ corner term of the bending form,
and `'transpose_y10'` stores the transpose of $\\mathcal{Y}(1,0)$.


# Index

| | |
| --- | --- |
| `CheckResult`  | Outcome of one check |
| `run_checks()` | Run the whole suite |
| `all_passed()` | True if every check passed |
| `report()`     | Print the results |

---
"""


import numpy as np
from numpy.polynomial import polynomial as P
from .constants import *
from .model import PlateParameters, SolutionField, make_grid
from .basis import build_basis
from .quadrature import gauss_rule
from .assembly import (
    build_grams,
    assemble_system,
    assemble_oracle,
    bending_matrix,
    seminorm_matrix,
    transport_matrix,
    relative_difference,
)
from .solve import lu_solve, estimate_lambda1, dense_lambda1
from .analysis import lift_to_nonlinear, nonlinear_residual


INJECTIONS = ['flip_corner', 'transpose_y10']
"""Faults that `run_checks()` can inject."""

ORACLE_TOLERANCE = 1e-9
EXACT_TOLERANCE = 1e-12
QUADRATURE_TOLERANCE = 1e-13
LAMBDA_AGREEMENT = 1e-8
LIFT_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-8
COERCIVITY_SAMPLES = 100


class CheckResult:
    """Measured error of one check against its tolerance."""
    def __init__(
            self,
            name:str,
            measured:float,
            tolerance:float,
            detail:str='',
            ):
        self.name: str = name
        self.measured: float = float(measured)
        """Measured error. Checks pass when it does not exceed the tolerance."""
        self.tolerance: float = float(tolerance)
        self.detail: str = detail
        """Short description of what was compared."""

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.tolerance)

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        return f'{status}  {self.name:<22} measured {self.measured:.3e}  tolerance {self.tolerance:.0e}  {self.detail}'

    def __repr__(self):
        return f'CheckResult({self.name!r}, measured={self.measured:.3e}, tolerance={self.tolerance:.0e})'


def run_checks(
        n1:int=VERIFY_N1,
        m2:int=VERIFY_M2,
        params:PlateParameters=None,
        inject:str=None,
        verbose:bool=False,
        ) -> list:
    """Run every check on the grid with `n1` x-nodes and `m2` y macro-elements.

    `inject` may name one of the `INJECTIONS`.
    Returns the list of `CheckResult`.
    """
    if inject is not None and inject not in INJECTIONS:
        raise ValueError(f"Unknown injection '{inject}', expected one of {INJECTIONS}")
    params = params if params else PlateParameters()
    grid = make_grid(n1, m2, params.half_width)
    basis = build_basis(grid, verbose)
    grams = build_grams(basis)
    corner_sign = -1.0 if inject == 'flip_corner' else 1.0
    if inject == 'transpose_y10':
        grams.y[(1, 0)] = grams.y[(1, 0)].T.copy()
    results = [
        _check_basis(basis, grid),
        _check_quadrature(),
        _check_oracle(grams, basis, params, grid, corner_sign),
        _check_flow_block(grams, basis, params, grid),
        _check_skew_identity(grams, basis),
        _check_coercivity(grams, grid, params.sigma, corner_sign),
        _check_lambda1(grams, grid, params.sigma),
    ]
    results.extend(_check_lift(grams, basis, params, grid))
    if verbose:
        report(results)
    return results


def all_passed(results:list) -> bool:
    return all(result.passed for result in results)


def report(results:list) -> None:
    """Print one line per check and a final count."""
    for result in results:
        print(result)
    failed = sum(1 for result in results if not result.passed)
    if failed:
        print(f"{failed} of {len(results)} checks FAILED")
    else:
        print(f"All {len(results)} checks passed")


def _check_basis(basis, grid) -> CheckResult:
    """Kronecker property of both bases and the hinged conditions."""
    errors = []
    sine = basis.sine
    errors.append(np.max(np.abs(sine.values(grid.x_interior) - np.eye(grid.n1_bar))))
    for deriv in (0, 2):
        errors.append(np.max(np.abs(sine.values([0.0, np.pi], deriv))))
    lagrange = basis.lagrange
    errors.append(np.max(np.abs(lagrange.values(grid.y_nodes) - np.eye(grid.n2))))
    y = np.linspace(-grid.half_width, grid.half_width, 57)
    errors.append(np.max(np.abs(lagrange.values(y).sum(axis=1) - 1.0)))
    return CheckResult('basis', max(errors), EXACT_TOLERANCE, 'Kronecker, hinged ends, partition of unity')


def _check_quadrature() -> CheckResult:
    """Random polynomials of degree 2n-1 against their exact integrals over [-1,1]."""
    rng = np.random.default_rng(0)
    worst = 0.0
    for n in range(1, 9):
        rule = gauss_rule(n)
        coefficients = rng.uniform(-1.0, 1.0, 2 * n)
        antiderivative = P.polyint(coefficients)
        exact = P.polyval(1.0, antiderivative) - P.polyval(-1.0, antiderivative)
        approx = rule.weights @ P.polyval(rule.points, coefficients)
        worst = max(worst, abs(approx - exact) / max(1.0, abs(exact)))
    return CheckResult('quadrature_exactness', worst, QUADRATURE_TOLERANCE, 'Gauss rules of 1 to 8 points')


def _check_oracle(grams, basis, params, grid, corner_sign:float) -> CheckResult:
    """Tensor assembly against pointwise 2D quadrature, for several prestress and flow values."""
    worst = 0.0
    for mu in (-0.5, 0.0, 1.0):
        tensor = assemble_system(grams, params.replace(mu=mu, alpha=0.0), grid, corner_sign)
        oracle = assemble_oracle(basis, params.replace(mu=mu, alpha=0.0))
        for alpha in (0.0, -10.0, -125.0):
            worst = max(
                worst,
                relative_difference(tensor.at_alpha(alpha).matrix, oracle.at_alpha(alpha).matrix),
                relative_difference(tensor.rhs, oracle.rhs),
            )
    return CheckResult('assembly_vs_oracle', worst, ORACLE_TOLERANCE, 'mu in {-0.5, 0, 1}, alpha in {0, -10, -125}')


def _check_flow_block(grams, basis, params, grid) -> CheckResult:
    """$\\mathcal{A}(\\alpha) - \\mathcal{A}(0)$ against $-\\alpha$ times the transport block and the oracle."""
    alpha = -10.0
    system = assemble_system(grams, params.replace(alpha=alpha), grid)
    zero = assemble_system(grams, params.replace(alpha=0.0), grid)
    exact = np.max(np.abs((system.matrix - zero.matrix) + alpha * transport_matrix(grams))) / abs(alpha)
    oracle = assemble_oracle(basis, params)
    against_oracle = relative_difference(-transport_matrix(grams), oracle.flow)
    return CheckResult('flow_block', max(exact, against_oracle), ORACLE_TOLERANCE, 'alpha-difference of the system matrix')


def _check_skew_identity(grams, basis) -> CheckResult:
    """$\\mathcal{Y}(1,0) + \\mathcal{Y}(1,0)^T = B_y$, and its column sums vanish by the partition of unity."""
    Y10 = grams.Y(1, 0)
    boundary = np.max(np.abs(Y10 + Y10.T - grams.boundary_y))
    columns = np.max(np.abs(Y10.sum(axis=0)))
    ends = basis.lagrange.values([-basis.lagrange.half_width, basis.lagrange.half_width])
    rows = np.max(np.abs(Y10.sum(axis=1) - (ends[1] - ends[0])))
    return CheckResult('skew_identity', max(boundary, columns, rows), EXACT_TOLERANCE, 'boundary identity of the y transport Gram')


def _check_coercivity(grams, grid, sigma:float, corner_sign:float) -> CheckResult:
    """$a(u,u) \\geq (1-\\sigma)|u|_2^2$ for random fields and for $u = y \\sin x$."""
    K = bending_matrix(grams, sigma, corner_sign)
    H = seminorm_matrix(grams)
    rng = np.random.default_rng(0)
    samples = list(rng.uniform(-1.0, 1.0, (COERCIVITY_SAMPLES, grid.dof)))
    X, Y = np.meshgrid(grid.x_interior, grid.y_nodes)
    samples.append((np.sin(X) * Y).ravel())
    worst = 0.0
    for q in samples:
        energy = q @ K @ q
        deficit = (1.0 - sigma) * (q @ H @ q) - energy
        worst = max(worst, deficit / max(1.0, abs(energy)), -energy / max(1.0, abs(energy)))
    return CheckResult('coercivity', max(worst, 0.0), 1e-10, f'{COERCIVITY_SAMPLES} random fields and a twisted field')


def _check_lambda1(grams, grid, sigma:float) -> CheckResult:
    """Inverse power iteration against the dense generalized eigensolver."""
    estimate = estimate_lambda1(grams, sigma, grid)
    dense = dense_lambda1(grams, sigma)
    error = abs(estimate - dense) / abs(dense)
    if not estimate > 0:
        error = float('inf')
    return CheckResult('lambda1', error, LAMBDA_AGREEMENT, f'lambda1 = {estimate:.10g}')


def _check_lift(grams, basis, params, grid) -> list:
    """Lift of the solution at alpha = 0: bracket identity and nonlinear residual."""
    params = params.replace(alpha=0.0)
    system = assemble_system(grams, params, grid)
    report = lu_solve(system)
    lift = lift_to_nonlinear(SolutionField(report.solution, basis), params, grams)
    scale = max(1.0, abs(params.mu), abs(params.p_prestress))
    bracket = CheckResult('lift_identity', abs(lift.bracket_value - params.mu) / scale, LIFT_TOLERANCE, f'bracket = {lift.bracket_value:.12g}, mu = {params.mu}')
    residual = nonlinear_residual(lift.lifted_field, lift.g_const, params, grams)
    return [bracket, CheckResult('nonlinear_residual', residual, RESIDUAL_TOLERANCE, 'lifted field in the nonlinear weak form')]
