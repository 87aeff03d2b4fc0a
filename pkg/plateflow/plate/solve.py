"""
# Description

Dense solvers of the assembled system, and the first buckling eigenvalue.

The system matrix is nonsymmetric as soon as $\\alpha \\neq 0$,
so it is factorized with partial-pivoting LU.
Near-singular matrices are not fatal: the factorization is reported
through `NearSingular`, which carries the `SolveReport` so that callers
such as the parameter sweep can flag the record and continue.

The first two eigenvalues of $a(u,v) = \\lambda (u_x, v_x)$ classify the prestress $P$:
the plate is strongly prestressed for $0 < P < \\lambda_1$
and weakly prestressed for $\\lambda_1 \\leq P < \\lambda_2$.


# Index

| | |
| --- | --- |
| `SolveReport`       | Solution and diagnostics of one linear solve |
| `NearSingular`      | Raised when the smallest LU pivot is negligible |
| `NotConverged`      | Raised when an iteration does not converge |
| `lu_solve()`        | Solve a `LinearSystem` by LU with partial pivoting |
| `estimate_lambda1()`| First eigenvalue by inverse power iteration |
| `dense_lambda1()`   | First eigenvalue by a dense generalized eigensolver |
| `dense_lambda2()`   | Second eigenvalue by a dense generalized eigensolver |
| `prestress_regime()`| Regime of the prestress between the first two eigenvalues |
| `linear()`          | Build, assemble and solve in one call |

---
"""


import time
import warnings
import numpy as np
import scipy.linalg
from .constants import *
from .model import GridSpec, PlateParameters, SolutionField, make_grid
from .basis import build_basis
from .quadrature import gauss_rule
from .assembly import GramTable, LinearSystem, build_grams, assemble_system, bending_matrix, prestress_matrix


class SolveReport:
    """Solution vector and diagnostics of an LU solve."""
    def __init__(
            self,
            solution,
            residual_norm:float,
            pivot_min:float,
            condition_estimate:float,
            runtime:float=None,
            ):
        self.solution = solution
        """Solution vector $q$."""
        self.residual_norm: float = residual_norm
        """Relative residual $\\|\\mathcal{A}q - b\\| / \\|b\\|$, or the absolute one when $b = 0$."""
        self.pivot_min: float = pivot_min
        """Smallest absolute pivot of the LU factorization."""
        self.condition_estimate: float = condition_estimate
        """Estimate of the 1-norm condition number of $\\mathcal{A}$."""
        self.runtime: float = runtime
        """Time taken by the solve, in seconds."""

    @property
    def finite(self) -> bool:
        """True if every entry of the solution is finite."""
        return bool(np.all(np.isfinite(self.solution)))

    def summary(self) -> dict:
        return {
            'residual_norm': self.residual_norm,
            'pivot_min': self.pivot_min,
            'condition_estimate': self.condition_estimate,
            'runtime': self.runtime,
        }

    def __repr__(self):
        return f'SolveReport(residual_norm={self.residual_norm:.3e}, pivot_min={self.pivot_min:.3e}, condition_estimate={self.condition_estimate:.3e})'


class NearSingular(RuntimeError):
    """The system matrix is numerically singular. The `report` of the attempted solve is attached."""
    def __init__(self, message:str, report:SolveReport):
        super().__init__(message)
        self.report = report
        """`SolveReport` of the attempted solve, with a possibly non-finite solution."""


class NotConverged(RuntimeError):
    """An iterative procedure reached its iteration limit."""
    pass


def lu_solve(
        system:LinearSystem,
        pivot_tolerance:float=PIVOT_TOLERANCE,
        ) -> SolveReport:
    """Solve the `system` by LU factorization with partial pivoting.

    Raises `NearSingular` when the smallest pivot falls below
    `pivot_tolerance` times the largest entry of the matrix,
    with the `SolveReport` attached to the exception.
    """
    A = np.asarray(system.matrix, dtype=float)
    b = np.asarray(system.rhs, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != b.size:
        raise ValueError(f"Matrix of shape {A.shape} does not match a right-hand side of size {b.size}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise ValueError("The system contains non-finite entries")
    time_start = time.time()
    with warnings.catch_warnings():
        # Exactly singular matrices are reported through the pivots instead
        warnings.simplefilter('ignore', scipy.linalg.LinAlgWarning)
        warnings.simplefilter('ignore', RuntimeWarning)
        lu, piv = scipy.linalg.lu_factor(A)
        x = scipy.linalg.lu_solve((lu, piv), b)
    pivot_min = float(np.min(np.abs(np.diag(lu))))
    scale = float(np.max(np.abs(A)))
    with np.errstate(all='ignore'):
        residual = float(np.linalg.norm(A @ x - b) / max(np.linalg.norm(b), np.finfo(float).tiny))
    report = SolveReport(
        solution=x,
        residual_norm=residual,
        pivot_min=pivot_min,
        condition_estimate=_condition_estimate(A, lu, pivot_min),
        runtime=time.time() - time_start,
    )
    if not pivot_min > pivot_tolerance * scale:
        raise NearSingular(f"Smallest LU pivot {pivot_min:.3e} is below {pivot_tolerance:.0e} times max|A| = {scale:.3e}", report)
    return report


def estimate_lambda1(
        grams:GramTable,
        sigma:float,
        grid:GridSpec,
        tol:float=LAMBDA_TOLERANCE,
        maxiter:int=LAMBDA_MAXITER,
        verbose:bool=False,
        ) -> float:
    """First eigenvalue of $K v = \\lambda M_1 v$, with $K$ the bending block and $M_1$ the $(u_x, v_x)$ block.

    Inverse power iteration from a constant start, normalized in the $M_1$ inner product,
    with the Rayleigh quotient as estimate.
    Stops when its relative change is below `tol`;
    raises `NotConverged` after `maxiter` iterations.
    """
    if (grams.n1_bar, grams.n2) != (grid.n1_bar, grid.n2):
        raise ValueError(f"Gram sizes ({grams.n1_bar}, {grams.n2}) do not match {grid}")
    K = bending_matrix(grams, sigma)
    M = prestress_matrix(grams)
    factor = scipy.linalg.cho_factor(K)
    v = np.ones(grid.dof)
    v /= np.sqrt(v @ M @ v)
    eigenvalue = float(v @ K @ v)
    for iteration in range(1, maxiter + 1):
        w = scipy.linalg.cho_solve(factor, M @ v)
        v = w / np.sqrt(w @ M @ w)
        previous = eigenvalue
        eigenvalue = float(v @ K @ v)
        if abs(eigenvalue - previous) < tol * abs(eigenvalue):
            if verbose:
                print(f"First eigenvalue {eigenvalue:.10g} converged in {iteration} iterations")
            return eigenvalue
    raise NotConverged(f"Inverse power iteration did not converge in {maxiter} iterations, last estimate {eigenvalue}")


def dense_lambda1(grams:GramTable, sigma:float) -> float:
    """First eigenvalue of $K v = \\lambda M_1 v$ from a dense symmetric generalized eigensolver."""
    K = bending_matrix(grams, sigma)
    M = prestress_matrix(grams)
    return float(scipy.linalg.eigh(K, M, eigvals_only=True, subset_by_index=[0, 0])[0])


def dense_lambda2(grams:GramTable, sigma:float) -> float:
    """Second eigenvalue of $K v = \\lambda M_1 v$, from the same dense eigensolver as `dense_lambda1()`."""
    K = bending_matrix(grams, sigma)
    M = prestress_matrix(grams)
    return float(scipy.linalg.eigh(K, M, eigvals_only=True, subset_by_index=[1, 1])[0])


def prestress_regime(
        p_prestress:float,
        lambda1:float,
        lambda2:float,
        ) -> str:
    """Regime of the prestress `p_prestress` with respect to the first two eigenvalues.

    Returns `'strong'` for $0 < P < \\lambda_1$, `'weak'` for $\\lambda_1 \\leq P < \\lambda_2$,
    `'none'` for $P \\leq 0$, and `'beyond'` for $P \\geq \\lambda_2$.
    """
    if not 0.0 < lambda1 <= lambda2:
        raise ValueError(f"Eigenvalues must satisfy 0 < lambda1 <= lambda2, got {lambda1} and {lambda2}")
    if p_prestress <= 0.0:
        return 'none'
    if p_prestress < lambda1:
        return 'strong'
    if p_prestress < lambda2:
        return 'weak'
    return 'beyond'


def linear(
        params:PlateParameters=None,
        grid:GridSpec=None,
        quad_order:int=QUAD_ORDER,
        verbose:bool=False,
        ) -> tuple:
    """Solve the linearized problem for the given `params` and `grid`.

    Defaults are taken from `plateflow.plate.constants`.
    Returns the `SolutionField` and the `SolveReport`.
    Raises `NearSingular` like `lu_solve()`.
    """
    params = params if params else PlateParameters()
    grid = grid if grid else make_grid(N1, M2, params.half_width)
    if grid.half_width != params.half_width:
        raise ValueError(f"Grid half-width {grid.half_width} differs from the parameter half-width {params.half_width}")
    basis = build_basis(grid, verbose)
    grams = build_grams(basis, gauss_rule(quad_order))
    system = assemble_system(grams, params, grid)
    report = lu_solve(system)
    if verbose:
        print(f"Solved {grid.dof} degrees of freedom in {report.runtime:.3f} s, relative residual {report.residual_norm:.3e}")
    field = SolutionField(report.solution, basis, comment=f'alpha={params.alpha}')
    return field, report


def _condition_estimate(A, lu, pivot_min:float) -> float:
    """1-norm condition estimate from the LU factors."""
    if not pivot_min > 0 or not np.all(np.isfinite(lu)):
        return float('inf')
    gecon, = scipy.linalg.get_lapack_funcs(('gecon',), (lu,))
    rcond, info = gecon(lu, np.linalg.norm(A, 1), norm='1')
    if info != 0 or not rcond > 0:
        return float('inf')
    return float(1.0 / rcond)
