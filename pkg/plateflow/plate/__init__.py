"""
# Plate

The Plate module solves the stationary problem of a thin rectangular plate
$\\Omega = (0,\\pi)\\times(-l,l)$, hinged on its short edges $x = 0, \\pi$
and free on its long edges $y = \\pm l$, under a constant load and a flow of speed parameter $\\alpha$.
The linearized weak problem reads

$$
a(U,v) + \\mu (U_x, v_x) - \\alpha (U_y, v) = (G, v),
$$

where $a(\\cdot,\\cdot)$ is the plate bending form with Poisson ratio $\\sigma$.
It is discretized with a separable basis,
interpolatory sines along x and continuous cubic Lagrange elements along y,
so that the system matrix is a sum of Kronecker products of one-dimensional Gram matrices.

Solutions are classified by their modality, the number of sign regions along the midline $y = 0$,
and can be lifted to solutions of the nonlinear problem with the nonlocal
stretching term $[S\\|u_x\\|_0^2 - P]$ in place of $\\mu$.

All quantities are dimensionless.


# Index

| | |
| --- | --- |
| `plateflow.plate.constants`  | Default physical and numerical constants |
| `plateflow.plate.model`      | `PlateParameters`, `GridSpec` and `SolutionField` |
| `plateflow.plate.basis`      | Sine and cubic Lagrange bases |
| `plateflow.plate.quadrature` | Gauss-Legendre rules |
| `plateflow.plate.assembly`   | Gram matrices and system assembly |
| `plateflow.plate.solve`      | LU solver and first buckling eigenvalue |
| `plateflow.plate.analysis`   | Norms, modality and the nonlinear lift |
| `plateflow.plate.sweep`      | Continuation over the flow parameter |
| `plateflow.plate.verify`     | Self-check suite |
| `plateflow.plate.export`     | CSV and VTK files |
| `plateflow.plate.plot`       | Plotting functions |
| `plateflow.plate.cli`        | Command-line interface |


# Examples

## Solving the linearized problem

```python
import plateflow.plate as pl
params = pl.PlateParameters(alpha=-125)
grid = pl.make_grid(n1=14, m2=4)
field, report = pl.solve.linear(params, grid)
report.residual_norm
pl.analysis.count_zeros(field).modality_m
pl.plot.field(field)
```

The same can be done step by step, keeping the Gram tables for later use:

```python
basis = pl.basis.build_basis(grid)
grams = pl.assembly.build_grams(basis)
system = pl.assembly.assemble_system(grams, params, grid)
report = pl.solve.lu_solve(system)
field = pl.SolutionField(report.solution, basis)
pl.analysis.norms(field, grams, params.sigma)
```

## Lifting to the nonlinear problem

With $\\mu > -P$ and $S > 0$, a linearized solution scales into a solution of the nonlinear problem:

```python
lift = pl.analysis.lift_to_nonlinear(field, params, grams)
lift.bracket_value  # equal to params.mu
pl.analysis.nonlinear_residual(lift.lifted_field, lift.g_const, params, grams)
```

## Sweeping over the flow parameter

```python
config = pl.sweep.SweepConfig(alpha_end=-3000, alpha_step=10)
records = pl.sweep.run_sweep(config, verbose=True)
pl.sweep.detect_thresholds(records)
pl.export.write_sweep_csv(records, 'sweep.csv')
```

The whole workflow is also available from the terminal, see `plateflow.plate.cli`.

"""


from .constants import *
from .model import PlateParameters, GridSpec, SolutionField, make_grid, dof_index, dof_pair
from . import quadrature
from . import basis
from . import assembly
from . import solve
from . import analysis
from . import sweep
from . import verify
from . import export
from . import plot
from . import cli
