"""
# Description

Shared data model of the plate solver:
the physical parameters, the tensor grid over the plate
and the container of a discrete solution.

The plate occupies $\\Omega = (0,\\pi)\\times(-l,l)$,
hinged on $\\Gamma_D = \\{0,\\pi\\}\\times[-l,l]$ and free on $\\Gamma_N = [0,\\pi]\\times\\{-l,l\\}$.
Only interior x-nodes carry degrees of freedom, since the sine basis
vanishes on $\\Gamma_D$ by construction.
Public indices follow the 1-based numbering of the discretization,
$t = (j-1)\\bar{N}_1 + i$ with $i=1..\\bar{N}_1$ and $j=1..N_2$.


# Index

| | |
| --- | --- |
| `PlateParameters` | Physical and model constants |
| `GridSpec`        | Tensor grid node layout |
| `SolutionField`   | Coefficient vector of a discrete field, with evaluation |
| `make_grid()`     | Build a validated `GridSpec` |
| `dof_index()`     | Flat index of the node pair (i, j) |
| `dof_pair()`      | Node pair (i, j) of a flat index |

---
"""


import numpy as np
from copy import deepcopy
from .constants import *
from plateflow._version import __version__


class PlateParameters:
    """Physical and model constants of the plate problem.

    Dimensionless unless stated otherwise.
    Treat instances as read-only; use `PlateParameters.replace()` to derive new ones.
    """
    def __init__(
            self,
            sigma:float=SIGMA,
            mu:float=MU,
            alpha:float=ALPHA,
            g_const:float=G_CONST,
            p_prestress:float=P_PRESTRESS,
            s_stretch:float=S_STRETCH,
            half_width:float=HALF_WIDTH,
            ):
        self.sigma: float = float(sigma)
        """Poisson ratio, in the open interval (0,1)."""
        self.mu: float = float(mu)
        """Linearized prestress coefficient, standing for $S\\int u_x^2 - P$."""
        self.alpha: float = float(alpha)
        """Flow-speed parameter multiplying the transport term $(u_y, v)$."""
        self.g_const: float = float(g_const)
        """Constant forcing amplitude $G$, positive when used as the linearized forcing."""
        self.p_prestress: float = float(p_prestress)
        """Prestress parameter $P$."""
        self.s_stretch: float = float(s_stretch)
        """Stretching stiffness $S \\geq 0$."""
        self.half_width: float = float(half_width)
        """Plate half-width $l$, in length units."""
        self.validate()

    def validate(self):
        """Raise a `ValueError` naming the first parameter out of range."""
        values = [self.sigma, self.mu, self.alpha, self.g_const, self.p_prestress, self.s_stretch, self.half_width]
        if not all(np.isfinite(values)):
            raise ValueError(f"PlateParameters must be finite, got {self.summary()}")
        if not 0.0 < self.sigma < 1.0:
            raise ValueError(f"sigma must be in (0,1), got {self.sigma}")
        if self.half_width <= 0.0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.s_stretch < 0.0:
            raise ValueError(f"s_stretch must be non-negative, got {self.s_stretch}")
        return self

    def replace(self, **changes):
        """Returns a validated copy with the given fields changed, e.g. `params.replace(alpha=-125)`."""
        new = deepcopy(self)
        for key, value in changes.items():
            if not hasattr(new, key):
                raise AttributeError(f"PlateParameters has no field '{key}'")
            setattr(new, key, float(value))
        return new.validate()

    def summary(self) -> dict:
        return {
            'sigma': self.sigma,
            'mu': self.mu,
            'alpha': self.alpha,
            'g_const': self.g_const,
            'p_prestress': self.p_prestress,
            's_stretch': self.s_stretch,
            'half_width': self.half_width,
        }

    def __repr__(self):
        fields = ', '.join(f'{k}={v!r}' for k, v in self.summary().items())
        return f'PlateParameters({fields})'


class GridSpec:
    """Node layout of the tensor grid.

    Use `make_grid()` to build it with validation.
    """
    def __init__(
            self,
            n1:int,
            m2:int,
            half_width:float,
            ):
        self.n1: int = int(n1)
        """Number of x-nodes, uniform on $[0,\\pi]$, both hinged ends included."""
        self.m2: int = int(m2)
        """Number of cubic macro-elements along y."""
        self.half_width: float = float(half_width)
        """Half-width $l$ of the plate."""
        self.n1_bar: int = self.n1 - 2
        """Number of interior x-nodes, equal to the number of sine modes."""
        self.n2: int = 3 * self.m2 + 1
        """Number of y-nodes."""
        self.dof: int = self.n1_bar * self.n2
        """Total degrees of freedom."""
        self.x_nodes = np.linspace(0.0, np.pi, self.n1)
        """All x-nodes $x_1..x_{N_1}$."""
        self.x_interior = self.x_nodes[1:-1]
        """Interior x-nodes $x_2..x_{N_1-1}$, one per degree of freedom along x."""
        self.y_nodes = np.linspace(-self.half_width, self.half_width, self.n2)
        """All y-nodes $y_1..y_{N_2}$."""
        self.y_edges = self.y_nodes[::3]
        """Boundaries of the y macro-elements, $m_2 + 1$ values."""

    def node_coordinates(self):
        """Returns the (x, y) arrays of every degree of freedom, in flat index order."""
        X, Y = np.meshgrid(self.x_interior, self.y_nodes)
        return X.ravel(), Y.ravel()

    def summary(self) -> dict:
        return {
            'n1': self.n1,
            'm2': self.m2,
            'half_width': self.half_width,
            'n1_bar': self.n1_bar,
            'n2': self.n2,
            'dof': self.dof,
        }

    def __eq__(self, other):
        if not isinstance(other, GridSpec):
            return NotImplemented
        return (self.n1, self.m2, self.half_width) == (other.n1, other.m2, other.half_width)

    def __hash__(self):
        return hash((self.n1, self.m2, self.half_width))

    def __repr__(self):
        return f'GridSpec(n1={self.n1}, m2={self.m2}, half_width={self.half_width!r})'


def make_grid(
        n1:int,
        m2:int,
        l:float=HALF_WIDTH,
        ) -> GridSpec:
    """Build the tensor grid with `n1` x-nodes on $[0,\\pi]$ and `m2` y macro-elements on $[-l,l]$.

    There are `n1 - 2` interior x-nodes and `3*m2 + 1` y-nodes,
    so `dof = (n1 - 2)(3 m2 + 1)`.
    Example:
    ```python
    grid = make_grid(8, 2, 0.2)
    grid.dof  # 42
    ```
    """
    if int(n1) != n1 or n1 < 3:
        raise ValueError(f"n1 must be an integer >= 3 so that interior x-nodes exist, got {n1}")
    if int(m2) != m2 or m2 < 1:
        raise ValueError(f"m2 must be an integer >= 1, got {m2}")
    if not l > 0:
        raise ValueError(f"The half-width l must be positive, got {l}")
    return GridSpec(int(n1), int(m2), float(l))


def dof_index(i:int, j:int, grid:GridSpec) -> int:
    """Flat 1-based index $t = (j-1)\\bar{N}_1 + i$ of interior x-node `i` and y-node `j`."""
    if not 1 <= i <= grid.n1_bar:
        raise IndexError(f"Interior x-index i must be in 1..{grid.n1_bar}, got {i}")
    if not 1 <= j <= grid.n2:
        raise IndexError(f"y-index j must be in 1..{grid.n2}, got {j}")
    return (j - 1) * grid.n1_bar + i


def dof_pair(t:int, grid:GridSpec) -> tuple:
    """Inverse of `dof_index()`, returns the 1-based pair (i, j) of the flat index `t`."""
    if not 1 <= t <= grid.dof:
        raise IndexError(f"Flat index t must be in 1..{grid.dof}, got {t}")
    j, i = divmod(t - 1, grid.n1_bar)
    return i + 1, j + 1


class SolutionField:
    """Discrete field $u_h = \\sum_t q_t \\Psi_i(x) \\Phi_j(y)$ over the plate.

    The coefficient $q_t$ is the value of the field at the node of index $t$,
    and the field vanishes on the hinged edges.
    """
    def __init__(
            self,
            coefficients,
            basis,
            comment:str=None,
            ):
        coefficients = np.asarray(coefficients, dtype=float).ravel()
        if coefficients.size != basis.grid.dof:
            raise ValueError(f"Expected {basis.grid.dof} coefficients for {basis.grid}, got {coefficients.size}")
        self.version = __version__
        """Version of the package used to generate the data."""
        self.comment: str = comment
        """Custom comment for the field."""
        self.coefficients = coefficients
        """Real coefficient vector of length `grid.dof`, in flat index order."""
        self.basis = basis
        """`plateflow.plate.basis.BasisSet` the coefficients refer to."""

    @property
    def grid(self) -> GridSpec:
        return self.basis.grid

    def nodal_values(self):
        """Coefficients reshaped as an array of shape `(n2, n1_bar)`, rows along y."""
        return self.coefficients.reshape(self.grid.n2, self.grid.n1_bar)

    def evaluate(self, x, y, dx:int=0, dy:int=0):
        """Value of the field, or of its derivative $\\partial_x^{dx}\\partial_y^{dy}$, at the points (x, y).

        `x` and `y` are broadcast against each other; scalars return a float.
        Second y-derivatives are element-wise, see `plateflow.plate.basis.LagrangeBasisY`.
        """
        xb, yb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        Px = self.basis.sine.values(xb.ravel(), dx)
        Py = self.basis.lagrange.values(yb.ravel(), dy)
        values = np.einsum('pi,ji,pj->p', Px, self.nodal_values(), Py)
        if xb.ndim == 0:
            return float(values[0])
        return values.reshape(xb.shape)

    def lattice(self, nx:int=EXPORT_NX, ny:int=EXPORT_NY, dx:int=0, dy:int=0):
        """Evaluate the field on a uniform `nx` by `ny` lattice covering the closed plate.

        Returns the arrays `(x, y, U)`, with `U` of shape `(ny, nx)`.
        """
        x = np.linspace(0.0, np.pi, nx)
        y = np.linspace(-self.grid.half_width, self.grid.half_width, ny)
        U = self.basis.lagrange.values(y, dy) @ self.nodal_values() @ self.basis.sine.values(x, dx).T
        return x, y, U

    def scaled(self, factor:float, comment:str=None):
        """Returns a new field with coefficients multiplied by `factor`."""
        return SolutionField(factor * self.coefficients, self.basis, comment if comment else self.comment)

    def __repr__(self):
        return f'SolutionField({self.grid}, comment={self.comment!r})'
