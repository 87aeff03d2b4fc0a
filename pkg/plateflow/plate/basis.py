"""
# Description

The two one-dimensional basis families of the separable discretization.

Along x, the raw Fourier shape functions $\\tilde{\\Psi}_k(x) = \\sin(kx)$, $k = 1..\\bar{N}_1$,
are combined through the inverse of the transfer matrix
$\\mathcal{T}_{i_1 i_2} = \\tilde{\\Psi}_{i_2}(x_{i_1+1})$ into the interpolatory basis
$\\Psi_i = \\sum_k (\\mathcal{T}^{-1})_{k,i} \\tilde{\\Psi}_k$,
with $\\Psi_i(x_{k+1}) = \\delta_{ik}$.
Every $\\Psi_i$ and $\\Psi_i''$ vanishes at $x = 0$ and $x = \\pi$,
so the hinged conditions hold by construction.

Along y, the basis is the continuous piecewise-cubic Lagrange family on
macro-elements of four consecutive nodes.
It is only $C^0$: second derivatives are taken element by element,
one-sided at the macro-element boundaries (points on a boundary belong to the element on their right).

Public basis indices are 1-based, matching the node numbering.


# Index

| | |
| --- | --- |
| `SineBasis`              | Transfer-matrix-normalized sine basis in x |
| `LagrangeBasisY`         | $C^0$ cubic Lagrange basis in y |
| `BasisSet`               | Both bases over one grid |
| `build_sine_basis()`     | Build the sine basis of a grid |
| `build_lagrange_basis()` | Build the Lagrange basis of a grid |
| `build_basis()`          | Build the `BasisSet` of a grid |
| `eval_sine()`            | Evaluate one sine basis function or derivative |
| `eval_lagrange()`        | Evaluate one Lagrange basis function or derivative |

---
"""


import numpy as np
import scipy.linalg
from numpy.polynomial import polynomial as P
from .model import GridSpec


CONDITION_WARNING = 1e10
"""Transfer matrices with a larger condition number print a warning."""


class SineBasis:
    """Interpolatory sine basis $\\Psi_1..\\Psi_{\\bar{N}_1}$ on $[0,\\pi]$."""
    def __init__(self, interior_nodes, transfer, transfer_inverse):
        self.interior_nodes = np.asarray(interior_nodes, dtype=float)
        """Interior x-nodes $x_2..x_{N_1-1}$."""
        self.n_modes: int = len(self.interior_nodes)
        """Number of basis functions, $\\bar{N}_1$."""
        self.modes = np.arange(1, self.n_modes + 1, dtype=float)
        """Wavenumbers $k = 1..\\bar{N}_1$ of the raw sines."""
        self.transfer = transfer
        """Transfer matrix $\\mathcal{T}$, raw sines evaluated at the interior nodes."""
        self.transfer_inverse = transfer_inverse
        """$\\mathcal{T}^{-1}$; column i holds the raw-sine coefficients of $\\Psi_i$."""

    def raw_values(self, x, deriv:int=0):
        """Matrix of shape `(len(x), n_modes)` with the derivatives of $\\sin(kx)$.

        Values and second derivatives are exactly zero at $x=0$ and $x=\\pi$.
        """
        x = _check_interval(x, 0.0, np.pi, 'x')
        kx = np.outer(x, self.modes)
        if deriv == 0:
            values = np.sin(kx)
        elif deriv == 1:
            values = self.modes * np.cos(kx)
        elif deriv == 2:
            values = -self.modes**2 * np.sin(kx)
        else:
            raise ValueError(f"Sine derivatives of order 0, 1 or 2 are available, got {deriv}")
        if deriv != 1:
            values[(x == 0.0) | (x == np.pi)] = 0.0
        return values

    def values(self, x, deriv:int=0):
        """Matrix of shape `(len(x), n_modes)` with $\\Psi_i^{(deriv)}(x)$ in column i-1."""
        return self.raw_values(x, deriv) @ self.transfer_inverse


class LagrangeBasisY:
    """Continuous piecewise-cubic Lagrange basis $\\Phi_1..\\Phi_{N_2}$ on $[-l,l]$.

    Each macro-element spans four consecutive nodes.
    $\\Phi_j$ is supported on one macro-element when j is interior to it,
    and on the two neighbouring macro-elements when j is a shared node.
    """
    def __init__(self, nodes, m2:int):
        self.nodes = np.asarray(nodes, dtype=float)
        """y-nodes $y_1..y_{N_2}$."""
        self.m2: int = int(m2)
        """Number of macro-elements."""
        self.n_functions: int = len(self.nodes)
        """Number of basis functions, $N_2 = 3 m_2 + 1$."""
        self.edges = self.nodes[::3]
        """Macro-element boundaries."""
        self.half_width: float = float(self.nodes[-1])
        """Half-width $l$ of the interval."""
        self.h: float = float(self.edges[1] - self.edges[0])
        """Length of one macro-element."""
        # Local cubics on the reference element [0,1], one column per local node
        reference = np.array([0.0, 1.0/3.0, 2.0/3.0, 1.0])
        columns = []
        for k, node in enumerate(reference):
            others = np.delete(reference, k)
            columns.append(P.polyfromroots(others) / np.prod(node - others))
        self._local = np.array(columns).T
        """Monomial coefficients of the four local cubics, shape `(4, 4)`."""

    @property
    def elements(self) -> list:
        """Macro-elements as a list of `(a, b)` intervals."""
        return list(zip(self.edges[:-1], self.edges[1:]))

    def element_nodes(self, e:int):
        """0-based global indices of the four nodes of macro-element `e` (0-based)."""
        return np.arange(3 * e, 3 * e + 4)

    def locate(self, y):
        """Returns the 0-based macro-element of every point and its local coordinate in $[0,1]$."""
        y = _check_interval(y, -self.half_width, self.half_width, 'y')
        e = np.floor((y - self.edges[0]) / self.h).astype(int)
        e = np.clip(e, 0, self.m2 - 1)
        xi = (y - self.edges[e]) / self.h
        return e, xi

    def local_values(self, xi, deriv:int=0):
        """Derivative `deriv` of the four local cubics at reference coordinates `xi`.

        Returns shape `(len(xi), 4)`, scaled to physical y.
        """
        coefficients = P.polyder(self._local, deriv, axis=0) if deriv else self._local
        return P.polyval(np.asarray(xi, dtype=float), coefficients, tensor=True).T / self.h**deriv

    def values(self, y, deriv:int=0):
        """Matrix of shape `(len(y), n_functions)` with $\\Phi_j^{(deriv)}(y)$ in column j-1."""
        if not 0 <= deriv <= 3:
            raise ValueError(f"Lagrange derivatives of order 0 to 3 are available, got {deriv}")
        e, xi = self.locate(y)
        local = self.local_values(xi, deriv)
        values = np.zeros((len(e), self.n_functions))
        rows = np.arange(len(e))
        for k in range(4):
            values[rows, 3 * e + k] = local[:, k]
        return values


class BasisSet:
    """Sine basis in x and Lagrange basis in y over one `GridSpec`."""
    def __init__(self, grid:GridSpec, sine:SineBasis, lagrange:LagrangeBasisY):
        self.grid = grid
        """Grid the bases are built on."""
        self.sine = sine
        """`SineBasis` along x."""
        self.lagrange = lagrange
        """`LagrangeBasisY` along y."""

    def __repr__(self):
        return f'BasisSet({self.grid})'


def build_sine_basis(grid:GridSpec, verbose:bool=True) -> SineBasis:
    """Build the normalized sine basis on the interior x-nodes of the `grid`.

    The transfer matrix is invertible for distinct nodes in $(0,\\pi)$;
    a warning is printed if it is nevertheless ill-conditioned.
    """
    nodes = grid.x_interior
    modes = np.arange(1, grid.n1_bar + 1)
    transfer = np.sin(np.outer(nodes, modes))
    condition = np.linalg.cond(transfer)
    if verbose and not condition < CONDITION_WARNING:
        print(f"WARNING: Transfer matrix condition number is {condition:.3e}")
    transfer_inverse = scipy.linalg.inv(transfer)
    return SineBasis(nodes, transfer, transfer_inverse)


def build_lagrange_basis(grid:GridSpec) -> LagrangeBasisY:
    """Build the cubic Lagrange basis on the y-nodes of the `grid`."""
    return LagrangeBasisY(grid.y_nodes, grid.m2)


def build_basis(grid:GridSpec, verbose:bool=True) -> BasisSet:
    """Build both bases of the `grid`."""
    return BasisSet(grid, build_sine_basis(grid, verbose), build_lagrange_basis(grid))


def eval_sine(basis:SineBasis, i:int, x:float, deriv:int=0) -> float:
    """Value of $\\Psi_i^{(deriv)}(x)$ for the 1-based index `i`."""
    if not 1 <= i <= basis.n_modes:
        raise IndexError(f"Sine basis index must be in 1..{basis.n_modes}, got {i}")
    return float(basis.values([x], deriv)[0, i - 1])


def eval_lagrange(basis:LagrangeBasisY, j:int, y:float, deriv:int=0) -> float:
    """Value of $\\Phi_j^{(deriv)}(y)$ for the 1-based index `j`."""
    if not 1 <= j <= basis.n_functions:
        raise IndexError(f"Lagrange basis index must be in 1..{basis.n_functions}, got {j}")
    return float(basis.values([y], deriv)[0, j - 1])


def _check_interval(values, low:float, high:float, name:str):
    """Returns `values` as a 1D float array, raising a `ValueError` if any lies outside $[low, high]$."""
    values = np.atleast_1d(np.asarray(values, dtype=float)).ravel()
    slack = 1e-12 * max(1.0, abs(low), abs(high))
    if np.any(values < low - slack) or np.any(values > high + slack) or not np.all(np.isfinite(values)):
        raise ValueError(f"{name} must lie in [{low}, {high}], got values in [{values.min()}, {values.max()}]")
    return values
