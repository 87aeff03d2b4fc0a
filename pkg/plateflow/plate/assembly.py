"""
# Description

Galerkin assembly of the linearized plate system.

With the flat ordering $t = (j-1)\\bar{N}_1 + i$, every bilinear term of the problem
separates into a Kronecker product of a y-Gram matrix and an x-Gram matrix,
$\\int \\partial^{a}\\Psi_i \\Phi_j \\, \\partial^{b}\\Psi_{\\tilde i} \\Phi_{\\tilde j}
= (\\mathcal{Y} \\otimes \\mathcal{X})_{s,t}$,
so only one-dimensional integrals are ever computed.
Entries are $\\mathcal{A}_{s,t} = A(\\text{trial}_t, \\text{test}_s)$, with

$$
A(u,v) = \\int \\Delta u \\Delta v + (1-\\sigma)(2u_{xy}v_{xy} - u_{xx}v_{yy} - u_{yy}v_{xx})
+ \\mu \\int u_x v_x - \\alpha \\int u_y v .
$$

The x-Grams are computed in closed form from the orthogonality of the sines,
and the y-Grams element by element with Gauss quadrature.
A brute-force two-dimensional quadrature, `assemble_oracle()`,
computes the same matrix pointwise for cross-checks.


# Index

| | |
| --- | --- |
| `GramTable`          | One-dimensional Gram matrices of both bases |
| `LinearSystem`       | Assembled matrix and right-hand side |
| `build_gram_x()`     | Closed-form x-Grams |
| `build_gram_y()`     | Quadrature y-Grams |
| `build_grams()`      | Full `GramTable` of a basis set |
| `bending_terms()`    | Weighted Gram terms of the bending form |
| `bending_matrix()`   | Bending block $K$ |
| `bending_apply()`    | Bending block applied to a vector, without forming it |
| `prestress_matrix()` | $(u_x, v_x)$ block |
| `transport_matrix()` | $(u_y, v)$ block |
| `mass_matrix()`      | $(u, v)$ block |
| `seminorm_matrix()`  | Block of the $H^2$ seminorm |
| `load_vector()`      | Right-hand side of a constant forcing |
| `forcing_vector()`   | Right-hand side of a forcing $g(x,y)$ |
| `assemble_system()`  | Full system for some parameters |
| `assemble_oracle()`  | Full system by pointwise 2D quadrature |
| `relative_difference()` | Max-norm relative difference of two arrays |

---
"""


import numpy as np
from .constants import *
from .model import GridSpec, PlateParameters
from .basis import BasisSet, SineBasis, LagrangeBasisY
from .quadrature import QuadratureRule, gauss_rule, composite_rule


DERIVATIVE_PAIRS = [(0, 0), (1, 1), (2, 2), (2, 0), (0, 2), (1, 0)]
"""Derivative orders (a, b) of the stored Gram matrices. Missing pairs are transposes of these."""


class GramTable:
    """One-dimensional Gram matrices, $\\mathcal{X}(a,b)_{i\\tilde i} = \\int_0^\\pi \\Psi_i^{(a)}\\Psi_{\\tilde i}^{(b)}$
    and $\\mathcal{Y}(a,b)_{j\\tilde j} = \\int_{-l}^{l} \\Phi_j^{(a)}\\Phi_{\\tilde j}^{(b)}$,
    with the y-integrals taken element by element.
    """
    def __init__(
            self,
            x:dict,
            y:dict,
            boundary_y,
            x_integrals,
            y_integrals,
            ):
        self.x: dict = x
        """x-Grams keyed by the derivative pair (a, b)."""
        self.y: dict = y
        """y-Grams keyed by the derivative pair (a, b)."""
        self.boundary_y = boundary_y
        """$\\Phi_j(l)\\Phi_{\\tilde j}(l) - \\Phi_j(-l)\\Phi_{\\tilde j}(-l)$, the boundary term of $\\mathcal{Y}(1,0) + \\mathcal{Y}(0,1)$."""
        self.x_integrals = x_integrals
        """$\\int_0^\\pi \\Psi_i$ for every i."""
        self.y_integrals = y_integrals
        """$\\int_{-l}^{l} \\Phi_j$ for every j."""
        self.n1_bar: int = x[(0, 0)].shape[0]
        """Size of the x-Grams."""
        self.n2: int = y[(0, 0)].shape[0]
        """Size of the y-Grams."""

    def X(self, a:int, b:int):
        """x-Gram of derivative orders (a, b)."""
        return _lookup(self.x, a, b, 'x')

    def Y(self, a:int, b:int):
        """y-Gram of derivative orders (a, b)."""
        return _lookup(self.y, a, b, 'y')

    def term(self, test:tuple, trial:tuple):
        """Matrix of $\\int \\partial^{trial} u \\, \\partial^{test} v$, with derivative orders given as (dx, dy).

        Rows follow the test functions and columns the trial functions.
        """
        return np.kron(self.Y(test[1], trial[1]), self.X(test[0], trial[0]))

    def apply(self, test:tuple, trial:tuple, q):
        """Same as `term(test, trial) @ q`, without forming the Kronecker product."""
        Q = np.asarray(q, dtype=float).reshape(self.n2, self.n1_bar)
        return (self.Y(test[1], trial[1]) @ Q @ self.X(test[0], trial[0]).T).ravel()

    @property
    def dof(self) -> int:
        return self.n1_bar * self.n2

    def __repr__(self):
        return f'GramTable(n1_bar={self.n1_bar}, n2={self.n2})'


class LinearSystem:
    """Assembled Galerkin system $\\mathcal{A} q = b$.

    The matrix is kept split as $\\mathcal{A} = \\mathcal{A}_{sym} + \\alpha \\mathcal{A}_{flow}$,
    so that systems for other flow speeds are derived cheaply with `at_alpha()`.
    """
    def __init__(
            self,
            symmetric,
            flow,
            rhs,
            params:PlateParameters,
            grid:GridSpec,
            ):
        self.symmetric = symmetric
        """Flow-independent part $K + \\mu M_1$, symmetric."""
        self.flow = flow
        """Flow part, $-(u_y, v)$, multiplied by $\\alpha$."""
        self.rhs = rhs
        """Right-hand side vector $b$."""
        self.params = params
        """`PlateParameters` of the system."""
        self.grid = grid
        """`GridSpec` of the system."""
        self.matrix = symmetric + params.alpha * flow
        """Full system matrix $\\mathcal{A}$."""

    def at_alpha(self, alpha:float):
        """Returns the system for another flow speed, reusing the cached blocks."""
        return LinearSystem(self.symmetric, self.flow, self.rhs, self.params.replace(alpha=alpha), self.grid)

    @property
    def dof(self) -> int:
        return len(self.rhs)

    def __repr__(self):
        return f'LinearSystem({self.grid}, alpha={self.params.alpha!r})'


def build_gram_x(basis:SineBasis) -> dict:
    """Closed-form x-Grams of the normalized sine basis.

    For the raw sines, $\\int_0^\\pi \\sin(kx)\\sin(k'x) = \\frac{\\pi}{2}\\delta_{kk'}$,
    so every raw Gram is diagonal and the normalized one is $C^T D C$ with $C = \\mathcal{T}^{-1}$.
    """
    k = basis.modes
    C = basis.transfer_inverse
    raw = {
        (0, 0): np.pi / 2 * np.ones_like(k),
        (1, 1): np.pi / 2 * k**2,
        (2, 2): np.pi / 2 * k**4,
        (2, 0): -np.pi / 2 * k**2,
        (0, 2): -np.pi / 2 * k**2,
    }
    grams = {}
    for key, diagonal in raw.items():
        grams[key] = _symmetrized(C.T @ (diagonal[:, None] * C))
    # Mixed first-order pair by parts, sin(kx) vanishes at both ends
    grams[(1, 0)] = C.T @ _raw_first_mixed(k) @ C
    return grams


def sine_integrals(basis:SineBasis):
    """$\\int_0^\\pi \\Psi_i$ for every i, from $\\int_0^\\pi \\sin(kx) = 2/k$ for odd k and 0 for even k."""
    k = basis.modes
    raw = np.where(k.astype(int) % 2 == 1, 2.0 / k, 0.0)
    return basis.transfer_inverse.T @ raw


def build_gram_y(basis:LagrangeBasisY, rule:QuadratureRule=None) -> dict:
    """y-Grams of the cubic Lagrange basis, integrated element by element with `rule`.

    Integrands are polynomials of degree up to 6, so the rule needs at least 4 points.
    """
    rule = rule if rule else gauss_rule(QUAD_ORDER)
    if rule.degree < 6:
        raise ValueError(f"y-Grams need a Gauss rule of at least 4 points, got {rule.order}")
    n2 = basis.n_functions
    grams = {key: np.zeros((n2, n2)) for key in DERIVATIVE_PAIRS}
    xi = 0.5 * (rule.points + 1.0)
    local = {d: basis.local_values(xi, d) for d in (0, 1, 2)}
    for e, (a, b) in enumerate(basis.elements):
        weights = 0.5 * (b - a) * rule.weights
        idx = basis.element_nodes(e)
        for (da, db), gram in grams.items():
            gram[np.ix_(idx, idx)] += (weights[:, None] * local[da]).T @ local[db]
    for key in ((0, 0), (1, 1), (2, 2)):
        grams[key] = _symmetrized(grams[key])
    return grams


def lagrange_integrals(basis:LagrangeBasisY, rule:QuadratureRule=None):
    """$\\int_{-l}^{l} \\Phi_j$ for every j, element by element."""
    rule = rule if rule else gauss_rule(QUAD_ORDER)
    points, weights = composite_rule(basis.edges, rule)
    return weights @ basis.values(points)


def boundary_matrix_y(basis:LagrangeBasisY):
    """$\\Phi_j(l)\\Phi_{\\tilde j}(l) - \\Phi_j(-l)\\Phi_{\\tilde j}(-l)$.

    Only the first and last nodes sit on the free edges, so it is zero except for two diagonal entries.
    """
    ends = basis.values([-basis.half_width, basis.half_width])
    return np.outer(ends[1], ends[1]) - np.outer(ends[0], ends[0])


def build_grams(
        basis:BasisSet,
        rule:QuadratureRule=None,
        ) -> GramTable:
    """Build the `GramTable` of a `BasisSet`, using `rule` for the y-integrals."""
    rule = rule if rule else gauss_rule(QUAD_ORDER)
    return GramTable(
        x=build_gram_x(basis.sine),
        y=build_gram_y(basis.lagrange, rule),
        boundary_y=boundary_matrix_y(basis.lagrange),
        x_integrals=sine_integrals(basis.sine),
        y_integrals=lagrange_integrals(basis.lagrange, rule),
    )


def bending_terms(sigma:float, corner_sign:float=1.0) -> list:
    """Weighted Gram terms `(weight, test, trial)` of the bending form $a(u,v)$.

    The Laplacian part comes first, then the corner term with weight $(1-\\sigma)$.
    `corner_sign` flips the corner term, and is only meant for consistency checks.
    """
    c = corner_sign * (1.0 - sigma)
    return [
        (1.0, (2, 0), (2, 0)),
        (1.0, (0, 2), (2, 0)),
        (1.0, (2, 0), (0, 2)),
        (1.0, (0, 2), (0, 2)),
        (2.0 * c, (1, 1), (1, 1)),
        (-c, (0, 2), (2, 0)),
        (-c, (2, 0), (0, 2)),
    ]


def bending_matrix(grams:GramTable, sigma:float, corner_sign:float=1.0):
    """Bending block $K$, the matrix of $a(u,v)$. Symmetric positive definite for $0<\\sigma<1$."""
    K = np.zeros((grams.dof, grams.dof))
    for weight, test, trial in bending_terms(sigma, corner_sign):
        K += weight * grams.term(test, trial)
    # The mixed terms are transposes of each other, so only rounding breaks the symmetry
    return _symmetrized(K)


def bending_apply(grams:GramTable, sigma:float, q):
    """$K q$ computed term by term."""
    result = np.zeros(grams.dof)
    for weight, test, trial in bending_terms(sigma):
        result += weight * grams.apply(test, trial, q)
    return result


def prestress_matrix(grams:GramTable):
    """Matrix of $(u_x, v_x)$, symmetric positive definite."""
    return grams.term((1, 0), (1, 0))


def transport_matrix(grams:GramTable):
    """Matrix of the transport term $(u_y, v)$. Not symmetric."""
    return grams.term((0, 0), (0, 1))


def mass_matrix(grams:GramTable):
    """Matrix of $(u, v)$."""
    return grams.term((0, 0), (0, 0))


def seminorm_matrix(grams:GramTable):
    """Matrix of the $H^2$ seminorm, $\\int u_{xx}v_{xx} + u_{xy}v_{xy} + u_{yy}v_{yy}$."""
    return grams.term((2, 0), (2, 0)) + grams.term((1, 1), (1, 1)) + grams.term((0, 2), (0, 2))


def load_vector(grams:GramTable, g_const:float):
    """Right-hand side $b_t = G \\int \\Psi_i \\int \\Phi_j$ of a constant forcing $G$."""
    return g_const * np.kron(grams.y_integrals, grams.x_integrals)


def forcing_vector(
        basis:BasisSet,
        g,
        rule:QuadratureRule=None,
        points:int=ORACLE_POINTS,
        ):
    """Right-hand side $b_t = \\int g \\Psi_i \\Phi_j$ of a forcing `g`.

    `g` is a constant or a vectorized callable `g(x, y)`.
    The x-integral uses a composite Gauss rule with `points` nodes per panel.
    """
    if not callable(g):
        constant = float(g)
        g = lambda x, y: np.full(np.broadcast(x, y).shape, constant)
    rule = rule if rule else gauss_rule(QUAD_ORDER)
    xq, wx = _oracle_x_rule(basis.sine.n_modes, points)
    yq, wy = composite_rule(basis.lagrange.edges, rule)
    G = g(xq[None, :], yq[:, None])
    Px = basis.sine.values(xq) * wx[:, None]
    Py = basis.lagrange.values(yq) * wy[:, None]
    return (Py.T @ G @ Px).ravel()


def assemble_system(
        grams:GramTable,
        params:PlateParameters,
        grid:GridSpec,
        corner_sign:float=1.0,
        ) -> LinearSystem:
    """Assemble $\\mathcal{A} = K + \\mu M_1 - \\alpha T$ and the constant-forcing load vector.

    Here $M_1$ is the $(u_x, v_x)$ block and $T$ the $(u_y, v)$ block.
    Raises a `ValueError` if the Grams and the grid disagree in size.
    `corner_sign` is passed on to `bending_matrix()`.
    """
    if (grams.n1_bar, grams.n2) != (grid.n1_bar, grid.n2):
        raise ValueError(f"Gram sizes ({grams.n1_bar}, {grams.n2}) do not match {grid}")
    symmetric = bending_matrix(grams, params.sigma, corner_sign) + params.mu * prestress_matrix(grams)
    flow = -transport_matrix(grams)
    rhs = load_vector(grams, params.g_const)
    return LinearSystem(symmetric, flow, rhs, params, grid)


def assemble_oracle(
        basis:BasisSet,
        params:PlateParameters,
        points:int=ORACLE_POINTS,
        rule:QuadratureRule=None,
        ) -> LinearSystem:
    """Brute-force assembly of the same system, by pointwise 2D quadrature.

    The x-direction uses `points` Gauss nodes on each of at least four panels per sine mode;
    the y-direction uses `rule` on every macro-element.
    Every basis function and derivative is evaluated at every quadrature point,
    and no Gram factorization is used.
    """
    rule = rule if rule else gauss_rule(QUAD_ORDER)
    grid = basis.grid
    xq, wx = _oracle_x_rule(basis.sine.n_modes, points)
    yq, wy = composite_rule(basis.lagrange.edges, rule)
    XQ, YQ = np.meshgrid(xq, yq, indexing='ij')
    xp, yp = XQ.ravel(), YQ.ravel()
    w = np.outer(wx, wy).ravel()[:, None]
    # Column t of each table is the 2D basis function (i, j) of flat index t
    i_of_t = np.tile(np.arange(grid.n1_bar), grid.n2)
    j_of_t = np.repeat(np.arange(grid.n2), grid.n1_bar)
    D = {}
    for dx, dy in [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)]:
        D[(dx, dy)] = basis.sine.values(xp, dx)[:, i_of_t] * basis.lagrange.values(yp, dy)[:, j_of_t]
    sigma, mu, alpha = params.sigma, params.mu, params.alpha
    laplacian = D[(2, 0)] + D[(0, 2)]
    symmetric = (w * laplacian).T @ laplacian
    symmetric += (1.0 - sigma) * (2.0 * (w * D[(1, 1)]).T @ D[(1, 1)] - (w * D[(0, 2)]).T @ D[(2, 0)] - (w * D[(2, 0)]).T @ D[(0, 2)])
    symmetric += mu * (w * D[(1, 0)]).T @ D[(1, 0)]
    flow = -(w * D[(0, 0)]).T @ D[(0, 1)]
    rhs = params.g_const * (w * D[(0, 0)]).sum(axis=0)
    return LinearSystem(symmetric, flow, rhs, params, grid)


def relative_difference(a, b) -> float:
    """Returns $\\max|a-b| / \\max|b|$, or the absolute difference if `b` is zero."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"Cannot compare arrays of shapes {a.shape} and {b.shape}")
    scale = np.max(np.abs(b)) if b.size else 0.0
    difference = np.max(np.abs(a - b)) if a.size else 0.0
    return float(difference / scale) if scale > 0 else float(difference)


def _oracle_x_rule(n_modes:int, points:int):
    """Composite Gauss rule in x with at least four panels per sine mode."""
    panels = ORACLE_PANELS_PER_MODE * max(n_modes, 1)
    return composite_rule(np.linspace(0.0, np.pi, panels + 1), gauss_rule(points))


def _raw_first_mixed(k):
    """$\\int_0^\\pi k\\cos(kx)\\sin(k'x)$ for all mode pairs, zero when k and k' share parity."""
    K, Kp = np.meshgrid(k, k, indexing='ij')
    raw = np.zeros_like(K)
    odd = (K.astype(int) + Kp.astype(int)) % 2 == 1
    raw[odd] = 2.0 * K[odd] * Kp[odd] / (Kp[odd]**2 - K[odd]**2)
    return raw


def _symmetrized(matrix):
    return 0.5 * (matrix + matrix.T)


def _lookup(table:dict, a:int, b:int, name:str):
    if (a, b) in table:
        return table[(a, b)]
    if (b, a) in table:
        return table[(b, a)].T
    raise KeyError(f"No {name}-Gram stored for derivative orders ({a}, {b})")
