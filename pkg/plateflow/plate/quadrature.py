"""
# Description

Gauss-Legendre quadrature on the reference interval $[-1,1]$,
mapped affinely to physical intervals and composed over partitions.
Used for every y-direction integral, for the field norms on nested grids,
and in both directions by the brute-force assembly oracle.


# Index

| | |
| --- | --- |
| `QuadratureRule`          | Gauss-Legendre points and weights on $[-1,1]$ |
| `gauss_rule()`            | Build the n-point rule |
| `integrate_elementwise()` | Integrate a function over a list of elements |
| `composite_rule()`        | Points and weights of the rule composed over a partition |

---
"""


import numpy as np


MAX_ORDER = 16
"""Largest supported number of Gauss points."""


class QuadratureRule:
    """Gauss-Legendre rule with `order` points, exact for polynomials of degree `2*order - 1`."""
    def __init__(self, points, weights):
        self.points = np.asarray(points, dtype=float)
        """Abscissae in $[-1,1]$, symmetric about 0."""
        self.weights = np.asarray(weights, dtype=float)
        """Positive weights, adding up to 2."""
        self.order: int = len(self.points)
        """Number of points."""

    @property
    def degree(self) -> int:
        """Highest polynomial degree integrated exactly."""
        return 2 * self.order - 1

    def mapped(self, a:float, b:float):
        """Returns the points and weights mapped to the interval $[a,b]$."""
        half = 0.5 * (b - a)
        return 0.5 * (a + b) + half * self.points, half * self.weights

    def __repr__(self):
        return f'QuadratureRule(order={self.order})'


def gauss_rule(n:int) -> QuadratureRule:
    """Gauss-Legendre rule with `n` points, for `n` in 1..16."""
    if int(n) != n or not 1 <= n <= MAX_ORDER:
        raise ValueError(f"Gauss rule order must be an integer in 1..{MAX_ORDER}, got {n}")
    points, weights = np.polynomial.legendre.leggauss(int(n))
    # Enforce exact symmetry of the abscissae
    points = 0.5 * (points - points[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(points, weights)


def integrate_elementwise(
        f,
        elements,
        rule:QuadratureRule,
        ) -> float:
    """Integrate the vectorized callable `f` over the `elements`, a list of `(a, b)` intervals.

    Each element contributes its affine-mapped Gauss sum.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("integrate_elementwise needs at least one element")
    total = 0.0
    for a, b in elements:
        points, weights = rule.mapped(a, b)
        total += float(np.dot(weights, f(points)))
    return total


def composite_rule(edges, rule:QuadratureRule):
    """Points and weights of `rule` composed over the partition with the given `edges`.

    Returns `(points, weights)` as flat arrays, ordered element by element.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.size < 2:
        raise ValueError("composite_rule needs at least two edges")
    a, b = edges[:-1, None], edges[1:, None]
    points = 0.5 * (a + b) + 0.5 * (b - a) * rule.points[None, :]
    weights = 0.5 * (b - a) * rule.weights[None, :]
    return points.ravel(), weights.ravel()
