"""
# Description

Post-processing of discrete solutions:
field evaluation, norms, modality classification along the midline,
and the lift of a linearized solution to a solution of the nonlinear stationary problem.

The lift rests on the following observation.
If $U \\neq 0$ solves the linearized problem with prestress coefficient $\\mu$ and forcing $G$,
and $\\mu > -P$, then $u = \\sqrt{(\\mu+P)/S}\\, U / \\|U_x\\|_0$ satisfies
$S\\|u_x\\|_0^2 - P = \\mu$, so that it solves the nonlinear problem
$a(u,v) + [S\\|u_x\\|_0^2 - P](u_x,v_x) = (g,v) + \\alpha(u_y,v)$
with the forcing rescaled accordingly.


# Index

| | |
| --- | --- |
| `ModalityReport`      | Zero count and modality of a field along the midline |
| `LiftResult`          | Lifted field and its diagnostics |
| `HypothesisViolated`  | Raised when the lift conditions do not hold |
| `TrivialInput`        | Raised when the field to lift is numerically zero |
| `evaluate_field()`    | Value or derivative of a field at points |
| `norms()`             | $L^2$, $\\|u_x\\|_0$, broken $H^2$ seminorm and energy norms |
| `count_sign_changes()`| Sign changes of a sampled profile, with a zero band |
| `count_zeros()`       | `ModalityReport` of a field |
| `lift_to_nonlinear()` | Lift a linearized solution |
| `nonlinear_residual()`| Weak residual of the nonlinear problem |
| `energy_difference()` | Energy-norm distance between fields on different grids |
| `convergence_study()` | Energy-norm differences over refined grids |

---
"""


import numpy as np
from .constants import *
from .model import PlateParameters, SolutionField, make_grid
from .quadrature import gauss_rule, composite_rule
from .assembly import GramTable, bending_apply, forcing_vector


class ModalityReport:
    """Sign structure of a field along the midline $y = 0$."""
    def __init__(
            self,
            zero_count:int=0,
            modality_m:int=0,
            amplitude:float=0.0,
            sign_profile:list=None,
            ):
        self.zero_count: int = zero_count
        """Sign changes of $x \\mapsto U(x,0)$ outside the zero band."""
        self.modality_m: int = modality_m
        """`zero_count + 1`, or 0 for a trivial field."""
        self.amplitude: float = amplitude
        """Largest $|U(x,0)|$ over the samples."""
        self.sign_profile: list = sign_profile if sign_profile is not None else []
        """Signed extremum of every sign region, from x=0 to x=π."""

    @property
    def trivial(self) -> bool:
        """True if the amplitude is below the absolute floor, so no modality is defined."""
        return self.modality_m == 0

    def summary(self) -> dict:
        return {
            'zero_count': self.zero_count,
            'modality_m': self.modality_m,
            'amplitude': self.amplitude,
            'sign_profile': self.sign_profile,
        }

    def __repr__(self):
        return f'ModalityReport(zero_count={self.zero_count}, modality_m={self.modality_m}, amplitude={self.amplitude:.6g})'


class LiftResult:
    """Solution of the nonlinear stationary problem obtained from a linearized one."""
    def __init__(
            self,
            lifted_field:SolutionField,
            scale:float,
            implied_g_scale:float,
            bracket_value:float,
            params:PlateParameters,
            ):
        self.lifted_field = lifted_field
        """Lifted `SolutionField` $u$."""
        self.scale: float = scale
        """Factor $\\sqrt{(\\mu+P)/S}/\\|U_x\\|_0$ applied to the coefficients of $U$."""
        self.implied_g_scale: float = implied_g_scale
        """$\\|U_x\\|_0/\\sqrt{(\\mu+P)/S}$, so that the nonlinear forcing is $g = G$ / `implied_g_scale`."""
        self.bracket_value: float = bracket_value
        """$S\\|u_x\\|_0^2 - P$ evaluated on the lifted field, equal to $\\mu$."""
        self.params = params
        """`PlateParameters` of the lift."""

    @property
    def g_const(self) -> float:
        """Forcing of the nonlinear problem solved by the lifted field."""
        return self.params.g_const / self.implied_g_scale

    def summary(self) -> dict:
        return {
            'scale': self.scale,
            'implied_g_scale': self.implied_g_scale,
            'g_const': self.g_const,
            'bracket_value': self.bracket_value,
            'mu': self.params.mu,
            'bracket_error': abs(self.bracket_value - self.params.mu),
        }

    def __repr__(self):
        return f'LiftResult(scale={self.scale:.6g}, bracket_value={self.bracket_value:.12g}, mu={self.params.mu})'


class HypothesisViolated(ValueError):
    """The lift needs $\\mu + P > 0$ and $S > 0$."""
    pass


class TrivialInput(ValueError):
    """The field is numerically zero, so it cannot be normalized."""
    pass


def evaluate_field(
        field:SolutionField,
        x,
        y,
        dx:int=0,
        dy:int=0,
        ):
    """Value of $\\partial_x^{dx}\\partial_y^{dy} u_h$ at (x, y).

    Points must lie in $[0,\\pi]\\times[-l,l]$, otherwise a `ValueError` is raised.
    Only `dx + dy <= 2` is meaningful, since y-derivatives are taken element by element.
    """
    if not (0 <= dx <= 2 and 0 <= dy <= 2):
        raise ValueError(f"Derivative orders must be in 0..2, got dx={dx}, dy={dy}")
    return field.evaluate(x, y, dx, dy)


def norms(
        field:SolutionField,
        grams:GramTable,
        sigma:float=SIGMA,
        ) -> dict:
    """Norms of a field from its coefficients and the Gram matrices.

    Returns a dict with `l2` ($\\|u\\|_0$), `l2_ux` ($\\|u_x\\|_0$),
    `h2_semi` (broken $H^2$ seminorm) and `energy` ($\\sqrt{a(u,u)}$, which depends on `sigma`).
    """
    q = field.coefficients
    if q.size != grams.dof:
        raise ValueError(f"Field with {q.size} coefficients does not match the Gram size {grams.dof}")
    l2 = q @ grams.apply((0, 0), (0, 0), q)
    l2_ux = q @ grams.apply((1, 0), (1, 0), q)
    h2_semi = sum(q @ grams.apply(d, d, q) for d in ((2, 0), (1, 1), (0, 2)))
    energy = q @ bending_apply(grams, sigma, q)
    # Quadratic forms can round slightly below zero for tiny fields
    return {
        'l2': float(np.sqrt(max(l2, 0.0))),
        'l2_ux': float(np.sqrt(max(l2_ux, 0.0))),
        'h2_semi': float(np.sqrt(max(h2_semi, 0.0))),
        'energy': float(np.sqrt(max(energy, 0.0))),
    }


def count_sign_changes(
        values,
        rel_threshold:float=REL_THRESHOLD,
        floor:float=AMPLITUDE_FLOOR,
        ) -> ModalityReport:
    """`ModalityReport` of a sampled profile.

    Samples with $|v|$ below `rel_threshold` times the amplitude form the zero band and are skipped;
    sign changes are counted between consecutive samples outside the band.
    Profiles with an amplitude below `floor` are trivial, with modality 0.
    """
    if not 0 < rel_threshold < 1:
        raise ValueError(f"rel_threshold must be in (0, 1), got {rel_threshold}")
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0 or not np.all(np.isfinite(values)):
        return ModalityReport(amplitude=float('nan') if values.size else 0.0)
    amplitude = float(np.max(np.abs(values)))
    if amplitude < floor:
        return ModalityReport(amplitude=amplitude)
    kept = values[np.abs(values) >= rel_threshold * amplitude]
    signs = np.sign(kept)
    changes = np.flatnonzero(signs[1:] != signs[:-1]) + 1
    sign_profile = []
    for run in np.split(kept, changes):
        extremum = run[np.argmax(np.abs(run))]
        sign_profile.append(float(extremum))
    zero_count = len(changes)
    return ModalityReport(zero_count, zero_count + 1, amplitude, sign_profile)


def count_zeros(
        field:SolutionField,
        n_samples:int=N_SAMPLES,
        rel_threshold:float=REL_THRESHOLD,
        ) -> ModalityReport:
    """Classify a field by the sign changes of $x \\mapsto U(x, 0)$.

    The midline is sampled at `n_samples` uniform interior points of $(0,\\pi)$.
    """
    if n_samples < 64:
        raise ValueError(f"n_samples must be at least 64, got {n_samples}")
    x = np.linspace(0.0, np.pi, n_samples + 2)[1:-1]
    samples = field.evaluate(x, np.zeros_like(x))
    return count_sign_changes(samples, rel_threshold)


def lift_to_nonlinear(
        U:SolutionField,
        params:PlateParameters,
        grams:GramTable,
        ) -> LiftResult:
    """Scale a linearized solution `U` into a solution of the nonlinear stationary problem.

    Raises `HypothesisViolated` unless $\\mu > -P$ and $S > 0$,
    and `TrivialInput` if $\\|U_x\\|_0$ is numerically zero.
    """
    mu, P, S = params.mu, params.p_prestress, params.s_stretch
    if not mu + P > 0:
        raise HypothesisViolated(f"The lift needs mu > -P, got mu = {mu} and P = {P}")
    if not S > 0:
        raise HypothesisViolated(f"The lift needs a positive stretching stiffness S, got {S}")
    ux_norm = norms(U, grams, params.sigma)['l2_ux']
    if ux_norm < AMPLITUDE_FLOOR:
        raise TrivialInput(f"Cannot lift a field with ||U_x|| = {ux_norm:.3e}")
    target = np.sqrt((mu + P) / S)
    scale = target / ux_norm
    lifted = U.scaled(scale, comment=f'lifted {U.comment}' if U.comment else 'lifted')
    lifted_ux = norms(lifted, grams, params.sigma)['l2_ux']
    return LiftResult(
        lifted_field=lifted,
        scale=float(scale),
        implied_g_scale=float(ux_norm / target),
        bracket_value=float(S * lifted_ux**2 - P),
        params=params,
    )


def nonlinear_residual(
        u:SolutionField,
        g,
        params:PlateParameters,
        grams:GramTable,
        ) -> float:
    """Weak residual of the nonlinear stationary problem at `u`.

    For every basis test function v, computes
    $a(u,v) + (S\\|u_x\\|_0^2 - P)(u_x,v_x) - (g,v) - \\alpha(u_y,v)$,
    and returns the largest absolute value divided by the energy norm of `u`.
    The forcing `g` is a constant, a load vector of length `dof`,
    or a vectorized callable `g(x, y)`.
    """
    q = u.coefficients
    if callable(g):
        load = forcing_vector(u.basis, g)
    elif np.ndim(g) == 0:
        load = float(g) * np.kron(grams.y_integrals, grams.x_integrals)
    else:
        load = np.asarray(g, dtype=float)
    if load.size != q.size:
        raise ValueError(f"Load vector of size {load.size} does not match the {q.size} coefficients")
    bending = bending_apply(grams, params.sigma, q)
    prestress = grams.apply((1, 0), (1, 0), q)
    bracket = params.s_stretch * (q @ prestress) - params.p_prestress
    transport = grams.apply((0, 0), (0, 1), q)
    residual = bending + bracket * prestress - load - params.alpha * transport
    largest = float(np.max(np.abs(residual))) if residual.size else 0.0
    energy = np.sqrt(max(q @ bending, 0.0))
    if energy == 0.0:
        return largest
    return largest / float(energy)


def energy_difference(
        first:SolutionField,
        second:SolutionField,
        sigma:float=SIGMA,
        points:int=ORACLE_POINTS,
        ) -> float:
    """Broken energy norm $\\sqrt{a(e,e)}$ of the difference $e$ of two fields, possibly on different grids.

    Integrals are taken on the common refinement of both y-partitions,
    using $a(e,e) = \\int e_{xx}^2 + 2\\sigma e_{xx}e_{yy} + e_{yy}^2 + 2(1-\\sigma)e_{xy}^2$.
    """
    if first.grid.half_width != second.grid.half_width:
        raise ValueError("Fields must share the plate half-width")
    n_modes = max(first.grid.n1_bar, second.grid.n1_bar)
    panels = ORACLE_PANELS_PER_MODE * n_modes
    xq, wx = composite_rule(np.linspace(0.0, np.pi, panels + 1), gauss_rule(points))
    edges = np.union1d(first.grid.y_edges, second.grid.y_edges)
    # Merge edges that only differ by rounding
    edges = edges[np.concatenate(([True], np.diff(edges) > 1e-12 * first.grid.half_width))]
    yq, wy = composite_rule(edges, gauss_rule(QUAD_ORDER))
    derivative = {}
    for d in ((2, 0), (1, 1), (0, 2)):
        values = []
        for field in (first, second):
            Px = field.basis.sine.values(xq, d[0])
            Py = field.basis.lagrange.values(yq, d[1])
            values.append(Py @ field.nodal_values() @ Px.T)
        derivative[d] = values[0] - values[1]
    exx, exy, eyy = derivative[(2, 0)], derivative[(1, 1)], derivative[(0, 2)]
    density = exx**2 + 2 * sigma * exx * eyy + eyy**2 + 2 * (1 - sigma) * exy**2
    return float(np.sqrt(max(wy @ density @ wx, 0.0)))


def convergence_study(
        params:PlateParameters=None,
        resolutions:tuple=((8, 4), (16, 8), (32, 16)),
        verbose:bool=False,
        ) -> dict:
    """Solve on successively refined grids and compare consecutive solutions in the energy norm.

    `resolutions` is a sequence of `(n1_bar, m2)` pairs, from coarse to fine.
    Returns a dict with the `resolutions`, the consecutive `differences`,
    and their `ratios` (each difference over the previous one).
    """
    from .solve import linear
    params = params if params else PlateParameters()
    if len(resolutions) < 2:
        raise ValueError("convergence_study needs at least two resolutions")
    fields = []
    for n1_bar, m2 in resolutions:
        grid = make_grid(n1_bar + 2, m2, params.half_width)
        field, report = linear(params, grid)
        fields.append(field)
        if verbose:
            print(f"Solved (n1_bar, m2) = ({n1_bar}, {m2}), residual {report.residual_norm:.3e}")
    differences = [energy_difference(fine, coarse, params.sigma) for coarse, fine in zip(fields[:-1], fields[1:])]
    ratios = [b / a if a > 0 else float('nan') for a, b in zip(differences[:-1], differences[1:])]
    if verbose:
        for (coarse, fine), difference in zip(zip(resolutions[:-1], resolutions[1:]), differences):
            print(f"{coarse} -> {fine}: energy difference {difference:.6e}")
    return {
        'resolutions': list(resolutions),
        'differences': differences,
        'ratios': ratios,
    }
