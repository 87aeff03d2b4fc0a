"""
# Description

This module provides straightforward functions to plot plate solutions and sweeps.
Figures are shown, or saved when a `filepath` is given.


# Index

| | |
| --- | --- |
| `field()` | Contour map of a field, with its midline profile |
| `sweep()` | Modality and amplitude along a sweep |
| `basis()` | Raw and interpolatory sines, and the Lagrange basis over the y-mesh |

---
"""


from .model import SolutionField
from .basis import BasisSet
import matplotlib.pyplot as plt
import numpy as np


def field(
        data:SolutionField,
        title:str=None,
        filepath:str=None,
        nx:int=201,
        ny:int=41,
        ) -> None:
    """Plot the displacement of `data` over the plate, and along the midline y=0 below it.

    Title defaults to `data.comment`.
    """
    x, y, U = data.lattice(nx, ny)
    midline = data.evaluate(x, np.zeros_like(x))
    title = title if title else (data.comment if data.comment else 'Displacement')

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 6), sharex=True, gridspec_kw={'height_ratios': [1, 1.4]})
    top.set_title(title)
    contour = top.contourf(x, y, U, levels=30, cmap='RdBu_r')
    fig.colorbar(contour, ax=top, label='u')
    top.set_ylabel('y')
    bottom.plot(x, midline, color='C0')
    bottom.axhline(0.0, color='grey', linewidth=0.8, linestyle='--')
    bottom.set_xlabel('x')
    bottom.set_ylabel('u(x, 0)')
    bottom.set_xticks([0, np.pi/4, np.pi/2, 3*np.pi/4, np.pi])
    bottom.set_xticklabels(['0', r'$\frac{\pi}{4}$', r'$\frac{\pi}{2}$', r'$\frac{3\pi}{4}$', r'$\pi$'])
    _finish(fig, filepath)


def sweep(
        records:list,
        title:str=None,
        filepath:str=None,
        ) -> None:
    """Plot the modality and the midline amplitude of the sweep `records` against alpha.

    Near-singular records are marked in red.
    """
    alpha = np.array([r.alpha for r in records])
    modality = np.array([r.modality_m for r in records])
    amplitude = np.array([r.amplitude for r in records], dtype=float)
    singular = np.array([r.solver_flag == 'near_singular' for r in records], dtype=bool)

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
    top.set_title(title if title else 'Sweep over alpha')
    top.step(alpha, modality, where='post', color='C0')
    top.plot(alpha[singular], modality[singular], 'o', color='C3', label='near singular')
    top.set_ylabel('Modality m')
    if any(singular):
        top.legend(fontsize='small')
    bottom.semilogy(alpha, amplitude, color='C1')
    bottom.set_xlabel('alpha')
    bottom.set_ylabel('Midline amplitude')
    bottom.invert_xaxis()
    _finish(fig, filepath)


def basis(
        data:BasisSet,
        title:str=None,
        filepath:str=None,
        n:int=401,
        ) -> None:
    """Plot the raw sines $\\sin(kx)$, the interpolatory basis $\\Psi_i$ and the Lagrange basis $\\Phi_j$.

    Interior x-nodes are marked on the sine panels,
    and the y-nodes and macro-element edges on the Lagrange panel.
    """
    x = np.linspace(0.0, np.pi, n)
    y = np.linspace(-data.lagrange.half_width, data.lagrange.half_width, n)
    nodes = data.sine.interior_nodes

    fig, (raw, normalized, lagrange) = plt.subplots(3, 1, figsize=(9, 9))
    raw.set_title(title if title else f'Basis functions, {data.grid}')
    raw.plot(x, data.sine.raw_values(x))
    raw.set_ylabel('sin(kx)')
    normalized.plot(x, data.sine.values(x))
    normalized.plot(nodes, np.ones_like(nodes), 'k.')
    normalized.set_xlabel('x')
    normalized.set_ylabel(r'$\Psi_i(x)$')
    for ax in (raw, normalized):
        for node in nodes:
            ax.axvline(node, color='grey', linewidth=0.5, linestyle=':')
    lagrange.plot(y, data.lagrange.values(y))
    lagrange.plot(data.lagrange.nodes, np.zeros_like(data.lagrange.nodes), 'k|')
    for edge in data.lagrange.edges:
        lagrange.axvline(edge, color='grey', linewidth=0.8, linestyle='--')
    lagrange.set_xlabel('y')
    lagrange.set_ylabel(r'$\Phi_j(y)$')
    _finish(fig, filepath)


def _finish(fig, filepath:str) -> None:
    fig.tight_layout()
    if filepath:
        fig.savefig(filepath)
        plt.close(fig)
        print(f'Figure saved to {filepath}')
    else:
        plt.show()
