"""
# Description

Reading and writing of result files.

CSV files start with a few comment lines prefixed by `#`,
including the version of the package, followed by a header row.
Floats are written at full round-trip precision,
so re-exporting the same data gives byte-identical files.
Fields are also exported as legacy ASCII VTK structured grids,
with the displacement as point scalar `u`.


# Index

| | |
| --- | --- |
| `write_field_csv()`      | Field sampled on a uniform lattice, columns x,y,u |
| `read_field_csv()`       | Read a field CSV |
| `write_nodes()`          | Nodal coefficients, columns i,j,x,y,q |
| `read_nodes()`           | Rebuild a `SolutionField` from a nodes CSV |
| `write_vtk()`            | Field as a VTK structured grid |
| `read_vtk()`             | Read back a VTK structured grid |
| `write_sweep_csv()`      | Sweep records |
| `read_sweep_csv()`       | Read sweep records |
| `write_thresholds_csv()` | Constant-modality intervals |
| `read_thresholds_csv()`  | Read constant-modality intervals |

---
"""


import os
import numpy as np
import pandas as pd
from plateflow._version import __version__
import plateflow.st.alias as alias
from .constants import *
from .model import SolutionField
from .sweep import SweepRecord


SWEEP_COLUMNS = ['alpha', 'modality', 'zero_count', 'amplitude', 'l2', 'energy', 'flag']
"""Header of the sweep CSV."""

THRESHOLD_COLUMNS = ['alpha_lo', 'alpha_hi', 'm']
"""Header of the thresholds CSV."""


def write_field_csv(
        field:SolutionField,
        filepath:str='field.csv',
        nx:int=EXPORT_NX,
        ny:int=EXPORT_NY,
        comment:str=None,
        verbose:bool=True,
        ) -> pd.DataFrame:
    """Sample the `field` on a uniform `nx` by `ny` lattice and save it with columns x,y,u.

    Rows run along x first, then along y.
    Returns the DataFrame.
    """
    x, y, U = field.lattice(nx, ny)
    X, Y = np.meshgrid(x, y)
    df = pd.DataFrame({'x': X.ravel(), 'y': Y.ravel(), 'u': U.ravel()})
    header = [comment if comment else field.comment, 'Displacement field sampled on a uniform lattice', _grid_line(field)]
    _write_csv(df, filepath, header)
    if verbose:
        print(f'Field saved to {filepath}')
    return df


def read_field_csv(filepath:str) -> pd.DataFrame:
    """Read a field CSV written by `write_field_csv()`."""
    return _read_csv(filepath, ['x', 'y', 'u'])


def write_nodes(
        field:SolutionField,
        filepath:str='nodes.csv',
        comment:str=None,
        verbose:bool=True,
        ) -> pd.DataFrame:
    """Save the nodal coefficients of the `field` with columns i,j,x,y,q, 1-based indices, in flat order."""
    grid = field.grid
    x, y = grid.node_coordinates()
    j, i = np.divmod(np.arange(grid.dof), grid.n1_bar)
    df = pd.DataFrame({'i': i + 1, 'j': j + 1, 'x': x, 'y': y, 'q': field.coefficients})
    header = [comment if comment else field.comment, 'Nodal coefficients', _grid_line(field)]
    _write_csv(df, filepath, header)
    if verbose:
        print(f'Nodal coefficients saved to {filepath}')
    return df


def read_nodes(
        filepath:str,
        basis,
        ) -> SolutionField:
    """Read a nodes CSV into a `SolutionField` over `basis`.

    Raises a `ValueError` if the nodes do not match the grid of the basis.
    """
    df = _read_csv(filepath, ['i', 'j', 'x', 'y', 'q'])
    grid = basis.grid
    if len(df) != grid.dof:
        raise ValueError(f"{filepath} holds {len(df)} nodes, but {grid} has {grid.dof}")
    x, y = grid.node_coordinates()
    mismatch = max(np.max(np.abs(df['x'].to_numpy() - x)), np.max(np.abs(df['y'].to_numpy() - y)))
    if mismatch > 1e-12:
        raise ValueError(f"Node coordinates in {filepath} do not match {grid}, largest difference {mismatch:.3e}")
    return SolutionField(df['q'].to_numpy(), basis, comment=os.path.basename(filepath))


def write_vtk(
        field:SolutionField,
        filepath:str='field.vtk',
        nx:int=EXPORT_NX,
        ny:int=EXPORT_NY,
        verbose:bool=True,
        ) -> None:
    """Save the `field` on a uniform lattice as a legacy ASCII VTK structured grid, with point scalar `u`."""
    x, y, U = field.lattice(nx, ny)
    X, Y = np.meshgrid(x, y)
    points = len(x) * len(y)
    with open(filepath, 'w') as f:
        f.write('# vtk DataFile Version 3.0\n')
        title = f"plateflow {__version__} {field.comment if field.comment else 'field'}"
        # The title is a single line of at most 256 characters
        f.write(' '.join(title.split())[:255] + '\n')
        f.write('ASCII\n')
        f.write('DATASET STRUCTURED_GRID\n')
        f.write(f'DIMENSIONS {len(x)} {len(y)} 1\n')
        f.write(f'POINTS {points} double\n')
        for xp, yp in zip(X.ravel(), Y.ravel()):
            f.write(f'{float(xp)!r} {float(yp)!r} 0.0\n')
        f.write(f'POINT_DATA {points}\n')
        f.write('SCALARS u double 1\n')
        f.write('LOOKUP_TABLE default\n')
        for value in U.ravel():
            f.write(f'{float(value)!r}\n')
    if verbose:
        print(f'VTK structured grid saved to {filepath}')


def read_vtk(filepath:str) -> tuple:
    """Read a structured grid written by `write_vtk()`.

    Returns `(x, y, U)`, with `U` of shape `(ny, nx)`.
    """
    with open(filepath, 'r') as f:
        lines = [line.strip() for line in f if line.strip()]
    if not lines[0].startswith('# vtk DataFile') or 'STRUCTURED_GRID' not in lines[3]:
        raise ValueError(f"{filepath} is not a legacy VTK structured grid")
    nx, ny, _ = (int(n) for n in lines[4].split()[1:4])
    points = nx * ny
    coordinates = np.array([line.split() for line in lines[6:6 + points]], dtype=float)
    start = lines.index('LOOKUP_TABLE default') + 1
    values = np.array(lines[start:start + points], dtype=float)
    x = coordinates[:nx, 0]
    y = coordinates[::nx, 1]
    return x, y, values.reshape(ny, nx)


def write_sweep_csv(
        records:list,
        filepath:str='sweep.csv',
        comment:str=None,
        verbose:bool=True,
        ) -> pd.DataFrame:
    """Save sweep records with columns alpha,modality,zero_count,amplitude,l2,energy,flag."""
    df = pd.DataFrame([r.as_dict() for r in records], columns=SWEEP_COLUMNS)
    _write_csv(df, filepath, [comment, 'Sweep over the flow parameter alpha'])
    if verbose:
        print(f'Sweep table saved to {filepath}')
    return df


def read_sweep_csv(filepath:str) -> list:
    """Read a sweep CSV back into a list of `SweepRecord`."""
    df = _read_csv(filepath, SWEEP_COLUMNS)
    records = []
    for row in df.itertuples(index=False):
        records.append(SweepRecord(
            alpha=float(row.alpha),
            modality_m=int(row.modality),
            zero_count=int(row.zero_count),
            amplitude=float(row.amplitude),
            l2=float(row.l2),
            energy=float(row.energy),
            solver_flag=alias.normalise(row.flag, alias.flags),
        ))
    return records


def write_thresholds_csv(
        intervals:list,
        filepath:str='thresholds.csv',
        comment:str=None,
        verbose:bool=True,
        ) -> pd.DataFrame:
    """Save `(alpha_lo, alpha_hi, m)` intervals with columns alpha_lo,alpha_hi,m."""
    df = pd.DataFrame(list(intervals), columns=THRESHOLD_COLUMNS)
    _write_csv(df, filepath, [comment, 'Intervals of constant modality'])
    if verbose:
        print(f'Thresholds saved to {filepath}')
    return df


def read_thresholds_csv(filepath:str) -> list:
    """Read a thresholds CSV back into a list of `(alpha_lo, alpha_hi, m)` tuples."""
    df = _read_csv(filepath, THRESHOLD_COLUMNS)
    return [(float(lo), float(hi), int(m)) for lo, hi, m in df.itertuples(index=False)]


def _grid_line(field:SolutionField) -> str:
    grid = field.grid
    return f'Grid n1={grid.n1} m2={grid.m2} half_width={grid.half_width!r}'


def _write_csv(df:pd.DataFrame, filepath:str, header:list) -> None:
    """Write the comment `header` lines, then the DataFrame."""
    with open(filepath, 'w') as f:
        for line in header:
            if line:
                f.write(f'# {line}\n')
        f.write(f'# Calculated with plateflow {__version__}\n')
        df.to_csv(f, sep=',', index=False)


def _read_csv(filepath:str, columns:list) -> pd.DataFrame:
    if not os.path.isfile(filepath):
        raise FileNotFoundError(f"Missing file: {filepath}")
    df = pd.read_csv(filepath, comment='#', float_precision='round_trip')
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise ValueError(f"{filepath} is missing the columns {missing}")
    return df
