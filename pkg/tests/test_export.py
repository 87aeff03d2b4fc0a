import os
import numpy as np
from pytest import approx
import plateflow.plate as pl
from plateflow.plate import export
from plateflow.plate.sweep import SweepRecord
from plateflow.plate.solve import linear


def solved(n1=8, m2=2, alpha=-10.0):
    field, report = linear(pl.PlateParameters(alpha=alpha), pl.make_grid(n1, m2))
    return field


def test_field_csv(tmp_path):
    field = solved()
    path = str(tmp_path / 'field.csv')
    written = export.write_field_csv(field, path, nx=21, ny=9, verbose=False)
    assert len(written) == 21 * 9
    with open(path, 'r') as f:
        lines = f.read().splitlines()
    assert lines[0].startswith('# ')
    assert any(line.startswith('# Calculated with plateflow') for line in lines)
    header = [line for line in lines if not line.startswith('#')][0]
    assert header == 'x,y,u'
    df = export.read_field_csv(path)
    assert np.all(df['x'].to_numpy() == written['x'].to_numpy())
    assert np.all(df['y'].to_numpy() == written['y'].to_numpy())
    assert np.all(df['u'].to_numpy() == written['u'].to_numpy())
    # Rows run along x first, and the field vanishes on the hinged edges
    assert df['x'].iloc[0] == 0.0
    assert df['x'].iloc[20] == approx(np.pi)
    assert df['y'].iloc[0] == approx(-0.2)
    assert np.all(df[df['x'] == 0.0]['u'] == 0.0)
    assert np.all(df[df['x'] == np.pi]['u'] == 0.0)
    x, y, U = field.lattice(21, 9)
    assert np.all(df['u'].to_numpy().reshape(9, 21) == U)


def test_byte_identical(tmp_path):
    first = str(tmp_path / 'first.csv')
    second = str(tmp_path / 'second.csv')
    export.write_field_csv(solved(), first, nx=11, ny=5, verbose=False)
    export.write_field_csv(solved(), second, nx=11, ny=5, verbose=False)
    with open(first, 'rb') as a, open(second, 'rb') as b:
        assert a.read() == b.read()
    first = str(tmp_path / 'first.vtk')
    second = str(tmp_path / 'second.vtk')
    export.write_vtk(solved(), first, nx=11, ny=5, verbose=False)
    export.write_vtk(solved(), second, nx=11, ny=5, verbose=False)
    with open(first, 'rb') as a, open(second, 'rb') as b:
        assert a.read() == b.read()


def test_nodes(tmp_path):
    field = solved()
    path = str(tmp_path / 'nodes.csv')
    df = export.write_nodes(field, path, verbose=False)
    assert list(df.columns) == ['i', 'j', 'x', 'y', 'q']
    assert df['i'].iloc[0] == 1
    assert df['j'].iloc[-1] == field.grid.n2
    assert df['i'].iloc[field.grid.n1_bar] == 1
    assert df['j'].iloc[field.grid.n1_bar] == 2
    loaded = export.read_nodes(path, field.basis)
    assert np.all(loaded.coefficients == field.coefficients)
    assert loaded.comment == 'nodes.csv'
    # Nodes of another grid are rejected
    other = pl.basis.build_basis(pl.make_grid(6, 2), verbose=False)
    try:
        export.read_nodes(path, other)
        assert False
    except ValueError:
        assert True
    try:
        export.read_nodes(str(tmp_path / 'missing.csv'), field.basis)
        assert False
    except FileNotFoundError:
        assert True


def test_vtk(tmp_path):
    field = solved()
    path = str(tmp_path / 'field.vtk')
    export.write_vtk(field, path, nx=21, ny=9, verbose=False)
    with open(path, 'r') as f:
        lines = f.read().splitlines()
    assert lines[0] == '# vtk DataFile Version 3.0'
    assert lines[2] == 'ASCII'
    assert lines[3] == 'DATASET STRUCTURED_GRID'
    assert lines[4] == 'DIMENSIONS 21 9 1'
    assert 'SCALARS u double 1' in lines
    x, y, U = export.read_vtk(path)
    lx, ly, LU = field.lattice(21, 9)
    assert np.all(x == lx)
    assert np.all(y == ly)
    assert np.all(U == LU)
    assert np.all(U[:, 0] == 0.0)
    assert np.all(U[:, -1] == 0.0)
    bad = tmp_path / 'bad.vtk'
    bad.write_text('not a vtk file\n\n\n\n\n')
    try:
        export.read_vtk(str(bad))
        assert False
    except ValueError:
        assert True


def test_sweep_csv(tmp_path):
    records = [
        SweepRecord(0.0, 1, 0, 0.25, 0.1, 0.5),
        SweepRecord(-10.0, 2, 1, 0.125, 0.05, 0.75),
        SweepRecord(-20.0, 0, 0, float('nan'), float('nan'), float('nan'), 'near_singular'),
    ]
    path = str(tmp_path / 'sweep.csv')
    df = export.write_sweep_csv(records, path, verbose=False)
    assert list(df.columns) == export.SWEEP_COLUMNS
    with open(path, 'r') as f:
        header = [line for line in f.read().splitlines() if not line.startswith('#')][0]
    assert header == 'alpha,modality,zero_count,amplitude,l2,energy,flag'
    assert export.read_sweep_csv(path) == records
    intervals = [(-10.0, 0.0, 1), (-20.0, -20.0, 2)]
    path = str(tmp_path / 'thresholds.csv')
    export.write_thresholds_csv(intervals, path, verbose=False)
    assert export.read_thresholds_csv(path) == intervals
    try:
        export.read_thresholds_csv(str(tmp_path / 'sweep.csv'))
        assert False
    except ValueError:
        assert True
