import numpy as np
from pytest import approx
import plateflow.plate as pl
from plateflow.plate.sweep import (
    SweepConfig,
    SweepRecord,
    run_sweep,
    iter_sweep,
    detect_thresholds,
    detect_onset,
    running_max,
    summary,
)


def small_config(**changes):
    settings = {
        'alpha_start': 0.0,
        'alpha_end': -100.0,
        'alpha_step': 10.0,
        'grid': pl.make_grid(8, 2),
    }
    settings.update(changes)
    return SweepConfig(**settings)


def records_from(alphas, modalities, amplitudes=None):
    amplitudes = amplitudes if amplitudes is not None else [1.0] * len(alphas)
    return [SweepRecord(a, m, max(m - 1, 0), amp, 1.0, 1.0) for a, m, amp in zip(alphas, modalities, amplitudes)]


def test_config():
    config = SweepConfig(alpha_start=0, alpha_end=-10, alpha_step=1, grid=pl.make_grid(8, 2))
    alphas = config.alphas()
    assert len(alphas) == 11
    assert alphas[0] == 0.0
    assert alphas[-1] == -10.0
    assert np.all(np.diff(alphas) < 0)
    assert list(SweepConfig(0, -10, 3, grid=pl.make_grid(8, 2)).alphas()) == [0.0, -3.0, -6.0, -9.0]
    assert SweepConfig().alphas()[-1] == -8000.0
    assert config.summary()['records'] == 11
    for changes in [{'alpha_end': 0.0}, {'alpha_end': 10.0}, {'alpha_step': 0.0}, {'workers': 0}, {'grid': pl.make_grid(8, 2, 0.3)}]:
        try:
            small_config(**changes)
            assert False
        except ValueError:
            assert True


def test_detect_thresholds():
    records = records_from([0, -1, -2, -3, -4], [1, 1, 2, 2, 3])
    assert detect_thresholds(records) == [(-1, 0, 1), (-3, -2, 2), (-4, -4, 3)]
    records = records_from([0, -1, -2], [1, 1, 1])
    assert detect_thresholds(records) == [(-2, 0, 1)]
    records = records_from([0], [2])
    assert detect_thresholds(records) == [(0, 0, 2)]
    try:
        detect_thresholds([])
        assert False
    except ValueError:
        assert True


def test_detect_onset():
    alphas = [-float(n) for n in range(61)]
    records = records_from(alphas, [1] * 61, [1.0] * 60 + [100.0])
    assert detect_onset(records) == -60.0
    assert detect_onset(records, factor=1000.0) == None
    records = records_from(alphas[:3], [1, 1, 1], [1.0, np.nan, 2.0])
    assert detect_onset(records) == None


def test_summary():
    records = records_from([0, -1, -2, -3, -4], [1, 2, 0, 1, 3])
    records[2].solver_flag = 'near_singular'
    assert list(running_max(records)) == [1, 2, 2, 2, 3]
    overview = summary(records)
    assert overview['records'] == 5
    assert overview['alpha_range'] == (0, -4)
    assert overview['classes'] == [1, 2, 3]
    assert overview['max_modality'] == 3
    assert overview['near_singular'] == 1
    assert overview['onset'] == None
    try:
        summary([])
        assert False
    except ValueError:
        assert True


def test_record_equality():
    a = SweepRecord(-1.0, 0, 0, np.nan, np.nan, np.nan, 'near_singular')
    b = SweepRecord(-1.0, 0, 0, np.nan, np.nan, np.nan, 'near_singular')
    assert a == b
    assert a != SweepRecord(-1.0, 0, 0, np.nan, np.nan, np.nan, 'ok')
    assert list(a.as_dict().keys()) == ['alpha', 'modality', 'zero_count', 'amplitude', 'l2', 'energy', 'flag']


def test_run_sweep():
    config = small_config()
    records = run_sweep(config)
    assert len(records) == 11
    assert [r.alpha for r in records] == list(config.alphas())
    first = records[0]
    assert first.alpha == 0.0
    assert first.solver_flag == 'ok'
    assert first.modality_m == 1
    assert first.amplitude > 0
    for record in records:
        assert record.solver_flag in ('ok', 'near_singular')
        if record.solver_flag == 'ok':
            assert record.modality_m >= 1
            assert record.l2 > 0
            assert record.energy > 0
    # Running maximum never decreases along the sweep
    assert np.all(np.diff(running_max(records)) >= 0)
    # Thresholds cover the sweep without gaps
    intervals = detect_thresholds(records)
    assert intervals[0][1] == 0.0
    assert intervals[-1][0] == -100.0
    # The generator gives the same records
    assert list(iter_sweep(config)) == records


def test_sweep_caching():
    config = small_config()
    cached = run_sweep(config)
    rebuilt = run_sweep(config, rebuild=True)
    assert cached == rebuilt
    assert run_sweep(config) == cached


def test_sweep_workers():
    sequential = run_sweep(small_config())
    threaded = run_sweep(small_config(workers=3))
    assert len(threaded) == len(sequential)
    for a, b in zip(sequential, threaded):
        assert a.alpha == b.alpha
        assert a.modality_m == b.modality_m
        assert a.solver_flag == b.solver_flag
        assert a.l2 == approx(b.l2, rel=1e-12)
        assert a.energy == approx(b.energy, rel=1e-12)


def test_coarse_sweep():
    config = SweepConfig(alpha_start=0.0, alpha_end=-3000.0, alpha_step=10.0, grid=pl.make_grid(14, 4))
    records = run_sweep(config)
    assert len(records) == 301
    modalities = [r.modality_m for r in records if r.solver_flag == 'ok']
    assert len(set(modalities)) >= 3
    assert np.all(np.diff(running_max(records)) >= 0)
    assert summary(records)['max_modality'] >= 3
    # A second run gives the same records
    assert run_sweep(config) == records
