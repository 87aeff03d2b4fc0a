"""
# Description

Continuation of the linearized problem over a descending sequence of flow speeds $\\alpha$.

The Gram tables and the flow-independent part of the matrix are built once;
every $\\alpha$ only recombines them with the flow block.
Each solution is classified with `plateflow.plate.analysis.count_zeros()`,
and near-singular solves are flagged instead of aborting the sweep.

Example:
```python
from plateflow.plate import sweep
config = sweep.SweepConfig(alpha_end=-100, alpha_step=10)
records = sweep.run_sweep(config)
sweep.detect_thresholds(records)
```


# Index

| | |
| --- | --- |
| `SweepConfig`         | Range, grid, parameters and classification settings |
| `SweepRecord`         | Classification and norms of one $\\alpha$ |
| `iter_sweep()`        | Yield the records one by one, in descending $\\alpha$ |
| `run_sweep()`         | List of all records |
| `detect_thresholds()` | Constant-modality intervals |
| `detect_onset()`      | First $\\alpha$ where the amplitude jumps |
| `running_max()`       | Largest modality seen so far, per record |
| `summary()`           | Overview of a finished sweep |

---
"""


import numpy as np
from concurrent.futures import ThreadPoolExecutor
from .constants import *
from .model import GridSpec, PlateParameters, SolutionField, make_grid
from .basis import build_basis
from .quadrature import gauss_rule
from .assembly import build_grams, assemble_system
from .solve import lu_solve, NearSingular
from .analysis import count_zeros, norms


class SweepConfig:
    """Settings of a sweep over $\\alpha$, from `alpha_start` down to `alpha_end`."""
    def __init__(
            self,
            alpha_start:float=ALPHA_START,
            alpha_end:float=ALPHA_END,
            alpha_step:float=ALPHA_STEP,
            params:PlateParameters=None,
            grid:GridSpec=None,
            quad_order:int=QUAD_ORDER,
            n_samples:int=N_SAMPLES,
            rel_threshold:float=REL_THRESHOLD,
            workers:int=1,
            ):
        self.alpha_start: float = float(alpha_start)
        """First and largest $\\alpha$."""
        self.alpha_end: float = float(alpha_end)
        """Last $\\alpha$, reached only if it falls on the step lattice."""
        self.alpha_step: float = float(alpha_step)
        """Positive decrement of $\\alpha$ between records."""
        self.params = params if params else PlateParameters()
        """`PlateParameters` of the sweep; their `alpha` is ignored."""
        self.grid = grid if grid else make_grid(N1, M2, self.params.half_width)
        """`GridSpec` of the sweep."""
        self.quad_order: int = quad_order
        """Gauss points per y macro-element."""
        self.n_samples: int = n_samples
        """Midline samples for `count_zeros()`."""
        self.rel_threshold: float = rel_threshold
        """Relative zero band for `count_zeros()`."""
        self.workers: int = workers
        """Number of threads solving in parallel. Records are always returned in order."""
        self.validate()

    def validate(self):
        if not self.alpha_start > self.alpha_end:
            raise ValueError(f"alpha_start must be larger than alpha_end, got {self.alpha_start} and {self.alpha_end}")
        if not self.alpha_step > 0:
            raise ValueError(f"alpha_step must be positive, got {self.alpha_step}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise ValueError(f"workers must be a positive integer, got {self.workers}")
        if self.grid.half_width != self.params.half_width:
            raise ValueError(f"Grid half-width {self.grid.half_width} differs from the parameter half-width {self.params.half_width}")

    def alphas(self):
        """Array of all $\\alpha$ values, descending."""
        count = int(np.floor((self.alpha_start - self.alpha_end) / self.alpha_step + 1e-9)) + 1
        return self.alpha_start - self.alpha_step * np.arange(count)

    def summary(self) -> dict:
        return {
            'alpha_start': self.alpha_start,
            'alpha_end': self.alpha_end,
            'alpha_step': self.alpha_step,
            'records': len(self.alphas()),
            'grid': self.grid.summary(),
            'params': self.params.summary(),
        }

    def __repr__(self):
        return f'SweepConfig({self.alpha_start} -> {self.alpha_end}, step {self.alpha_step}, {self.grid})'


class SweepRecord:
    """Outcome of the solve at one $\\alpha$."""
    def __init__(
            self,
            alpha:float,
            modality_m:int,
            zero_count:int,
            amplitude:float,
            l2:float,
            energy:float,
            solver_flag:str='ok',
            ):
        self.alpha: float = alpha
        self.modality_m: int = modality_m
        """Number of sign regions along the midline, 0 if the field is trivial or not finite."""
        self.zero_count: int = zero_count
        self.amplitude: float = amplitude
        """Largest $|U(x,0)|$ over the midline samples."""
        self.l2: float = l2
        self.energy: float = energy
        self.solver_flag: str = solver_flag
        """Either `'ok'` or `'near_singular'`."""

    def as_dict(self) -> dict:
        """Record as a dict with the column names of the sweep CSV."""
        return {
            'alpha': self.alpha,
            'modality': self.modality_m,
            'zero_count': self.zero_count,
            'amplitude': self.amplitude,
            'l2': self.l2,
            'energy': self.energy,
            'flag': self.solver_flag,
        }

    def __eq__(self, other):
        if not isinstance(other, SweepRecord):
            return NotImplemented
        # NaN norms of failed solves compare equal to each other
        mine, theirs = self.as_dict(), other.as_dict()
        for key in mine:
            a, b = mine[key], theirs[key]
            if isinstance(a, float) and isinstance(b, float) and np.isnan(a) and np.isnan(b):
                continue
            if a != b:
                return False
        return True

    def __repr__(self):
        return f'SweepRecord(alpha={self.alpha}, modality_m={self.modality_m}, amplitude={self.amplitude:.6g}, flag={self.solver_flag})'


def iter_sweep(
        config:SweepConfig,
        rebuild:bool=False,
        verbose:bool=False,
        ):
    """Yield one `SweepRecord` per $\\alpha$, in descending order.

    The flow-independent matrix is cached across the sweep,
    unless `rebuild = True`, which assembles the full system at every $\\alpha$.
    Both give identical records.
    """
    grid = config.grid
    basis = build_basis(grid, verbose)
    grams = build_grams(basis, gauss_rule(config.quad_order))
    base = assemble_system(grams, config.params.replace(alpha=config.alpha_start), grid)
    alphas = config.alphas()
    if verbose:
        print(f"Sweeping {len(alphas)} values of alpha from {alphas[0]} to {alphas[-1]} on {grid}")

    def record(alpha):
        alpha = float(alpha)
        if rebuild:
            system = assemble_system(grams, config.params.replace(alpha=alpha), grid)
        else:
            system = base.at_alpha(alpha)
        return _classify(system, basis, grams, config)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = pool.map(record, alphas)
            for n, result in enumerate(results):
                _progress(n, result, len(alphas), verbose)
                yield result
    else:
        for n, alpha in enumerate(alphas):
            result = record(alpha)
            _progress(n, result, len(alphas), verbose)
            yield result


def run_sweep(
        config:SweepConfig,
        rebuild:bool=False,
        verbose:bool=False,
        ) -> list:
    """Run the whole sweep and return the list of `SweepRecord`, in descending $\\alpha$."""
    return list(iter_sweep(config, rebuild, verbose))


def detect_thresholds(records:list) -> list:
    """Compress the records into maximal runs of constant modality.

    Returns a list of `(alpha_lo, alpha_hi, m)` tuples, ordered by descending $\\alpha$,
    where `alpha_hi` is the first and `alpha_lo` the last $\\alpha$ of the run.
    """
    if not records:
        raise ValueError("detect_thresholds needs at least one record")
    intervals = []
    start = records[0]
    previous = records[0]
    for current in records[1:]:
        if current.modality_m != start.modality_m:
            intervals.append((previous.alpha, start.alpha, start.modality_m))
            start = current
        previous = current
    intervals.append((previous.alpha, start.alpha, start.modality_m))
    return intervals


def detect_onset(
        records:list,
        factor:float=10.0,
        window:int=50,
        ):
    """First $\\alpha$ whose amplitude exceeds `factor` times the median amplitude of the previous `window` records.

    Non-finite amplitudes are ignored. Returns None if the amplitude never jumps.
    """
    amplitudes = np.array([r.amplitude for r in records], dtype=float)
    for n in range(1, len(records)):
        previous = amplitudes[max(0, n - window):n]
        previous = previous[np.isfinite(previous)]
        if previous.size == 0 or not np.isfinite(amplitudes[n]):
            continue
        if amplitudes[n] > factor * np.median(previous):
            return records[n].alpha
    return None


def running_max(records:list):
    """Largest modality observed over $[\\alpha, \\alpha_{start}]$, for every record."""
    return np.maximum.accumulate([r.modality_m for r in records])


def summary(records:list) -> dict:
    """Distinct modality classes, near-singular count, onset and largest modality of a sweep."""
    if not records:
        raise ValueError("Cannot summarise an empty sweep")
    classes = sorted(set(r.modality_m for r in records if r.modality_m > 0))
    return {
        'records': len(records),
        'alpha_range': (records[0].alpha, records[-1].alpha),
        'classes': classes,
        'max_modality': int(running_max(records)[-1]),
        'near_singular': sum(1 for r in records if r.solver_flag == 'near_singular'),
        'onset': detect_onset(records),
    }


def _classify(system, basis, grams, config:SweepConfig) -> SweepRecord:
    """Solve one system and build its record."""
    alpha = system.params.alpha
    flag = 'ok'
    try:
        report = lu_solve(system)
    except NearSingular as error:
        report = error.report
        flag = 'near_singular'
    if not report.finite:
        return SweepRecord(alpha, 0, 0, float('nan'), float('nan'), float('nan'), flag)
    field = SolutionField(report.solution, basis)
    modality = count_zeros(field, config.n_samples, config.rel_threshold)
    field_norms = norms(field, grams, config.params.sigma)
    return SweepRecord(
        alpha=alpha,
        modality_m=modality.modality_m,
        zero_count=modality.zero_count,
        amplitude=modality.amplitude,
        l2=field_norms['l2'],
        energy=field_norms['energy'],
        solver_flag=flag,
    )


def _progress(n:int, record:SweepRecord, total:int, verbose:bool):
    if record.solver_flag == 'near_singular' and verbose:
        print(f"WARNING: Near-singular system at alpha = {record.alpha}")
    if verbose and ((n + 1) % 100 == 0 or n + 1 == total):
        print(f"{n + 1}/{total}  alpha = {record.alpha}  m = {record.modality_m}")
