"""
# Description

Command-line interface, installed as `plateflow`.

```bash
plateflow solve  --config run.json --out results --export both
plateflow sweep  --config run.json --coarse
plateflow lift   --config run.json --field results/nodes.csv
plateflow verify
```

The configuration is a flat JSON object.
Absent keys take the defaults of `plateflow.plate.constants`,
and unknown keys are rejected.
The short names `G`, `P`, `S` and `l` are accepted
for `g_const`, `p_prestress`, `s_stretch` and `half_width`.

Exit codes are 0 on success, 1 for usage or configuration errors,
2 for numerical failures, 3 when a verification check fails,
and 130 when interrupted.


# Index

| | |
| --- | --- |
| `RunConfig`      | All settings of a run |
| `ConfigError`    | Invalid configuration, naming the offending key |
| `parse_config()` | Parse a JSON document into a `RunConfig` |
| `cmd_solve()`    | Solve, print a summary and export the field |
| `cmd_sweep()`    | Sweep over alpha and export the tables |
| `cmd_lift()`     | Lift a field to the nonlinear problem |
| `cmd_verify()`   | Run the self-check suite |
| `main()`         | Entry point |

---
"""


import argparse
import json
import os
import sys
import numpy as np
import plateflow.st.file as file
import plateflow.st.alias as alias
from plateflow._version import __version__
from .constants import *
from .model import PlateParameters, SolutionField, make_grid
from .basis import build_basis
from .quadrature import gauss_rule
from .assembly import build_grams, assemble_system
from .solve import lu_solve, estimate_lambda1, dense_lambda2, prestress_regime, NearSingular, NotConverged
from .analysis import norms, count_zeros, lift_to_nonlinear, nonlinear_residual, HypothesisViolated, TrivialInput
from . import sweep
from . import export
from . import verify


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY = 3
EXIT_INTERRUPTED = 130

KEY_ALIASES = {
    'G': 'g_const',
    'P': 'p_prestress',
    'S': 's_stretch',
    'l': 'half_width',
}
"""Short configuration keys and their full names."""


class ConfigError(ValueError):
    """Invalid configuration. The offending key is stored in `field`."""
    def __init__(self, message:str, field:str=None):
        super().__init__(message)
        self.field = field


class RunConfig:
    """Settings of a command-line run. Defaults reproduce the standard narrow-plate case."""
    def __init__(self):
        self.sigma: float = SIGMA
        self.mu: float = MU
        self.alpha: float = ALPHA
        self.g_const: float = G_CONST
        self.p_prestress: float = P_PRESTRESS
        self.s_stretch: float = S_STRETCH
        self.half_width: float = HALF_WIDTH
        self.n1: int = N1
        self.m2: int = M2
        self.quad_order: int = QUAD_ORDER
        self.alpha_start: float = ALPHA_START
        self.alpha_end: float = ALPHA_END
        self.alpha_step: float = ALPHA_STEP
        self.coarse_step: float = COARSE_STEP
        """Step used by `sweep --coarse`."""
        self.workers: int = 1
        """Threads of the sweep."""
        self.n_samples: int = N_SAMPLES
        self.rel_threshold: float = REL_THRESHOLD
        self.export: str = 'both'
        """Export format: `'csv'`, `'vtk'` or `'both'`."""
        self.out_dir: str = '.'
        """Output folder."""
        self.export_nx: int = EXPORT_NX
        self.export_ny: int = EXPORT_NY
        self.verify_n1: int = VERIFY_N1
        self.verify_m2: int = VERIFY_M2

    def validate(self):
        """Raise a `ConfigError` naming the first key out of range."""
        checks = [
            ('sigma', 0.0 < self.sigma < 1.0, 'must be in the open interval (0, 1)'),
            ('half_width', self.half_width > 0.0, 'must be positive'),
            ('s_stretch', self.s_stretch >= 0.0, 'must be non-negative'),
            ('n1', self.n1 >= 3, 'must be at least 3'),
            ('m2', self.m2 >= 1, 'must be at least 1'),
            ('quad_order', 4 <= self.quad_order <= 16, 'must be in 4..16'),
            ('alpha_step', self.alpha_step > 0.0, 'must be positive'),
            ('coarse_step', self.coarse_step > 0.0, 'must be positive'),
            ('alpha_end', self.alpha_start > self.alpha_end, 'must be smaller than alpha_start'),
            ('workers', self.workers >= 1, 'must be at least 1'),
            ('n_samples', self.n_samples >= 64, 'must be at least 64'),
            ('rel_threshold', 0.0 < self.rel_threshold < 1.0, 'must be in the open interval (0, 1)'),
            ('export_nx', self.export_nx >= 2, 'must be at least 2'),
            ('export_ny', self.export_ny >= 2, 'must be at least 2'),
            ('verify_n1', self.verify_n1 >= 3, 'must be at least 3'),
            ('verify_m2', self.verify_m2 >= 1, 'must be at least 1'),
        ]
        for key, valid, requirement in checks:
            if not valid:
                raise ConfigError(f"{key} {requirement}, got {getattr(self, key)}", key)
        return self

    def params(self) -> PlateParameters:
        return PlateParameters(self.sigma, self.mu, self.alpha, self.g_const, self.p_prestress, self.s_stretch, self.half_width)

    def grid(self):
        return make_grid(self.n1, self.m2, self.half_width)

    def sweep_config(self, coarse:bool=False) -> sweep.SweepConfig:
        return sweep.SweepConfig(
            alpha_start=self.alpha_start,
            alpha_end=self.alpha_end,
            alpha_step=self.coarse_step if coarse else self.alpha_step,
            params=self.params(),
            grid=self.grid(),
            quad_order=self.quad_order,
            n_samples=self.n_samples,
            rel_threshold=self.rel_threshold,
            workers=self.workers,
        )

    def summary(self) -> dict:
        return dict(vars(self))

    def __repr__(self):
        return f'RunConfig({self.summary()})'


def parse_config(text:str) -> RunConfig:
    """Parse a flat JSON object into a validated `RunConfig`.

    An empty document gives the defaults.
    Raises `ConfigError` for malformed documents, unknown keys, wrong types or out-of-range values.
    """
    config = RunConfig()
    if text is None or not text.strip():
        return config.validate()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError(f"Malformed configuration document: {error}")
    if not isinstance(document, dict):
        raise ConfigError("The configuration must be a single flat JSON object")
    defaults = vars(RunConfig())
    for key, value in document.items():
        name = KEY_ALIASES.get(key, key)
        if name not in defaults:
            raise ConfigError(f"Unknown configuration key '{key}'", key)
        setattr(config, name, _coerce(name, value, defaults[name]))
    return config.validate()


def cmd_solve(config:RunConfig) -> int:
    """Solve the linearized problem, print a summary and export the field."""
    params = config.params()
    grid = config.grid()
    basis = build_basis(grid)
    grams = build_grams(basis, gauss_rule(config.quad_order))
    system = assemble_system(grams, params, grid)
    try:
        report = lu_solve(system)
    except NearSingular as error:
        print(f"ERROR: Near-singular system at alpha = {params.alpha}: {error}")
        print(f"       pivot_min = {error.report.pivot_min:.3e}, condition estimate = {error.report.condition_estimate:.3e}")
        return EXIT_NUMERICAL
    field = SolutionField(report.solution, basis, comment=f'alpha={params.alpha!r}')
    field_norms = norms(field, grams, params.sigma)
    modality = count_zeros(field, config.n_samples, config.rel_threshold)
    print(f"plateflow {__version__}  solve  {grid}")
    print(f"alpha = {params.alpha!r}  sigma = {params.sigma!r}  mu = {params.mu!r}  G = {params.g_const!r}")
    print(f"residual = {report.residual_norm:.3e}  pivot_min = {report.pivot_min:.3e}  condition = {report.condition_estimate:.3e}")
    print(f"amplitude = {modality.amplitude:.10g}  zero_count = {modality.zero_count}  modality = {modality.modality_m}")
    print(f"l2 = {field_norms['l2']:.10g}  l2_ux = {field_norms['l2_ux']:.10g}  h2_semi = {field_norms['h2_semi']:.10g}  energy = {field_norms['energy']:.10g}")
    _print_regime(grams, grid, params)
    _export_field(field, config)
    return EXIT_OK


def cmd_sweep(config:RunConfig, coarse:bool=False) -> int:
    """Sweep over alpha, then write the sweep and thresholds tables.

    Records solved before an interruption are still written.
    """
    sweep_config = config.sweep_config(coarse)
    folder = file.get_dir(config.out_dir, create=True)
    sweep_path = os.path.join(folder, 'sweep.csv')
    records = []
    try:
        for record in sweep.iter_sweep(sweep_config, verbose=True):
            records.append(record)
    except KeyboardInterrupt:
        print(f"WARNING: Sweep interrupted after {len(records)} records")
        if records:
            export.write_sweep_csv(records, sweep_path, comment='Partial sweep')
        return EXIT_INTERRUPTED
    intervals = sweep.detect_thresholds(records)
    export.write_sweep_csv(records, sweep_path)
    export.write_thresholds_csv(intervals, os.path.join(folder, 'thresholds.csv'))
    overview = sweep.summary(records)
    print(f"Modality classes: {overview['classes']}  largest modality: {overview['max_modality']}")
    print(f"Near-singular records: {overview['near_singular']}  onset: {overview['onset']}")
    return EXIT_OK


def cmd_lift(config:RunConfig, field_path:str=None) -> int:
    """Lift a linearized solution to the nonlinear problem and report the residual.

    The field is read from the nodes CSV at `field_path`, or solved from the configuration.
    """
    params = config.params()
    grid = config.grid()
    basis = build_basis(grid)
    grams = build_grams(basis, gauss_rule(config.quad_order))
    if field_path:
        field = export.read_nodes(file.get(field_path), basis)
    else:
        try:
            report = lu_solve(assemble_system(grams, params, grid))
        except NearSingular as error:
            print(f"ERROR: Near-singular system at alpha = {params.alpha}: {error}")
            return EXIT_NUMERICAL
        field = SolutionField(report.solution, basis, comment=f'alpha={params.alpha!r}')
    try:
        lift = lift_to_nonlinear(field, params, grams)
    except HypothesisViolated as error:
        print(f"ERROR: {error}. A nontrivial solution of the nonlinear problem needs mu > -P and S > 0.")
        return EXIT_CONFIG
    except TrivialInput as error:
        print(f"ERROR: {error}")
        return EXIT_NUMERICAL
    residual = nonlinear_residual(lift.lifted_field, lift.g_const, params, grams)
    print(f"plateflow {__version__}  lift  {grid}")
    print(f"scale = {lift.scale:.10g}  implied_g_scale = {lift.implied_g_scale:.10g}  g = {lift.g_const:.10g}")
    print(f"bracket = {lift.bracket_value!r}  mu = {params.mu!r}  |bracket - mu| = {abs(lift.bracket_value - params.mu):.3e}")
    print(f"nonlinear residual = {residual:.3e}")
    _print_regime(grams, grid, params)
    _export_field(lift.lifted_field, config, prefix='lifted_')
    return EXIT_OK


def cmd_verify(config:RunConfig, inject:str=None) -> int:
    """Run the self-check suite on the small verification grid."""
    print(f"plateflow {__version__}  verify  n1 = {config.verify_n1}, m2 = {config.verify_m2}")
    results = verify.run_checks(config.verify_n1, config.verify_m2, config.params().replace(alpha=0.0), inject, verbose=True)
    return EXIT_OK if verify.all_passed(results) else EXIT_VERIFY


def main(argv:list=None) -> int:
    """Entry point of the `plateflow` command. Returns the exit code."""
    parser = argparse.ArgumentParser(prog='plateflow', description='Hinged-free plate in a flow: solve, sweep, lift and verify.')
    parser.add_argument('command', choices=['solve', 'sweep', 'lift', 'verify'])
    parser.add_argument('--config', help='flat JSON configuration file')
    parser.add_argument('--out', help='output folder')
    parser.add_argument('--coarse', action='store_true', help='sweep with the coarse step')
    parser.add_argument('--export', help='export format: csv, vtk or both')
    parser.add_argument('--field', help='nodes CSV of the field to lift')
    parser.add_argument('--inject', choices=verify.INJECTIONS, help='fault injected into the verification suite')
    parser.add_argument('--version', action='version', version=f'plateflow {__version__}')
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit:
        return EXIT_OK if exit.code == 0 else EXIT_CONFIG
    try:
        text = ''
        if args.config:
            with open(file.get(args.config), 'r') as f:
                text = f.read()
        config = parse_config(text)
        if args.out:
            config.out_dir = args.out
        if args.export:
            config.export = _coerce('export', args.export, 'both')
    except (ConfigError, FileNotFoundError) as error:
        print(f"ERROR: {error}")
        return EXIT_CONFIG
    try:
        if args.command == 'solve':
            return cmd_solve(config)
        if args.command == 'sweep':
            return cmd_sweep(config, args.coarse)
        if args.command == 'lift':
            return cmd_lift(config, args.field)
        return cmd_verify(config, args.inject)
    except KeyboardInterrupt:
        print("WARNING: Interrupted")
        return EXIT_INTERRUPTED
    except (NotConverged, np.linalg.LinAlgError) as error:
        print(f"ERROR: {error}")
        return EXIT_NUMERICAL
    except (ValueError, FileNotFoundError) as error:
        print(f"ERROR: {error}")
        return EXIT_CONFIG


def _coerce(name:str, value, default):
    """Convert a configuration `value` to the type of its `default`, or raise a `ConfigError`."""
    if name == 'export':
        try:
            return alias.normalise(value, alias.export)
        except ValueError as error:
            raise ConfigError(str(error), name)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"{name} must be a string, got {value!r}", name)
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}", name)
    if not np.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}", name)
    if isinstance(default, int):
        if int(value) != value:
            raise ConfigError(f"{name} must be an integer, got {value!r}", name)
        return int(value)
    return float(value)


def _print_regime(grams, grid, params:PlateParameters) -> str:
    """Print the first two eigenvalues and the regime of the prestress. Returns the regime, or None."""
    try:
        lambda1 = estimate_lambda1(grams, params.sigma, grid)
    except NotConverged as error:
        print(f"WARNING: {error}")
        return None
    lambda2 = dense_lambda2(grams, params.sigma)
    regime = prestress_regime(params.p_prestress, lambda1, lambda2)
    print(f"lambda1 = {lambda1:.10g}  lambda2 = {lambda2:.10g}  P = {params.p_prestress!r}  prestress regime: {regime}")
    return regime


def _export_field(field:SolutionField, config:RunConfig, prefix:str='') -> None:
    folder = file.get_dir(config.out_dir, create=True)
    export.write_nodes(field, os.path.join(folder, f'{prefix}nodes.csv'))
    if config.export in ('csv', 'both'):
        export.write_field_csv(field, os.path.join(folder, f'{prefix}field.csv'), config.export_nx, config.export_ny)
    if config.export in ('vtk', 'both'):
        export.write_vtk(field, os.path.join(folder, f'{prefix}field.vtk'), config.export_nx, config.export_ny)


if __name__ == '__main__':
    sys.exit(main())
