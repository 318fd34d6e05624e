"""Command-line experiment driver.

    linoptsim distribution --family fock --n 2 --m 4 --haar-seed 7 --out d.json
    linoptsim sample --family spacs --n 2 --m 2 --preset balanced-bs --alpha 0.5 --samples 100000 --seed 9
    linoptsim oracle-check --family spacs --n 2 --m 2 --preset balanced-bs --alpha 0.5
    linoptsim transition --rule 1/n --n-values 10,100,1000 --out sweep.csv
    linoptsim wigner --alpha 2 --slice --out slice.csv
    linoptsim bench --sizes 10,14,18 --reps 3 --threads 4

Options can also come from ``--config run.json`` (keys are the option names
with dashes replaced by underscores).  A key given both in the file and on
the command line is an error.

Exit status: 0 success, 2 invalid configuration, 3 numerical tolerance
failure (including truncation leakage), 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .distributions import OutputDistribution
from .errors import CutoffTooSmallError, LinoptError
from .exact import FAMILIES, InputSpec, predicted_distribution, spacs_distribution
from .numerics import as_unitary, balanced_beamsplitter, haar_random_unitary, matrix_from_json
from .oracle import default_cutoff, run_protocol
from .permanent import THREADS_ENV, benchmark_csv, benchmark_permanent
from .sampling import draw, empirical_distribution, total_variation
from .transition import RULES, limit_sweep, sweep_csv
from .wigner import KINDS, major_axis_slice, negativity_metrics, slice_csv, spacs_wigner, wigner_grid

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_TOLERANCE = 0, 1, 2, 3
COMMANDS = ("distribution", "sample", "oracle-check", "transition", "wigner", "bench")
PRESETS = ("balanced-bs", "identity")
ORACLE_TVD_TOL = 1e-6


class UsageError(Exception):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


class ToleranceFailure(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "fock"
    n: int | None = None
    m: int | None = None
    alpha: list[complex] = field(default_factory=list)
    haar_seed: int | None = None
    unitary_file: str | None = None
    preset: str | None = None
    samples: int = 10_000
    seed: int = 0
    cutoff: int | None = None
    out: str | None = None
    format: str | None = None
    rule: str = "1/n"
    n_values: list[int] = field(default_factory=lambda: [10, 100, 1000, 10000])
    slice: bool = False
    kind: str = "spacs"
    window: float = 5.0
    resolution: int | None = None
    x_range: list[float] = field(default_factory=lambda: [-4.0, 6.0])
    sizes: list[int] = field(default_factory=lambda: [8, 12, 16, 20])
    reps: int = 3
    threads: int | None = None

    def input_spec(self) -> InputSpec:
        if self.family == "fock":
            return InputSpec.fock(self.n, self.m)
        return InputSpec(self.family, self.n, self.m, tuple(self.alpha))

    def unitary(self) -> np.ndarray:
        if self.unitary_file:
            return as_unitary(matrix_from_json(Path(self.unitary_file).read_text()))
        if self.preset == "balanced-bs":
            return balanced_beamsplitter()
        if self.preset == "identity":
            return np.eye(self.m, dtype=complex)
        return haar_random_unitary(self.m, self.haar_seed)


def _complex_list(text: str) -> list[complex]:
    return [complex(t.strip().replace("i", "j")) for t in str(text).split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    return [int(float(t)) for t in str(text).split(",") if t.strip()]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in str(text).split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linoptsim", description="Linear-optics sampling experiments.")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        # every default is None so explicit flags can be told apart from config-file values
        p.add_argument("--config")
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "json"))
        if name in ("distribution", "sample", "oracle-check"):
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--n", type=int)
            p.add_argument("--m", type=int)
            p.add_argument("--alpha", type=_complex_list, help="comma-separated; one value is broadcast")
            p.add_argument("--haar-seed", type=int)
            p.add_argument("--unitary-file")
            p.add_argument("--preset", choices=PRESETS)
            p.add_argument("--cutoff", type=int)
        if name == "sample":
            p.add_argument("--samples", type=int)
            p.add_argument("--seed", type=int)
        if name == "transition":
            p.add_argument("--rule", choices=sorted(RULES))
            p.add_argument("--n-values", type=_int_list)
        if name == "wigner":
            p.add_argument("--alpha", type=_complex_list)
            p.add_argument("--slice", action="store_const", const=True)
            p.add_argument("--kind", choices=KINDS)
            p.add_argument("--window", type=float)
            p.add_argument("--resolution", type=int)
            p.add_argument("--x-range", type=_float_list)
        if name == "bench":
            p.add_argument("--sizes", type=_int_list)
            p.add_argument("--reps", type=int)
            p.add_argument("--threads", type=int)
    return parser


_LIST_PARSERS = {"alpha": _complex_list, "n_values": _int_list, "x_range": _float_list, "sizes": _int_list}


def parse_config(argv: list[str]) -> RunConfig:
    """Validate flags (and an optional JSON config file) into a RunConfig.

    Raises UsageError listing every problem found.
    """
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        raise UsageError([f"could not parse arguments {argv!r}"]) from exc
    if ns.command is None:
        raise UsageError([f"missing command; expected one of {', '.join(COMMANDS)}"])
    flags = {k: v for k, v in vars(ns).items() if v is not None and k not in ("command", "config")}
    problems: list[str] = []
    values = dict(flags)
    if ns.config:
        path = Path(ns.config)
        if not path.exists():
            raise UsageError([f"config file {path} does not exist"])
        data = json.loads(path.read_text())
        for key, v in data.items():
            key = key.replace("-", "_")
            if key == "command":
                if v != ns.command:
                    problems.append(f"config file command {v!r} conflicts with {ns.command!r}")
                continue
            if key in _LIST_PARSERS and not isinstance(v, list):
                v = _LIST_PARSERS[key](v)
            elif key == "alpha":
                v = [complex(*a) if isinstance(a, list) else complex(a) for a in v]
            if key in flags and flags[key] != v:
                problems.append(f"{key} given both on the command line and in {path}")
            values[key] = v
    known = set(RunConfig.__dataclass_fields__) - {"command"}
    unknown = sorted(set(values) - known)
    problems += [f"unknown option {k!r}" for k in unknown]
    cfg = RunConfig(ns.command, **{k: v for k, v in values.items() if k in known})
    problems += _validate(cfg)
    if problems:
        raise UsageError(problems)
    return cfg


def _validate(cfg: RunConfig) -> list[str]:
    problems = []
    if cfg.command in ("distribution", "sample", "oracle-check"):
        if cfg.preset == "balanced-bs" and cfg.m is None:
            cfg.m = 2
        if cfg.m is None:
            problems.append("missing required option --m")
        if cfg.family != "fock" and cfg.n is None and cfg.alpha:
            cfg.n = len(cfg.alpha)
        if cfg.n is None:
            problems.append("missing required option --n")
        if cfg.m is not None and cfg.n is not None:
            if not 0 <= cfg.n <= cfg.m:
                problems.append(f"need 0 <= n <= m, got n={cfg.n}, m={cfg.m}")
            if cfg.family != "fock":
                if not cfg.alpha:
                    problems.append(f"--alpha is required for family {cfg.family}")
                elif len(cfg.alpha) == 1:
                    cfg.alpha = cfg.alpha * cfg.n
                elif len(cfg.alpha) != cfg.n:
                    problems.append(f"expected 1 or {cfg.n} alpha values, got {len(cfg.alpha)}")
            elif cfg.alpha:
                problems.append("--alpha is not used by family fock")
        sources = [s for s in (cfg.haar_seed is not None, cfg.unitary_file, cfg.preset) if s]
        if len(sources) != 1:
            problems.append("give exactly one of --haar-seed, --unitary-file, --preset")
        if cfg.unitary_file and not Path(cfg.unitary_file).exists():
            problems.append(f"unitary file {cfg.unitary_file} does not exist")
        if cfg.preset == "balanced-bs" and cfg.m not in (None, 2):
            problems.append("preset balanced-bs needs m = 2")
    if cfg.command == "sample" and cfg.samples < 1:
        problems.append("--samples must be positive")
    if cfg.command == "transition" and any(n < 1 for n in cfg.n_values):
        problems.append("--n-values must be positive")
    if cfg.command == "wigner":
        if len(cfg.alpha) != 1:
            problems.append("wigner needs exactly one --alpha value")
        if len(cfg.x_range) != 2 or cfg.x_range[1] <= cfg.x_range[0]:
            problems.append("--x-range must be two increasing numbers")
    if cfg.command == "bench" and any(not 1 <= s <= 30 for s in cfg.sizes):
        problems.append("--sizes must lie in 1..30")
    return problems


def _output_format(cfg: RunConfig, default: str) -> str:
    if cfg.format:
        return cfg.format
    if cfg.out and cfg.out.endswith(".json"):
        return "json"
    if cfg.out and cfg.out.endswith(".csv"):
        return "csv"
    return default


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _serialize(cfg: RunConfig, obj) -> str:
    return obj.to_json() if _output_format(cfg, "json") == "json" else obj.to_csv()


def _distribution(cfg: RunConfig) -> tuple[OutputDistribution, str]:
    spec, U = cfg.input_spec(), cfg.unitary()
    if spec.family == "spacs":
        dec = spacs_distribution(U, spec.alphas)
        dist = dec.joint()
        return dist, f"retained mass P_n={dec.weights[spec.n]:.12g}"
    dist = predicted_distribution(spec, U)
    return dist, "retained mass P_n=1"


def run(cfg: RunConfig) -> int:
    """Execute one command, write its artifact and print a one-line summary."""
    if cfg.threads is not None:
        os.environ[THREADS_ENV] = str(cfg.threads)
    log = sys.stderr if cfg.out is None else sys.stdout

    if cfg.command == "distribution":
        dist, extra = _distribution(cfg)
        _emit(cfg, _serialize(cfg, dist))
        total = dist.total()
        print(f"distribution: {len(dist)} configs, total={total:.15f}, {extra}", file=log)
        if abs(total - 1) > dist.tolerance:
            raise ToleranceFailure(f"normalization off by {abs(total - 1):.3e}")

    elif cfg.command == "sample":
        dist, extra = _distribution(cfg)
        batch = draw(dist, cfg.samples, cfg.seed)
        _emit(cfg, _serialize(cfg, batch))
        tvd = total_variation(empirical_distribution(batch), dist)
        print(f"sample: {len(batch)} draws, seed={cfg.seed}, empirical TVD={tvd:.6f}, {extra}", file=log)

    elif cfg.command == "oracle-check":
        spec, U = cfg.input_spec(), cfg.unitary()
        cutoff = cfg.cutoff if cfg.cutoff is not None else default_cutoff(spec)
        try:
            oracle = run_protocol(spec, U, cutoff=cutoff)
        except CutoffTooSmallError as exc:
            raise ToleranceFailure(str(exc)) from exc
        exact = predicted_distribution(spec, U)
        tvd = total_variation(oracle, exact)
        if cfg.out:
            _emit(cfg, _serialize(cfg, oracle))
        print(f"oracle-check: family={spec.family} cutoff={cutoff} TVD={tvd:.3e} "
              f"oracle total={oracle.total():.12f}", file=log)
        if tvd >= ORACLE_TVD_TOL:
            raise ToleranceFailure(f"TVD {tvd:.3e} >= {ORACLE_TVD_TOL}")

    elif cfg.command == "transition":
        reports = limit_sweep(cfg.rule, cfg.n_values)
        _emit(cfg, sweep_csv(reports))
        last = reports[-1]
        print(f"transition: rule {cfg.rule}, last n={last.n}: p_n={last.p_n:.8f} p_0={last.p_0:.8f} "
              f"({last.regime}); 1/e={math.exp(-1):.8f}", file=log)

    elif cfg.command == "wigner":
        alpha = cfg.alpha[0]
        if cfg.slice:
            x, w = major_axis_slice(alpha, tuple(cfg.x_range), cfg.resolution or 1001, cfg.kind)
            _emit(cfg, slice_csv(x, w))
            centre = abs(alpha) / 2
            print(f"wigner slice: |alpha|={abs(alpha):.6g} min W={w.min():.12g} "
                  f"at x={x[np.argmin(w)]:.6g}; "
                  f"W(|alpha|/2)={float(spacs_wigner(abs(alpha), centre)):.12g}", file=log)
        else:
            grid = wigner_grid(alpha, cfg.window, cfg.resolution or 400, cfg.kind)
            _emit(cfg, grid.to_json() if _output_format(cfg, "csv") == "json" else grid.to_csv())
            met = negativity_metrics(grid)
            print(f"wigner grid: integral={grid.integral():.6f} min={met['min_value']:.8g} "
                  f"negative volume={met['negative_volume']:.6g}", file=log)

    elif cfg.command == "bench":
        rows = benchmark_permanent(cfg.sizes, cfg.reps, cfg.threads or 1)
        _emit(cfg, benchmark_csv(rows))
        print(f"bench: {len(rows)} sizes, largest n={rows[-1][0]} took {rows[-1][1] / 1e9:.4f} s", file=log)

    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        for p in exc.problems:
            print(f"usage error: {p}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(cfg)
    except ToleranceFailure as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except LinoptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
