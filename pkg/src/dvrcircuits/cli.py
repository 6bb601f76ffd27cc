"""Command-line front end: config parsing, sweep orchestration, CSV emission.

A run is described by a single JSON config (or a named preset) and produces
deterministic CSV files plus a ``manifest.json`` recording the config hash,
library versions, and wall time.  Plotting is out of process: ``--emit-plot-script``
writes a gnuplot script next to the data.

Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .circuits import CircuitSpec, Family
from .convergence import (
    DEFAULT_THRESHOLD_GHZ,
    Scale,
    default_sizes,
    metrics,
    sweep,
)
from .dvr import DvrKind, Spacing
from .errors import ConfigError, NumericalError
from .fdm import Boundary
from .ho import LengthScale
from .presets import (
    CHARGE_LIMIT,
    FLUXONIUM_CIRCUIT,
    LC_CIRCUIT,
    TRANSMON_LIMIT,
    fluxonium_representations,
    lc_representations,
    transmon_representations,
)
from .spectra import (
    DvrRep,
    FdRep,
    HoRep,
    Representation,
    assemble,
    check_compatible,
    eigensolve,
)
from .states import decompose, flux_sweep


# ---------------------------------------------------------------------------
# representation descriptors <-> JSON


def rep_to_dict(rep: Representation) -> dict:
    if isinstance(rep, DvrRep):
        spacing = None if rep.spacing is None else rep.spacing.to_dict()
        return {"type": "dvr", "kind": rep.kind.value, "spacing": spacing}
    if isinstance(rep, HoRep):
        return {"type": "ho", "scale": rep.scale.value, "embed_dim": rep.embed_dim}
    if isinstance(rep, FdRep):
        return {
            "type": "fd",
            "spacing": rep.spacing,
            "order_M": rep.order_M,
            "boundary": rep.boundary.value,
        }
    raise ConfigError(f"unknown representation {rep!r}")


def rep_from_dict(data: dict) -> Representation:
    if not isinstance(data, dict) or "type" not in data:
        raise ConfigError(f"representation descriptor needs a 'type' field: {data!r}")
    kind = data["type"]
    try:
        if kind == "dvr":
            spacing = data.get("spacing")
            return DvrRep(
                DvrKind(data["kind"]),
                None if spacing is None else Spacing.from_dict(spacing),
            )
        if kind == "ho":
            return HoRep(LengthScale(data["scale"]), int(data.get("embed_dim", 1001)))
        if kind == "fd":
            spacing = data.get("spacing")
            if isinstance(spacing, dict):
                spacing = Spacing.from_dict(spacing).value
            return FdRep(
                None if spacing is None else float(spacing),
                int(data.get("order_M", 1)),
                Boundary(data.get("boundary", "bounded")),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad representation descriptor {data!r}: {exc}") from exc
    raise ConfigError(f"unknown representation type {kind!r}")


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    circuit: CircuitSpec
    representations: tuple[Representation, ...]
    sizes: tuple[int, ...]
    levels: tuple[int, ...] = (0,)
    threshold_GHz: float = DEFAULT_THRESHOLD_GHZ
    scale: Scale = Scale.ABSOLUTE
    decompose_floor: float = 1e-20
    shift_betas: tuple[int, ...] = (0, 1, 2)
    shift_direction: int = +1
    shift_rediagonalize: bool = False

    def __post_init__(self):
        if not self.representations:
            raise ConfigError("representation list must not be empty")
        if not self.sizes:
            raise ConfigError("size list must not be empty")
        if not self.levels:
            raise ConfigError("level list must not be empty")
        if not self.threshold_GHz > 0:
            raise ConfigError(f"threshold must be positive, got {self.threshold_GHz}")
        for rep in self.representations:
            check_compatible(self.circuit, rep)

    def to_dict(self) -> dict:
        return {
            "circuit": self.circuit.to_dict(),
            "representations": [rep_to_dict(r) for r in self.representations],
            "sizes": list(self.sizes),
            "levels": list(self.levels),
            "threshold_GHz": self.threshold_GHz,
            "scale": self.scale.value,
            "decompose_floor": self.decompose_floor,
            "shift_betas": list(self.shift_betas),
            "shift_direction": self.shift_direction,
            "shift_rediagonalize": self.shift_rediagonalize,
        }


def _parse_sizes(raw) -> tuple[int, ...]:
    if isinstance(raw, dict):
        return default_sizes(int(raw.get("largest", 301)), int(raw.get("stride", 1)))
    if isinstance(raw, list):
        return tuple(int(s) for s in raw)
    raise ConfigError(f"sizes must be a list or a range spec, got {raw!r}")


def config_from_dict(data: dict) -> RunConfig:
    known = {
        "circuit", "representations", "sizes", "levels", "threshold_GHz",
        "scale", "decompose_floor", "shift_betas", "shift_direction",
        "shift_rediagonalize",
    }
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    for required in ("circuit", "representations", "sizes"):
        if required not in data:
            raise ConfigError(f"config requires a '{required}' field")
    return RunConfig(
        circuit=CircuitSpec.from_dict(data["circuit"]),
        representations=tuple(rep_from_dict(r) for r in data["representations"]),
        sizes=_parse_sizes(data["sizes"]),
        levels=tuple(int(n) for n in data.get("levels", [0])),
        threshold_GHz=float(data.get("threshold_GHz", DEFAULT_THRESHOLD_GHZ)),
        scale=Scale(data.get("scale", "absolute")),
        decompose_floor=float(data.get("decompose_floor", 1e-20)),
        shift_betas=tuple(int(b) for b in data.get("shift_betas", [0, 1, 2])),
        shift_direction=int(data.get("shift_direction", 1)),
        shift_rediagonalize=bool(data.get("shift_rediagonalize", False)),
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return config_from_dict(data)


PRESETS = ("lc", "fluxonium", "transmon-tl", "transmon-cl")


def preset_config(name: str) -> RunConfig:
    if name == "lc":
        return RunConfig(
            circuit=LC_CIRCUIT,
            representations=tuple(lc_representations()),
            sizes=default_sizes(301),
            scale=Scale.LC_SCALED,
        )
    if name == "fluxonium":
        return RunConfig(
            circuit=FLUXONIUM_CIRCUIT,
            representations=tuple(fluxonium_representations()),
            sizes=default_sizes(301),
            levels=(0, 1, 2, 3, 4),
        )
    if name in ("transmon-tl", "transmon-cl"):
        circuit = TRANSMON_LIMIT if name == "transmon-tl" else CHARGE_LIMIT
        return RunConfig(
            circuit=circuit,
            representations=tuple(transmon_representations()),
            sizes=default_sizes(101),
        )
    raise ConfigError(f"unknown preset {name!r}; choose from {PRESETS}")


# ---------------------------------------------------------------------------
# output helpers


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _slug(rep: Representation) -> str:
    return (
        rep.label.replace("[", "_").replace("]", "").replace("/", "-")
        .replace(",", "_").replace("=", "").replace("*", "").replace(".", "p")
    )


def _rep_columns(rep: Representation) -> tuple[str, object, object, object]:
    """(rep_kind, spacing_num, spacing_den, spacing_pi) for the metrics schema."""
    if isinstance(rep, DvrRep):
        if rep.spacing is None:
            return (rep.kind.value, 2, "d", True)
        s = rep.spacing
        return (rep.kind.value, s.num, s.den, s.pi)
    if isinstance(rep, HoRep):
        return (f"ho_{rep.scale.value}", "", "", "")
    return (f"fdm_{rep.boundary.value}_M{rep.order_M}", "", "", _fmt(rep.spacing))


def _write_manifest(out: Path, command: str, config: RunConfig, wall_time: float,
                    files: list[str]) -> None:
    doc = config.to_dict()
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    manifest = {
        "command": command,
        "config": doc,
        "config_sha256": hashlib.sha256(blob).hexdigest(),
        "versions": {
            "dvrcircuits": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": sys.version.split()[0],
        },
        "wall_time_s": wall_time,
        "files": files,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _plot_script(out: Path, csv_files: list[str], ylabel: str) -> None:
    lines = [
        "set datafile separator ','",
        "set logscale y",
        "set xlabel 'matrix size'",
        f"set ylabel '{ylabel}'",
        "set key outside",
        "plot \\",
    ]
    plots = [
        f"  '{name}' using 1:3 skip 1 with linespoints title '{name}'"
        for name in csv_files
    ]
    lines.append(", \\\n".join(plots))
    (out / "plot.gp").write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# commands


def _curves(config: RunConfig, threads: int):
    """All (rep, level) convergence curves, computed on a worker pool."""
    jobs = [(rep, level) for rep in config.representations for level in config.levels]

    def run(job):
        rep, level = job
        return sweep(config.circuit, rep, config.sizes, level, config.scale)

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            curves = list(pool.map(run, jobs))
    else:
        curves = [run(job) for job in jobs]
    return list(zip(jobs, curves))


def _effective_threshold(config: RunConfig) -> float:
    if config.scale is Scale.LC_SCALED:
        from .convergence import energy_scale

        return config.threshold_GHz / energy_scale(config.circuit)
    return config.threshold_GHz


def cmd_curve(config: RunConfig, out: Path, threads: int, plot: bool) -> list[str]:
    files = []
    for (rep, level), curve in _curves(config, threads):
        name = f"curve_{config.circuit.family.value}_{_slug(rep)}_n{level}.csv"
        rows = [
            (size, float(delta), abs(float(delta)), int(np.sign(delta)) or 1)
            for size, delta in zip(curve.sizes, curve.deltas)
        ]
        _write_csv(out / name, ["size", "delta", "abs_delta", "sign"], rows)
        files.append(name)
    if plot:
        _plot_script(out, files, "|Delta| (GHz)")
    return files


def _metrics_rows(config: RunConfig, threads: int, levels: tuple[int, ...]):
    sub = RunConfig(
        circuit=config.circuit,
        representations=config.representations,
        sizes=config.sizes,
        levels=levels,
        threshold_GHz=config.threshold_GHz,
        scale=config.scale,
    )
    threshold = _effective_threshold(config)
    rows = []
    for (rep, level), curve in _curves(sub, threads):
        record = metrics(curve, threshold)
        kind, num, den, pi = _rep_columns(rep)
        rows.append(
            (
                config.circuit.family.value, kind, num, den, pi, level,
                record.R, record.P, record.P_sign, record.saturated,
                record.crossed_zero,
            )
        )
    return rows


_METRICS_HEADER = [
    "circuit", "rep_kind", "spacing_num", "spacing_den", "spacing_pi",
    "level", "R", "P", "P_sign", "saturated", "crossed_zero",
]


def cmd_metrics(config: RunConfig, out: Path, threads: int, plot: bool) -> list[str]:
    rows = _metrics_rows(config, threads, (config.levels[0],))
    _write_csv(out / "metrics.csv", _METRICS_HEADER, rows)
    return ["metrics.csv"]


def cmd_levels(config: RunConfig, out: Path, threads: int, plot: bool) -> list[str]:
    rows = _metrics_rows(config, threads, config.levels)
    _write_csv(out / "levels.csv", _METRICS_HEADER, rows)
    return ["levels.csv"]


def cmd_decompose(config: RunConfig, out: Path, threads: int, plot: bool) -> list[str]:
    files = []
    dim = max(config.sizes)
    levels = max(config.levels) + 1
    for rep in config.representations:
        spectrum = eigensolve(assemble(config.circuit, rep, dim), levels)
        table = decompose(spectrum, levels, config.decompose_floor)
        name = f"decompose_{config.circuit.family.value}_{_slug(rep)}.csv"
        rows = [
            (level, alpha, float(table[level, alpha]))
            for level in range(levels)
            for alpha in range(dim)
        ]
        _write_csv(out / name, ["level", "alpha", "magnitude_sq_floored"], rows)
        files.append(name)
    return files


def cmd_shift(config: RunConfig, out: Path, threads: int, plot: bool) -> list[str]:
    if config.circuit.family is not Family.FLUXONIUM:
        raise ConfigError("the shift command sweeps fluxonium flux; use a fluxonium circuit")
    phase_reps = [
        rep
        for rep in config.representations
        if isinstance(rep, DvrRep) and rep.kind.is_phase and rep.spacing is not None
    ]
    if not phase_reps:
        raise ConfigError("shift sweeps need at least one phase-DVR representation")
    files = []
    dim = max(config.sizes)
    for rep in phase_reps:
        rows = flux_sweep(
            config.circuit,
            rep,
            dim,
            config.shift_betas,
            config.shift_direction,
            rediagonalize=config.shift_rediagonalize,
        )
        name = f"shift_{_slug(rep)}.csv"
        _write_csv(out / name, ["A", "phi", "energy_GHz", "current_over_Ic"], rows)
        files.append(name)
    return files


COMMANDS = {
    "curve": cmd_curve,
    "metrics": cmd_metrics,
    "levels": cmd_levels,
    "decompose": cmd_decompose,
    "shift": cmd_shift,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dvrcircuits",
        description="Convergence studies of superconducting-circuit representations",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--preset", choices=PRESETS, help="built-in run configuration")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--threads", type=int, default=1, help="worker count (default: 1)")
    parser.add_argument(
        "--emit-plot-script", action="store_true",
        help="write a gnuplot script next to the CSV data",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if (args.config is None) == (args.preset is None):
            raise ConfigError("exactly one of --config or --preset is required")
        config = load_config(args.config) if args.config else preset_config(args.preset)
        if args.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {args.threads}")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        start = time.monotonic()
        files = COMMANDS[args.command](config, out, args.threads, args.emit_plot_script)
        _write_manifest(out, args.command, config, time.monotonic() - start, files)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
