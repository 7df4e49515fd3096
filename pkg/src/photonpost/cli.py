"""Command line front end.

Every command reads a JSON config, writes one output file (JSON or CSV),
and returns exit code 0 on success, 2 for config problems, 3 for
dimension problems.  Outputs are deterministic: rerunning a command with
the same config and seed reproduces the file byte for byte.  Floats in
CSV files carry 17 significant digits so values survive a round trip.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys

import numpy as np

from . import detectors as det
from .conditioner import DetectionPattern, condition_mixed
from .errors import (
    BadModeIndex,
    ConfigError,
    DimensionMismatch,
    DimensionTooLarge,
    MismatchedTotals,
    NonSquare,
    NotUnitary,
    PhotonPostError,
    RowsNotOrthonormal,
)
from .fock import InputSpec
from .interferometer import Interferometer, beam_splitter, haar_random
from .merit import figures_of_merit
from .schemes import (
    build_chain,
    build_chain_from_elements,
    chain_asymptotics,
    pure_success_probability,
)
from .search import (
    SearchTask,
    search_improvement,
    verify_nogo_patterns,
    verify_nogo_small,
)

CONFIG_VERSION = 1

DIMENSION_ERRORS = (
    DimensionMismatch,
    DimensionTooLarge,
    NonSquare,
    MismatchedTotals,
    BadModeIndex,
    RowsNotOrthonormal,
    NotUnitary,
)

EXP_SCENARIOS = (
    "ideal",
    "bucket",
    "bucket+efficiency",
    "+darkcounts",
    "+two-photon-inputs",
)


def fmt(x: float) -> str:
    """17 significant digits, enough to reconstruct the double exactly."""
    return f"{float(x):.17g}"


# ---------------------------------------------------------------------------
# config plumbing


class _Config:
    """A dict wrapper that tracks touched fields and complains by name."""

    def __init__(self, data, where: str = "config"):
        if not isinstance(data, dict):
            raise ConfigError(f"{where} must be a JSON object")
        self.data = data
        self.where = where
        self.seen: set[str] = set()

    def take(self, field: str, kind, required: bool = True, default=None):
        self.seen.add(field)
        if field not in self.data:
            if required:
                raise ConfigError(f"{self.where}: missing required field {field!r}")
            return default
        value = self.data[field]
        if kind is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{self.where}: field {field!r} must be a number")
            return float(value)
        if kind is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{self.where}: field {field!r} must be an integer")
            return value
        if kind is bool:
            if not isinstance(value, bool):
                raise ConfigError(f"{self.where}: field {field!r} must be a boolean")
            return value
        if kind is str:
            if not isinstance(value, str):
                raise ConfigError(f"{self.where}: field {field!r} must be a string")
            return value
        if kind is list:
            if not isinstance(value, list):
                raise ConfigError(f"{self.where}: field {field!r} must be an array")
            return value
        if kind is dict:
            if not isinstance(value, dict):
                raise ConfigError(f"{self.where}: field {field!r} must be an object")
            return value
        raise AssertionError(f"unknown kind {kind}")

    def finish(self):
        extra = sorted(set(self.data) - self.seen)
        if extra:
            raise ConfigError(
                f"{self.where}: unknown field(s) {', '.join(repr(f) for f in extra)}"
            )


def _load_config(path: str, command: str) -> _Config:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    cfg = _Config(data)
    declared = cfg.take("command", str)
    if declared != command:
        raise ConfigError(
            f"config declares command {declared!r} but {command!r} was invoked"
        )
    version = cfg.take("version", int)
    if version != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {version}, expected {CONFIG_VERSION}")
    return cfg


def _parse_inputs(raw: list, n_modes: int) -> InputSpec:
    if len(raw) != n_modes:
        raise ConfigError(
            f"field 'inputs' must list {n_modes} entries (one per mode), got {len(raw)}"
        )
    dists = []
    for i, entry in enumerate(raw):
        if isinstance(entry, bool):
            raise ConfigError(f"inputs[{i}] must be a number or an object")
        if isinstance(entry, (int, float)):
            p = float(entry)
            if not (0.0 <= p <= 1.0):
                raise ConfigError(f"inputs[{i}]: probability {p} outside [0, 1]")
            dists.append({0: 1.0 - p, 1: p})
        elif isinstance(entry, dict):
            dist = {}
            for key, prob in entry.items():
                try:
                    count = int(key)
                except ValueError:
                    raise ConfigError(
                        f"inputs[{i}]: photon count key {key!r} is not an integer"
                    )
                if isinstance(prob, bool) or not isinstance(prob, (int, float)):
                    raise ConfigError(f"inputs[{i}][{key!r}] must be a number")
                dist[count] = float(prob)
            dists.append(dist)
        else:
            raise ConfigError(f"inputs[{i}] must be a number or an object")
    return InputSpec(tuple(dists))


def _parse_interferometer(raw: dict, n_modes: int, where: str) -> Interferometer:
    cfg = _Config(raw, where)
    kind = cfg.take("type", str)
    if kind == "beam_splitter":
        theta = cfg.take("theta", float)
        phi = cfg.take("phi", float, required=False, default=0.0)
        cfg.finish()
        if n_modes != 2:
            raise ConfigError(f"{where}: a beam splitter needs exactly 2 modes")
        return beam_splitter(theta, phi)
    if kind in ("chain", "chain_elements"):
        epsilon = cfg.take("epsilon", float)
        cfg.finish()
        if kind == "chain":
            return build_chain(n_modes, epsilon).interferometer
        return build_chain_from_elements(n_modes, epsilon).interferometer
    if kind == "haar":
        seed = cfg.take("seed", int)
        cfg.finish()
        return haar_random(n_modes, seed)
    if kind == "matrix":
        rows = cfg.take("matrix", list)
        cfg.finish()
        return Interferometer.from_json_dict({"n_modes": len(rows), "matrix": rows})
    raise ConfigError(
        f"{where}: unknown interferometer type {kind!r}; expected one of "
        "'beam_splitter', 'chain', 'chain_elements', 'haar', 'matrix'"
    )


def _parse_grid(raw: dict, where: str) -> list[float]:
    cfg = _Config(raw, where)
    if "values" in raw:
        values = cfg.take("values", list)
        cfg.finish()
        out = []
        for i, v in enumerate(values):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"{where}: values[{i}] must be a number")
            out.append(float(v))
        if not out:
            raise ConfigError(f"{where}: values must not be empty")
        return out
    start = cfg.take("start", float)
    stop = cfg.take("stop", float)
    count = cfg.take("count", int)
    spacing = cfg.take("spacing", str, required=False, default="linear")
    cfg.finish()
    if count < 1:
        raise ConfigError(f"{where}: count must be at least 1")
    if spacing == "linear":
        return [float(x) for x in np.linspace(start, stop, count)]
    if spacing == "log":
        if start <= 0 or stop <= 0:
            raise ConfigError(f"{where}: log spacing needs positive endpoints")
        return [float(x) for x in np.geomspace(start, stop, count)]
    raise ConfigError(f"{where}: spacing must be 'linear' or 'log', got {spacing!r}")


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _write_json(path: str, obj):
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _thread_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands


def _cmd_simulate(cfg: _Config, out: str, seed, threads: int) -> int:
    n_modes = cfg.take("modes", int)
    if n_modes < 2:
        raise ConfigError("field 'modes' must be at least 2")
    spec = _parse_inputs(cfg.take("inputs", list), n_modes)
    interf = _parse_interferometer(
        cfg.take("interferometer", dict), n_modes, "interferometer"
    )
    raw_pattern = cfg.take("pattern", list)
    cfg.finish()
    if len(raw_pattern) != n_modes - 1:
        raise ConfigError(
            f"field 'pattern' must list {n_modes - 1} detector counts, got {len(raw_pattern)}"
        )
    for i, c in enumerate(raw_pattern):
        if isinstance(c, bool) or not isinstance(c, int) or c < 0:
            raise ConfigError(f"pattern[{i}] must be a non-negative integer")
    pattern = DetectionPattern(tuple(raw_pattern))

    result = condition_mixed(spec, interf, pattern)
    payload = {
        "command": "simulate",
        "version": CONFIG_VERSION,
        "modes": n_modes,
        "pattern": list(pattern.counts),
        "pattern_probability": result.pattern_probability,
        "zero_probability": result.zero_probability,
        "unnormalized": [float(x) for x in result.unnormalized],
        "normalized": [float(x) for x in result.normalized],
    }
    if not result.zero_probability:
        payload["merit"] = figures_of_merit(result, spec).to_json_dict()
    _write_json(out, payload)
    return 0


def _cmd_pure_landscape(cfg: _Config, out: str, seed, threads: int) -> int:
    theta_grid = _parse_grid(cfg.take("theta_grid", dict), "theta_grid")
    phi_grid = _parse_grid(cfg.take("phi_grid", dict), "phi_grid")
    beta_mag = cfg.take("beta_mag", float)
    cfg.finish()
    if not (0.0 <= beta_mag <= 1.0):
        raise ConfigError(f"field 'beta_mag' must lie in [0, 1], got {beta_mag}")

    def row(theta: float) -> list[str]:
        lines = []
        for phi in phi_grid:
            if abs(math.sin(theta) * math.cos(theta)) < 1e-12:
                prob = 0.0
            else:
                prob = pure_success_probability(theta, phi, beta_mag)
            lines.append(f"{fmt(theta)},{fmt(phi)},{fmt(prob)}")
        return lines

    blocks = _thread_map(row, theta_grid, threads)
    lines = ["theta,phi,probability"]
    for block in blocks:
        lines.extend(block)
    _write_text(out, "\n".join(lines) + "\n")
    return 0


def _chain_sweep_point(args) -> str:
    n_modes, p, detected, epsilon = args
    scheme = build_chain(n_modes, epsilon)
    spec = InputSpec.two_level([p] * n_modes)
    result = condition_mixed(spec, scheme.interferometer, scheme.pattern_for(detected))
    report = figures_of_merit(result, spec)
    gain_limit, two_photon_limit = chain_asymptotics(n_modes, detected)
    gain = (
        report.ratio_out / report.ratio_in
        if math.isfinite(report.ratio_out) and report.ratio_in > 0
        else math.inf
    )
    two_photon = report.two_photon_out
    fano = report.fano_out
    return ",".join(
        [
            fmt(epsilon),
            fmt(result.pattern_probability),
            fmt(report.ratio_out),
            fmt(report.ratio_in),
            fmt(gain),
            fmt(gain_limit),
            fmt(0.0 if two_photon is None else two_photon),
            fmt(two_photon_limit),
            fmt(math.nan if fano is None else fano),
            fmt(report.fano_in),
        ]
    )


def _cmd_chain_sweep(cfg: _Config, out: str, seed, threads: int) -> int:
    n_modes = cfg.take("modes", int)
    p = cfg.take("p", float)
    detected = cfg.take("detected", int, required=False, default=-(-n_modes // 2))
    grid = _parse_grid(cfg.take("epsilon_grid", dict), "epsilon_grid")
    cfg.finish()
    if n_modes < 3:
        raise ConfigError("field 'modes' must be at least 3 for a chain")
    if not (0.0 < p < 1.0):
        raise ConfigError(f"field 'p' must lie inside (0, 1), got {p}")
    if not (1 <= detected < n_modes):
        raise ConfigError(
            f"field 'detected' must lie in 1..{n_modes - 1}, got {detected}"
        )
    for eps in grid:
        if not (0.0 < eps < 1.0):
            raise ConfigError(f"epsilon_grid value {eps} outside (0, 1)")

    rows = _thread_map(
        _chain_sweep_point, [(n_modes, p, detected, eps) for eps in grid], threads
    )
    header = (
        "epsilon,pattern_probability,ratio_out,ratio_in,ratio_gain,"
        "ratio_gain_limit,two_photon_out,two_photon_limit,fano_out,fano_in"
    )
    _write_text(out, "\n".join([header] + rows) + "\n")
    return 0


def _exp_sweep_point(args) -> str:
    n_modes, p, detected, epsilon, scenario, two_photon_prob = args
    scheme = build_chain(n_modes, epsilon)
    interf = scheme.interferometer

    if scenario == "+two-photon-inputs":
        dist = {0: 1.0 - p - two_photon_prob, 1: p, 2: two_photon_prob}
        spec = InputSpec(tuple(dist.copy() for _ in range(n_modes)))
    else:
        spec = InputSpec.two_level([p] * n_modes)

    if scenario == "ideal":
        result = condition_mixed(spec, interf, scheme.pattern_for(detected))
    else:
        cap = spec.max_total()
        if scenario == "bucket":
            vacuum_model = det.DetectorModel.exact(cap)
            tap = det.DetectorModel.bucket(cap)
        elif scenario in ("bucket+efficiency", "+two-photon-inputs"):
            vacuum_model = det.DetectorModel.vacuum_inefficient(cap)
            tap = det.DetectorModel.bucket(cap)
        else:  # +darkcounts
            vacuum_model, tap = det.benchmark_detector_suite(cap)
        models = [tap] + [vacuum_model] * (n_modes - 2)
        observed = det.ObservedPattern((det.BUCKET,) + (0,) * (n_modes - 2))
        result = det.observe(spec, interf, observed, models)

    if result.zero_probability or result.normalized.size < 2:
        c1 = 0.0
    else:
        c1 = float(result.normalized[1])
    return f"{fmt(epsilon)},{fmt(result.pattern_probability)},{fmt(c1)}"


def _cmd_exp_sweep(cfg: _Config, out: str, seed, threads: int) -> int:
    n_modes = cfg.take("modes", int)
    p = cfg.take("p", float)
    detected = cfg.take("detected", int, required=False, default=-(-n_modes // 2))
    scenario = cfg.take("scenario", str)
    two_photon_prob = cfg.take("two_photon_prob", float, required=False, default=0.001)
    grid = _parse_grid(cfg.take("epsilon_grid", dict), "epsilon_grid")
    cfg.finish()
    if n_modes < 3:
        raise ConfigError("field 'modes' must be at least 3 for a chain")
    if not (0.0 < p < 1.0):
        raise ConfigError(f"field 'p' must lie inside (0, 1), got {p}")
    if scenario not in EXP_SCENARIOS:
        raise ConfigError(
            f"field 'scenario' must be one of {', '.join(EXP_SCENARIOS)}; got {scenario!r}"
        )
    if scenario != "ideal" and detected != 2:
        raise ConfigError(
            "bucket-detector scenarios model a '>=2' tap click and need detected = 2"
        )
    if not (1 <= detected < n_modes):
        raise ConfigError(
            f"field 'detected' must lie in 1..{n_modes - 1}, got {detected}"
        )
    if scenario == "+two-photon-inputs":
        if not (0.0 < two_photon_prob and p + two_photon_prob < 1.0):
            raise ConfigError(
                f"field 'two_photon_prob' must be positive with p + two_photon_prob < 1"
            )
    for eps in grid:
        if not (0.0 < eps < 1.0):
            raise ConfigError(f"epsilon_grid value {eps} outside (0, 1)")

    rows = _thread_map(
        _exp_sweep_point,
        [(n_modes, p, detected, eps, scenario, two_photon_prob) for eps in grid],
        threads,
    )
    header = "epsilon,pattern_probability,single_photon_probability"
    _write_text(out, "\n".join([header] + rows) + "\n")
    return 0


def _cmd_nogo_verify(cfg: _Config, out: str, seed, threads: int) -> int:
    variant = cfg.take("variant", str)
    n_modes = cfg.take("modes", int)
    p_max = cfg.take("p_max", float)
    trials = cfg.take("trials", int)
    cfg_seed = cfg.take("seed", int, required=False, default=0)
    refine_iters = cfg.take("refine_iters", int, required=False, default=80)
    cfg.finish()
    if variant not in ("small", "patterns"):
        raise ConfigError(f"field 'variant' must be 'small' or 'patterns', got {variant!r}")
    if n_modes < 2:
        raise ConfigError("field 'modes' must be at least 2")
    if variant == "small" and n_modes > 3:
        raise ConfigError("variant 'small' supports 2 or 3 modes only")
    if not (0.0 < p_max < 1.0):
        raise ConfigError(f"field 'p_max' must lie inside (0, 1), got {p_max}")
    if trials < 1:
        raise ConfigError("field 'trials' must be at least 1")
    use_seed = cfg_seed if seed is None else seed
    if variant == "small":
        report = verify_nogo_small(n_modes, p_max, trials, use_seed, refine_iters)
    else:
        report = verify_nogo_patterns(n_modes, p_max, trials, use_seed)
    _write_json(out, report.to_json_dict())
    return 0


def _cmd_search(cfg: _Config, out: str, seed, threads: int) -> int:
    n_modes = cfg.take("modes", int)
    p_max = cfg.take("p_max", float)
    objective = cfg.take("objective", str, required=False, default="single_photon")
    trials = cfg.take("trials", int)
    refine_iters = cfg.take("refine_iters", int, required=False, default=200)
    cfg_seed = cfg.take("seed", int, required=False, default=0)
    include_chain = cfg.take("include_chain_seed", bool, required=False, default=True)
    chain_epsilon = cfg.take("chain_epsilon", float, required=False, default=1e-3)
    cfg.finish()
    if trials < 0:
        raise ConfigError("field 'trials' must be non-negative")
    use_seed = cfg_seed if seed is None else seed
    try:
        task = SearchTask(
            n_modes=n_modes,
            p_max=p_max,
            objective=objective,
            trials=trials,
            refine_iters=refine_iters,
            seed=use_seed,
            include_chain_seed=include_chain,
            chain_epsilon=chain_epsilon,
        )
    except PhotonPostError as exc:
        raise ConfigError(str(exc))
    report = search_improvement(task)
    _write_json(out, report.to_json_dict())
    return 0


COMMANDS = {
    "simulate": _cmd_simulate,
    "pure-landscape": _cmd_pure_landscape,
    "exp-sweep": _cmd_exp_sweep,
    "chain-sweep": _cmd_chain_sweep,
    "nogo-verify": _cmd_nogo_verify,
    "search": _cmd_search,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonpost",
        description="Conditioned photon statistics behind linear interferometers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="JSON config file")
        cmd.add_argument("--out", required=True, help="output file (JSON or CSV)")
        cmd.add_argument("--seed", type=int, default=None, help="override the config seed")
        cmd.add_argument(
            "--threads",
            type=int,
            default=None,
            help="worker threads for sweeps (default: PHOTON_THREADS or 1)",
        )
    return parser


def _resolve_threads(flag) -> int:
    if flag is not None:
        return max(1, int(flag))
    env = os.environ.get("PHOTON_THREADS", "")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"PHOTON_THREADS must be an integer, got {env!r}")
    return 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        threads = _resolve_threads(args.threads)
        cfg = _load_config(args.config, args.command)
        return COMMANDS[args.command](cfg, args.out, args.seed, threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DIMENSION_ERRORS as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return 3
    except PhotonPostError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
