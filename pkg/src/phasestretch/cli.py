"""Batch command-line front end.

Modes:

- ``2d``: grayscale raster in; phase map and edge map out.
- ``1d``: CSV trace in; phase trace and edge trace out.
- ``synth``: generate a pattern from the config, then transform it.
- ``oracle-compare``: full transform next to the closed-form small-phase
  readout, plus their difference raster.
- ``baseline-compare``: phase edge map next to a Sobel gradient edge map.

Configuration comes from flags, a JSON document (``--config``), or both;
flags override file values. Outputs are deterministic for deterministic
inputs: no timestamps, stable float formatting, summary lines in input
order. A ``summary.jsonl`` with one JSON line per processed input is
written to the output directory and echoed to stdout.

Exit codes: 0 success, 1 config error, 2 I/O error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import PstParams, as_image
from .oracle import closed_form_pst
from .postproc import derivative_baseline, morphological_clean, threshold_feature_map
from .rasters import (
    decode_image,
    decode_trace,
    write_edge_png,
    write_pfm,
    write_phase_tiff,
    write_trace_csv,
)
from .synth import PatternSpec, generate
from .transform import pst, pst_1d

__all__ = ["RunConfig", "main", "run"]

MODES = ("2d", "1d", "synth", "oracle-compare", "baseline-compare")
PHASE_FORMATS = ("pfm", "tiff")

# Rendering choice for the baseline edge map: gradient above this fraction
# of its maximum counts as an edge.
SOBEL_EDGE_FRACTION = 0.25

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    """One batch run: mode, inputs, output directory, and parameters."""

    mode: str
    inputs: tuple[str, ...] = ()
    out_dir: str = "."
    strength: float = 0.48
    warp: float = 12.15
    lpf_sigma: float | None = None
    threshold_min: float = -0.1
    threshold_max: float = 0.1
    taylor_order: int = 4
    pad: bool = False
    morph_min_size: int = 0
    formats: tuple[str, ...] = ("pfm",)
    seed: int | None = None
    jobs: int = 1
    pattern: dict | None = None

    def params(self) -> PstParams:
        return PstParams(
            strength=self.strength,
            warp=self.warp,
            localization_sigma=self.lpf_sigma,
            taylor_order=self.taylor_order,
            threshold_min=self.threshold_min,
            threshold_max=self.threshold_max,
        )


def _validate(config: RunConfig) -> PstParams:
    if config.mode not in MODES:
        raise ValueError(f"mode must be one of {', '.join(MODES)}, got {config.mode!r}")
    for fmt in config.formats:
        if fmt not in PHASE_FORMATS:
            raise ValueError(f"formats must be from {PHASE_FORMATS}, got {fmt!r}")
    if not config.formats:
        raise ValueError("formats must name at least one phase raster format")
    if config.jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {config.jobs}")
    if config.morph_min_size < 0:
        raise ValueError(f"morph_min_size must be >= 0, got {config.morph_min_size}")
    if config.mode == "synth":
        if not config.pattern:
            raise ValueError("synth mode needs a pattern object in the JSON config")
    elif not config.inputs:
        raise ValueError(f"mode {config.mode} needs at least one --input path")
    return config.params()


def _pattern_spec(config: RunConfig) -> PatternSpec:
    fields = {f.name for f in dataclasses.fields(PatternSpec)}
    raw = dict(config.pattern or {})
    unknown = set(raw) - fields
    if unknown:
        raise ValueError(f"unknown pattern field(s): {', '.join(sorted(unknown))}")
    if "kind" not in raw:
        raise ValueError("pattern spec needs a 'kind' field")
    if isinstance(raw.get("shape"), list):
        raw["shape"] = tuple(raw["shape"])
    if isinstance(raw.get("levels"), list):
        raw["levels"] = tuple(float(x) for x in raw["levels"])
    if isinstance(raw.get("contrast"), list):
        raw["contrast"] = tuple(float(x) for x in raw["contrast"])
    if config.seed is not None:
        raw["seed"] = config.seed
    return PatternSpec(**raw)


def _pad_symmetric(arr: np.ndarray) -> tuple[np.ndarray, tuple[slice, slice]]:
    """Mirror-pad each transformed axis by half its extent; return crop slices."""
    pads = []
    crops = []
    for n in arr.shape:
        half = n // 2 if n > 1 else 0
        pads.append((half, half))
        crops.append(slice(half, half + n))
    return np.pad(arr, pads, mode="symmetric"), (crops[0], crops[1])


def _phase_stats(phase: np.ndarray) -> dict:
    return {
        "max_abs_phase": float(np.max(np.abs(phase))),
        "mean_abs_phase": float(np.mean(np.abs(phase))),
    }


def _edge_map(phase: np.ndarray, params: PstParams, config: RunConfig) -> np.ndarray:
    edges = threshold_feature_map(phase, params.threshold_min, params.threshold_max)
    return morphological_clean(edges, config.morph_min_size)


def _write_phase(out_dir: Path, stem: str, phase: np.ndarray, config: RunConfig) -> None:
    if "pfm" in config.formats:
        write_pfm(out_dir / f"{stem}_phase.pfm", phase)
    if "tiff" in config.formats:
        write_phase_tiff(out_dir / f"{stem}_phase.tiff", phase)


def _transform_2d(arr: np.ndarray, params: PstParams, config: RunConfig) -> np.ndarray:
    if config.pad:
        padded, crop = _pad_symmetric(arr)
        return pst(padded, params)[crop]
    return pst(arr, params)


def _check_finite(phase: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(phase)):
        raise ArithmeticError("transform produced non-finite phase values")
    return phase


def _step_peaks(phase: np.ndarray, jumps: tuple[int, ...], halfwidth: int) -> list[float]:
    trace = np.abs(np.asarray(phase).reshape(-1))
    peaks = []
    for pos in jumps:
        lo = max(pos - halfwidth, 0)
        hi = min(pos + halfwidth, trace.size)
        peaks.append(float(trace[lo:hi].max()))
    return peaks


def _run_raster_mode(path: str, params: PstParams, config: RunConfig, out_dir: Path) -> dict:
    arr = decode_image(path)
    stem = Path(path).stem
    phase = _check_finite(_transform_2d(arr, params, config))
    stats = _phase_stats(phase)

    if config.mode == "oracle-compare":
        reference = _check_finite(closed_form_pst(arr, params))
        diff = phase - reference
        _write_phase(out_dir, stem, phase, config)
        _write_phase(out_dir, f"{stem}_oracle", reference, config)
        _write_phase(out_dir, f"{stem}_diff", diff, config)
        stats["oracle_max_diff"] = float(np.max(np.abs(diff)))
        stats["oracle_mean_diff"] = float(np.mean(np.abs(diff)))
        edges = _edge_map(phase, params, config)
        stats["edge_pixel_count"] = int(edges.sum())
    elif config.mode == "baseline-compare":
        edges = _edge_map(phase, params, config)
        gradient = derivative_baseline(arr)
        baseline_edges = gradient > SOBEL_EDGE_FRACTION * gradient.max()
        write_edge_png(out_dir / f"{stem}_edges_pst.png", edges)
        write_edge_png(out_dir / f"{stem}_edges_sobel.png", baseline_edges)
        stats["edge_pixel_count"] = int(edges.sum())
        stats["baseline_edge_pixel_count"] = int(baseline_edges.sum())
    else:  # plain 2d
        edges = _edge_map(phase, params, config)
        _write_phase(out_dir, stem, phase, config)
        write_edge_png(out_dir / f"{stem}_edges.png", edges)
        stats["edge_pixel_count"] = int(edges.sum())

    return {"input": str(path), "mode": config.mode, "stats": stats}


def _run_trace_mode(path: str, params: PstParams, config: RunConfig, out_dir: Path) -> dict:
    trace = decode_trace(path)
    stem = Path(path).stem
    phase = _check_finite(pst_1d(trace, params))
    edges = threshold_feature_map(phase.reshape(-1, 1), params.threshold_min, params.threshold_max)
    write_trace_csv(out_dir / f"{stem}_phase.csv", phase)
    write_trace_csv(out_dir / f"{stem}_edges.csv", edges.reshape(-1).astype(int))
    stats = _phase_stats(phase)
    stats["edge_pixel_count"] = int(edges.sum())
    return {"input": str(path), "mode": config.mode, "stats": stats}


def _run_synth_mode(params: PstParams, config: RunConfig, out_dir: Path) -> dict:
    spec = _pattern_spec(config)
    pattern = generate(spec)
    arr = as_image(pattern.pixels)
    stem = f"synthetic_{spec.kind}"
    one_dim = arr.shape[1] == 1

    phase = _check_finite(_transform_2d(arr, params, config))
    edges = _edge_map(phase, params, config)
    if one_dim:
        write_trace_csv(out_dir / f"{stem}_input.csv", arr[:, 0])
        write_trace_csv(out_dir / f"{stem}_phase.csv", phase[:, 0])
        write_trace_csv(out_dir / f"{stem}_edges.csv", edges[:, 0].astype(int))
    else:
        write_pfm(out_dir / f"{stem}_input.pfm", arr)
        _write_phase(out_dir, stem, phase, config)
        write_edge_png(out_dir / f"{stem}_edges.png", edges)

    stats = _phase_stats(phase)
    stats["edge_pixel_count"] = int(edges.sum())
    if pattern.jump_positions:
        halfwidth = max(spec.plateau // 2, 1) if spec.kind == "staircase" else 8
        stats["step_positions"] = list(pattern.jump_positions)
        stats["step_peaks"] = _step_peaks(np.abs(phase).max(axis=1), pattern.jump_positions, halfwidth)
    return {"input": f"synthetic:{spec.kind}", "mode": config.mode, "stats": stats}


def _params_record(config: RunConfig) -> dict:
    return {
        "strength": config.strength,
        "warp": config.warp,
        "lpf_sigma": config.lpf_sigma,
        "threshold_min": config.threshold_min,
        "threshold_max": config.threshold_max,
        "taylor_order": config.taylor_order,
        "pad": config.pad,
        "morph_min_size": config.morph_min_size,
    }


def run(config: RunConfig) -> int:
    """Execute one batch run; returns the process exit code."""
    try:
        params = _validate(config)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = Path(config.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"I/O error: cannot create {out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO

    params_record = _params_record(config)
    try:
        if config.mode == "synth":
            records = [_run_synth_mode(params, config, out_dir)]
        else:
            worker = _run_trace_mode if config.mode == "1d" else _run_raster_mode
            if config.jobs > 1 and len(config.inputs) > 1:
                with ThreadPoolExecutor(max_workers=config.jobs) as pool:
                    records = list(
                        pool.map(lambda p: worker(p, params, config, out_dir), config.inputs)
                    )
            else:
                records = [worker(p, params, config, out_dir) for p in config.inputs]
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    lines = []
    for record in records:
        record["params"] = params_record
        lines.append(json.dumps(record, sort_keys=True))
    try:
        (out_dir / "summary.jsonl").write_text("".join(line + "\n" for line in lines), encoding="ascii")
    except OSError as exc:
        print(f"I/O error: cannot write summary: {exc}", file=sys.stderr)
        return EXIT_IO
    for line in lines:
        print(line)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasestretch",
        description="Batch phase-stretch feature extraction for rasters and traces.",
    )
    parser.add_argument("--mode", choices=MODES)
    parser.add_argument("--input", nargs="+", metavar="PATH", help="input raster(s) or trace(s)")
    parser.add_argument("--out-dir", help="output directory (created if missing)")
    parser.add_argument("--strength", type=float, help="peak kernel phase, radians")
    parser.add_argument("--warp", type=float, help="kernel warp factor")
    parser.add_argument("--lpf-sigma", type=float, help="Gaussian low-pass sigma, cycles/sample (omit for identity)")
    parser.add_argument("--threshold-min", type=float, help="lower phase threshold, radians (<= 0)")
    parser.add_argument("--threshold-max", type=float, help="upper phase threshold, radians (>= 0)")
    parser.add_argument("--taylor-order", type=int, help="even closed-form truncation order")
    parser.add_argument("--pad", action="store_true", default=None, help="mirror-pad before transforming")
    parser.add_argument("--morph-min-size", type=int, help="drop edge components up to this size")
    parser.add_argument("--formats", help="comma-separated phase raster formats (pfm, tiff)")
    parser.add_argument("--config", metavar="JSON", help="JSON config file; flags override its values")
    parser.add_argument("--seed", type=int, help="seed override for synthetic patterns")
    parser.add_argument("--jobs", type=int, help="process this many inputs concurrently")
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            document = json.load(fh)
        if not isinstance(document, dict):
            raise ValueError("config document must be a JSON object")
        values.update(document)

    overrides = {
        "mode": args.mode,
        "input": args.input,
        "out_dir": args.out_dir,
        "strength": args.strength,
        "warp": args.warp,
        "lpf_sigma": args.lpf_sigma,
        "threshold_min": args.threshold_min,
        "threshold_max": args.threshold_max,
        "taylor_order": args.taylor_order,
        "pad": args.pad,
        "morph_min_size": args.morph_min_size,
        "formats": args.formats,
        "seed": args.seed,
        "jobs": args.jobs,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})

    if "input" in values:
        raw = values.pop("input")
        values["inputs"] = (raw,) if isinstance(raw, str) else tuple(raw)
    elif isinstance(values.get("inputs"), list):
        values["inputs"] = tuple(values["inputs"])
    if isinstance(values.get("formats"), str):
        values["formats"] = tuple(f.strip() for f in values["formats"].split(",") if f.strip())
    elif isinstance(values.get("formats"), list):
        values["formats"] = tuple(values["formats"])

    if "mode" not in values:
        raise ValueError("--mode is required (flag or config)")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config field(s): {', '.join(sorted(unknown))}")
    return RunConfig(**values)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _merge_config(args)
    except OSError as exc:
        print(f"config error: cannot read config file: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
