"""Benchmark harness: seeded trials, aggregation, CSV tables, SVG scatters.

A trial cell is (scene, width, robot, sampler, step size).  All cells share
the same per-trial seed sequence, derived from the base seed with a
splitmix64-style mix of the trial index, so samplers can be compared on
paired seeds.  Trials are embarrassingly parallel: each owns its RNG,
counter, and scene instance, and aggregation is order-independent.

Wall-clock time is measured and reported but never asserted anywhere; the
portable cost metric is the collision-call count.
"""

from __future__ import annotations

import csv
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cspace import (
    PointRobot,
    SpaceSpec,
    lshape_robot,
    planar_link_robot,
)
from .geometry import CollisionCounter, Scene, in_passage
from .heavytail import HeavyTailParams
from .samplers import SAMPLERS, SampleBatch, SamplerConfig
from .scenes import builtin

CSV_HEADER = [
    "scene",
    "robot",
    "sampler",
    "step_a",
    "seed",
    "gamma_c",
    "t_eps_s",
    "quality",
    "samples",
    "complete",
]

_MASK64 = (1 << 64) - 1


def derive_trial_seed(base_seed: int, trial_index: int) -> int:
    """Per-trial seed: splitmix64 finalizer over base_seed + golden-ratio steps.

    Depends only on (base_seed, trial_index), so every cell sees the same
    seed sequence and cross-sampler comparisons are seed-paired.
    """
    z = (base_seed + (trial_index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


def make_robot_and_spec(scene: Scene, robot_kind: str):
    """Build the benchmark robot and its configuration space over a scene."""
    lo, hi = scene.lo, scene.hi
    bounds = np.column_stack([lo, hi])
    if robot_kind == "point":
        return PointRobot(), SpaceSpec(bounds)
    if robot_kind.startswith("link"):
        if scene.dims != 2:
            raise ValueError("link robots require a 2D scene")
        n = int(robot_kind[4:])
        return planar_link_robot(n), SpaceSpec(bounds, angle_dims=n)
    if robot_kind == "lshape":
        if scene.dims != 3:
            raise ValueError("the L-shape robot requires a 3D scene")
        return lshape_robot(), SpaceSpec(bounds, angle_dims=3)
    raise ValueError(f"unknown robot kind '{robot_kind}' (point, linkN, lshape)")


@dataclass(frozen=True)
class TrialCell:
    """One benchmark cell; cheap to pickle for worker processes."""

    scene: str
    width: float
    robot: str
    sampler: str
    step_a: float
    k_target: int = 30

    def sampler_config(self) -> SamplerConfig:
        return SamplerConfig(step_a=self.step_a, heavy=HeavyTailParams(), k_target=self.k_target)


@dataclass
class TrialMetrics:
    """Per-trial outcome: collision calls, time, and sample quality."""

    gamma_c: int
    t_eps: float
    quality: float
    samples_returned: int
    complete: bool


@dataclass
class TrialRecord:
    cell: TrialCell
    seed: int
    metrics: TrialMetrics


@dataclass
class CellAggregate:
    """Per-cell medians and means over trials (medians drive acceptance)."""

    cell: TrialCell
    trials: int
    median_gamma_c: float
    mean_gamma_c: float
    median_t_eps: float
    mean_t_eps: float
    median_quality: float
    mean_quality: float
    median_samples: float
    completion_rate: float


@dataclass
class BenchmarkResults:
    records: list = field(default_factory=list)
    aggregates: list = field(default_factory=list)


@dataclass(frozen=True)
class BenchmarkConfig:
    scene: str
    width: float
    robot: str
    samplers: tuple
    steps: tuple
    k_target: int = 30
    trials: int = 300
    base_seed: int = 1
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.k_target < 1:
            raise ValueError("k_target must be >= 1")
        if not self.samplers:
            raise ValueError("at least one sampler is required")
        for name in self.samplers:
            if name not in SAMPLERS:
                raise ValueError(f"unknown sampler '{name}' (choose from {', '.join(SAMPLERS)})")
        if not self.steps or any(s <= 0 for s in self.steps):
            raise ValueError("step sizes must be positive")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        # fail fast on scene/robot mismatches, before any trial runs
        scene = builtin(self.scene, self.width)
        make_robot_and_spec(scene, self.robot)

    def cells(self):
        return [
            TrialCell(self.scene, self.width, self.robot, sampler, float(step), self.k_target)
            for sampler in self.samplers
            for step in self.steps
        ]


def run_trial_batch(cell: TrialCell, seed: int):
    """Run one seeded trial and return (metrics, batch)."""
    scene = builtin(cell.scene, cell.width)
    robot, spec = make_robot_and_spec(scene, cell.robot)
    cfg = cell.sampler_config()
    rng = np.random.default_rng(seed)
    counter = CollisionCounter()
    sampler = SAMPLERS[cell.sampler]
    t0 = time.perf_counter()
    batch = sampler(scene, robot, spec, cfg, rng, counter)
    t_eps = time.perf_counter() - t0
    if batch.samples:
        hits = sum(in_passage(scene, robot, q) for q in batch.samples)
        quality = hits / len(batch.samples)
    else:
        quality = 0.0
    metrics = TrialMetrics(
        gamma_c=counter.calls,
        t_eps=t_eps,
        quality=quality,
        samples_returned=len(batch.samples),
        complete=batch.complete,
    )
    return metrics, batch


def run_trial(cell: TrialCell, seed: int) -> TrialMetrics:
    """Deterministic in everything except t_eps."""
    metrics, _ = run_trial_batch(cell, seed)
    return metrics


def _trial_task(args):
    cell, seed = args
    try:
        return cell, seed, run_trial(cell, seed)
    except Exception:
        # a failed trial is recorded as incomplete, never aborts the sweep
        return cell, seed, TrialMetrics(0, 0.0, 0.0, 0, False)


def run_benchmark(config: BenchmarkConfig) -> BenchmarkResults:
    """Run the full cells x trials cross product, serially or in workers."""
    cells = config.cells()
    seeds = [derive_trial_seed(config.base_seed, i) for i in range(config.trials)]
    tasks = [(cell, seed) for cell in cells for seed in seeds]
    if config.threads == 1:
        outcomes = [_trial_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            outcomes = list(pool.map(_trial_task, tasks, chunksize=8))
    by_key = {(cell, seed): metrics for cell, seed, metrics in outcomes}
    results = BenchmarkResults()
    for cell in cells:
        cell_records = [TrialRecord(cell, seed, by_key[(cell, seed)]) for seed in seeds]
        results.records.extend(cell_records)
        results.aggregates.append(aggregate_cell(cell, cell_records))
    return results


def aggregate_cell(cell: TrialCell, records) -> CellAggregate:
    gamma = [r.metrics.gamma_c for r in records]
    teps = [r.metrics.t_eps for r in records]
    quality = [r.metrics.quality for r in records]
    samples = [r.metrics.samples_returned for r in records]
    return CellAggregate(
        cell=cell,
        trials=len(records),
        median_gamma_c=float(statistics.median(gamma)),
        mean_gamma_c=statistics.fmean(gamma),
        median_t_eps=float(statistics.median(teps)),
        mean_t_eps=statistics.fmean(teps),
        median_quality=float(statistics.median(quality)),
        mean_quality=statistics.fmean(quality),
        median_samples=float(statistics.median(samples)),
        completion_rate=sum(r.metrics.complete for r in records) / len(records),
    )


def _fmt(value) -> str:
    return repr(float(value))


def emit_csv(results: BenchmarkResults, path) -> None:
    """Raw row per trial plus one AGG row per cell.

    AGG rows put the per-cell *median* in each metric column (the robust
    statistic under heavy-tailed walks) and the completion rate in
    ``complete``; means are available on the in-memory aggregates and in the
    CLI summary.
    """
    by_cell = {}
    for record in results.records:
        by_cell.setdefault(record.cell, []).append(record)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for agg in results.aggregates:
                cell = agg.cell
                for record in by_cell.get(cell, []):
                    m = record.metrics
                    writer.writerow(
                        [
                            cell.scene,
                            cell.robot,
                            cell.sampler,
                            _fmt(cell.step_a),
                            record.seed,
                            m.gamma_c,
                            _fmt(m.t_eps),
                            _fmt(m.quality),
                            m.samples_returned,
                            "true" if m.complete else "false",
                        ]
                    )
                writer.writerow(
                    [
                        cell.scene,
                        cell.robot,
                        cell.sampler,
                        _fmt(cell.step_a),
                        "AGG",
                        _fmt(agg.median_gamma_c),
                        _fmt(agg.median_t_eps),
                        _fmt(agg.median_quality),
                        _fmt(agg.median_samples),
                        _fmt(agg.completion_rate),
                    ]
                )
    except OSError as err:
        raise OSError(f"cannot write CSV to {path}: {err}") from err


def read_csv_rows(path):
    """Read an emitted CSV back as (raw_rows, agg_rows) lists of dicts."""
    raw, agg = [], []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            (agg if row["seed"] == "AGG" else raw).append(row)
    return raw, agg


# ---------------------------------------------------------------------------
# SVG scatter output
# ---------------------------------------------------------------------------

_SVG_MARGIN = 40.0
_SVG_LONG_SIDE = 720.0


def scene_viewport(scene: Scene):
    """Affine scene-to-viewport transform for the drawing plane.

    Returns (ax_x, ax_y, scale, x0, y0, width, height): pixel coordinates are
    px = margin + (x - lo[ax_x]) * scale and py = margin + (hi[ax_y] - y) *
    scale, with y flipped so the drawing is oriented like the scene.
    """
    ax_x, ax_y = (0, 1) if scene.dims == 2 else (scene.projection or (0, 1))
    ex = float(scene.hi[ax_x] - scene.lo[ax_x])
    ey = float(scene.hi[ax_y] - scene.lo[ax_y])
    scale = _SVG_LONG_SIDE / max(ex, ey)
    width = 2 * _SVG_MARGIN + ex * scale
    height = 2 * _SVG_MARGIN + ey * scale
    return ax_x, ax_y, scale, float(scene.lo[ax_x]), float(scene.hi[ax_y]), width, height


def emit_svg_scatter(scene: Scene, batch: SampleBatch | None, path) -> None:
    """Draw obstacles, the outlined passage, and sample dots as standalone SVG.

    Output bytes are deterministic for fixed inputs; bridge witnesses are
    drawn as thin lines under the sample dots.
    """
    ax_x, ax_y, scale, x0, y0, width, height = scene_viewport(scene)

    def toxy(px, py):
        return (_SVG_MARGIN + (px - x0) * scale, _SVG_MARGIN + (y0 - py) * scale)

    def fmt(v):
        return f"{v:.4f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">',
        f'<rect x="0" y="0" width="{fmt(width)}" height="{fmt(height)}" fill="white"/>',
    ]
    bx, by = toxy(float(scene.lo[ax_x]), float(scene.hi[ax_y]))
    bw = (float(scene.hi[ax_x]) - float(scene.lo[ax_x])) * scale
    bh = (float(scene.hi[ax_y]) - float(scene.lo[ax_y])) * scale
    parts.append(
        f'<rect x="{fmt(bx)}" y="{fmt(by)}" width="{fmt(bw)}" height="{fmt(bh)}" '
        'fill="none" stroke="black" stroke-width="1.5"/>'
    )
    for poly in scene.polygons:
        pts = " ".join(f"{fmt(px)},{fmt(py)}" for px, py in (toxy(v[0], v[1]) for v in poly))
        parts.append(f'<polygon points="{pts}" fill="#555555" stroke="none"/>')
    for mn, mx in scene.boxes:
        px, py = toxy(float(mn[ax_x]), float(mx[ax_y]))
        w = (float(mx[ax_x]) - float(mn[ax_x])) * scale
        h = (float(mx[ax_y]) - float(mn[ax_y])) * scale
        parts.append(
            f'<rect x="{fmt(px)}" y="{fmt(py)}" width="{fmt(w)}" height="{fmt(h)}" '
            'fill="#555555" fill-opacity="0.75" stroke="none"/>'
        )
    if scene.passage is not None:
        pmn, pmx = scene.passage
        px, py = toxy(float(pmn[ax_x]), float(pmx[ax_y]))
        w = (float(pmx[ax_x]) - float(pmn[ax_x])) * scale
        h = (float(pmx[ax_y]) - float(pmn[ax_y])) * scale
        parts.append(
            f'<rect x="{fmt(px)}" y="{fmt(py)}" width="{fmt(w)}" height="{fmt(h)}" '
            'fill="none" stroke="#d97706" stroke-width="1.5" stroke-dasharray="6 3"/>'
        )
    if batch is not None:
        for sample, witness in zip(batch.samples, batch.witnesses):
            sx, sy = toxy(float(sample.trans[ax_x]), float(sample.trans[ax_y]))
            for w in witness:
                wx, wy = toxy(float(w.trans[ax_x]), float(w.trans[ax_y]))
                parts.append(
                    f'<line x1="{fmt(wx)}" y1="{fmt(wy)}" x2="{fmt(sx)}" y2="{fmt(sy)}" '
                    'stroke="#93c5fd" stroke-width="0.5"/>'
                )
        for sample in batch.samples:
            sx, sy = toxy(float(sample.trans[ax_x]), float(sample.trans[ax_y]))
            parts.append(f'<circle cx="{fmt(sx)}" cy="{fmt(sy)}" r="2.5" fill="#dc2626"/>')
    parts.append("</svg>")
    data = "\n".join(parts) + "\n"
    try:
        with open(path, "wb") as fh:
            fh.write(data.encode("utf-8"))
    except OSError as err:
        raise OSError(f"cannot write SVG to {path}: {err}") from err


def emit_cell_svgs(config: BenchmarkConfig, out_dir) -> list:
    """Re-run each cell's first trial and render its batch; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    seed = derive_trial_seed(config.base_seed, 0)
    paths = []
    for cell in config.cells():
        _, batch = run_trial_batch(cell, seed)
        scene = builtin(cell.scene, cell.width)
        name = f"{cell.scene}_{cell.robot}_{cell.sampler}_a{cell.step_a:g}.svg"
        target = os.path.join(out_dir, name)
        emit_svg_scatter(scene, batch, target)
        paths.append(target)
    return paths
