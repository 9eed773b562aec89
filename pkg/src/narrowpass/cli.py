"""Command line interface: `narrow-pass bench | plan | scene`.

Exit codes: 0 on success, 1 on validation errors, 2 on I/O errors.  The
NARROW_PASS_THREADS environment variable provides the default for --threads.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from .bench import (
    BenchmarkConfig,
    derive_trial_seed,
    emit_cell_svgs,
    emit_csv,
    make_robot_and_spec,
    run_benchmark,
)
from .cspace import Configuration
from .geometry import CollisionCounter
from .heavytail import HeavyTailParams
from .prm import build_roadmap, query, save_roadmap
from .samplers import SAMPLERS, SamplerConfig
from .scenes import BUILTIN_NAMES, DEFAULT_WIDTHS, builtin, default_query, serialize_scene


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="narrow-pass", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a sampler benchmark sweep")
    bench.add_argument("--scene", required=True, choices=BUILTIN_NAMES)
    bench.add_argument("--width", type=float, default=None, help="passage width (scene default)")
    bench.add_argument("--robot", default="point", help="point, linkN (2D), or lshape (3D)")
    bench.add_argument("--samplers", default="lfs,lfbs,rwbs,rbbs,gauss,rws")
    bench.add_argument("--steps", default="2,5,10,15,20")
    bench.add_argument("--k", type=int, default=30, help="samples requested per trial")
    bench.add_argument("--trials", type=int, default=300)
    bench.add_argument("--seed", type=int, default=1)
    bench.add_argument("--threads", type=int, default=None)
    bench.add_argument("--csv", required=True, help="output CSV path")
    bench.add_argument("--svg-dir", default=None, help="emit one scatter SVG per cell")

    plan = sub.add_parser("plan", help="build a roadmap with bridge samples and query a path")
    plan.add_argument("--scene", required=True, choices=BUILTIN_NAMES)
    plan.add_argument("--width", type=float, default=None)
    plan.add_argument("--robot", default="point")
    plan.add_argument("--bridge", default="lfbs", choices=sorted(SAMPLERS))
    plan.add_argument("--bridge-samples", type=int, default=200)
    plan.add_argument("--prm-samples", type=int, default=300)
    plan.add_argument("--step", type=float, default=None, help="sampler step size (default width/2)")
    plan.add_argument("--k", type=int, default=10)
    plan.add_argument("--resolution", type=float, default=0.5)
    plan.add_argument("--seed", type=int, default=1)
    plan.add_argument("--start", default=None, help="comma-separated translation, scene default")
    plan.add_argument("--goal", default=None)
    plan.add_argument("--out", required=True, help="path output file")
    plan.add_argument("--roadmap", default=None, help="also export the roadmap graph")

    scene = sub.add_parser("scene", help="emit a builtin scene file")
    scene.add_argument("--emit", required=True, choices=BUILTIN_NAMES)
    scene.add_argument("--width", type=float, default=None)
    scene.add_argument("--out", default=None, help="output file (default stdout)")
    return parser


def _parse_floats(text: str):
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise _CliError(f"expected comma-separated numbers, got '{text}'") from None


def _default_threads() -> int:
    env = os.environ.get("NARROW_PASS_THREADS")
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        raise _CliError(f"NARROW_PASS_THREADS must be an integer, got '{env}'") from None


def _cmd_bench(args) -> int:
    width = args.width if args.width is not None else DEFAULT_WIDTHS[args.scene]
    threads = args.threads if args.threads is not None else _default_threads()
    config = BenchmarkConfig(
        scene=args.scene,
        width=width,
        robot=args.robot,
        samplers=tuple(tok for tok in args.samplers.split(",") if tok),
        steps=_parse_floats(args.steps),
        k_target=args.k,
        trials=args.trials,
        base_seed=args.seed,
        threads=threads,
    )
    results = run_benchmark(config)
    emit_csv(results, args.csv)
    print(f"wrote {len(results.records)} trial rows to {args.csv}")
    for agg in results.aggregates:
        cell = agg.cell
        print(
            f"{cell.sampler} a={cell.step_a:g}: median gamma_c {agg.median_gamma_c:g} "
            f"(mean {agg.mean_gamma_c:.1f}), median quality {agg.median_quality:.3f} "
            f"(mean {agg.mean_quality:.3f}), complete {agg.completion_rate:.0%}"
        )
    if args.svg_dir:
        paths = emit_cell_svgs(config, args.svg_dir)
        print(f"wrote {len(paths)} scatter figures to {args.svg_dir}")
    return 0


def _parse_translation(text, scene, label):
    vals = _parse_floats(text)
    if len(vals) != scene.dims:
        raise _CliError(f"--{label} needs {scene.dims} coordinates")
    return np.array(vals)


def _cmd_plan(args) -> int:
    width = args.width if args.width is not None else DEFAULT_WIDTHS[args.scene]
    scene = builtin(args.scene, width)
    robot, spec = make_robot_and_spec(scene, args.robot)
    step_a = args.step if args.step is not None else max(width / 2.0, 0.25)
    rng = np.random.default_rng(derive_trial_seed(args.seed, 0))
    counter = CollisionCounter()

    cfg = SamplerConfig(step_a=step_a, heavy=HeavyTailParams(), k_target=args.bridge_samples)
    t0 = time.perf_counter()
    batch = SAMPLERS[args.bridge](scene, robot, spec, cfg, rng, counter)
    t_sample = time.perf_counter() - t0
    sample_calls = counter.calls

    t0 = time.perf_counter()
    roadmap = build_roadmap(
        scene, robot, spec, args.prm_samples, batch, args.k, args.resolution, rng, counter
    )
    t_build = time.perf_counter() - t0
    build_calls = counter.calls - sample_calls

    if args.start is not None:
        start_t = _parse_translation(args.start, scene, "start")
    else:
        start_t = default_query(args.scene)[0]
    if args.goal is not None:
        goal_t = _parse_translation(args.goal, scene, "goal")
    else:
        goal_t = default_query(args.scene)[1]
    zeros = np.zeros(spec.angle_dims)
    start = Configuration(start_t, zeros)
    goal = Configuration(goal_t, zeros)

    t0 = time.perf_counter()
    result = query(roadmap, start, goal, scene, robot, spec, args.k, args.resolution, counter)
    t_query = time.perf_counter() - t0
    result.stats.update(
        {
            "bridge_samples": len(batch.samples),
            "sample_collision_calls": sample_calls,
            "build_collision_calls": build_calls,
            "query_collision_calls": counter.calls - sample_calls - build_calls,
            "total_collision_calls": counter.calls,
            "sample_time_s": t_sample,
            "build_time_s": t_build,
            "query_time_s": t_query,
        }
    )

    if args.roadmap:
        save_roadmap(roadmap, args.roadmap)
    lines = ["# narrow-pass path v1", f"found {'true' if result.found else 'false'}"]
    if result.found:
        lines.append(f"length {repr(result.path_length)}")
        for q in result.path:
            coords = " ".join(repr(float(v)) for v in np.concatenate([q.trans, q.angles]))
            lines.append(f"config {coords}")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

    status = f"path found, length {result.path_length:.3f}" if result.found else "no path found"
    print(f"{status}; roadmap {roadmap.n_nodes} nodes / {roadmap.n_edges} edges")
    for key, value in sorted(result.stats.items()):
        print(f"  {key}: {value:.4f}" if isinstance(value, float) else f"  {key}: {value}")
    return 0


def _cmd_scene(args) -> int:
    scene = builtin(args.emit, args.width)
    text = serialize_scene(scene)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "plan":
            return _cmd_plan(args)
        return _cmd_scene(args)
    except (_CliError, ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
