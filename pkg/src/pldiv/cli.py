"""Command-line front end: ``pldiv {compute,synth,study,bench,landscape}``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io, synthgen
from .diversity import METRIC_NAMES, VENDI_MAX_N, MetricOptions, compute_metrics, parse_metrics
from .errors import PLDivError, UsageError
from .geometry import KERNELS, METRICS, DistanceMatrix, pairwise_distances
from .landscape import build_landscape, pldiv_closed_form, sample_landscape
from .persistence import h0_dense
from .report import DiversityReport, dumps, tool_version
from .studies import BENCH_EPSILONS, BENCH_SIZES, BENCH_VENDI_MAX_N, STUDIES, run_bench

STUDY_DEFAULTS = {"toy": (20, "all"), "longtail": (10, "pldiv"), "pairs": (10, "all")}
GENERATORS = synthgen.TOY_NAMES + ("longtail", "mixture") + synthgen.PAIR_NAMES


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_metric_flags(p, metrics_default):
    p.add_argument("--metrics", "--metric", default=metrics_default,
                   help=f"comma list from {', '.join(METRIC_NAMES)} or 'all'")
    p.add_argument("--distance", default="euclidean", choices=METRICS)
    p.add_argument("--kernel", default=None, choices=KERNELS,
                   help="similarity kernel for vendi/dcscore (default rbf on point clouds)")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=None, help="sparse Rips tolerance; omit for dense")
    p.add_argument("--t0", type=float, default=0.01)
    p.add_argument("--t-cut", type=float, default=None, help="fixed MAGAREA upper scale")
    p.add_argument("--n-grid", type=int, default=64, help="MAGAREA grid points per doubling")
    p.add_argument("--vendi-max-n", type=int, default=VENDI_MAX_N)


def _options(args) -> MetricOptions:
    return MetricOptions(distance=args.distance, kernel=args.kernel, gamma=args.gamma, tau=args.tau,
                         epsilon=args.epsilon, t0=args.t0, n_grid=args.n_grid, t_cut=args.t_cut,
                         vendi_max_n=args.vendi_max_n)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pldiv", description="Persistence-landscape diversity and baselines.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute diversity metrics for one CSV input")
    p.add_argument("input")
    p.add_argument("--input-kind", default="points", choices=io.INPUT_KINDS)
    _add_metric_flags(p, "pldiv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dataset-id", default=None)
    p.add_argument("--out", default=None, help="also write a metric,value,time_ms CSV here")

    p = sub.add_parser("synth", help="write a generated cloud (or pair) as points CSV")
    p.add_argument("generator", choices=GENERATORS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-outliers", type=int, default=100, help="longtail only")
    p.add_argument("--n", type=int, default=synthgen.N_POINTS, help="mixture only")
    p.add_argument("--dim", type=int, default=2, help="mixture only")
    p.add_argument("--out", required=True, help="CSV path; pairs get _A/_B suffixes")

    p = sub.add_parser("study", help="run a seeded synthetic study and check its claims")
    p.add_argument("study", choices=sorted(STUDIES))
    p.add_argument("--seeds", type=int, default=None)
    _add_metric_flags(p, None)
    p.add_argument("--json", action="store_true", help="print the JSON result instead of the table")
    p.add_argument("--out", default=None, help="write the JSON result here")

    p = sub.add_parser("bench", help="time dense vs sparse PLDiv and the baselines")
    p.add_argument("--sizes", type=_ints, default=list(BENCH_SIZES))
    p.add_argument("--epsilons", "--epsilon", type=_floats, default=list(BENCH_EPSILONS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--vendi-max-n", type=int, default=BENCH_VENDI_MAX_N)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--check", action="store_true", help="exit nonzero when a bench verdict fails")

    p = sub.add_parser("landscape", help="export the sampled persistence landscape as CSV")
    p.add_argument("input")
    p.add_argument("--input-kind", default="points", choices=io.INPUT_KINDS)
    p.add_argument("--distance", default="euclidean", choices=METRICS)
    p.add_argument("--steps", "--t-steps", type=int, default=200)
    p.add_argument("--out", required=True)
    return ap


def cmd_compute(args, out=None) -> int:
    out = out or sys.stdout
    data = io.load_input(args.input, args.input_kind)
    opts = _options(args)
    metrics = parse_metrics(args.metrics)
    values, timings = compute_metrics(data, metrics, opts)
    echo = {"input": str(args.input), "input_kind": args.input_kind, "metrics": list(metrics),
            "seed": args.seed, **opts.echo()}
    report = DiversityReport(args.dataset_id or Path(args.input).stem, data.n, values, timings, echo)
    if args.out:
        Path(args.out).write_text("\n".join(report.csv_rows()) + "\n")
    print(report.to_json(), file=out)
    return 0


def cmd_synth(args, out=None) -> int:
    out = out or sys.stdout
    params = {}
    if args.generator == "longtail":
        params = {"n_outliers": args.n_outliers}
    elif args.generator == "mixture":
        params = {"n": args.n, "dim": args.dim}
    spec = synthgen.GeneratorSpec(args.generator, params, args.seed)
    made = synthgen.generate(spec)
    target = Path(args.out)
    header = [f"generator={spec.name} seed={spec.seed} params={params}"]
    if isinstance(made, synthgen.LabeledCloudPair):
        stem = target.with_suffix("")
        files = [stem.with_name(stem.name + "_A.csv"), stem.with_name(stem.name + "_B.csv")]
        clouds = [made.cloud_a, made.cloud_b]
    else:
        files, clouds = [target], [made]
    for f, c in zip(files, clouds):
        io.write_points(f, c, header)
    sidecar = {"generator": spec.as_dict(), "files": [str(f) for f in files],
               "n_points": [c.n for c in clouds], "tool_version": tool_version()}
    text = dumps(sidecar)
    target.with_suffix(".json").write_text(text + "\n")
    print(text, file=out)
    return 0


def cmd_study(args, out=None) -> int:
    out = out or sys.stdout
    seeds, metrics = STUDY_DEFAULTS[args.study]
    seeds = args.seeds if args.seeds is not None else seeds
    if seeds < 1:
        raise UsageError("--seeds must be >= 1")
    res = STUDIES[args.study](seeds=seeds, metrics=args.metrics or metrics, opts=_options(args))
    return _emit(res, args, out)


def cmd_bench(args, out=None) -> int:
    out = out or sys.stdout
    if not args.sizes or min(args.sizes) < 2:
        raise UsageError("--sizes needs at least one size >= 2")
    res = run_bench(args.sizes, args.epsilons, args.seed, args.dim, args.repeats, args.vendi_max_n,
                    args.gamma, args.tau)
    code = _emit(res, args, out)
    return code if args.check else 0


def _emit(res, args, out) -> int:
    out = out or sys.stdout
    if args.out:
        Path(args.out).write_text(res.to_json() + "\n")
    if args.json:
        print(res.to_json(), file=out)
    else:
        print(res.table, file=out)
        print("", file=out)
        for line in res.verdict_lines():
            print(line, file=out)
    return res.exit_code


def cmd_landscape(args, out=None) -> int:
    out = out or sys.stdout
    data = io.load_input(args.input, args.input_kind)
    dist = data if isinstance(data, DistanceMatrix) else pairwise_distances(data, args.distance)
    diagram = h0_dense(dist)
    land = build_landscape(diagram)
    t_max = float(diagram.deaths.max()) if len(diagram) and diagram.deaths.max() > 0 else 1.0
    grid, values = sample_landscape(land, 0.0, t_max, args.steps)
    target = Path(args.out)
    io.write_rows(target, [grid, *values])
    diag_path = target.with_suffix("").with_name(target.with_suffix("").name + "_diagram.csv")
    io.write_rows(diag_path, np.column_stack([diagram.births, diagram.deaths]), header=["birth,death"])
    summary = {"n": data.n, "n_pairs": len(diagram), "n_levels": len(land), "t_range": [0.0, t_max],
               "steps": int(args.steps), "landscape_csv": str(target), "diagram_csv": str(diag_path),
               "pldiv": pldiv_closed_form(diagram), "tool_version": tool_version()}
    print(dumps(summary), file=out)
    return 0


COMMANDS = {"compute": cmd_compute, "synth": cmd_synth, "study": cmd_study, "bench": cmd_bench,
            "landscape": cmd_landscape}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pldiv {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (PLDivError, ValueError, OSError) as exc:
        print(f"pldiv {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
