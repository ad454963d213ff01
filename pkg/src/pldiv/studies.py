"""Seeded synthetic studies (toy, long-tail, pairs) and the timing bench.

Each study aggregates medians over seeds and checks its ordinal claims. Only
PLDiv verdicts are gating; baseline verdicts are reported for comparison.
Generators are injectable so a deliberately broken generator can be used to
check that failed claims surface in the exit status.
"""
from __future__ import annotations

import dataclasses
import math
import time
from collections import defaultdict

import numpy as np

from . import baselines, synthgen
from .diversity import MetricOptions, compute_metrics, parse_metrics
from .geometry import kernel_matrix, pairwise_distances
from .landscape import pldiv_closed_form
from .persistence import h0_dense
from .report import StudyResult, Verdict
from .sparse_rips import pldiv_sparse

BENCH_SIZES = (500, 1000, 2000, 4000)
BENCH_EPSILONS = (0.95, 10.0)
BENCH_VENDI_MAX_N = 2000
LABELS = {"pldiv": "PLDiv", "vendi": "Vendi", "dcscore": "DCScore", "magarea": "MagArea"}


def _median_table(result: StudyResult):
    acc = defaultdict(list)
    for r in result.rows:
        acc[(r["case"], r["metric"])].append(r["value"])
    return {k: float(np.median(v)) for k, v in acc.items()}


def _format_table(cases, metrics, med) -> str:
    head = f"{'case':<30s}" + "".join(f"{LABELS[m]:>14s}" for m in metrics)
    lines = [head, "-" * len(head)]
    for c in cases:
        lines.append(f"{c:<30s}" + "".join(f"{med[(c, m)]:14.4f}" for m in metrics))
    return "\n".join(lines)


def _group_values(clouds, metrics, opts):
    """Metric values for a group of clouds compared against each other.

    MAGAREA areas are only comparable over a common interval, so the group
    shares t_cut = the largest convergence scale of its members.
    """
    if "magarea" in metrics and opts.t_cut is None:
        t_cut = max(baselines.convergence_scale(pairwise_distances(c, opts.distance), opts.t0, opts.target)
                    for c in clouds)
        opts = dataclasses.replace(opts, t_cut=t_cut)
    return [{v.metric: v.value for v in compute_metrics(c, metrics, opts)[0]} for c in clouds]


def _strictly_increasing(xs):
    return all(a < b for a, b in zip(xs, xs[1:]))


def run_toy_study(seeds: int = 20, metrics="all", opts: MetricOptions | None = None,
                  generator=synthgen.toy_dataset) -> StudyResult:
    opts = opts or MetricOptions()
    metrics = parse_metrics(metrics)
    cases = synthgen.TOY_NAMES
    res = StudyResult("toy", params_echo={"seeds": seeds, "metrics": list(metrics), **opts.echo()})
    for seed in range(seeds):
        vals = _group_values([generator(c, seed) for c in cases], metrics, opts)
        for c, v in zip(cases, vals):
            for m in metrics:
                res.add(c, m, v[m], seed)
    med = _median_table(res)
    for m in metrics:
        ordered = _strictly_increasing([med[(c, m)] for c in reversed(cases)])
        res.verdicts.append(Verdict("D1>D2>D3>D4", LABELS[m], ordered, gating=m == "pldiv"))
    if "pldiv" in metrics:
        gap = med[("D4", "pldiv")] < 0.25 * med[("D1", "pldiv")]
        res.verdicts.append(Verdict("D4 < 0.25 x D1", "PLDiv", gap, gating=True))
    res.summary = {"medians": {f"{c}/{m}": med[(c, m)] for c in cases for m in metrics}}
    res.table = _format_table(cases, metrics, med)
    return res


def run_longtail_study(seeds: int = 10, metrics="pldiv", opts: MetricOptions | None = None,
                       outliers=(0,) + synthgen.LONGTAIL_OUTLIERS,
                       generator=synthgen.longtail_dataset) -> StudyResult:
    opts = opts or MetricOptions()
    metrics = parse_metrics(metrics)
    cases = [f"outliers={k}" for k in outliers]
    res = StudyResult("longtail", params_echo={"seeds": seeds, "metrics": list(metrics),
                                               "outliers": list(outliers), **opts.echo()})
    for seed in range(seeds):
        vals = _group_values([generator(k, seed) for k in outliers], metrics, opts)
        for c, v in zip(cases, vals):
            for m in metrics:
                res.add(c, m, v[m], seed)
    med = _median_table(res)
    for m in metrics:
        res.verdicts.append(Verdict("monotone in outliers", LABELS[m],
                                    _strictly_increasing([med[(c, m)] for c in cases]), gating=m == "pldiv"))
    if "pldiv" in metrics:
        means = [float(np.mean([r["value"] for r in res.rows if r["case"] == c and r["metric"] == "pldiv"]))
                 for c in cases]
        res.verdicts.append(Verdict("seed-mean monotone in outliers", "PLDiv", _strictly_increasing(means)))
        res.summary["pldiv_means"] = dict(zip(cases, means))
    res.summary["medians"] = {f"{c}/{m}": med[(c, m)] for c in cases for m in metrics}
    res.table = _format_table(cases, metrics, med)
    return res


def run_pairs_study(seeds: int = 10, metrics="all", opts: MetricOptions | None = None,
                    names=synthgen.PAIR_NAMES, generator=synthgen.pair_dataset) -> StudyResult:
    opts = opts or MetricOptions()
    metrics = parse_metrics(metrics)
    res = StudyResult("pairs", params_echo={"seeds": seeds, "metrics": list(metrics), **opts.echo()})
    cases = []
    for name in names:
        cases += [f"{name}/A", f"{name}/B"]
    for seed in range(seeds):
        for name in names:
            pair = generator(name, seed)
            va, vb = _group_values([pair.cloud_a, pair.cloud_b], metrics, opts)
            for m in metrics:
                res.add(f"{name}/A", m, va[m], seed)
                res.add(f"{name}/B", m, vb[m], seed)
    med = _median_table(res)
    counts = {}
    for m in metrics:
        wins = 0
        for name in names:
            ok = med[(f"{name}/B", m)] > med[(f"{name}/A", m)]
            wins += ok
            res.verdicts.append(Verdict(f"{name} B > A", LABELS[m], ok, gating=m == "pldiv"))
        counts[m] = wins
        res.verdicts.append(Verdict(f"consistent on {wins}/{len(names)} pairs", LABELS[m],
                                    wins == len(names)))
    res.summary = {"consistency": {LABELS[m]: f"{counts[m]}/{len(names)}" for m in metrics},
                   "medians": {f"{c}/{m}": med[(c, m)] for c in cases for m in metrics}}
    res.table = _format_table(cases, metrics, med)
    return res


STUDIES = {"toy": run_toy_study, "longtail": run_longtail_study, "pairs": run_pairs_study}


# ------------------------------------------------------------------ bench

def _best_of(fn, repeats):
    best, out = math.inf, None
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, 1e3 * best


def _slope(sizes, times):
    return [math.log(t2 / t1) / math.log(n2 / n1)
            for (n1, t1), (n2, t2) in zip(zip(sizes, times), zip(sizes[1:], times[1:]))]


def run_bench(sizes=BENCH_SIZES, epsilons=BENCH_EPSILONS, seed: int = 0, dim: int = 2,
              repeats: int = 3, vendi_max_n: int = BENCH_VENDI_MAX_N, gamma: float = 1.0,
              tau: float = 1.0) -> StudyResult:
    """Wall-clock comparison of dense PLDiv, sparse PLDiv per epsilon, DCScore and Vendi.

    Dense PLDiv includes building the distance matrix. Sparse PLDiv works from
    the point cloud directly (KD-tree queries, no n x n matrix). Each timing
    is the best of ``repeats`` runs.
    """
    sizes = sorted(int(n) for n in sizes)
    epsilons = [float(e) for e in epsilons]
    res = StudyResult("bench", params_echo={"sizes": sizes, "epsilons": epsilons, "seed": seed, "dim": dim,
                                            "repeats": repeats, "vendi_max_n": vendi_max_n,
                                            "gamma": gamma, "tau": tau})
    # warm the jit caches so compilation never lands inside a timing
    warm = synthgen.mixture_cloud(64, dim, seed)
    pldiv_sparse(warm, 1.0)
    h0_dense(pairwise_distances(warm))

    times = defaultdict(dict)
    errors = defaultdict(dict)
    envelope_ok = True
    lines = []
    for n in sizes:
        cloud = synthgen.mixture_cloud(n, dim, seed)
        case = f"n={n}"
        dense, t_dense = _best_of(lambda: pldiv_closed_form(h0_dense(pairwise_distances(cloud))), repeats)
        times["dense"][n] = t_dense
        res.add(case, "pldiv_dense", dense, seed, time_ms=t_dense)
        row = f"n={n:6d}  dense {t_dense:9.1f} ms"
        for eps in epsilons:
            sparse, t_sp = _best_of(lambda: pldiv_sparse(cloud, eps), repeats)
            rel = abs(sparse - dense) / dense if dense > 0 else 0.0
            key = f"sparse(eps={eps:g})"
            times[key][n] = t_sp
            errors[key][n] = rel
            if eps <= 1:
                f = (1 + eps) ** 2
                envelope_ok &= dense / f <= sparse <= dense * f
            res.add(case, f"pldiv_{key}", sparse, seed, time_ms=t_sp, rel_error=rel)
            row += f"  {key} {t_sp:9.1f} ms (rel err {rel:.2e})"
        v, t_dc = _best_of(lambda: baselines.dcscore(kernel_matrix(cloud, "rbf", gamma), tau).value, 1)
        times["dcscore"][n] = t_dc
        res.add(case, "dcscore", v, seed, time_ms=t_dc)
        row += f"  dcscore {t_dc:9.1f} ms"
        if n <= vendi_max_n:
            v, t_v = _best_of(lambda: baselines.vendi_score(kernel_matrix(cloud, "rbf", gamma)).value, 1)
            times["vendi"][n] = t_v
            res.add(case, "vendi", v, seed, time_ms=t_v)
            row += f"  vendi {t_v:9.1f} ms"
        lines.append(row)

    slopes = {k: _slope(sorted(v), [v[n] for n in sorted(v)]) for k, v in times.items() if len(v) > 1}
    res.summary = {"times_ms": {k: {str(n): t for n, t in v.items()} for k, v in times.items()},
                   "rel_errors": {k: {str(n): e for n, e in v.items()} for k, v in errors.items()},
                   "loglog_slopes": slopes}

    lo, hi = sizes[0], sizes[-1]
    for eps in epsilons:
        key = f"sparse(eps={eps:g})"
        tol = 1e-3 if eps <= 0.95 else 0.05 if eps <= 10 else None
        if tol is not None:
            res.verdicts.append(Verdict(f"{key} rel error <= {tol:g} at every size", "PLDiv",
                                        max(errors[key].values()) <= tol, gating=True))
    if any(e <= 1 for e in epsilons):
        res.verdicts.append(Verdict("(1+eps)^2 envelope for eps <= 1", "PLDiv", envelope_ok, gating=True))
    fast = f"sparse(eps={max(epsilons):g})"
    res.verdicts.append(Verdict(f"{fast} faster than dense at n={hi}", "PLDiv",
                                times[fast][hi] < times["dense"][hi], gating=True))
    if lo < hi:
        sp_lo = times["dense"][lo] / times[fast][lo]
        sp_hi = times["dense"][hi] / times[fast][hi]
        res.verdicts.append(Verdict(f"dense/sparse speedup grows from n={lo} to n={hi}", "PLDiv",
                                    sp_hi > sp_lo, gating=True))
        res.summary["speedup"] = {str(lo): sp_lo, str(hi): sp_hi}
        res.verdicts.append(Verdict(f"{fast} time ratio {hi}/{lo} below dense ratio", "PLDiv",
                                    times[fast][hi] / times[fast][lo] < times["dense"][hi] / times["dense"][lo],
                                    gating=True))
    vendi_n = max((n for n in times["vendi"]), default=None)
    if vendi_n is not None:
        res.verdicts.append(Verdict(f"Vendi slower than dense PLDiv at n={vendi_n}", "Vendi",
                                    times["vendi"][vendi_n] > times["dense"][vendi_n], gating=True))
    slope_txt = "  ".join(f"{k}: " + ", ".join(f"{s:.2f}" for s in v) for k, v in slopes.items())
    res.table = "\n".join(lines + [f"log-log slopes  {slope_txt}"])
    return res
