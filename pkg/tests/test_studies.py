import functools

import numpy as np
import pytest

from pldiv import cli, studies
from pldiv.diversity import MetricOptions
from pldiv.synthgen import LabeledCloudPair, longtail_dataset, pair_dataset, toy_dataset


def test_toy_study_small():
    res = studies.run_toy_study(seeds=3, metrics="pldiv")
    assert res.exit_code == 0
    assert "PLDiv: D1>D2>D3>D4 pass" in res.verdict_lines()
    assert len(res.rows) == 12 and {r["seed"] for r in res.rows} == {0, 1, 2}


def test_toy_study_all_metrics_shares_tcut(monkeypatch):
    seen = []
    real = studies.compute_metrics

    def spy(c, m, o):
        seen.append(o.t_cut)
        return real(c, m, o)

    monkeypatch.setattr(studies, "compute_metrics", spy)
    res = studies.run_toy_study(seeds=1, metrics="pldiv,magarea", opts=MetricOptions(n_grid=8))
    assert len(set(seen)) == 1 and seen[0] is not None
    assert len(res.verdicts) == 3


def _swapped_toy(which, seed):
    # D1 and D4 exchanged: the ordering claim must fail
    return toy_dataset({"D1": "D4", "D4": "D1"}.get(which, which), seed)


def _flat_longtail(k, seed):
    return longtail_dataset(0, seed)


def _reversed_pair(name, seed):
    p = pair_dataset(name, seed)
    return LabeledCloudPair(name, p.cloud_b, p.cloud_a)


@pytest.mark.parametrize("study,gen", [("toy", _swapped_toy), ("longtail", _flat_longtail),
                                       ("pairs", _reversed_pair)])
def test_broken_generator_fails_loudly(study, gen, monkeypatch, capsys):
    monkeypatch.setitem(studies.STUDIES, study, functools.partial(studies.STUDIES[study], generator=gen))
    code = cli.main(["study", study, "--seeds", "2", "--metrics", "pldiv"])
    out = capsys.readouterr().out
    assert code != 0
    assert "FAIL" in out


def test_pairs_study_subset():
    res = studies.run_pairs_study(seeds=2, metrics="pldiv", names=("ring_vs_disk", "snake_vs_blob"))
    assert res.exit_code == 0
    assert res.summary["consistency"]["PLDiv"] == "2/2"


def test_bench_small():
    res = studies.run_bench(sizes=(80, 160), epsilons=(0.5, 10.0), repeats=1, vendi_max_n=100)
    claims = {v.claim for v in res.verdicts}
    assert "(1+eps)^2 envelope for eps <= 1" in claims
    env = [v for v in res.verdicts if v.claim.startswith("(1+eps)")][0]
    assert env.passed
    assert set(res.summary["times_ms"]["vendi"]) == {"80"}
    assert len(res.summary["loglog_slopes"]["dense"]) == 1
