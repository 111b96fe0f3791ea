import csv
import io

import pytest

from mqclifford.bench import BenchConfig, format_csv, instance_seed, run_bench


def _small(**kw):
    return BenchConfig(n_values=[3, 5, 7], instances_per_n=2, walker_budget=20, permutation_candidates=1, **kw)


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(n_values=[3])
    with pytest.raises(ValueError):
        BenchConfig(instances_per_n=0)
    with pytest.raises(ValueError):
        BenchConfig(methods=("magic",))


def test_csv_columns_and_rows():
    rows, fits = run_bench(_small())
    text = format_csv(rows)
    recs = list(csv.DictReader(io.StringIO(text)))
    assert list(recs[0]) == ["n", "method", "omega_nuc", "seed", "mq_count", "permutation_applied"]
    assert len(recs) == 3 * 2 * 2
    assert set(fits) == {"constant-cost", "baseline"}
    for r in recs:
        assert r["permutation_applied"] in ("0", "1")
        if r["method"] == "constant-cost":
            assert int(r["mq_count"]) <= 5


def test_rerun_identical_and_workers():
    a = format_csv(run_bench(_small())[0])
    assert a == format_csv(run_bench(_small())[0])
    assert a == format_csv(run_bench(_small(workers=2))[0])
    assert a != format_csv(run_bench(_small(seed=1))[0])


def test_instance_seed_distinct():
    seeds = {instance_seed(0, n, i) for n in range(3, 10) for i in range(5)}
    assert len(seeds) == 35
