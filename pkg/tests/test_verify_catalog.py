import warnings

import pytest

from opdist.catalog import EXAMPLES, example_names, run_example
from opdist.verify import PROPERTIES, RunConfig, run_battery


def test_catalog_all_pass():
    rows = run_example("all")
    assert {r["id"] for r in rows} == set(EXAMPLES)
    bad = [r for r in rows if r["status"] != "pass"]
    assert not bad, bad


def test_catalog_unknown_name():
    with pytest.raises(KeyError):
        run_example("nope")
    assert example_names()[0] == "dist.norm.diff"


def test_battery_small_run_passes():
    res = run_battery(RunConfig(batch=10, max_dim=4))
    assert [r.name for r in res] == list(PROPERTIES)
    assert all(r.ok for r in res)


def test_battery_independent_of_selection():
    full = {r.name: r.worst_slack for r in run_battery(RunConfig(batch=10, max_dim=4))}
    one = run_battery(RunConfig(batch=10, max_dim=4), only=["lp_triangle"])
    assert one[0].worst_slack == full["lp_triangle"]


def test_battery_zero_batch_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = run_battery(RunConfig(batch=0))
    assert caught and all(r.total == 0 and r.ok for r in res)


def test_perturbed_nagy_detected():
    res = run_battery(RunConfig(batch=40, perturb_nagy=True), only=["nagy_bound"])[0]
    assert not res.ok and res.failures
