import json

import pytest

from model.exceptions import PreconditionError
from model.oracle import EXHAUSTIVE_PROPERTIES, RANDOMIZED_PROPERTIES, run_oracle_suite

QUICK = {"directed_trials": 50, "factorization_trials": 30, "factorization_max_order": 24}


@pytest.fixture(scope="module")
def report24():
    return run_oracle_suite(max_group_order=24, seed=0, **QUICK)


@pytest.fixture(scope="module")
def full_report():
    return run_oracle_suite()


def test_orders_up_to_21():
    report = run_oracle_suite(max_group_order=21, seed=3, **QUICK)
    assert report.ok
    assert "C7:C3" in report.groups
    assert "S4" not in report.groups
    assert report.digraph_instances > 0


def test_orders_up_to_24(report24):
    assert report24.ok, report24.counterexamples
    assert set(report24.exhaustive) == set(EXHAUSTIVE_PROPERTIES)
    assert set(report24.randomized) == set(RANDOMIZED_PROPERTIES)
    assert report24.premise_instances > 0
    assert report24.exhaustive["directed"].checked == report24.premise_instances
    assert report24.exhaustive["regularity"].checked == report24.digraph_instances
    assert report24.randomized["factorization_equivalences"].checked == QUICK["factorization_trials"]
    assert report24.randomized["directed_randomized"].checked == QUICK["directed_trials"]
    assert "C2 wr C3" in report24.premise_groups
    assert set(report24.premise_groups) <= set(report24.groups)


def test_exhaustive_tier_ignores_the_seed(report24):
    other = run_oracle_suite(max_group_order=24, seed=99, **QUICK)
    assert other.exhaustive == report24.exhaustive
    assert other.digraph_instances == report24.digraph_instances
    assert other.premise_instances == report24.premise_instances


def test_report_json(report24):
    data = json.loads(report24.dumps())
    assert data["max_group_order"] == 24
    assert data["seed"] == 0
    assert data["exhaustive"]["connectivity"]["counterexamples"] == []


def test_exhaustive_limit():
    with pytest.raises(PreconditionError):
        run_oracle_suite(max_group_order=121)


def test_full_catalogue(full_report):
    assert full_report.ok, full_report.counterexamples
    assert full_report.max_group_order == 120
    assert "S5" in full_report.groups
    assert full_report.randomized["directed_randomized"].checked == 1000
    assert full_report.randomized["factorization_equivalences"].checked == 200
    for name in EXHAUSTIVE_PROPERTIES:
        assert full_report.exhaustive[name].checked > 0, name


def test_wider_catalogue_adds_premise_instances(full_report, report24):
    assert {"C2 wr C3", "C2 x C2 wr C3"} <= set(full_report.premise_groups)
    assert full_report.premise_instances > 6
    assert full_report.premise_instances > report24.premise_instances
    for name in ("Q8", "D120", "S3 wr C2", "C2xD8"):
        assert name in full_report.groups


def test_directed_trials_with_another_seed(report24):
    other = run_oracle_suite(max_group_order=24, seed=5, **QUICK)
    assert other.premise_groups == report24.premise_groups
    assert other.randomized["directed_randomized"].checked == QUICK["directed_trials"]
    assert other.ok
