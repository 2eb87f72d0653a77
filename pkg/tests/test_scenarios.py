import json

import pytest

from ncg.scenarios import (
    STATUSES,
    UnknownParameter,
    UnknownScenario,
    declared_params,
    list_scenarios,
    load_config,
    run_scenario,
)

from conftest import KNOWN_FAILURES

EXPECTED_IDS = [
    "s3.calculus", "s3.bianchi", "s3.right_module_families", "s3.extendable_families", "s3.metric_compat",
    "s3.traces", "s3.riemann_antisym", "s3.flat_cohomology", "bicross.extendability", "bicross.metric",
    "bicross.traces", "theory.chern_invariance", "theory.dg_identities",
]


def test_registry_contents_are_stable_and_unique():
    ids = list_scenarios()
    assert sorted(EXPECTED_IDS) == ids
    assert len(set(ids)) == len(ids)
    assert ids == list_scenarios()


def test_unknown_scenario_is_an_error():
    with pytest.raises(UnknownScenario):
        run_scenario("s3.nope")


def test_configs_declare_backend_field_and_anchors():
    for sid in list_scenarios():
        cfg = load_config(sid)
        assert cfg["id"] == sid
        assert cfg["backend"] in ("s3", "bicross")
        assert cfg["field"] and cfg["anchors"]


def test_overrides_must_name_declared_parameters():
    assert declared_params("s3.calculus") == {"random_pairs": 6}
    rep = run_scenario("s3.calculus", 0, {"random_pairs": "2"})
    assert rep.ok
    with pytest.raises(UnknownParameter):
        run_scenario("s3.calculus", 0, {"bogus": 1})


@pytest.mark.slow
@pytest.mark.parametrize("sid", EXPECTED_IDS)
def test_scenario_failures_are_exactly_the_known_ones(sid, report):
    rep = report(sid)
    assert rep.checks
    failing = {c.name for c in rep.failures()}
    assert failing == KNOWN_FAILURES.get(sid, set())
    for c in rep.checks:
        assert c.status in STATUSES
        assert c.anchor, c.name
    names = [c.name for c in rep.checks]
    assert len(names) == len(set(names)), "check names must be unique within a scenario"


@pytest.mark.slow
@pytest.mark.parametrize("sid", EXPECTED_IDS)
def test_every_scenario_has_a_negative_control(sid, report):
    assert any(c.name.startswith("negative control") for c in report(sid).checks)


def test_reports_are_byte_identical_for_a_seed():
    a = run_scenario("s3.calculus", 7).to_json(timing=False)
    b = run_scenario("s3.calculus", 7).to_json(timing=False)
    assert a == b


def test_report_json_schema():
    rep = json.loads(run_scenario("bicross.traces", 3).to_json())
    assert set(rep) == {"scenario", "checks", "seed"}
    assert rep["scenario"] == "bicross.traces" and rep["seed"] == 3
    for c in rep["checks"]:
        assert set(c) == {"name", "status", "anchor", "residual", "ms"}
        assert isinstance(c["ms"], float)
