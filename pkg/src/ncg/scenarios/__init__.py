"""Named, reproducible scenarios built on the engine modules.

Each scenario is a YAML file under ``data/`` plus a suite function that turns
it into a list of pass/fail/vacuous checks with exact residuals.
"""

from __future__ import annotations

import random
from importlib import resources

import yaml

from .report import Check, Recorder, Report, STATUSES
from .suites import bicross, s3, theory

_SUITES = {
    "s3.calculus": s3.run_calculus,
    "s3.bianchi": s3.run_bianchi,
    "s3.right_module_families": s3.run_right_module,
    "s3.extendable_families": s3.run_extendable,
    "s3.metric_compat": s3.run_metric_compat,
    "s3.traces": s3.run_traces,
    "s3.riemann_antisym": s3.run_riemann,
    "s3.flat_cohomology": s3.run_cohomology,
    "bicross.extendability": bicross.run_extendability,
    "bicross.metric": bicross.run_metric,
    "bicross.traces": bicross.run_traces,
    "theory.chern_invariance": theory.run_chern_invariance,
    "theory.dg_identities": theory.run_dg_identities,
}


class UnknownScenario(KeyError):
    pass


class UnknownParameter(ValueError):
    pass


def list_scenarios() -> list[str]:
    return sorted(_SUITES)


def load_config(scenario_id: str) -> dict:
    if scenario_id not in _SUITES:
        raise UnknownScenario(scenario_id)
    text = resources.files(__package__).joinpath("data", f"{scenario_id}.yaml").read_text()
    cfg = yaml.safe_load(text)
    src = cfg.get("points_from")
    if src:
        cfg["expected"]["points"] = load_config(src)["expected"]["solutions"]
    return cfg


def declared_params(scenario_id: str) -> dict:
    return dict(load_config(scenario_id).get("params") or {})


def run_scenario(scenario_id: str, seed: int = 0, overrides: dict | None = None) -> Report:
    """Run one scenario; ``overrides`` may only touch names in its ``params`` block."""
    cfg = load_config(scenario_id)
    params = dict(cfg.get("params") or {})
    for k, v in (overrides or {}).items():
        if k not in params:
            raise UnknownParameter(f"{scenario_id} declares no parameter {k!r} (declared: {', '.join(sorted(params)) or 'none'})")
        params[k] = type(params[k])(v)
    cfg.update(params)
    rec = Recorder(scenario_id, seed)
    _SUITES[scenario_id](cfg, rec, random.Random(seed))
    return rec.report


__all__ = ["Check", "Report", "Recorder", "STATUSES", "UnknownParameter", "UnknownScenario", "declared_params", "list_scenarios", "load_config", "run_scenario"]
