import functools

import pytest

from ncg.scenarios import run_scenario

# Checks that fail on purpose: a transcribed value disagrees with the recomputed
# one, or a claim does not hold for the objects it is tested on. Each one has a
# passing companion check carrying the recomputed value where one exists.
KNOWN_FAILURES = {
    "bicross.extendability": {"torsion and curvature are bimodule maps for all parameters"},
    "bicross.metric": {"subfamily torsion of v"},
    "bicross.traces": {"metric trace of R, displayed form"},
    "s3.metric_compat": {
        "solution (b) a=+1 eps=-1 curvature matches displayed form",
        "solution (b) a=-1 eps=-1 curvature matches displayed form",
    },
    "s3.riemann_antisym": {
        f"{p}: antisymmetry residual (curved)"
        for p in (
            "(a) a=+1 eps=-1", "(a) a=-1 eps=-1", "(b) a=+1 eps=-1", "(b) a=-1 eps=-1",
            "(d) a=+i z+", "(d) a=+i z-", "(d) a=-i z+", "(d) a=-i z-",
            "(e) a=+1/3 x=x", "(e) a=-1/3 x=x",
        )
    },
    "theory.dg_identities": {
        "external product composition law, sign (-1)^(|psi||kappa|), case 1",
        "external product composition law, sign (-1)^(|psi||kappa|), case 2",
    },
}


# filled by test_acceptance.py and echoed in the terminal summary
ACCEPTANCE_LINES: list = []


@functools.lru_cache(maxsize=None)
def cached_report(scenario_id: str, seed: int = 0):
    return run_scenario(scenario_id, seed)


@pytest.fixture(scope="session")
def report():
    return cached_report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
