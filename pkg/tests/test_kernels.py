import importlib.util
import os
import subprocess
import sys

import pytest

PROBE = "from ncg.exactalg import kernels; print(kernels.BACKEND)"


def _backend(env_extra):
    env = {k: v for k, v in os.environ.items() if k != "NCG_PURE_PYTHON"}
    env.update(env_extra)
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_environment_variable_forces_the_fallback():
    assert _backend({"NCG_PURE_PYTHON": "1"}) == "python"


def test_default_uses_the_extension_when_built():
    built = importlib.util.find_spec("ncg.exactalg._kernels") is not None
    if not built:
        pytest.skip("compiled extension not built in this environment")
    assert _backend({}) == "compiled"


def test_fallback_gives_identical_scenario_output():
    cmd = [sys.executable, "-m", "ncg.cli", "run", "s3.calculus", "--seed", "2", "--no-timing", "--json"]
    env = {k: v for k, v in os.environ.items() if k != "NCG_PURE_PYTHON"}
    fast = subprocess.run(cmd, env=env, capture_output=True, text=True)
    slow = subprocess.run(cmd, env={**env, "NCG_PURE_PYTHON": "1"}, capture_output=True, text=True)
    assert fast.returncode == slow.returncode == 0
    assert fast.stdout == slow.stdout
