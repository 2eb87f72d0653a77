"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--scenario ID ...]

Micro timings call both kernel modules directly. Scenario timings run each
scenario in a subprocess, once with NCG_PURE_PYTHON=1 and once without.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from ncg.exactalg import _kernels_py

try:
    from ncg.exactalg import _kernels as _compiled
except ImportError:
    _compiled = None


def _poly(rng, nvars, nterms, deg):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, deg) for _ in range(nvars))
        out[e] = out.get(e, 0) + rng.randint(-9, 9)
    return {e: c for e, c in out.items() if c}


def _matrix(rng, n, m, density=0.6):
    return [[rng.randint(-20, 20) if rng.random() < density else 0 for _ in range(m)] for _ in range(n)]


def micro(repeat: int) -> list[tuple[str, float, float | None]]:
    rng = random.Random(0)
    a, b = _poly(rng, 6, 60, 4), _poly(rng, 6, 60, 4)
    mat = _matrix(rng, 40, 48)
    cases = [
        ("poly_mul 60x60 terms, 6 vars", lambda k: k.poly_mul(a, b)),
        ("int_rref 40x48", lambda k: k.int_rref([list(r) for r in mat], 48)),
    ]
    rows = []
    for name, fn in cases:
        if _compiled is not None and fn(_compiled) != fn(_kernels_py):
            raise SystemExit(f"kernels disagree on {name}")
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=repeat))
        cc = min(timeit.repeat(lambda: fn(_compiled), number=1, repeat=repeat)) if _compiled else None
        rows.append((name, py, cc))
    return rows


def scenario_time(sid: str, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["NCG_PURE_PYTHON"] = "1"
    else:
        env.pop("NCG_PURE_PYTHON", None)
    code = (
        "import time; from ncg.scenarios import run_scenario; "
        f"t = time.perf_counter(); run_scenario({sid!r}, 0); print(time.perf_counter() - t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--scenario", action="append", default=None)
    args = p.parse_args(argv)

    print(f"{'kernel':<34}{'python s':>12}{'compiled s':>12}{'speedup':>9}")
    for name, py, cc in micro(args.repeat):
        if cc is None:
            print(f"{name:<34}{py:>12.5f}{'n/a':>12}{'':>9}")
        else:
            print(f"{name:<34}{py:>12.5f}{cc:>12.5f}{py / cc:>8.1f}x")

    sids = args.scenario if args.scenario is not None else ["s3.extendable_families", "bicross.extendability"]
    if sids:
        print(f"\n{'scenario':<34}{'python s':>12}{'compiled s':>12}{'speedup':>9}")
        for sid in sids:
            py = scenario_time(sid, pure=True)
            cc = scenario_time(sid, pure=False) if _compiled else None
            ratio = f"{py / cc:>8.2f}x" if cc else ""
            print(f"{sid:<34}{py:>12.2f}{(cc if cc else float('nan')):>12.2f}{ratio:>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
