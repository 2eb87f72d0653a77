"""Check records, reports and their JSON / text renderings."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "vacuous")
MAX_RESIDUAL = 600


def _clip(text: str) -> str:
    text = " ".join(str(text).split())
    return text if len(text) <= MAX_RESIDUAL else text[:MAX_RESIDUAL] + " ..."


@dataclass
class Check:
    name: str
    status: str
    anchor: str = ""
    residual: str = "0"
    ms: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        self.residual = _clip(self.residual)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "anchor": self.anchor,
            "residual": self.residual,
            "ms": round(self.ms, 3) if timing and self.ms is not None else None,
        }


@dataclass
class Report:
    scenario: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    def as_dict(self, timing: bool = True) -> dict:
        return {"scenario": self.scenario, "checks": [c.as_dict(timing) for c in self.checks], "seed": self.seed}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=False)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"scenario {self.scenario} (seed {self.seed}): {'PASS' if self.ok else 'FAIL'}"]
        w = max((len(c.name) for c in self.checks), default=4)
        for c in self.checks:
            t = f" {c.ms:9.1f} ms" if timing and c.ms is not None else ""
            lines.append(f"  {c.status:<7} {c.name:<{w}}{t}  [{c.anchor}]")
            if c.status == "fail" or c.residual not in ("0", ""):
                lines.append(f"          {c.residual}")
        return "\n".join(lines)


class Recorder:
    """Collects checks for one scenario run, timing each callable."""

    def __init__(self, scenario: str, seed: int):
        self.report = Report(scenario, seed)

    def run(self, name: str, anchor: str, fn):
        """``fn`` returns (status, residual text) or a bool."""
        t0 = time.perf_counter()
        try:
            out = fn()
        except Exception as exc:  # a crashing check is a failing check, with the reason
            out = ("fail", f"{type(exc).__name__}: {exc}")
        ms = (time.perf_counter() - t0) * 1000.0
        if isinstance(out, bool):
            out = ("pass", "0") if out else ("fail", "nonzero")
        status, residual = out
        self.report.checks.append(Check(name, status, anchor, residual, ms))
        return status
