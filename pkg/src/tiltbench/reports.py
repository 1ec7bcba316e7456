"""Report values shared by the library-level checkers and the verifier CLI.

A report is reproducible by construction: it records the seed, the number
of samples run, and one serialised counterexample per failure.  Rerunning
the same scenario reproduces the same failure set byte for byte; only the
wall time field varies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckFailure:
    sample_index: int
    check: str
    payload: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"sample_index": self.sample_index, "check": self.check,
                "payload": self.payload}


@dataclass
class CheckReport:
    name: str
    law: str
    seed: int
    samples: int = 0
    failures: list[CheckFailure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, index: int, check: str, payload: dict | None = None):
        self.failures.append(CheckFailure(index, check, payload or {}))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "law": self.law,
            "seed": self.seed,
            "samples": self.samples,
            "failures": [f.to_json() for f in sorted(
                self.failures, key=lambda f: (f.sample_index, f.check))],
            "passed": self.passed,
            "wall_time": self.wall_time,
        }


@dataclass
class RunReport:
    scenario: dict
    suites: list[CheckReport] = field(default_factory=list)

    @property
    def failure_count(self) -> int:
        return sum(len(s.failures) for s in self.suites)

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "suites": [s.to_json() for s in sorted(self.suites, key=lambda s: s.name)],
            "failure_count": self.failure_count,
        }

    def to_json_string(self, indent: int = 2) -> str:
        return json.dumps(self.to_json(), indent=indent, sort_keys=True)

    def render_text(self) -> str:
        lines = ["suite results", "============="]
        for s in sorted(self.suites, key=lambda s: s.name):
            status = "pass" if s.passed else f"FAIL ({len(s.failures)})"
            lines.append(f"{s.name:40s} {status:12s} samples={s.samples} "
                         f"seed={s.seed} [{s.law}]")
        lines.append(f"total failures: {self.failure_count}")
        return "\n".join(lines)
