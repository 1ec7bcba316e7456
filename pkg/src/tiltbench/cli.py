"""Scenario-driven verifier front end.

A scenario file selects suites, budgets, the master seed and size bounds;
command-line flags override its fields.  Exit code 0 means every selected
suite passed, 1 means failures were found, 2 a parse or validation error,
3 an unsupported combination.  Reruns with the same scenario reproduce the
report byte for byte except for wall times.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .exactness import Carrier, ExactStructure, Flavor
from .reports import RunReport
from .rings import RingSpec
from .samplers import SizeBounds
from .suites import REGISTRY, default_suite_names

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3

# suites that are meaningful over the polynomial ring as well
_RING_AGNOSTIC = {"snf_identities", "snf_polynomials", "solve_kernel_duality"}


class ScenarioError(ValueError):
    pass


class UnsupportedScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    ring: str = "Integers"
    carrier: str = "FpZ"
    flavor: str = "Maximal"
    suites: list[str] = field(default_factory=default_suite_names)
    sample_budget: int = 100
    seed: int = 1
    max_rank: int = 3
    max_entry: int = 10
    max_width: int = 4

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict):
            raise ScenarioError("scenario must be a JSON object")
        known = {"ring", "carrier", "flavor", "suites", "sample_budget",
                 "seed", "bounds"}
        unknown = set(data) - known
        if unknown:
            raise ScenarioError(f"unknown scenario fields: {sorted(unknown)}")
        sc = cls()
        sc.ring = data.get("ring", sc.ring)
        sc.carrier = data.get("carrier", sc.carrier)
        sc.flavor = data.get("flavor", sc.flavor)
        suites = data.get("suites", "all")
        if suites == "all":
            sc.suites = default_suite_names()
        else:
            if not isinstance(suites, list):
                raise ScenarioError("suites must be a list of names or \"all\"")
            sc.suites = list(suites)
        sc.sample_budget = int(data.get("sample_budget", sc.sample_budget))
        sc.seed = int(data.get("seed", sc.seed))
        bounds = data.get("bounds", {})
        sc.max_rank = int(bounds.get("max_rank", sc.max_rank))
        sc.max_entry = int(bounds.get("max_entry", sc.max_entry))
        sc.max_width = int(bounds.get("max_width", sc.max_width))
        sc.validate()
        return sc

    def validate(self):
        for name in self.suites:
            if name not in REGISTRY:
                raise ScenarioError(f"unknown suite name: {name}")
        try:
            ring = RingSpec(self.ring)
        except ValueError:
            raise ScenarioError(f"unknown ring tag: {self.ring}")
        try:
            ex = ExactStructure(Carrier(self.carrier), Flavor(self.flavor))
        except ValueError as e:
            if self.carrier not in {c.value for c in Carrier} \
                    or self.flavor not in {f.value for f in Flavor}:
                raise ScenarioError(str(e))
            raise UnsupportedScenarioError(str(e))
        if ring is RingSpec.RATIONAL_POLYNOMIALS:
            bad = [s for s in self.suites if s not in _RING_AGNOSTIC]
            if bad:
                raise UnsupportedScenarioError(
                    f"suites unavailable over {self.ring}: {bad}")
        if self.sample_budget < 0 or self.seed < 0:
            raise ScenarioError("budget and seed must be nonnegative")

    def bounds(self) -> SizeBounds:
        return SizeBounds(self.max_rank, self.max_entry, self.max_width)

    def to_dict(self) -> dict:
        return {
            "ring": self.ring,
            "carrier": self.carrier,
            "flavor": self.flavor,
            "suites": list(self.suites),
            "sample_budget": self.sample_budget,
            "seed": self.seed,
            "bounds": {"max_rank": self.max_rank, "max_entry": self.max_entry,
                       "max_width": self.max_width},
        }


def load_scenario(path: Optional[str]) -> Scenario:
    if path is None:
        return Scenario()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ScenarioError(f"cannot read scenario: {e}")
    return Scenario.from_dict(data)


def run_scenario(scenario: Scenario) -> RunReport:
    run = RunReport(scenario=scenario.to_dict())
    for name in sorted(scenario.suites):
        suite = REGISTRY[name]
        result = suite.run(scenario.sample_budget, scenario.seed, scenario.bounds())
        result.law = suite.law
        run.suites.append(result)
    return run


def run(scenario_path: Optional[str], output_path: Optional[str],
        overrides: Optional[dict] = None, stream=None) -> int:
    stream = stream or sys.stdout
    overrides = overrides or {}
    try:
        scenario = load_scenario(scenario_path)
        if overrides.get("seed") is not None:
            scenario.seed = overrides["seed"]
        if overrides.get("budget") is not None:
            scenario.sample_budget = overrides["budget"]
        if overrides.get("suites"):
            scenario.suites = list(overrides["suites"])
        scenario.validate()
    except UnsupportedScenarioError as e:
        print(f"unsupported combination: {e}", file=stream)
        return EXIT_UNSUPPORTED
    except ScenarioError as e:
        print(f"scenario error: {e}", file=stream)
        return EXIT_PARSE
    report = run_scenario(scenario)
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json_string())
            fh.write("\n")
    print(report.render_text(), file=stream)
    return EXIT_OK if report.failure_count == 0 else EXIT_FAILURES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltbench",
        description="run seeded property suites over the algebra workbench")
    parser.add_argument("--scenario", help="path to a scenario JSON file")
    parser.add_argument("--out", help="write the JSON report here")
    parser.add_argument("--seed", type=int, help="override the master seed")
    parser.add_argument("--suite", action="append", dest="suites",
                        help="run this suite (repeatable)")
    parser.add_argument("--budget", type=int, help="override the sample budget")
    parser.add_argument("--list-suites", action="store_true",
                        help="print the suite registry and exit")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_suites:
        for name in sorted(REGISTRY):
            d = REGISTRY[name]
            marker = " [negative control]" if d.negative_control else ""
            print(f"{name:36s} {d.law}{marker}")
        return EXIT_OK
    overrides = {"seed": args.seed, "budget": args.budget, "suites": args.suites}
    return run(args.scenario, args.out, overrides)


if __name__ == "__main__":
    sys.exit(main())
