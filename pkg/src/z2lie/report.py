"""Structured pass/fail records for identity and property suites.

A report is a list of named checks; each check counts its trials and
keeps a bounded list of failure witnesses (inputs plus residuals).  All
content is JSON-serializable with deterministic ordering so that reports
produced from the same seed are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    note: str = ""
    max_witnesses: int = 5

    @property
    def passed(self):
        return self.failure_count == 0

    def record_trial(self):
        self.trials += 1

    def record_failure(self, witness):
        self.failure_count += 1
        if len(self.failures) < self.max_witnesses:
            self.failures.append(witness)

    def to_json_dict(self):
        out = {
            "name": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    subject: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name, note="", max_witnesses=5):
        result = CheckResult(name=name, note=note, max_witnesses=max_witnesses)
        self.checks.append(result)
        return result

    def find(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_json_dict() for c in self.checks],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def element_witness(*named_elements):
    """Compact JSON form of (label, Element) pairs for failure records."""
    return {
        label: [str(c) for c in el.coeffs] for label, el in named_elements
    }
