"""Verification results."""

import json
from dataclasses import dataclass, field
from typing import Any

from quadrangle_lie.liealg.checks import CheckReport


@dataclass
class SuiteResult:
    """
    Outcome of one named suite.

    Attributes:
        name: Suite name
        checked: Number of comparisons made
        failures: Number of failed comparisons
        violations: Counterexamples, most localized first
        details: Counts and derived values, expected vs actual where applicable
    """

    name: str
    checked: int = 0
    failures: int = 0
    violations: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def absorb(self, report: CheckReport) -> None:
        self.checked += report.checked
        self.failures += report.failures
        self.violations.extend(report.violations)

    def expect_equal(self, key: str, expected: Any, actual: Any) -> None:
        """Record a count with its expected value."""
        self.checked += 1
        self.details[key] = {"expected": expected, "actual": actual}
        if expected != actual:
            self.failures += 1
            self.violations.append(f"{key}: expected {expected}, got {actual}")

    def fail(self, message: str) -> None:
        self.failures += 1
        self.violations.append(message)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "violations": self.violations,
            "details": self.details,
        }


@dataclass
class VerifyReport:
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "suites": [result.to_dict() for result in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def summary_lines(self) -> list[str]:
        lines = []
        for result in self.results:
            status = "PASS" if result.passed else "FAIL"
            lines.append(f"{status} {result.name} ({result.checked} checks, {result.failures} failures)")
            lines.extend(f"  {violation}" for violation in result.violations[:5])
        return lines
