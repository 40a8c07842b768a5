"""Check results and scenario reports with a JSON round trip."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import DLEError


def render(value) -> str:
    """Canonical exact rendering: integers, ``a/b``, symbolic monomials, text."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render(v) for v in value) + "]"
    return str(value)


def prime_power(p: int, e: int) -> str:
    """``p^e`` rendering used for Euler characteristics over graded prime-field rings."""
    return f"{p}^{e}"


@dataclass
class CheckResult:
    name: str
    expected: str
    actual: str
    passed: bool
    anchor: str
    millis: float = field(default=0.0, compare=False)

    def to_dict(self):
        return {"name": self.name, "expected": self.expected, "actual": self.actual,
                "pass": self.passed, "anchor": self.anchor, "millis": self.millis}

    @classmethod
    def from_dict(cls, d):
        return cls(d["name"], d["expected"], d["actual"], d["pass"], d["anchor"], d.get("millis", 0.0))


def run_check(name: str, expected, compute, anchor: str, compare=None) -> CheckResult:
    """Evaluate ``compute()`` and compare its rendering with ``expected``.

    Engine errors become failed checks whose actual value is the error name.
    """
    t0 = time.perf_counter()
    try:
        actual = compute()
        exp_s, act_s = render(expected), render(actual)
        ok = compare(expected, actual) if compare else exp_s == act_s
    except DLEError as exc:
        exp_s, act_s, ok = render(expected), type(exc).__name__, False
    ms = (time.perf_counter() - t0) * 1000.0
    return CheckResult(name, exp_s, act_s, bool(ok), anchor, round(ms, 3))


@dataclass
class Report:
    scenario: str
    checks: list
    engine_version: str = __version__
    params: dict = field(default_factory=dict)
    derivation: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def timings(self):
        return {c.name: c.millis for c in self.checks}

    def to_dict(self):
        return {"scenario": self.scenario,
                "checks": [c.to_dict() for c in self.checks],
                "timings": self.timings,
                "engine_version": self.engine_version,
                "params": self.params,
                "derivation": list(self.derivation)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(d["scenario"], [CheckResult.from_dict(c) for c in d["checks"]], d["engine_version"],
                   d["params"], d.get("derivation", []))

    @classmethod
    def from_json(cls, text: str):
        return cls.from_dict(json.loads(text))

    def content(self):
        """Everything except timings, for determinism comparisons."""
        d = self.to_dict()
        d.pop("timings")
        for c in d["checks"]:
            c.pop("millis")
        return d

    def to_text(self) -> str:
        lines = [f"scenario {self.scenario}  (engine {self.engine_version})"]
        if self.params:
            lines.append("params " + ", ".join(f"{k}={v}" for k, v in sorted(self.params.items())))
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}: expected {c.expected}, actual {c.actual}"
                         f"  ({c.anchor}; {c.millis:.1f} ms)")
        if self.derivation:
            lines.append("derivation:")
            lines.extend(f"  {line}" for line in self.derivation)
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"{n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines)

