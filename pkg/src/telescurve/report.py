"""Verification records shared by the symbolic and numeric suites."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


@dataclass
class CheckResult:
    check: str
    anchor: str
    lhs: object
    rhs: object
    residual: object  # float, or "exact" for symbolic identities
    tolerance: object  # float, or "exact"
    passed: bool
    seed: int | None = None
    runtime: float | None = None

    def to_json(self, timings: bool = False) -> str:
        d = {k: _jsonable(v) for k, v in asdict(self).items()}
        if not timings:
            d.pop("runtime")
        return json.dumps(d, sort_keys=True)


@dataclass
class VerificationReport:
    results: list = field(default_factory=list)

    def add(self, check, anchor, lhs, rhs, residual, tolerance, passed, seed=None, runtime=None):
        r = CheckResult(check, anchor, lhs, rhs, residual, tolerance, bool(passed), seed, runtime)
        self.results.append(r)
        return r

    def exact(self, check, anchor, lhs, rhs, passed=None):
        if passed is None:
            passed = lhs == rhs
        return self.add(check, anchor, lhs, rhs, "exact" if passed else "mismatch", "exact", passed)

    def numeric(self, check, anchor, lhs, rhs, residual, tol, seed=None):
        return self.add(check, anchor, lhs, rhs, float(residual), tol, residual < tol, seed)

    def extend(self, other: "VerificationReport"):
        self.results.extend(other.results)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def __len__(self):
        return len(self.results)

    def __iter__(self):
        return iter(self.results)

    def summary(self) -> str:
        n = len(self.results)
        bad = len(self.failures())
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.check}  residual={r.residual}"
                 for r in self.results]
        lines.append(f"{n - bad}/{n} checks passed")
        return "\n".join(lines)
