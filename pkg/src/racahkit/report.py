from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Outcome of one exact identity check.

    ``passed`` is true exactly when the residual is the zero operator (or the
    zero polynomial / empty mismatch list for non-operator checks).
    """

    identity: str
    n: int
    model: str
    subsets: list = field(default_factory=list)
    residual: Any = None
    lhs: Any = None
    rhs: Any = None
    passed: bool = False
    params: dict | None = None
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def residual_terms(self) -> list[str]:
        r = self.residual
        if r is None:
            return []
        if isinstance(r, dict):
            return [f"{name}: {t}" for name, op in r.items() for t in _split_terms(op)]
        if isinstance(r, (list, tuple)):
            return [str(t) for t in r]
        if hasattr(r, "sorted_terms"):
            return _split_terms(r)
        return [str(r)]

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "identity": self.identity,
            "n": self.n,
            "model": self.model,
            "subsets": [sorted(s) if isinstance(s, (set, frozenset)) else s for s in self.subsets],
            "pass": self.passed,
            "residual_terms": self.residual_terms(),
        }
        if self.params:
            out["params"] = {k: str(v) for k, v in sorted(self.params.items())}
        if self.details:
            out["details"] = self.details
        out["elapsed_ms"] = round(self.elapsed_ms, 3) if timings else 0
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        subs = " ".join(str(sorted(s)) if isinstance(s, (set, frozenset)) else str(s) for s in self.subsets)
        k = f" k={self.details['k']}" if "k" in self.details else ""
        return f"{status}  {self.identity}  n={self.n}{k} model={self.model} {subs}".rstrip()


def _split_terms(r) -> list[str]:
    if not hasattr(r, "sorted_terms"):
        return [str(r)]
    return [str(type(r)._raw(r.variables, {key: c})) for key, c in r.sorted_terms()]


def report_from_residual(identity, n, model, subsets, lhs, rhs, **extra) -> VerificationReport:
    residual = lhs - rhs
    return VerificationReport(
        identity=identity,
        n=n,
        model=model,
        subsets=list(subsets),
        residual=residual,
        lhs=lhs,
        rhs=rhs,
        passed=residual.is_zero(),
        **extra,
    )


@contextmanager
def timed(holder: dict):
    start = time.perf_counter()
    try:
        yield
    finally:
        holder["elapsed_ms"] = (time.perf_counter() - start) * 1000.0
