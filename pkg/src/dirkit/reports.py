"""Check records shared by the verification routines and the command line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

__all__ = ["CheckRecord", "compare", "exact", "bound", "jsonable"]


def jsonable(x: Any) -> Any:
    """Convert numbers (complex, numpy, Fraction) and containers into JSON-ready values."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if hasattr(x, "tolist") and not isinstance(x, (int, float, complex)):
        return jsonable(x.tolist())
    if isinstance(x, complex) or (hasattr(x, "imag") and hasattr(x, "real")
                                  and not isinstance(x, (int, float))):
        c = complex(x)
        return _real(c.real) if c.imag == 0 else [_real(c.real), _real(c.imag)]
    if isinstance(x, int):
        return x
    return _real(float(x))


def _real(v: float):
    if math.isnan(v) or math.isinf(v):
        return str(v)
    return float(v)


@dataclass
class CheckRecord:
    name: str
    lhs: Any
    rhs: Any
    abs_err: float
    rel_err: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {"name": self.name, "lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs),
               "abs_err": jsonable(self.abs_err), "rel_err": jsonable(self.rel_err),
               "tolerance": jsonable(self.tolerance), "verdict": self.verdict}
        if self.details:
            out["details"] = jsonable(self.details)
        return out


def compare(name: str, lhs, rhs, tol: float, scale: float | None = None, **details) -> CheckRecord:
    """Pass iff ``|lhs - rhs| / scale <= tol``; ``scale`` defaults to ``1 + |rhs|``."""
    err = abs(complex(lhs) - complex(rhs))
    if scale is None:
        scale = 1.0 + abs(complex(rhs))
    rel = err / scale if scale > 0 else err
    return CheckRecord(name, lhs, rhs, err, rel, tol, bool(rel <= tol), dict(details))


def exact(name: str, lhs, rhs, **details) -> CheckRecord:
    ok = lhs == rhs
    err = abs(Fraction(lhs) - Fraction(rhs)) if not ok else 0
    return CheckRecord(name, lhs, rhs, float(err), float(err), 0.0, bool(ok), dict(details))


def bound(name: str, value: float, limit: float, tol: float, **details) -> CheckRecord:
    """Inequality ``value <= limit + tol``; the excess is reported as the error."""
    excess = max(0.0, float(value) - float(limit))
    return CheckRecord(name, value, limit, excess, excess, tol, bool(value <= limit + tol), dict(details))
