"""Small value types shared by the bound calculators."""

from __future__ import annotations

import math
from dataclasses import dataclass

LOWER = "lower"
UPPER = "upper"
EQUALITY = "equality"
TWO_SIDED = "two_sided"
# conjectured bounds never share a kind with proven ones
CONJ_LOWER = "conjectured_lower"
CONJ_UPPER = "conjectured_upper"

PROVEN_KINDS = (LOWER, UPPER, EQUALITY, TWO_SIDED)
CONJECTURED_KINDS = (CONJ_LOWER, CONJ_UPPER)


@dataclass(frozen=True)
class Interval:
    """Closed, open or half-open interval ``lo .. hi``.

    ``lo_strict``/``hi_strict`` mark open ends. A degenerate interval
    (``lo == hi``) must be closed on both ends.
    """

    lo: float
    hi: float
    lo_strict: bool = True
    hi_strict: bool = True

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo!r} > hi={self.hi!r}")
        if self.lo == self.hi and (self.lo_strict or self.hi_strict):
            raise ValueError("a degenerate interval must have non-strict ends")

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(value, value, False, False)

    @classmethod
    def above(cls, value: float, strict: bool = True) -> "Interval":
        return cls(value, math.inf, strict, True)

    @classmethod
    def below(cls, value: float, strict: bool = True) -> "Interval":
        return cls(-math.inf, value, True, strict)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, slack: float = 0.0) -> bool:
        """Membership test; ``slack`` widens both ends and relaxes strictness."""
        if slack > 0.0:
            return self.lo - slack <= x <= self.hi + slack
        lo_ok = x > self.lo if self.lo_strict else x >= self.lo
        hi_ok = x < self.hi if self.hi_strict else x <= self.hi
        return lo_ok and hi_ok

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi,
                "lo_strict": self.lo_strict, "hi_strict": self.hi_strict}


@dataclass(frozen=True)
class BoundEntry:
    """One named inequality evaluated at a parameter point.

    ``kind`` is one of :data:`LOWER`, :data:`UPPER`, :data:`EQUALITY`,
    :data:`CONJ_LOWER`, :data:`CONJ_UPPER`. ``valid`` is true only when the
    condition in ``note`` holds at this point.
    """

    name: str
    value: float
    kind: str
    valid: bool
    note: str = ""

    @property
    def conjectured(self) -> bool:
        return self.kind in CONJECTURED_KINDS

    def holds_for(self, x: float, slack: float = 0.0) -> bool:
        """True if ``x`` satisfies this bound (always true when not valid)."""
        if not self.valid:
            return True
        if self.kind in (LOWER, CONJ_LOWER):
            return x > self.value - slack if slack else x > self.value
        if self.kind in (UPPER, CONJ_UPPER):
            return x < self.value + slack if slack else x < self.value
        if self.kind == EQUALITY:
            return abs(x - self.value) <= max(slack, 0.0)
        raise ValueError(f"unknown bound kind {self.kind!r}")

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "kind": self.kind,
                "valid": self.valid, "note": self.note}
