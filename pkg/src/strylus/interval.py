"""Integer intervals with infinite bounds: the numeric component of abstract values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

INF = math.inf
Bound = Union[int, float]  # finite bounds are ints; only +-inf are floats


@dataclass(frozen=True)
class Interval:
    lo: Bound
    hi: Bound

    def __post_init__(self):
        if self.is_bottom:
            return
        if self.lo > self.hi or self.lo == INF or self.hi == -INF:
            raise ValueError(f"malformed interval [{self.lo}, {self.hi}]")
        for b in (self.lo, self.hi):
            if isinstance(b, float) and not math.isinf(b):
                raise ValueError("finite interval bounds must be integers")

    @classmethod
    def bottom(cls) -> "Interval":
        return BOTTOM

    @classmethod
    def top(cls) -> "Interval":
        return TOP

    @classmethod
    def const(cls, n: int) -> "Interval":
        return cls(n, n)

    @classmethod
    def hull(cls, values) -> "Interval":
        values = list(values)
        if not values:
            return BOTTOM
        return cls(min(values), max(values))

    @property
    def is_bottom(self) -> bool:
        return self.lo == INF and self.hi == -INF

    @property
    def is_finite(self) -> bool:
        return not self.is_bottom and not math.isinf(self.lo) and not math.isinf(self.hi)

    @property
    def size(self) -> int | float:
        """Number of integers in the interval."""
        if self.is_bottom:
            return 0
        return self.hi - self.lo + 1

    def __contains__(self, n: object) -> bool:
        return not self.is_bottom and self.lo <= n <= self.hi

    def __le__(self, other: "Interval") -> bool:
        return i_leq(self, other)

    def __or__(self, other: "Interval") -> "Interval":
        return i_lub(self, other)

    def __and__(self, other: "Interval") -> "Interval":
        return i_glb(self, other)

    def __str__(self) -> str:
        if self.is_bottom:
            return "⊥"
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"

    def to_json(self):
        if self.is_bottom:
            return None
        return [_json_bound(self.lo), _json_bound(self.hi)]

    @classmethod
    def from_json(cls, data) -> "Interval":
        if data is None:
            return BOTTOM
        conv = {"-inf": -INF, "+inf": INF}
        return cls(*(conv.get(b, b) for b in data))


def _fmt(b: Bound) -> str:
    if b == INF:
        return "+∞"
    if b == -INF:
        return "-∞"
    return str(b)


def _json_bound(b: Bound):
    if b == INF:
        return "+inf"
    if b == -INF:
        return "-inf"
    return b


BOTTOM = Interval(INF, -INF)
TOP = Interval(-INF, INF)


def i_lub(a: Interval, b: Interval) -> Interval:
    if a.is_bottom:
        return b
    if b.is_bottom:
        return a
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def i_glb(a: Interval, b: Interval) -> Interval:
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return BOTTOM
    return Interval(lo, hi)


def i_leq(a: Interval, b: Interval) -> bool:
    if a.is_bottom:
        return True
    if b.is_bottom:
        return False
    return b.lo <= a.lo and a.hi <= b.hi


def i_widen(a: Interval, b: Interval) -> Interval:
    if a.is_bottom:
        return b
    if b.is_bottom:
        return a
    lo = a.lo if b.lo >= a.lo else -INF
    hi = a.hi if b.hi <= a.hi else INF
    return Interval(lo, hi)


def clamp_nonneg(a: Interval) -> Interval:
    if a.is_bottom:
        return a
    return Interval(max(0, a.lo), max(0, a.hi))


def _mul(x: Bound, y: Bound) -> Bound:
    if x == 0 or y == 0:
        return 0
    return x * y


def trunc_div(x: int, y: int) -> int:
    """Integer division rounding toward zero."""
    q = abs(x) // abs(y)
    return q if (x >= 0) == (y > 0) else -q


def _div(x: Bound, y: Bound) -> Bound | None:
    # y is never 0 here; None marks an indeterminate inf/inf corner
    if math.isinf(y):
        return None if math.isinf(x) else 0
    if math.isinf(x):
        return x if y > 0 else -x
    return trunc_div(x, y)


def _div_part(a: Interval, lo: Bound, hi: Bound) -> Interval:
    corners = [_div(x, y) for x in (a.lo, a.hi) for y in (lo, hi)]
    vals = [c for c in corners if c is not None]
    return Interval.hull(vals)


def i_arith(op: str, a: Interval, b: Interval) -> Interval:
    """Tightest interval containing ``x op y`` for x in a, y in b.

    ``/`` truncates toward zero; a zero divisor is dropped from the
    computation (the value layer turns it into NaN).
    """
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    if op == "+":
        return Interval(a.lo + b.lo, a.hi + b.hi)
    if op == "-":
        return Interval(a.lo - b.hi, a.hi - b.lo)
    if op == "*":
        return Interval.hull(_mul(x, y) for x in (a.lo, a.hi) for y in (b.lo, b.hi))
    if op == "/":
        out = BOTTOM
        if b.lo <= -1:
            out = i_lub(out, _div_part(a, b.lo, min(b.hi, -1)))
        if b.hi >= 1:
            out = i_lub(out, _div_part(a, max(b.lo, 1), b.hi))
        return out
    raise ValueError(f"unknown arithmetic operator {op!r}")
