"""Concrete primitive values and their implicit conversions.

A concrete value is a Python ``int``, ``bool``, ``str`` or :data:`NAN`.
``bool`` is a subclass of ``int`` in Python, so type tests here use
``type(v) is ...`` rather than ``isinstance``.
"""

from __future__ import annotations

import re
from typing import Union


class _NaN:
    """The not-a-number value.  A singleton that equals itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NaN"

    def __reduce__(self):
        return (_NaN, ())


NAN = _NaN()
Value = Union[int, bool, str, _NaN]

NUMERIC = re.compile(r"[+-]?[0-9]+")


def is_numeric(s: str) -> bool:
    return NUMERIC.fullmatch(s) is not None


def int_to_str(n: int) -> str:
    """Canonical decimal spelling: no sign for non-negatives, no leading zeros."""
    return str(n)


def c_to_str(v: Value) -> str:
    if type(v) is str:
        return v
    if v is NAN:
        return "NaN"
    if type(v) is bool:
        return "true" if v else "false"
    return int_to_str(v)


def c_to_int(v: Value) -> int | _NaN:
    if type(v) is int:
        return v
    if type(v) is bool:
        return int(v)
    if v is NAN:
        return 0
    return int(v) if is_numeric(v) else NAN


def c_to_bool(v: Value) -> bool:
    if type(v) is bool:
        return v
    if type(v) is int:
        return v != 0
    if v is NAN:
        return False
    return v != ""


def c_index(v: Value) -> int:
    """Index coercion for string methods: a non-numeric index counts as 0."""
    n = c_to_int(v)
    return 0 if n is NAN else n


def c_ss(s: str, i: int, j: int) -> str:
    i, j = max(i, 0), max(j, 0)
    if j < i:
        i, j = j, i
    return s[min(i, len(s)):min(j, len(s))]


def c_ca(s: str, i: int) -> str:
    return s[i] if 0 <= i < len(s) else ""


def c_io(s: str, t: str) -> int:
    return s.find(t)


def c_le(s: str) -> int:
    return len(s)


def c_conc(s: str, t: str) -> str:
    return s + t


def c_plus(a: Value, b: Value) -> Value:
    if type(a) is str or type(b) is str:
        return c_to_str(a) + c_to_str(b)
    return c_to_int(a) + c_to_int(b)


def c_arith(op: str, a: Value, b: Value) -> Value:
    x, y = c_to_int(a), c_to_int(b)
    if x is NAN or y is NAN:
        return NAN
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op == "/":
        if y == 0:
            return NAN
        q = abs(x) // abs(y)
        return q if (x >= 0) == (y > 0) else -q
    raise ValueError(f"unknown arithmetic operator {op!r}")


def _cmp_operand(v: Value) -> int | _NaN:
    return NAN if v is NAN else c_to_int(v)


def c_cmp(op: str, a: Value, b: Value) -> bool:
    """``<`` / ``>`` on integer coercions; any NaN operand compares false."""
    x, y = _cmp_operand(a), _cmp_operand(b)
    if x is NAN or y is NAN:
        return False
    return x < y if op == "<" else x > y


def c_eq(a: Value, b: Value) -> bool:
    """Strict equality: same kind and same value; NaN equals NaN."""
    return type(a) is type(b) and a == b


def c_logic(op: str, a: Value, b: Value | None = None) -> bool:
    if op == "!":
        return not c_to_bool(a)
    if op == "&&":
        return c_to_bool(a) and c_to_bool(b)
    if op == "||":
        return c_to_bool(a) or c_to_bool(b)
    raise ValueError(f"unknown logical operator {op!r}")
