"""Finite symbol sets over which every automaton is built."""

from __future__ import annotations

import os
from typing import Iterable

from .errors import ConfigError

ENV_VAR = "STRYLUS_ALPHABET"


class Alphabet:
    """An immutable finite set of one-character symbols.

    Symbols are kept sorted by code point; that order fixes the canonical
    numbering of automaton states and the ordering of every rendered output.
    """

    def __init__(self, symbols: Iterable[str]):
        syms = set(symbols)
        for s in syms:
            if not isinstance(s, str) or len(s) != 1:
                raise ConfigError(f"alphabet symbols must be single characters, got {s!r}")
        if not syms:
            raise ConfigError("alphabet must not be empty")
        self.symbols: tuple[str, ...] = tuple(sorted(syms))
        self._set = frozenset(syms)

    def __contains__(self, sym: object) -> bool:
        return sym in self._set

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Alphabet) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        if self == ASCII:
            return "Alphabet(ascii)"
        return f"Alphabet({''.join(self.symbols)!r})"

    def check_word(self, word: str) -> None:
        for ch in word:
            if ch not in self._set:
                raise ConfigError(f"symbol {ch!r} (code {ord(ch)}) is not in the alphabet")


ASCII = Alphabet(chr(c) for c in range(32, 127))


def from_selector(selector: str | None) -> Alphabet:
    """Resolve an alphabet selector: ``ascii`` or ``file:PATH``.

    ``STRYLUS_ALPHABET`` in the environment overrides *selector*.
    """
    chosen = os.environ.get(ENV_VAR) or selector or "ascii"
    if chosen == "ascii":
        return ASCII
    if chosen.startswith("file:"):
        path = chosen[len("file:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read alphabet file {path}: {exc}") from exc
        return Alphabet(ch for ch in text if ch not in "\r\n")
    raise ConfigError(f"unknown alphabet selector {chosen!r} (expected 'ascii' or 'file:PATH')")
