"""Finite presentations and their text format.

Relators are tuples of signed generator tokens: ``k+1`` stands for
generator ``k`` and ``-(k+1)`` for its inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import UsageError

Word = tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.generator_count < 1:
            raise UsageError("a presentation needs at least one generator")
        for r in self.relators:
            for t in r:
                if t == 0 or abs(t) > self.generator_count:
                    raise UsageError(f"token {t} out of range")
        if not self.names:
            object.__setattr__(self, "names", tuple(default_names(self.generator_count)))
        elif len(self.names) != self.generator_count:
            raise UsageError("one name per generator")

    @classmethod
    def from_strings(cls, names: Sequence[str], relators: Sequence[str]) -> "Presentation":
        """Relators in compact form, e.g. ``"aca^-1c^-3"`` or ``"a c a^-1 c^-3"``."""
        names = tuple(names)
        rels = tuple(word_tokens(parse_compact_word(r, names), names) for r in relators)
        return cls(len(names), rels, names)

    def format_word(self, word: Sequence[int]) -> str:
        out = []
        for t in word:
            nm = self.names[abs(t) - 1]
            out.append(nm if t > 0 else nm + "^-1")
        return " ".join(out) or "1"

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.names)]
        lines += ["rel: " + self.format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"


def default_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"x{i + 1}" for i in range(n)]


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for t in word:
        if out and out[-1] == -t:
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-t for t in reversed(word))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """u v u^-1 v^-1"""
    return free_reduce(tuple(u) + tuple(v) + invert(u) + invert(v))


_EXP = re.compile(r"\^(-?\d+)")


def parse_compact_word(text: str, names: Sequence[str]) -> list[tuple[str, int]]:
    """Split ``ab^-1c^3`` into ``[("a", 1), ("b", -1), ("c", 3)]`` by longest name match.

    Whitespace separates tokens but is optional; ``1`` alone is the empty word.
    """
    text = text.strip()
    if text in ("", "1", "e"):
        return []
    by_len = sorted(names, key=len, reverse=True)
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace() or text[i] == "*":
            i += 1
            continue
        for nm in by_len:
            if text.startswith(nm, i):
                i += len(nm)
                break
        else:
            raise UsageError(f"cannot parse {text[i:]!r} in word {text!r} (generators: {' '.join(names)})")
        exp = 1
        m = _EXP.match(text, i)
        if m:
            exp = int(m.group(1))
            i = m.end()
        out.append((nm, exp))
    return out


def word_tokens(pairs: Sequence[tuple[str, int]], names: Sequence[str]) -> Word:
    toks: list[int] = []
    for nm, exp in pairs:
        k = names.index(nm) + 1
        toks.extend([k if exp > 0 else -k] * abs(exp))
    return tuple(toks)


def parse_presentation(text: str) -> Presentation:
    """Read the ``gens:`` / ``rel:`` line format (``#`` comments allowed)."""
    names: list[str] | None = None
    rels: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise UsageError(f"expected 'gens:' or 'rel:' line, got {raw!r}")
        key = key.strip().lower()
        if key == "gens":
            if names is not None:
                raise UsageError("duplicate gens line")
            names = rest.split()
            if not names or len(set(names)) != len(names):
                raise UsageError("generator names must be distinct and nonempty")
        elif key in ("rel", "rels", "relator"):
            rels.append(rest)
        else:
            raise UsageError(f"unknown line type {key!r}")
    if names is None:
        raise UsageError("missing gens line")
    return Presentation.from_strings(names, rels)
