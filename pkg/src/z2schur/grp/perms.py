"""Permutation groups: parsing and closure.

Permutations are numpy arrays of images of 0-based points and multiply
left to right: ``i^(gh) = (i^g)^h``, matching the cycle-notation input.
"""

from __future__ import annotations

import re
from typing import Sequence

import numpy as np

from ..errors import UsageError
from .group import DEFAULT_MAX_ORDER, FiniteGroup, from_right_action

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> np.ndarray:
    """``"(1 2)(3 4)"`` (1-based points, spaces or commas) to an image array."""
    text = text.strip()
    cycles = []
    pos = 0
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise UsageError(f"bad cycle notation: {text!r}")
        pos = m.end()
        pts = [int(t) for t in re.split(r"[\s,]+", m.group(1).strip()) if t]
        if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
            raise UsageError(f"bad cycle {m.group(0)!r}")
        cycles.append(pts)
    if text[pos:].strip():
        raise UsageError(f"bad cycle notation: {text!r}")
    top = max((max(c) for c in cycles if c), default=0)
    n = max(top, degree or 0)
    if degree is not None and top > degree:
        raise UsageError(f"point {top} exceeds degree {degree}")
    perm = np.arange(n, dtype=np.int64)
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            perm[a - 1] = b - 1
    return perm


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = int(perm[i])
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = int(perm[j])
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) or "()"


def read_permutations(text: str) -> list[np.ndarray]:
    """One generator per non-empty line; ``#`` starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    perms = [parse_cycles(ln) for ln in lines]
    degree = max((len(p) for p in perms), default=0)
    return [np.concatenate([p, np.arange(len(p), degree)]) for p in perms]


def from_permutations(
    generators: Sequence[Sequence[int]],
    gen_names: Sequence[str] | None = None,
    name: str | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Close a set of permutations of a common finite set into a group.

    Elements are indexed in breadth-first discovery order from the identity.
    Raises ResourceLimitError when the closure exceeds ``max_order``.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    degree = len(gens[0]) if gens else 0
    if any(len(g) != degree for g in gens):
        raise UsageError("permutations act on sets of different sizes")
    for g in gens:
        if sorted(g.tolist()) != list(range(degree)):
            raise UsageError("not a permutation")
    ident = np.arange(degree, dtype=np.int64)
    elements, action = from_right_action(
        lambda x, k: gens[k][x], ident, len(gens), key=lambda x: x.tobytes(), max_order=max_order
    )
    gen_idx = [int(action[k, 0]) for k in range(len(gens))]
    perms = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    labels = [format_cycles(p) for p in perms]
    G = FiniteGroup(action, gen_idx, gen_names=gen_names, labels=labels, name=name)
    G.perms = perms
    return G
