"""Principal G-bundles over surfaces, glued from elementary pieces.

Monodromies are group elements.  A cylinder conjugates, a pair of pants
multiplies, a disc caps only the trivial monodromy and a Moebius band squares.
A closed surface is described by handle pairs (x_i, y_i) or crosscap elements
z_i subject to prod [x_i, y_i] = 1, respectively prod z_i^2 = 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .cohom import surface_cycle
from .errors import InvariantError, UsageError
from .f2la import to_bitstring
from .grp import FiniteGroup
from .mult import MultiplierReport, bogomolov_by_functionals, class_in_b0
from .relcalc import UWord

KINDS = ("cylinder", "pants", "disc", "moebius")


@dataclass(frozen=True)
class ElementaryCobordism:
    kind: str
    conjugator: int = 0  # cylinders only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown cobordism {self.kind!r}")

    @property
    def arity(self) -> int:
        return {"cylinder": 1, "pants": 2, "disc": 1, "moebius": 1}[self.kind]


def compose(c: ElementaryCobordism, G: FiniteGroup, inputs: Sequence[int]) -> int | None:
    """Outgoing monodromy; a disc returns None after capping."""
    if len(inputs) != c.arity:
        raise InvariantError(f"{c.kind} takes {c.arity} input(s)")
    if c.kind == "cylinder":
        return G.conj(c.conjugator, inputs[0])
    if c.kind == "pants":
        return G.mul(inputs[0], inputs[1])
    if c.kind == "moebius":
        return G.mul(inputs[0], inputs[0])
    if inputs[0] != 0:
        raise InvariantError("a disc only caps the trivial monodromy")
    return None


def klein_monodromy(G: FiniteGroup, x: int, y: int) -> int:
    return G.ucomm(x, y)


def handle_monodromy(G: FiniteGroup, pairs: Sequence[tuple[int, int]]) -> int:
    return G.prod(G.comm(x, y) for x, y in pairs)


def crosscap_monodromy(G: FiniteGroup, zs: Sequence[int]) -> int:
    return G.prod(G.mul(z, z) for z in zs)


@dataclass(frozen=True)
class SurfaceAction:
    """Monodromy data of a closed surface; ``data`` holds pairs or crosscap elements."""

    group: FiniteGroup = field(repr=False, compare=False)
    orientable: bool
    data: tuple

    def __post_init__(self):
        if self.orientable:
            data = tuple((int(x), int(y)) for x, y in self.data)
            rel = handle_monodromy(self.group, data)
        else:
            data = tuple(int(z) for z in self.data)
            if not data:
                raise InvariantError("a nonorientable surface needs at least one crosscap")
            rel = crosscap_monodromy(self.group, data)
        object.__setattr__(self, "data", data)
        if rel != 0:
            raise InvariantError("monodromy data does not close up: relator is not the identity")

    @classmethod
    def orientable_surface(cls, G: FiniteGroup, pairs) -> "SurfaceAction":
        return cls(G, True, tuple(pairs))

    @classmethod
    def nonorientable_surface(cls, G: FiniteGroup, zs) -> "SurfaceAction":
        return cls(G, False, tuple(zs))

    @property
    def genus(self) -> int:
        return len(self.data)

    @property
    def chi_quotient(self) -> int:
        return 2 - 2 * len(self.data) if self.orientable else 2 - len(self.data)

    @property
    def chi_total(self) -> int:
        return self.group.order * self.chi_quotient

    def relator(self) -> list[tuple[int, int]]:
        """Polygon word as signed letters (x, +-1)."""
        out: list[tuple[int, int]] = []
        if self.orientable:
            for x, y in self.data:
                out += [(x, 1), (y, 1), (x, -1), (y, -1)]
        else:
            for z in self.data:
                out += [(z, 1), (z, 1)]
        return out

    def cycle(self):
        return surface_cycle(self.group, self.relator())

    def to_word(self) -> UWord:
        G = self.group
        if self.orientable:
            letters = tuple(("O", x, y, 1) for x, y in self.data)
        else:
            letters = tuple(("S", z, 0, 1) for z in self.data)
        return UWord(G, letters)

    def conjugate(self, g: int) -> "SurfaceAction":
        G = self.group
        c = lambda x: G.conj(g, x)
        if self.orientable:
            return SurfaceAction(G, True, tuple((c(x), c(y)) for x, y in self.data))
        return SurfaceAction(G, False, tuple(c(z) for z in self.data))

    def __str__(self) -> str:
        lab = self.group.label
        if self.orientable:
            pairs = ";".join(f"({lab(x)},{lab(y)})" for x, y in self.data)
            return f"orientable g={len(self.data)} pairs={pairs}"
        return f"nonorientable k={len(self.data)} z=({';'.join(lab(z) for z in self.data)})"


@dataclass(frozen=True)
class Verdict:
    verdict: str  # Extendable | Obstructed | TrivialRP2Component
    chi_mod2: int
    b0_coordinates: int
    b0_dim: int

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "chi_mod2": self.chi_mod2,
            "b0_coordinates": to_bitstring(self.b0_coordinates, self.b0_dim),
        }


def is_extendable(s: SurfaceAction, report: MultiplierReport | None = None) -> Verdict:
    """Odd Euler characteristic blocks bounding outright; otherwise the B0 class decides."""
    chi2 = s.chi_total & 1
    report = report or bogomolov_by_functionals(s.group)
    if chi2:
        return Verdict("TrivialRP2Component", chi2, 0, report.dim_b0)
    coords, trivial = class_in_b0(s, s.group, report)
    return Verdict("Extendable" if trivial else "Obstructed", chi2, coords, report.dim_b0)


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


def _unwrap(text: str) -> str:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(text) - 1:
                return text
        return text[1:-1].strip()
    return text


def parse_surface(G: FiniteGroup, text: str) -> SurfaceAction:
    """``orientable g=2 pairs=(x1,y1);(x2,y2)`` or ``nonorientable k=3 z=(z1;z2;z3)``."""
    m = re.match(r"\s*(orientable|nonorientable)\s+(g|k)\s*=\s*(\d+)\s+(pairs|z)\s*=\s*(.*)$", text.strip())
    if not m:
        raise UsageError(f"cannot parse surface {text!r}")
    kind, key, count, field_name, body = m.groups()
    count = int(count)
    try:
        if kind == "orientable":
            if key != "g" or field_name != "pairs":
                raise UsageError("orientable surfaces take g=... pairs=...")
            pairs = []
            for item in _split_top(body, ";"):
                xy = _split_top(_unwrap(item), ",")
                if len(xy) != 2:
                    raise UsageError(f"bad pair {item!r}")
                pairs.append((G.parse_element(xy[0]), G.parse_element(xy[1])))
            if len(pairs) != count:
                raise UsageError(f"g={count} but {len(pairs)} pairs given")
            return SurfaceAction.orientable_surface(G, pairs)
        if key != "k" or field_name != "z":
            raise UsageError("nonorientable surfaces take k=... z=(...)")
        zs = [G.parse_element(z) for z in _split_top(_unwrap(body), ";")]
        if len(zs) != count:
            raise UsageError(f"k={count} but {len(zs)} crosscaps given")
        return SurfaceAction.nonorientable_surface(G, zs)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from exc
