"""Words in the free group on the symbols O[x,y], U[x,y] and S[z].

The canonical map sends O[x,y] to the commutator xyx^-1y^-1, U[x,y] to the
unoriented commutator xyx^-1y and S[z] to z^2.  Words in its kernel are
paired against H^2 through the section lifts of square-central extensions.

Relations are written once as templates over a vector context, so the same
definition drives both exhaustive checks on small groups (numpy arrays of
payloads) and emission of individual word pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .cohom import CocycleBasis, h2
from .errors import InvariantError, UsageError
from .extensions import lift_tokens
from .grp import FiniteGroup

KINDS = ("O", "U", "S")
Letter = tuple[str, int, int, int]  # (kind, x, y, exponent); y = 0 for S


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for let in letters:
        if out and out[-1][:3] == let[:3] and out[-1][3] == -let[3]:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


@dataclass(frozen=True)
class UWord:
    """A freely reduced word; letters are (kind, x, y, +-1)."""

    group: FiniteGroup = field(repr=False, compare=False)
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        n = self.group.order
        clean = []
        for kind, x, y, e in self.letters:
            if kind not in KINDS or e not in (1, -1):
                raise ValueError(f"bad letter {(kind, x, y, e)}")
            x, y = int(x), int(y) if kind != "S" else 0
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError("payload is not an element index")
            clean.append((kind, x, y, e))
        object.__setattr__(self, "letters", _free_reduce(clean))

    # constructors
    @classmethod
    def one(cls, G: FiniteGroup) -> "UWord":
        return cls(G, ())

    @classmethod
    def O(cls, G: FiniteGroup, x: int, y: int) -> "UWord":
        return cls(G, (("O", x, y, 1),))

    @classmethod
    def U(cls, G: FiniteGroup, x: int, y: int) -> "UWord":
        return cls(G, (("U", x, y, 1),))

    @classmethod
    def S(cls, G: FiniteGroup, z: int) -> "UWord":
        return cls(G, (("S", z, 0, 1),))

    def __mul__(self, other: "UWord") -> "UWord":
        if other.group is not self.group:
            raise InvariantError("words over different groups")
        return UWord(self.group, self.letters + other.letters)

    def inverse(self) -> "UWord":
        return UWord(self.group, tuple((k, x, y, -e) for k, x, y, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "UWord":
        base = self if k >= 0 else self.inverse()
        out = UWord.one(self.group)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, x: int) -> "UWord":
        """w^x: every payload p replaced by x p x^-1."""
        G = self.group
        c = lambda p: G.conj(x, p)
        return UWord(G, tuple((k, c(a), c(b) if k != "S" else 0, e) for k, a, b, e in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def tokens(self) -> list[tuple[int, int]]:
        """Expansion into group letters (element, +-1) following the canonical map."""
        out: list[tuple[int, int]] = []
        for kind, x, y, e in self.letters:
            out.extend(_letter_tokens(kind, x, y, e))
        return out

    def canonical_image(self) -> int:
        G = self.group
        g = 0
        for kind, x, y, e in self.letters:
            img = _letter_image(G, kind, x, y)
            g = G.mul(g, img if e > 0 else G.inv(img))
        return g

    def in_kernel(self) -> bool:
        return self.canonical_image() == 0

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        lab = self.group.label
        parts = []
        for kind, x, y, e in self.letters:
            body = f"{kind}[{lab(x)}]" if kind == "S" else f"{kind}[{lab(x)},{lab(y)}]"
            parts.append(body if e > 0 else body + "^-1")
        return " ".join(parts)

    @classmethod
    def parse(cls, G: FiniteGroup, text: str) -> "UWord":
        return parse_word(G, text)


def _letter_tokens(kind: str, x: int, y: int, e: int) -> list[tuple[int, int]]:
    if kind == "O":
        toks = [(x, 1), (y, 1), (x, -1), (y, -1)]
    elif kind == "U":
        toks = [(x, 1), (y, 1), (x, -1), (y, 1)]
    else:
        toks = [(x, 1), (x, 1)]
    if e < 0:
        toks = [(g, -s) for g, s in reversed(toks)]
    return toks


def _letter_image(G: FiniteGroup, kind: str, x: int, y: int) -> int:
    if kind == "O":
        return G.comm(x, y)
    if kind == "U":
        return G.ucomm(x, y)
    return G.mul(x, x)


def canonical_image(w: UWord, G: FiniteGroup | None = None) -> int:
    if G is not None and G is not w.group:
        raise InvariantError("word belongs to a different group")
    return w.canonical_image()


_LETTER_RE = re.compile(r"\s*([OUS])\[")


def _split_payload(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def parse_word(G: FiniteGroup, text: str) -> UWord:
    """Parse ``O[a,c] O[ab,c] S[z]^-1``; payloads are element labels."""
    pos, letters = 0, []
    text = text.strip()
    if text in ("", "1"):
        return UWord.one(G)
    while pos < len(text):
        if text[pos].isspace() or text[pos] == "*":
            pos += 1
            continue
        m = _LETTER_RE.match(text, pos)
        if not m:
            raise UsageError(f"cannot parse word at {text[pos:]!r}")
        depth, j = 0, m.end()
        while j < len(text) and not (text[j] == "]" and depth == 0):
            depth += text[j] == "("
            depth -= text[j] == ")"
            j += 1
        if j >= len(text):
            raise UsageError("unterminated letter")
        kind = m.group(1)
        args = _split_payload(text[m.end():j])
        want = 1 if kind == "S" else 2
        if len(args) != want:
            raise UsageError(f"{kind}[...] takes {want} payload(s)")
        try:
            elems = [G.parse_element(a) for a in args]
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        pos = j + 1
        exp = 1
        em = re.match(r"\^\s*(-?\d+)", text[pos:])
        if em:
            exp = int(em.group(1))
            pos += em.end()
        letter = (kind, elems[0], elems[1] if kind != "S" else 0, 1 if exp > 0 else -1)
        letters.extend([letter] * abs(exp))
    return UWord(G, tuple(letters))


# pairing with H^2 ----------------------------------------------------------


def coordinates(w: UWord, basis: CocycleBasis) -> int:
    """Bitmask whose bit j is the image of ``w`` in the extension by rep j."""
    G = w.group
    a, g = lift_tokens(G, basis.packed, w.tokens())
    if int(g) != 0:
        raise InvariantError("word is not in the kernel of the canonical map")
    return int(a)


def is_trivial_in_M(w: UWord, G: FiniteGroup | None = None, basis: CocycleBasis | None = None) -> tuple[bool, int]:
    """(trivial?, coordinates over the H^2 basis) for a word in the kernel."""
    G = G or w.group
    if w.canonical_image() != 0:
        raise InvariantError("word is not in the kernel of the canonical map")
    basis = basis or h2(G)
    c = coordinates(w, basis)
    return c == 0, c


def verify_relation_pair(lhs: UWord, rhs: UWord, G: FiniteGroup | None = None, basis: CocycleBasis | None = None) -> bool:
    """True iff lhs * rhs^-1 maps to the identity in every square-central extension."""
    if lhs.canonical_image() != rhs.canonical_image():
        raise InvariantError("relation sides have different canonical images")
    trivial, _ = is_trivial_in_M(lhs * rhs.inverse(), G, basis)
    return trivial


# vectorized relation templates ----------------------------------------------


class VecContext:
    """Group operations on arrays of element indices."""

    def __init__(self, G: FiniteGroup):
        if G.table is None:
            raise InvariantError("relation templates need a dense table")
        self.G = G
        self.t = G.table
        self.iv = G.inverse
        n = G.order
        pw = np.zeros((n, n), dtype=np.int64)
        for k in range(1, n):
            pw[:, k] = self.t[pw[:, k - 1], np.arange(n)]
        self.pw = pw

    def mul(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.t[out, x]
        return out

    def inv(self, x):
        return self.iv[x]

    def conj(self, x, y):
        return self.mul(x, y, self.inv(x))

    def comm(self, x, y):
        return self.mul(x, y, self.inv(x), self.inv(y))

    def ucomm(self, x, y):
        return self.mul(x, y, self.inv(x), y)

    def power(self, x, k):
        return self.pw[x, np.mod(k, self.G.order)]


def O(x, y) -> list:
    return [("O", x, y, 1)]


def U(x, y) -> list:
    return [("U", x, y, 1)]


def S(z) -> list:
    return [("S", z, 0, 1)]


def inv(w: list) -> list:
    return [(k, x, y, -e) for k, x, y, e in reversed(w)]


def pconj(C: VecContext, w: list, x) -> list:
    """Payload conjugation w^x."""
    return [(k, C.conj(x, a), C.conj(x, b) if k != "S" else 0, e) for k, a, b, e in w]


def wconj(w: list, v: list) -> list:
    """Conjugation of a word by a word, v w v^-1."""
    return v + w + inv(v)


def wcomm(w: list, v: list) -> list:
    return w + v + inv(w) + inv(v)


@dataclass(frozen=True)
class Relation:
    """A relation template; ``variables`` names its arguments, exponents are i, j, n, s."""

    name: str
    family: str
    variables: str
    build: Callable = field(repr=False)
    text: str = ""

    @property
    def element_vars(self) -> str:
        return "".join(v for v in self.variables if v not in EXPONENT_VARS)


EXPONENT_VARS = "ijns"


def _generating() -> list[Relation]:
    R = Relation
    return [
        R("12", "generating", "xij", lambda C, x, i, j: (S(C.power(x, i)) + S(C.power(x, j)), S(C.power(x, i + j))),
          "(x^i)(x^j) ~ (x^(i+j))"),
        R("13", "generating", "xy", lambda C, x, y: (U(x, C.mul(x, y)), S(x) + S(y)), "(x,xy) ~ (x)(y)"),
        R("14", "generating", "xy", lambda C, x, y: (O(x, y), S(x) + S(C.mul(C.inv(x), y)) + S(C.inv(y))),
          "<x,y> ~ (x)(x^-1 y)(y^-1)"),
        R("15", "generating", "xyz", lambda C, x, y, z: (O(C.mul(x, y), z), pconj(C, U(y, z), x) + U(x, C.inv(z))),
          "<xy,z> ~ (y,z)^x (x,z^-1)"),
        R("16", "generating", "xyz", lambda C, x, y, z: (pconj(C, O(y, z), x), O(x, C.comm(y, z)) + O(y, z)),
          "<y,z>^x ~ <x,[y,z]><y,z>"),
        R("17", "generating", "xyz", lambda C, x, y, z: (pconj(C, U(y, z), x), O(x, C.ucomm(y, z)) + U(y, z)),
          "(y,z)^x ~ <x,{y,z}>(y,z)"),
        R("18o", "generating", "xyz",
          lambda C, x, y, z: (inv(U(C.conj(x, y), C.conj(x, z))), U(x, C.inv(C.ucomm(y, z))) + U(y, z)),
          "(y^x,z^x)^-1 ~ (x,{y,z}^-1)(y,z)"),
    ]


def _m8(C, b, b1, a0, b0):
    c = C.comm(b, b1)
    return O(b, b1) + O(a0, b0), O(c, a0) + O(a0, C.mul(c, b0)) + O(b, b1)


def _m9(C, b, b1, a0, b0):
    # left side pair taken as <b0,a0>; with <a0,b0> the two sides have different images
    c = C.comm(b, b1)
    return O(b, b1) + O(b0, a0), O(C.mul(c, b0), a0) + O(a0, c) + O(b, b1)


def _m10(C, b, b1, a, a1):
    return O(b, b1) + O(a, a1), O(C.comm(b, b1), C.comm(a, a1)) + O(a, a1) + O(b, b1)


def _miller() -> list[Relation]:
    R = Relation
    return [
        R("M1", "miller", "x", lambda C, x: (O(x, x), []), "<x,x> ~ 1"),
        R("M2", "miller", "xy", lambda C, x, y: (O(x, y), inv(O(y, x))), "<x,y> ~ <y,x>^-1"),
        R("M3", "miller", "xyz", lambda C, x, y, z: (O(C.mul(x, y), z), pconj(C, O(y, z), x) + O(x, z)),
          "<xy,z> ~ <y,z>^x <x,z>"),
        R("M4", "miller", "xyz", lambda C, x, y, z: (pconj(C, O(y, z), x), O(x, C.comm(y, z)) + O(y, z)),
          "<y,z>^x ~ <x,[y,z]><y,z>"),
        R("M5", "miller", "xyz", lambda C, x, y, z: (O(x, C.mul(y, z)), O(x, y) + pconj(C, O(x, z), y)),
          "<x,yz> ~ <x,y><x,z>^y"),
        R("M6", "miller", "xyab", lambda C, x, y, a, b: (wconj(O(x, y), O(a, b)), pconj(C, O(x, y), C.comm(a, b))),
          "<x,y>^<a,b> ~ <x,y>^[a,b]"),
        R("M7", "miller", "xyab", lambda C, x, y, a, b: (wcomm(O(x, y), O(a, b)), O(C.comm(x, y), C.comm(a, b))),
          "[<x,y>,<a,b>] ~ <[x,y],[a,b]>"),
        R("M8", "miller", "pqab", _m8, "<b,b'><a0,b0> ~ <[b,b'],a0><a0,[b,b']b0><b,b'>"),
        R("M9", "miller", "pqab", _m9, "<b,b'><b0,a0> ~ <[b,b']b0,a0><a0,[b,b']><b,b'>"),
        R("M10", "miller", "pqab", _m10, "<b,b'><a,a'> ~ <[b,b'],[a,a']><a,a'><b,b'>"),
        R("M11", "miller", "xns", lambda C, x, n, s: (O(C.power(x, n), C.power(x, s)), []), "<x^n,x^s> ~ 1"),
    ]


def _derived() -> list[Relation]:
    R = Relation
    return [
        R("18a", "derived", "", lambda C: (S(0), []), "(1) ~ 1"),
        R("18b", "derived", "x", lambda C, x: (S(C.inv(x)), inv(S(x))), "(x^-1) ~ (x)^-1"),
        R("18c", "derived", "x", lambda C, x: (U(x, 0), []), "(x,1) ~ 1"),
        R("19a", "derived", "x", lambda C, x: (O(x, x), []), "<x,x> ~ 1"),
        R("19b", "derived", "x", lambda C, x: (U(x, x), S(x)), "(x,x) ~ (x)"),
        R("19c", "derived", "x", lambda C, x: (S(x), U(0, x)), "(x) ~ (1,x)"),
        R("19d", "derived", "xy", lambda C, x, y: (O(x, y), inv(O(y, x))), "<x,y> ~ <y,x>^-1"),
        R("20a", "derived", "xy", lambda C, x, y: (inv(U(x, y)), pconj(C, U(C.inv(x), C.inv(y)), x)),
          "(x,y)^-1 ~ (x^-1,y^-1)^x"),
        R("20b", "derived", "xyz", lambda C, x, y, z: (U(C.mul(x, y), z), pconj(C, U(y, z), x) + O(x, C.inv(z))),
          "(xy,z) ~ (y,z)^x <x,z^-1>"),
        R("21a", "derived", "xyz", lambda C, x, y, z: (U(C.mul(x, y), z), pconj(C, O(y, z), x) + U(x, z)),
          "(xy,z) ~ <y,z>^x (x,z)"),
        R("21b", "derived", "xyz", lambda C, x, y, z: (O(C.mul(x, y), z), pconj(C, O(y, z), x) + O(x, z)),
          "<xy,z> ~ <y,z>^x <x,z>"),
        R("22a", "derived", "ab",
          lambda C, a, b: (S(C.mul(a, b)), pconj(C, O(C.inv(a), C.mul(a, b)), a) + S(a) + S(b)),
          "(z1z2) ~ <z1^-1,z1z2>^z1 (z1)(z2)"),
        R("22b", "derived", "ab", lambda C, a, b: (S(a) + S(b), O(a, C.mul(a, b)) + S(C.mul(a, b))),
          "(z1)(z2) ~ <z1,z1z2>(z1z2)"),
        R("23a", "derived", "ab", lambda C, a, b: (S(C.mul(a, b)), O(C.mul(a, b), a) + S(a) + S(b)),
          "(z1z2) ~ <z1z2,z1>(z1)(z2)"),
        R("23b", "derived", "ab",
          lambda C, a, b: (S(a) + S(b), pconj(C, O(C.mul(a, b), C.inv(a)), a) + S(C.mul(a, b))),
          "(z1)(z2) ~ <z1z2,z1^-1>^z1 (z1z2)"),
        R("24a", "derived", "yz", lambda C, y, z: (U(y, z), O(y, z) + S(z)), "(y,z) ~ <y,z>(z)"),
        R("24b", "derived", "yz", lambda C, y, z: (U(y, z), pconj(C, S(z), y) + O(y, C.inv(z))),
          "(y,z) ~ (z)^y <y,z^-1>"),
        R("25a", "derived", "xy", lambda C, x, y: (U(C.mul(x, y), x), pconj(C, U(y, x), x)), "(xy,x) ~ (y,x)^x"),
        R("25b", "derived", "ab",
          lambda C, a, b: (S(a) + S(b), pconj(C, S(C.inv(b)), a) + S(C.mul(a, b, b))), "(a)(b) ~ (b^-1)^a (ab^2)"),
        R("26", "derived", "xyz",
          lambda C, x, y, z: (S(z) + U(x, y), pconj(C, U(C.inv(x), C.inv(y)), C.mul(z, x)) + S(C.mul(z, C.ucomm(x, y)))),
          "(z)(x,y) ~ (x^-1,y^-1)^(zx) (z{x,y})"),
    ]


def conjectured_relation() -> Relation:
    """(z)<x,y> ~ <y,x>^z (z[x,y]); open, checked experimentally only."""
    return Relation(
        "conj", "experimental", "xyz",
        lambda C, x, y, z: (S(z) + O(x, y), pconj(C, O(y, x), z) + S(C.mul(z, C.comm(x, y)))),
        "(z)<x,y> ~ <y,x>^z (z[x,y])",
    )


GENERATING = _generating()
MILLER = _miller()
DERIVED = _derived()
FAMILIES = {"generating": GENERATING, "miller": MILLER, "derived": DERIVED}


def all_relations() -> list[Relation]:
    return GENERATING + MILLER + DERIVED


EXHAUSTIVE_LIMIT = 16
DEFAULT_SAMPLES = 10_000


def instance_arrays(
    rel: Relation, G: FiniteGroup, samples: int | None = None, seed: int = 0, exhaustive_limit: int = EXHAUSTIVE_LIMIT
) -> tuple[list[np.ndarray], bool]:
    """Argument arrays for ``rel``: the full product for small groups, else a seeded sample.

    A sample at least as large as the full product is replaced by the product.
    Exponents range over [-|G|, |G|].  Returns (arrays, exhaustive?).
    """
    n = G.order
    ranges = [np.arange(-n, n + 1) if v in EXPONENT_VARS else np.arange(n) for v in rel.variables]
    if not ranges:
        return [], True
    total = int(np.prod([len(r) for r in ranges], dtype=np.float64))
    count = samples if samples is not None else DEFAULT_SAMPLES
    if (samples is None and n <= exhaustive_limit) or count >= total:
        grids = np.meshgrid(*ranges, indexing="ij")
        return [g.reshape(-1).astype(np.int64) for g in grids], True
    rng = np.random.default_rng([seed, _stable_hash(rel.name)])
    return [rng.integers(r[0], r[-1] + 1, size=count, dtype=np.int64) for r in ranges], False


def _stable_hash(s: str) -> int:
    return int.from_bytes(s.encode(), "little") % (1 << 32)


def _side_eval(C: VecContext, omega: np.ndarray, word: list, size: int):
    """Canonical image and fiber value of a template word over ``size`` instances."""
    G = C.G
    g = np.zeros(size, dtype=np.int64)
    a = np.zeros(size, dtype=omega.dtype)
    lift = np.zeros(size, dtype=np.int64)
    for kind, x, y, e in word:
        x = np.broadcast_to(np.asarray(x, dtype=np.int64), (size,))
        y = np.broadcast_to(np.asarray(y, dtype=np.int64), (size,))
        if kind == "O":
            img = C.comm(x, y)
        elif kind == "U":
            img = C.ucomm(x, y)
        else:
            img = C.mul(x, x)
        g = C.mul(g, img if e > 0 else C.inv(img))
        a, lift = lift_tokens(G, omega, _letter_tokens(kind, x, y, e), start=(a, lift))
    if not (lift == g).all():
        raise InvariantError("lift does not cover the canonical image")
    return g, a


@dataclass
class RelationCheck:
    name: str
    family: str
    instances: int
    exhaustive: bool
    image_failures: int
    extension_failures: int

    @property
    def ok(self) -> bool:
        return self.image_failures == 0 and self.extension_failures == 0


def check_relation(
    rel: Relation,
    G: FiniteGroup,
    basis: CocycleBasis | None = None,
    samples: int | None = None,
    seed: int = 0,
    context: VecContext | None = None,
) -> RelationCheck:
    """Check canonical images and all extension images of every instance of ``rel``."""
    basis = basis or h2(G)
    C = context or VecContext(G)
    args, exhaustive = instance_arrays(rel, G, samples, seed)
    size = len(args[0]) if args else 1
    lhs, rhs = rel.build(C, *args)
    omega = basis.packed
    if omega.dtype == object:
        raise InvariantError("too many H^2 generators for packed evaluation")
    gl, al = _side_eval(C, omega, lhs, size)
    gr, ar = _side_eval(C, omega, rhs, size)
    bad_img = gl != gr
    bad_ext = (al != ar) & ~bad_img
    return RelationCheck(rel.name, rel.family, size, exhaustive, int(bad_img.sum()), int(bad_ext.sum()))


def check_relations(
    G: FiniteGroup,
    relations: Sequence[Relation] | None = None,
    basis: CocycleBasis | None = None,
    samples: int | None = None,
    seed: int = 0,
) -> list[RelationCheck]:
    basis = basis or h2(G)
    C = VecContext(G)
    rels = all_relations() if relations is None else relations
    return [check_relation(r, G, basis, samples, seed, C) for r in rels]


def instances(
    rel: Relation, G: FiniteGroup, samples: int | None = None, seed: int = 0
) -> list[tuple[UWord, UWord]]:
    """Emit (lhs, rhs) word pairs, checking canonical images on the way."""
    C = VecContext(G)
    args, _ = instance_arrays(rel, G, samples, seed)
    size = len(args[0]) if args else 1
    lhs, rhs = rel.build(C, *args)
    out = []
    for k in range(size):
        lw = _materialize(G, lhs, k, size)
        rw = _materialize(G, rhs, k, size)
        if lw.canonical_image() != rw.canonical_image():
            raise InvariantError(f"relation {rel.name} instance {k} has unequal canonical images")
        out.append((lw, rw))
    return out


def _materialize(G: FiniteGroup, word: list, k: int, size: int) -> UWord:
    letters = []
    for kind, x, y, e in word:
        xv = np.broadcast_to(np.asarray(x), (size,))[k]
        yv = np.broadcast_to(np.asarray(y), (size,))[k]
        letters.append((kind, int(xv), int(yv), e))
    return UWord(G, tuple(letters))


def generating_relations(G: FiniteGroup, samples: int | None = None, seed: int = 0) -> list[tuple[UWord, UWord]]:
    return [p for r in GENERATING for p in instances(r, G, samples, seed)]


def miller_relations(G: FiniteGroup, samples: int | None = None, seed: int = 0) -> list[tuple[UWord, UWord]]:
    return [p for r in MILLER for p in instances(r, G, samples, seed)]


def derived_relations(G: FiniteGroup, samples: int | None = None, seed: int = 0) -> list[tuple[UWord, UWord]]:
    return [p for r in DERIVED for p in instances(r, G, samples, seed)]
