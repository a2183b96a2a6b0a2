"""Finite groups on element indices 0..n-1 (identity at 0)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import InvariantError, ResourceLimitError

DENSE_LIMIT = 4096
DEFAULT_MAX_ORDER = 1 << 20


class FiniteGroup:
    """A finite group given by the right action of a generating set on its elements.

    Elements are indices ``0..order-1`` with the identity at 0.  The right
    action ``gen_action[k, g] = g * gens[k]`` determines the group; when the
    order is at most ``dense_limit`` a full multiplication table is built,
    otherwise products are evaluated by walking normal-form words.
    """

    def __init__(
        self,
        gen_action: np.ndarray,
        gens: Sequence[int],
        gen_names: Sequence[str] | None = None,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        dense_limit: int = DENSE_LIMIT,
    ):
        gen_action = np.asarray(gen_action, dtype=np.int64)
        if gen_action.ndim != 2 or gen_action.shape[0] != len(gens):
            raise ValueError("gen_action must have one row per generator")
        self.order = int(gen_action.shape[1]) if len(gens) else 1
        if not len(gens):
            gen_action = np.zeros((0, 1), dtype=np.int64)
        self.identity = 0
        self.gen_action = gen_action
        self.gens = [int(g) for g in gens]
        self.gen_names = list(gen_names) if gen_names is not None else [f"x{i + 1}" for i in range(len(gens))]
        self.name = name
        self.presentation = None
        self.perms: np.ndarray | None = None
        self.aliases: dict[str, int] = {}
        self._inv_action = np.argsort(gen_action, axis=1) if len(gens) else gen_action
        self._bfs_tree()
        self._labels = list(labels) if labels is not None else None
        self.table: np.ndarray | None = None
        if self.order <= dense_limit:
            self._build_table()
        self._inverse = self._build_inverse()

    # construction helpers -------------------------------------------------

    def _bfs_tree(self):
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        pgen = np.full(n, -1, dtype=np.int64)
        depth = np.zeros(n, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        order = [0]
        queue = deque([0])
        while queue:
            g = queue.popleft()
            for k in range(len(self.gens)):
                h = int(self.gen_action[k, g])
                if not seen[h]:
                    seen[h] = True
                    parent[h] = g
                    pgen[h] = k
                    depth[h] = depth[g] + 1
                    order.append(h)
                    queue.append(h)
        if len(order) != n:
            raise InvariantError("generators do not reach every element")
        self.parent = parent
        self.parent_gen = pgen
        self.depth = depth
        self.bfs_order = np.array(order, dtype=np.int64)

    def _build_table(self):
        n = self.order
        table = np.empty((n, n), dtype=np.int64)
        table[:, 0] = np.arange(n)
        for b in self.bfs_order[1:]:
            table[:, b] = self.gen_action[self.parent_gen[b]][table[:, self.parent[b]]]
        self.table = table

    def _build_inverse(self) -> np.ndarray:
        n = self.order
        if self.table is not None:
            rows, cols = np.nonzero(self.table == 0)
            inv = np.empty(n, dtype=np.int64)
            inv[rows] = cols
            return inv
        # inverse of g = p*s is s^-1 * p^-1: walk the word of g backwards with inverse actions
        inv = np.empty(n, dtype=np.int64)
        for g in range(n):
            x = 0
            for k in reversed(self.word(g)):
                x = int(self._inv_action[k, x])
            inv[g] = x
        return inv

    # basic operations -----------------------------------------------------

    def word(self, g: int) -> list[int]:
        """Normal-form word of ``g`` as a list of generator positions."""
        out = []
        while g:
            out.append(int(self.parent_gen[g]))
            g = int(self.parent[g])
        out.reverse()
        return out

    def mul(self, a: int, b: int) -> int:
        if self.table is not None:
            return int(self.table[a, b])
        for k in self.word(b):
            a = int(self.gen_action[k, a])
        return a

    def inv(self, g: int) -> int:
        return int(self._inverse[g])

    @property
    def inverse(self) -> np.ndarray:
        return self._inverse

    def vmul(self, a, b):
        """Elementwise product of index arrays (dense groups only)."""
        if self.table is None:
            return np.vectorize(self.mul)(a, b)
        return self.table[a, b]

    def prod(self, elems: Iterable[int]) -> int:
        x = 0
        for g in elems:
            x = self.mul(x, g)
        return x

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        x = 0
        base = g
        while k:
            if k & 1:
                x = self.mul(x, base)
            base = self.mul(base, base)
            k >>= 1
        return x

    def conj(self, x: int, y: int) -> int:
        """x y x^-1"""
        return self.mul(self.mul(x, y), self.inv(x))

    def comm(self, x: int, y: int) -> int:
        """[x, y] = x y x^-1 y^-1"""
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def ucomm(self, x: int, y: int) -> int:
        """Unoriented commutator {x, y} = x y x^-1 y."""
        return self.mul(self.mul(x, y), self.mul(self.inv(x), y))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def evaluate(self, word: Iterable[int]) -> int:
        """Evaluate a word of signed generator tokens (+-(k+1) for generator k)."""
        x = 0
        for t in word:
            if t == 0:
                raise ValueError("0 is not a generator token")
            k = abs(t) - 1
            act = self.gen_action if t > 0 else self._inv_action
            x = int(act[k, x])
        return x

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    # labels and parsing --------------------------------------------------

    def label(self, g: int) -> str:
        if self._labels is not None:
            return self._labels[g]
        return word_label(self.word(g), self.gen_names)

    @property
    def labels(self) -> list[str]:
        return [self.label(g) for g in range(self.order)]

    def parse_element(self, text: str) -> int:
        """Element from its label, a generator word like ``ab^-1c^3``, or cycle notation."""
        from .presentation import parse_compact_word

        text = text.strip()
        if text in ("1", "e", "()", ""):
            return 0
        if self._labels is not None:
            for g, lab in enumerate(self._labels):
                if lab == text:
                    return g
        if text.startswith("(") and self.perms is not None:
            from .perms import parse_cycles

            perm = parse_cycles(text, self.perms.shape[1])
            hits = np.nonzero((self.perms == perm).all(axis=1))[0]
            if len(hits) == 0:
                raise KeyError(f"permutation {text} is not in the group")
            return int(hits[0])
        names = list(self.gen_names) + list(self.aliases)
        x = 0
        for name, exp in parse_compact_word(text, names):
            if name in self.aliases:
                g = self.aliases[name]
            else:
                g = self.gens[self.gen_names.index(name)]
            x = self.mul(x, self.power(g, exp))
        return x

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{nm} of order {self.order}>"

    # checks ---------------------------------------------------------------

    def check_axioms(self, samples: int = 10_000, seed: int = 0) -> None:
        """Exhaustive up to order 64, random triples above."""
        n = self.order
        if self.table is not None and n <= 64:
            if not _assoc_dense(self.table):
                raise InvariantError("multiplication is not associative")
        else:
            rng = np.random.default_rng(seed)
            trip = rng.integers(0, n, size=(samples, 3))
            for a, b, c in trip:
                a, b, c = int(a), int(b), int(c)
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                    raise InvariantError("multiplication is not associative")
        for g in range(n) if n <= 4096 else range(0, n, max(1, n // 4096)):
            if self.mul(0, g) != g or self.mul(g, 0) != g:
                raise InvariantError("identity is not two-sided")
            gi = self.inv(g)
            if self.mul(g, gi) != 0 or self.mul(gi, g) != 0:
                raise InvariantError("inverse is not two-sided")


def _assoc_dense(t: np.ndarray) -> bool:
    # (ab)c == a(bc) for all a, b, c
    left = t[t]  # left[a, b, c] = t[t[a, b], c]
    right = t[:, t]  # right[a, b, c] = t[a, t[b, c]]
    return bool((left == right).all())


def word_label(word: Sequence[int], names: Sequence[str]) -> str:
    """Compress ``[0, 0, 1]`` into ``a^2b`` style labels."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(names[word[i]] + (f"^{run}" if run > 1 else ""))
        i = j
    return "".join(parts)


@dataclass
class GroupHom:
    """A homomorphism given by its values on every source element."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.map = np.asarray(self.map, dtype=np.int64)
        if self.map.shape != (self.source.order,):
            raise ValueError("map must have one entry per source element")

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.source.order

    def check(self) -> None:
        s, t, m = self.source, self.target, self.map
        if m[0] != 0:
            raise InvariantError("identity is not preserved")
        if s.table is not None and t.table is not None:
            ok = (m[s.table] == t.table[m[:, None], m[None, :]]).all()
        else:
            ok = all(m[s.mul(a, b)] == t.mul(int(m[a]), int(m[b])) for a in range(s.order) for b in s.gens)
        if not ok:
            raise InvariantError("map is not a homomorphism")

    def image(self) -> list[int]:
        return sorted(set(int(x) for x in self.map))


def from_right_action(
    elements_action: Callable[[object, int], object],
    start: object,
    ngens: int,
    key: Callable[[object], object] = lambda x: x,
    max_order: int = DEFAULT_MAX_ORDER,
):
    """Breadth-first closure of ``start`` under ``ngens`` right actions.

    Returns (elements, action) where ``action[k, i]`` is the index of
    ``elements[i] * gen_k``.  Discovery order makes indices canonical.
    """
    elements = [start]
    index = {key(start): 0}
    rows: list[list[int]] = [[] for _ in range(ngens)]
    i = 0
    while i < len(elements):
        x = elements[i]
        for k in range(ngens):
            y = elements_action(x, k)
            ky = key(y)
            j = index.get(ky)
            if j is None:
                j = len(elements)
                if j >= max_order:
                    raise ResourceLimitError(f"closure exceeds {max_order} elements")
                index[ky] = j
                elements.append(y)
            rows[k].append(j)
        i += 1
    action = np.array(rows, dtype=np.int64).reshape(ngens, len(elements))
    return elements, action


def from_table(table: np.ndarray, name: str | None = None, labels=None) -> FiniteGroup:
    """Group from a dense table whose identity sits at index 0 (indices kept as given)."""
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    if table.shape != (n, n) or not (table[0] == np.arange(n)).all() or not (table[:, 0] == np.arange(n)).all():
        raise InvariantError("table must be square with identity at index 0")
    gens = _greedy_generators(table)
    action = table[:, gens].T.copy() if gens else np.zeros((0, n), dtype=np.int64)
    G = FiniteGroup(action, gens, gen_names=[f"g{g}" for g in gens], labels=labels, name=name)
    G.table = table
    G._inverse = G._build_inverse()
    return G


def _greedy_generators(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    gens: list[int] = []
    for g in range(1, n):
        if inside[g]:
            continue
        gens.append(g)
        members = list(np.nonzero(inside)[0])
        frontier = deque(members)
        while frontier:
            x = frontier.popleft()
            for s in gens:
                y = int(table[x, s])
                if not inside[y]:
                    inside[y] = True
                    frontier.append(y)
    return gens
