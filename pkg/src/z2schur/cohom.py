"""Normalized 2-cochains over Z/2 on a finite group.

A normalized cochain is stored as a bit vector over ordered pairs of
non-identity elements, with pair ``(g, h)`` at bit ``(g-1)*(n-1) + (h-1)``.
Values on pairs involving the identity are zero by construction.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvariantError, ResourceLimitError
from .f2la import BitVector, RowBasis, iter_bits, kernel_basis
from .grp import FiniteGroup, GroupHom

DEFAULT_MAX_ORDER = 512


def pair_index(n: int, g: int, h: int) -> int:
    return (g - 1) * (n - 1) + (h - 1)


def index_pair(n: int, i: int) -> tuple[int, int]:
    q, r = divmod(i, n - 1)
    return q + 1, r + 1


def cochain_width(G: FiniteGroup) -> int:
    return (G.order - 1) ** 2


@dataclass(frozen=True)
class Cochain2:
    group: FiniteGroup = field(repr=False)
    values: BitVector

    @classmethod
    def from_int(cls, G: FiniteGroup, bits: int) -> "Cochain2":
        return cls(G, BitVector(cochain_width(G), bits))

    @classmethod
    def from_function(cls, G: FiniteGroup, f) -> "Cochain2":
        n = G.order
        bits = 0
        for g in range(1, n):
            for h in range(1, n):
                if f(g, h) & 1:
                    bits |= 1 << pair_index(n, g, h)
        return cls.from_int(G, bits)

    @property
    def bits(self) -> int:
        return self.values.bits

    def __call__(self, g: int, h: int) -> int:
        if g == 0 or h == 0:
            return 0
        return (self.values.bits >> pair_index(self.group.order, g, h)) & 1

    def __add__(self, other: "Cochain2") -> "Cochain2":
        if other.group is not self.group:
            raise InvariantError("cochains live on different groups")
        return Cochain2(self.group, self.values ^ other.values)

    def as_array(self) -> np.ndarray:
        return cochain_array(self.group, self.bits)

    def is_cocycle(self) -> bool:
        return is_cocycle(self.group, self.as_array())


def cochain_array(G: FiniteGroup, bits: int) -> np.ndarray:
    """n x n 0/1 array with zero identity row and column."""
    n = G.order
    w = (n - 1) ** 2
    out = np.zeros((n, n), dtype=np.uint8)
    if n > 1:
        raw = np.frombuffer(bits.to_bytes((w + 7) // 8, "little"), dtype=np.uint8)
        flat = np.unpackbits(raw, bitorder="little")[:w]
        out[1:, 1:] = flat.reshape(n - 1, n - 1)
    return out


def array_to_bits(arr: np.ndarray) -> int:
    flat = np.ascontiguousarray(arr[1:, 1:], dtype=np.uint8).reshape(-1)
    return int.from_bytes(np.packbits(flat, bitorder="little").tobytes(), "little")


def is_cocycle(G: FiniteGroup, w: np.ndarray) -> bool:
    """Check w(h,k) + w(gh,k) + w(g,hk) + w(g,h) = 0 for all triples."""
    t = G.table
    n = G.order
    if n == 1:
        return True
    if (w[0] != 0).any() or (w[:, 0] != 0).any():
        return False
    # chunk over g to keep memory at O(n^2)
    for g in range(n):
        gh = t[g]  # gh[h]
        # entries indexed by (h, k)
        lhs = w ^ w[gh, :] ^ w[g][t] ^ w[g][:, None]
        if lhs.any():
            return False
    return True


def _generator_tree(G: FiniteGroup):
    """BFS tree of G over its distinct non-identity generators."""
    gens: list[int] = []
    for s in G.gens:
        if s != 0 and s not in gens:
            gens.append(s)
    n = G.order
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    order = [0]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for j, s in enumerate(gens):
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                parent[y] = x
                via[y] = j
                order.append(y)
                queue.append(y)
    return gens, parent, via, order


def _check_size(G: FiniteGroup, max_order: int) -> None:
    if G.order > max_order:
        raise ResourceLimitError(f"order {G.order} exceeds the cochain size cap {max_order}")
    if G.table is None:
        raise ResourceLimitError("cochain computations need a dense multiplication table")


def _full_constraints(G: FiniteGroup):
    n = G.order
    t = G.table
    m = n - 1
    for g in range(1, n):
        for h in range(1, n):
            gh = int(t[g, h])
            base = 1 << ((g - 1) * m + h - 1)
            for k in range(1, n):
                v = base ^ (1 << ((h - 1) * m + k - 1))
                if gh:
                    v ^= 1 << ((gh - 1) * m + k - 1)
                hk = int(t[h, k])
                if hk:
                    v ^= 1 << ((g - 1) * m + hk - 1)
                yield v


def cocycle_space(G: FiniteGroup, method: str = "generators", max_order: int = DEFAULT_MAX_ORDER) -> RowBasis:
    """Basis of the normalized 2-cocycles Z^2(G; Z/2) in the pair layout.

    ``method="full"`` streams every cocycle condition over (g, h, k) through
    the eliminator.  ``method="generators"`` first writes each value w(g, h)
    in terms of the values w(x, s) on generators s (following a BFS tree) and
    imposes the cocycle condition only on triples (g, h, s); both give the
    same space, the second with far fewer unknowns.
    """
    _check_size(G, max_order)
    n = G.order
    width = (n - 1) ** 2
    if n == 1:
        return RowBasis(0)
    if method == "full":
        cons = RowBasis(width)
        for v in _full_constraints(G):
            cons.add_row(v)
        return kernel_basis(cons, width)
    if method != "generators":
        raise ValueError(f"unknown method {method!r}")

    t = G.table
    gens, parent, via, order = _generator_tree(G)
    k = len(gens)
    m = (n - 1) * k
    # expr[h][g]: value w(g, h) as a bitmask over the free values w(x, s)
    expr: list[list[int] | None] = [None] * n
    expr[0] = [0] * n
    for j, s in enumerate(gens):
        col = [0] * n
        for x in range(1, n):
            col[x] = 1 << ((x - 1) * k + j)
        expr[s] = col
    for h in order[1:]:
        if parent[h] == 0:
            continue
        hp = int(parent[h])
        s = gens[int(via[h])]
        es, ehp = expr[s], expr[hp]
        col = [0] * n
        for g in range(1, n):
            col[g] = ehp[g] ^ es[int(t[g, hp])] ^ es[hp]
        expr[h] = col

    cons = RowBasis(m)
    for s in gens:
        es = expr[s]
        ts = t[:, s]
        for h in range(1, n):
            ehs = expr[int(ts[h])]
            eh = expr[h]
            th = t[:, h]
            base = es[h]
            for g in range(1, n):
                v = base ^ es[int(th[g])] ^ ehs[g] ^ eh[g]
                if v:
                    cons.add_row(v)
    sols = kernel_basis(cons, m).rows

    out = RowBasis(width)
    for kappa in sols:
        bits = 0
        for h in range(1, n):
            eh = expr[h]
            for g in range(1, n):
                if (eh[g] & kappa).bit_count() & 1:
                    bits |= 1 << ((g - 1) * (n - 1) + h - 1)
        out.add_row(bits)
    return out


def coboundary(G: FiniteGroup, phi: Sequence[int]) -> int:
    """Bits of d(phi)(g, h) = phi(g) + phi(h) + phi(gh) for a 1-cochain with phi(1) = 0."""
    n = G.order
    phi = np.asarray(phi, dtype=np.uint8) & 1
    if n > 1 and phi[0]:
        raise InvariantError("1-cochain must vanish on the identity")
    t = G.table
    arr = phi[:, None] ^ phi[None, :] ^ phi[t]
    arr[0, :] = 0
    arr[:, 0] = 0
    return array_to_bits(arr)


def coboundary_space(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> RowBasis:
    """Span of d(delta_g) over non-identity g."""
    _check_size(G, max_order)
    n = G.order
    out = RowBasis((n - 1) ** 2)
    for g in range(1, n):
        phi = np.zeros(n, dtype=np.uint8)
        phi[g] = 1
        out.add_row(coboundary(G, phi))
    return out


@dataclass
class CocycleBasis:
    """Z^2, B^2 and representatives of a basis of H^2(G; Z/2)."""

    group: FiniteGroup = field(repr=False)
    z2: RowBasis
    b2: RowBasis
    h2_reps: list[Cochain2]

    @property
    def dim(self) -> int:
        return len(self.h2_reps)

    @cached_property
    def packed(self) -> np.ndarray:
        """Array P with bit j of P[g, h] equal to rep_j(g, h)."""
        n = self.group.order
        dtype = np.int64 if self.dim < 63 else object
        out = np.zeros((n, n), dtype=dtype)
        for j, rep in enumerate(self.h2_reps):
            out |= cochain_array(self.group, rep.bits).astype(dtype) << j
        return out

    @cached_property
    def _tagged(self) -> RowBasis:
        w = self.b2.width
        return RowBasis(w + self.dim, (rep.bits | (1 << (w + j)) for j, rep in enumerate(self.h2_reps)))

    def coordinates(self, w) -> int:
        """Coordinates (bitmask over reps) of the class of the cocycle ``w``."""
        bits = w.bits if isinstance(w, Cochain2) else int(w)
        r = self._tagged.reduce(self.b2.reduce(bits))
        if r & ((1 << self.b2.width) - 1):
            raise InvariantError("not a cocycle")
        return r >> self.b2.width

    def combination(self, mask: int) -> Cochain2:
        bits = 0
        for j in iter_bits(mask):
            bits ^= self.h2_reps[j].bits
        return Cochain2.from_int(self.group, bits)


def h2(G: FiniteGroup, method: str = "generators", max_order: int = DEFAULT_MAX_ORDER) -> CocycleBasis:
    """H^2(G; Z/2) with representatives reduced modulo the coboundary basis."""
    z2 = cocycle_space(G, method=method, max_order=max_order)
    b2 = coboundary_space(G, max_order=max_order)
    combined = b2.copy()
    reps = []
    for z in z2.rows:
        if not combined.add_row(z):
            reps.append(Cochain2.from_int(G, b2.reduce(z)))
    if z2.rank - b2.rank != len(reps):
        raise InvariantError("coboundaries are not contained in the cocycles")
    return CocycleBasis(G, z2, b2, reps)


def restrict(w: Cochain2, incl: GroupHom) -> Cochain2:
    """Pull ``w`` back along an injective homomorphism."""
    if not incl.is_injective():
        raise InvariantError("restriction needs an injective map")
    A = incl.source
    arr = w.as_array()
    m = incl.map
    return Cochain2.from_int(A, array_to_bits(arr[m[:, None], m[None, :]]))


def restriction_matrix(
    incl: GroupHom, basis_G: CocycleBasis | None = None, basis_A: CocycleBasis | None = None
) -> list[int]:
    """For each H^2(G) representative, the coordinates of its restriction in H^2(A)."""
    basis_G = basis_G or h2(incl.target)
    basis_A = basis_A or h2(incl.source)
    return [basis_A.coordinates(restrict(rep, incl)) for rep in basis_G.h2_reps]


@dataclass(frozen=True)
class SurfaceCycle:
    """A mod 2 sum of bar 2-simplices [g|h] with vanishing boundary."""

    group: FiniteGroup = field(repr=False)
    simplices: tuple[tuple[int, int], ...]

    def boundary(self) -> dict[int, int]:
        """Mod 2 coefficients of the 1-cells [x], x != 1, in the boundary."""
        cnt: Counter = Counter()
        G = self.group
        for g, h in self.simplices:
            for x in (h, G.mul(g, h), g):
                if x:
                    cnt[x] ^= 1
        return {x: 1 for x, c in cnt.items() if c}

    def __add__(self, other: "SurfaceCycle") -> "SurfaceCycle":
        return SurfaceCycle(self.group, _mod2(self.simplices + other.simplices))


def _mod2(simplices) -> tuple[tuple[int, int], ...]:
    cnt = Counter(s for s in simplices if s[0] and s[1])
    return tuple(sorted(s for s, c in cnt.items() if c & 1))


Letter = tuple[int, int]  # (element, +1 or -1)


def _letters(relator) -> list[Letter]:
    out = []
    for t in relator:
        x, e = (t, 1) if isinstance(t, (int, np.integer)) else t
        if e not in (1, -1):
            raise InvariantError(f"bad letter sign {e}")
        out.append((int(x), int(e)))
    return out


def surface_cycle(G: FiniteGroup, relator) -> SurfaceCycle:
    """Bar 2-cycle of the closed surface whose polygon reads ``relator``.

    Letters are (x, +-1); a bare element counts as (x, +1).  The fan
    [g1...gi | g(i+1)] over the letter values leaves the boundary sum of the
    [g_i]; each inverted letter x^-1 is turned back into the edge [x] by the
    simplex [x | x^-1], after which every edge must occur an even number of times.
    """
    letters = _letters(relator)
    vals = [x if e > 0 else G.inv(x) for x, e in letters]
    if G.prod(vals) != 0:
        raise InvariantError("relator does not multiply to the identity")
    simplices = []
    p = vals[0] if vals else 0
    for g in vals[1:]:
        simplices.append((p, g))
        p = G.mul(p, g)
    simplices += [(x, G.inv(x)) for x, e in letters if e < 0]
    c = SurfaceCycle(G, _mod2(simplices))
    if c.boundary():
        raise InvariantError("edges of the relator are not paired: chain is not a cycle")
    return c


def evaluate(w: Cochain2, c: SurfaceCycle) -> int:
    if w.group is not c.group:
        raise InvariantError("cochain and cycle live on different groups")
    return sum(w(g, h) for g, h in c.simplices) & 1


def evaluate_packed(packed: np.ndarray, c: SurfaceCycle) -> int:
    """Evaluate every representative at once; bit j is the value on rep j."""
    out = 0
    for g, h in c.simplices:
        out ^= int(packed[g, h])
    return out


eval = evaluate  # noqa: A001  short alias
