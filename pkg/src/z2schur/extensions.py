"""Central extensions of a finite group by an elementary abelian 2-group.

An extension is stored through its cocycle table ``omega`` whose entry
``omega[g, h]`` is a bitmask in F2^d.  The total group has elements
``(a, g)`` with product ``(a, g)(b, h) = (a + b + omega(g, h), gh)``; the pair
``(a, g)`` has index ``(g << d) | a`` so the identity is 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .cohom import Cochain2, CocycleBasis, array_to_bits, coboundary_space, is_cocycle
from .errors import InvariantError, ResourceLimitError
from .f2la import RowBasis
from .grp import DENSE_LIMIT, FiniteGroup, GroupHom, from_table, quotient
from .grp.subgroups import closure

Token = tuple[int, int]  # (element, +1 or -1)


@dataclass
class SquareCentralExtension:
    """1 -> F2^d -> E -> G -> 1 with the fiber central and of exponent 2."""

    base: FiniteGroup = field(repr=False)
    fiber_dim: int
    omega: np.ndarray = field(repr=False)
    total: FiniteGroup = field(repr=False)
    proj: GroupHom = field(repr=False)

    def element(self, a: int, g: int) -> int:
        return (int(g) << self.fiber_dim) | int(a)

    def split(self, e: int) -> tuple[int, int]:
        """Index -> (fiber bits, base element)."""
        return e & ((1 << self.fiber_dim) - 1), e >> self.fiber_dim

    def section(self, g: int) -> int:
        return self.element(0, g)

    def fiber(self) -> list[int]:
        return [self.element(a, 0) for a in range(1 << self.fiber_dim)]

    def check(self) -> None:
        """Group axioms plus the square-central conditions."""
        E = self.total
        E.check_axioms()
        self.proj.check()
        t = E.table
        for z in self.fiber():
            if not (t[z] == t[:, z]).all():
                raise InvariantError("fiber element is not central")
            if t[z, z] != 0:
                raise InvariantError("fiber element does not square to 1")
        if any(self.proj(self.section(g)) != g for g in range(self.base.order)):
            raise InvariantError("section is not a right inverse of the projection")


def extension_from_table(G: FiniteGroup, omega: np.ndarray, fiber_dim: int, check: bool = True) -> SquareCentralExtension:
    omega = np.asarray(omega, dtype=np.int64)
    n = G.order
    d = fiber_dim
    size = n << d
    if size > DENSE_LIMIT:
        raise ResourceLimitError(f"extension of order {size} exceeds the dense limit {DENSE_LIMIT}")
    if G.table is None:
        raise ResourceLimitError("base group needs a dense table")
    if (omega[0] != 0).any() or (omega[:, 0] != 0).any():
        raise InvariantError("cocycle is not normalized")
    idx = np.arange(size, dtype=np.int64)
    a, g = idx & ((1 << d) - 1), idx >> d
    prod_g = G.table[g[:, None], g[None, :]]
    prod_a = a[:, None] ^ a[None, :] ^ omega[g[:, None], g[None, :]]
    table = (prod_g << d) | prod_a
    labels = [G.label(int(gg)) if not aa else f"{G.label(int(gg))}*z{aa}" for aa, gg in zip(a, g)]
    E = from_table(table, name=f"E({G.name or 'G'})", labels=labels)
    E = _regenerate(E, G, d)
    proj = GroupHom(E, G, g)
    ext = SquareCentralExtension(G, d, omega, E, proj)
    if check:
        ext.check()
    return ext


def _regenerate(E: FiniteGroup, G: FiniteGroup, d: int) -> FiniteGroup:
    """Keep E's indices but use the lifts of G's generators plus the fiber basis as generators."""
    gens = [g << d for g in G.gens] + [1 << j for j in range(d)]
    inner = closure(E, gens)
    if len(inner) != E.order:
        return E
    action = E.table[:, gens].T.copy()
    names = list(G.gen_names) + [f"z{j + 1}" for j in range(d)]
    F = FiniteGroup(action, gens, gen_names=names, labels=E.labels, name=E.name)
    F.table = E.table
    F._inverse = F._build_inverse()
    return F


def extension_from_cocycle(G: FiniteGroup, w: Cochain2, check: bool = True) -> SquareCentralExtension:
    """E_w with fiber F2 and product (a, g)(b, h) = (a + b + w(g, h), gh)."""
    arr = w.as_array()
    if not is_cocycle(G, arr):
        raise InvariantError("cochain is not a cocycle")
    return extension_from_table(G, arr.astype(np.int64), 1, check=check)


def lift_tokens(G: FiniteGroup, omega: np.ndarray, tokens: Iterable[Token], start=None):
    """Multiply section lifts; returns (fiber bits, base element).

    ``start`` may be a pair of arrays, in which case everything is vectorized
    over instances and tokens may carry array payloads.
    """
    t = G.table
    inv = G.inverse
    a, g = (0, 0) if start is None else start
    for x, e in tokens:
        if e > 0:
            a = a ^ omega[g, x]
            g = t[g, x]
        else:
            xi = inv[x]
            a = a ^ omega[x, xi] ^ omega[g, xi]
            g = t[g, xi]
    return a, g


def word_fiber(G: FiniteGroup, omega: np.ndarray, tokens: Iterable[Token]) -> int:
    """Fiber value of a word whose base image is the identity."""
    a, g = lift_tokens(G, omega, tokens)
    if int(g) != 0:
        raise InvariantError("word does not lie in the kernel of the canonical map")
    return int(a)


def word_image(w, E: SquareCentralExtension) -> int:
    """Image of a word in E using section lifts; an element index of ``E.total``."""
    a, g = lift_tokens(E.base, E.omega, w.tokens())
    return E.element(int(a), int(g))


def is_split(E: SquareCentralExtension, b2: RowBasis | None = None) -> bool:
    """True when every fiber coordinate of the cocycle is a coboundary."""
    G = E.base
    b2 = b2 or coboundary_space(G)
    for j in range(E.fiber_dim):
        coord = ((E.omega >> j) & 1).astype(np.uint8)
        if array_to_bits(coord) not in b2:
            return False
    return True


def has_section(E: SquareCentralExtension) -> bool:
    """Brute-force search for a homomorphic section of the projection."""
    G = E.base
    d = E.fiber_dim
    gens = [g for g in dict.fromkeys(G.gens) if g]
    t = E.total.table
    for choice in itertools.product(range(1 << d), repeat=len(gens)):
        lifts = [E.element(a, g) for a, g in zip(choice, gens)]
        if _extends(G, t, gens, lifts):
            return True
    return False


def _extends(G: FiniteGroup, t: np.ndarray, gens: Sequence[int], lifts: Sequence[int]) -> bool:
    """Does gens[k] -> lifts[k] extend to a homomorphism G -> E?"""
    s = {0: 0}
    queue = [0]
    for x in queue:
        for g, l in zip(gens, lifts):
            y = G.mul(x, g)
            v = int(t[s[x], l])
            if y in s:
                if s[y] != v:
                    return False
            else:
                s[y] = v
                queue.append(y)
    return True


def transgression(
    E: FiniteGroup, M: Sequence[int], phi: Mapping[int, int] | Callable[[int], int], k: int
) -> SquareCentralExtension:
    """Push the extension M -> E -> E/M out along phi: M -> F2^k.

    ``M`` is a central subgroup of exponent 2.  The result is the extension of
    E/M by F2^k isomorphic to (F2^k x E)/{(phi(m), m^-1)}, described by the cocycle
    phi(e_p e_q e_pq^-1) for coset representatives e_p with e_1 = 1.
    """
    M = sorted(set(int(m) for m in M))
    f = phi if callable(phi) else (lambda m, _p=dict(phi): int(_p[m]))
    t = E.table
    Mset = set(M)
    for m in M:
        if t[m, m] != 0 or not (t[m] == t[:, m]).all():
            raise InvariantError("M must be central of exponent 2")
        for m2 in M:
            if int(t[m, m2]) not in Mset:
                raise InvariantError("M is not closed")
            if f(int(t[m, m2])) != f(m) ^ f(m2):
                raise InvariantError("phi is not a homomorphism")
    Q, proj, reps = quotient(E, M)
    inv = E.inverse
    nq = Q.order
    omega = np.zeros((nq, nq), dtype=np.int64)
    for p in range(nq):
        for q in range(nq):
            m = int(t[t[reps[p], reps[q]], inv[reps[Q.mul(p, q)]]])
            omega[p, q] = f(m)
    return extension_from_table(Q, omega, k)


def pushout_group(E: FiniteGroup, M: Sequence[int], phi: Mapping[int, int] | Callable[[int], int], k: int) -> FiniteGroup:
    """(F2^k x E)/K with K = {(phi(m), m^-1)}, built directly; used as a cross-check."""
    f = phi if callable(phi) else (lambda m, _p=dict(phi): int(_p[m]))
    n = E.order
    size = n << k
    idx = np.arange(size, dtype=np.int64)
    a, e = idx & ((1 << k) - 1), idx >> k
    table = ((E.table[e[:, None], e[None, :]]) << k) | (a[:, None] ^ a[None, :])
    P = from_table(table)
    inv = E.inverse
    K = [(int(inv[m]) << k) | f(int(m)) for m in M]
    Qp, _, _ = quotient(P, K)
    return Qp


def cocycle_of_bit(E: SquareCentralExtension, j: int) -> Cochain2:
    return Cochain2.from_int(E.base, array_to_bits(((E.omega >> j) & 1).astype(np.uint8)))


def packed_extension(basis: CocycleBasis, check: bool = False) -> SquareCentralExtension:
    """The extension whose fiber coordinates are all H^2 representatives at once."""
    return extension_from_table(basis.group, basis.packed, basis.dim, check=check)
