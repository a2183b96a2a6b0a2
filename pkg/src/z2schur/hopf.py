"""M(G; Z/2) from a presentation, through the cover F/[F,R]R^2.

For a presentation G = F/R the group F0 = F/[F,R]R^2 is finite, R0 = R/[F,R]R^2
is central of exponent 2 and (S(F) cap R)/[F,R]R^2 = S(F0) cap R0 is the
multiplier.  The cover is presented by the relators r^2 and [x_k, r].

A second, purely linear route reads dim R0 off the relation module: R is free
on the Schreier generators of a spanning tree of the Cayley graph, and R0 is the
G-coinvariant quotient of R/R^2[R,R].  Since R/[F,R] is Z^n plus the finite
Schur multiplier, dim M(G; Z/2) = dim R0 - n + dim G/S(G).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantError
from .f2la import RowBasis
from .grp import DEFAULT_COSET_LIMIT, FiniteGroup, GroupHom, Presentation, from_presentation
from .grp.presentation import commutator
from .grp.subgroups import closure

DEFAULT_COVER_LIMIT = 1 << 15


def cover_presentation(p: Presentation) -> Presentation:
    """<x | r_i^2, [x_k, r_i]>."""
    rels = []
    for r in p.relators:
        rels.append(tuple(r) + tuple(r))
    for r in p.relators:
        for k in range(p.generator_count):
            rels.append(commutator((k + 1,), tuple(r)))
    return Presentation(p.generator_count, tuple(rels), p.names)


@dataclass
class SquareCover:
    base_presentation: Presentation
    base: FiniteGroup = field(repr=False)
    cover: FiniteGroup = field(repr=False)
    proj: GroupHom = field(repr=False)
    kernel_r0: list[int] = field(repr=False)
    parity: np.ndarray = field(repr=False)

    @property
    def r0_dim(self) -> int:
        return int(math.log2(len(self.kernel_r0)))

    def check(self) -> None:
        F0 = self.cover
        if F0.order != self.base.order * len(self.kernel_r0):
            raise InvariantError("|F0| != |G| |R0|")
        if len(self.kernel_r0) > 1 << len(self.base_presentation.relators):
            raise InvariantError("R0 is larger than 2^(number of relators)")
        for r in self.kernel_r0:
            if F0.mul(r, r) != 0:
                raise InvariantError("R0 element does not square to 1")
            for k, x in enumerate(F0.gens):
                if int(F0.gen_action[k, r]) != F0.mul(x, r):
                    raise InvariantError("R0 is not central")


def _projection(cover: FiniteGroup, base: FiniteGroup) -> np.ndarray:
    proj = np.zeros(cover.order, dtype=np.int64)
    for y in cover.bfs_order[1:]:
        proj[y] = base.gen_action[cover.parent_gen[y], proj[cover.parent[y]]]
    return proj


def _parity(G: FiniteGroup) -> np.ndarray:
    """Exponent-sum parity of each element, as a bitmask over generators."""
    par = np.zeros(G.order, dtype=np.int64)
    for y in G.bfs_order[1:]:
        par[y] = par[G.parent[y]] ^ (1 << int(G.parent_gen[y]))
    return par


def square_cover(
    p: Presentation, coset_limit: int = DEFAULT_COSET_LIMIT, base: FiniteGroup | None = None
) -> SquareCover:
    base = base or from_presentation(p, coset_limit)
    F0 = from_presentation(cover_presentation(p), coset_limit, name="F0")
    proj = _projection(F0, base)
    r0 = [int(y) for y in np.nonzero(proj == 0)[0]]
    sc = SquareCover(p, base, F0, GroupHom(F0, base, proj), r0, _parity(F0))
    sc.check()
    return sc


def _relator_parity_rank(p: Presentation) -> int:
    rb = RowBasis(p.generator_count)
    for r in p.relators:
        v = 0
        for t in r:
            v ^= 1 << (abs(t) - 1)
        rb.add_row(v)
    return rb.rank


def coinvariant_dims(p: Presentation, base: FiniteGroup | None = None) -> tuple[int, int]:
    """(dim R0, dim M(G; Z/2)) by linear algebra over the Cayley graph of G."""
    G = base or from_presentation(p)
    n, k = G.order, p.generator_count
    act = G.gen_action
    # edges (c, g) off the BFS tree are the Schreier generators
    edge = -np.ones((n, k), dtype=np.int64)
    nt = 0
    for c in range(n):
        for g in range(k):
            d = int(act[g, c])
            if not (G.parent[d] == c and G.parent_gen[d] == g and d != 0):
                edge[c, g] = nt
                nt += 1
    if nt != 1 + (k - 1) * n:
        raise InvariantError("unexpected number of Schreier generators")
    inv_act = np.argsort(act, axis=1)

    def trace(c: int, r) -> int:
        start, v = c, 0
        for t in r:
            g = abs(t) - 1
            if t > 0:
                e = edge[c, g]
                c = int(act[g, c])
            else:
                c = int(inv_act[g, c])
                e = edge[c, g]
            if e >= 0:
                v ^= 1 << int(e)
        if c != start:
            raise InvariantError("relator does not close in the Cayley graph")
        return v

    w = RowBasis(nt)
    for r in p.relators:
        base_path = trace(0, r)
        for c in range(1, n):
            w.add_row(trace(c, r) ^ base_path)
    dim_r0 = nt - w.rank
    d1 = k - _relator_parity_rank(p)
    return dim_r0, dim_r0 - k + d1


@dataclass
class HopfResult:
    dim: int
    generator_words: list[str]
    method: str  # "cover" or "coinvariants"
    dim_r0: int
    cover_order: int | None
    linear_dim: int


def _span_basis(F0: FiniteGroup, elems: list[int]) -> list[int]:
    """A minimal generating set of an elementary abelian subgroup given by all its elements."""
    basis: list[int] = []
    span = {0}
    for g in elems:
        if g not in span:
            basis.append(g)
            span |= {F0.mul(s, g) for s in span}
    if len(span) != len(elems):
        raise InvariantError("subset is not a subgroup")
    return basis


def hopf_multiplier(
    p: Presentation,
    coset_limit: int = DEFAULT_COSET_LIMIT,
    cover_limit: int = DEFAULT_COVER_LIMIT,
) -> HopfResult:
    """dim (S(F) cap R)/[F,R]R^2 together with words for a basis.

    The cover is enumerated when its predicted order is within ``cover_limit``;
    otherwise only the linear count is returned.
    """
    base = from_presentation(p, coset_limit)
    dim_r0, linear = coinvariant_dims(p, base)
    predicted = base.order << dim_r0
    if predicted > cover_limit:
        return HopfResult(linear, [], "coinvariants", dim_r0, None, linear)
    sc = square_cover(p, max(coset_limit, 4 * predicted), base)
    F0 = sc.cover
    if F0.order != predicted:
        raise InvariantError(f"cover has order {F0.order}, expected {predicted}")
    # S(F0) is the kernel of the exponent-parity map because [F,R]R^2 lies in S(F)
    meet = [r for r in sc.kernel_r0 if sc.parity[r] == 0]
    if F0.table is not None:
        sq = set(F0.table[np.arange(F0.order), np.arange(F0.order)].tolist())
        s_f0 = set(closure(F0, sorted(sq)))
        if s_f0 != set(np.nonzero(sc.parity == 0)[0].tolist()):
            raise InvariantError("square subgroup disagrees with the parity kernel")
    dim = int(math.log2(len(meet)))
    words = [p.format_word([t + 1 for t in F0.word(g)]) for g in _span_basis(F0, meet)]
    return HopfResult(dim, words, "cover", dim_r0, F0.order, linear)
