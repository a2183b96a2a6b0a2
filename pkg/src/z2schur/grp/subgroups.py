"""Element scans and subgroup machinery."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvariantError
from .group import FiniteGroup, GroupHom, from_table


def _table(G: FiniteGroup) -> np.ndarray:
    if G.table is None:
        raise InvariantError(f"{G!r} has no dense table")
    return G.table


def squares(G: FiniteGroup) -> np.ndarray:
    t = _table(G)
    idx = np.arange(G.order)
    return t[idx, idx]


def involutions(G: FiniteGroup) -> list[int]:
    """Elements z with z^2 = 1 and z != 1, ascending."""
    sq = squares(G)
    return [int(z) for z in np.nonzero(sq == 0)[0] if z != 0]


def commuting_pairs(G: FiniteGroup) -> list[tuple[int, int]]:
    t = _table(G)
    xs, ys = np.nonzero(t == t.T)
    return list(zip(xs.tolist(), ys.tolist()))


def klein_pairs(G: FiniteGroup) -> list[tuple[int, int]]:
    """Pairs with {x, y} = x y x^-1 y = 1, i.e. x y x^-1 = y^-1."""
    t = _table(G)
    inv = G.inverse
    n = G.order
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    u = t[t[t[x, y], inv[x]], y]
    xs, ys = np.nonzero(u == 0)
    return list(zip(xs.tolist(), ys.tolist()))


def closure(G: FiniteGroup, elems: Iterable[int]) -> list[int]:
    """Elements of the subgroup generated by ``elems`` in breadth-first discovery order."""
    gens: list[int] = []
    members = [0]
    inside = {0}
    for g in elems:
        g = int(g)
        if g in inside:
            continue
        gens.append(g)
        # re-expand everything with the enlarged generator list
        frontier = list(members)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = G.mul(x, s)
                    if y not in inside:
                        inside.add(y)
                        members.append(y)
                        nxt.append(y)
            frontier = nxt
    return members


def subgroup_generated(G: FiniteGroup, elems: Sequence[int], name: str | None = None):
    """The subgroup generated by ``elems`` as its own group, with the inclusion map.

    Subgroup indices follow breadth-first order from the given generators.
    """
    gens = [int(g) for g in elems if int(g) != 0]
    members = [0]
    index = {0: 0}
    i = 0
    rows: list[list[int]] = [[] for _ in gens]
    while i < len(members):
        x = members[i]
        for k, s in enumerate(gens):
            y = G.mul(x, s)
            j = index.get(y)
            if j is None:
                j = len(members)
                index[y] = j
                members.append(y)
            rows[k].append(j)
        i += 1
    action = np.array(rows, dtype=np.int64).reshape(len(gens), len(members))
    labels = [G.label(m) for m in members]
    H = FiniteGroup(action, [int(action[k, 0]) for k in range(len(gens))],
                    gen_names=[G.label(s) for s in gens], labels=labels, name=name)
    if G.perms is not None:
        H.perms = G.perms[members]
    return H, GroupHom(H, G, np.array(members, dtype=np.int64))


def squares_subgroup(G: FiniteGroup):
    """S(G), the subgroup generated by all squares, with its inclusion."""
    sq = sorted(set(squares(G).tolist()))
    return subgroup_generated(G, _reduce_generators(G, sq), name="S(G)")


def _reduce_generators(G: FiniteGroup, elems: Sequence[int]) -> list[int]:
    kept: list[int] = []
    inside = {0}
    for g in elems:
        if g not in inside:
            kept.append(g)
            inside = set(closure(G, kept))
    return kept


def abelianization_mod2(G: FiniteGroup) -> int:
    """dim over F2 of G/[G,G]G^2, which equals G/S(G)."""
    S, _ = squares_subgroup(G)
    index = G.order // S.order
    d = int(round(math.log2(index)))
    if 1 << d != index:
        raise InvariantError("G/S(G) is not a 2-group")
    return d


def kernel(h: GroupHom):
    """Kernel of ``h`` as a subgroup of its source."""
    ker = [int(g) for g in np.nonzero(h.map == 0)[0]]
    return subgroup_generated(h.source, _reduce_generators(h.source, ker), name="ker")


def quotient(G: FiniteGroup, normal: Iterable[int]):
    """G/N for a normal subgroup N given by its elements; returns (Q, projection).

    Cosets are indexed by their smallest element index, so the identity coset is 0.
    """
    N = sorted(set(int(x) for x in normal))
    t = _table(G)
    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset_of[g] < 0:
            members = t[g, N]
            if (coset_of[members] >= 0).any():
                raise InvariantError("subgroup is not normal")
            coset_of[members] = len(reps)
            reps.append(g)
    # normality: left cosets coincide with right cosets
    for g in reps:
        if len(set(coset_of[t[N, g]].tolist())) != 1:
            raise InvariantError("subgroup is not normal")
    reps_arr = np.array(reps, dtype=np.int64)
    qtab = coset_of[t[reps_arr[:, None], reps_arr[None, :]]]
    Q = from_table(qtab, labels=[G.label(r) + "N" if r else "1" for r in reps])
    return Q, GroupHom(G, Q, coset_of), reps_arr
