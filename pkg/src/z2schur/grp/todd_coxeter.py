"""Coset enumeration (HLT strategy) over the trivial subgroup."""

from __future__ import annotations

from collections import deque

import numpy as np

from ..errors import ResourceLimitError
from .group import FiniteGroup
from .presentation import Presentation, free_reduce

DEFAULT_COSET_LIMIT = 1 << 20


def _cyclic_reduce(w: tuple[int, ...]) -> tuple[int, ...]:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def enumerate_cosets(p: Presentation, coset_limit: int = DEFAULT_COSET_LIMIT) -> np.ndarray:
    """Return the compacted coset table, shape (cosets, 2*generators).

    Column ``2k`` is generator k and ``2k+1`` its inverse.  Relators are
    processed in the given order at every coset (HLT), so the result is
    deterministic.  Exceeding ``coset_limit`` defined cosets raises
    ResourceLimitError; that never certifies the group to be infinite.
    """
    ncols = 2 * p.generator_count
    rels = []
    for r in p.relators:
        r = _cyclic_reduce(tuple(r))
        if r:
            rels.append([2 * (t - 1) if t > 0 else 2 * (-t - 1) + 1 for t in r])

    table: list[list[int]] = [[-1] * ncols]
    fwd: list[int] = [0]  # union-find parent; fwd[c] == c means live

    def define(c: int, x: int) -> int:
        n = len(table)
        if n >= coset_limit:
            raise ResourceLimitError(f"coset table exceeds {coset_limit} cosets")
        table.append([-1] * ncols)
        fwd.append(n)
        table[c][x] = n
        table[n][x ^ 1] = c
        return n

    def rep(k: int) -> int:
        root = k
        while fwd[root] != root:
            root = fwd[root]
        while fwd[k] != root:
            fwd[k], k = root, fwd[k]
        return root

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            if a > b:
                a, b = b, a
            fwd[b] = a
            queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                table[d][xi] = -1
                mu, nu = rep(g), rep(d)
                if table[mu][x] >= 0:
                    merge(nu, table[mu][x], queue)
                elif table[nu][xi] >= 0:
                    merge(mu, table[nu][xi], queue)
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu

    def scan_and_fill(alpha: int, w: list[int]) -> None:
        f, i = alpha, 0
        b, j = alpha, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != alpha:
                    coincidence(f, alpha)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    alpha = 0
    while alpha < len(table):
        if fwd[alpha] == alpha:
            for w in rels:
                scan_and_fill(alpha, w)
                if fwd[alpha] != alpha:
                    break
            if fwd[alpha] == alpha:
                row = table[alpha]
                for x in range(ncols):
                    if row[x] < 0:
                        define(alpha, x)
        alpha += 1

    live = [c for c in range(len(table)) if fwd[c] == c]
    new = {c: i for i, c in enumerate(live)}
    return np.array([[new[table[c][x]] for x in range(ncols)] for c in live], dtype=np.int64).reshape(
        len(live), ncols
    )


def from_presentation(
    p: Presentation, coset_limit: int = DEFAULT_COSET_LIMIT, name: str | None = None
) -> FiniteGroup:
    """Enumerate the finite group presented by ``p``.

    Elements are relabelled breadth-first from the identity along the
    generators in order, so indices do not depend on enumeration details.
    ``G.evaluate(word)`` maps free-group words to elements.
    """
    tab = enumerate_cosets(p, coset_limit)
    n = tab.shape[0]
    k = p.generator_count
    # canonical relabelling by BFS over positive generators
    perm = np.full(n, -1, dtype=np.int64)
    perm[0] = 0
    order = [0]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(k):
            d = int(tab[c, 2 * g])
            if perm[d] < 0:
                perm[d] = len(order)
                order.append(d)
                queue.append(d)
    action = np.empty((k, n), dtype=np.int64)
    for g in range(k):
        action[g, perm] = perm[tab[:, 2 * g]]
    gens = [int(action[g, 0]) for g in range(k)]
    G = FiniteGroup(action, gens, gen_names=p.names, name=name)
    G.presentation = p
    return G
