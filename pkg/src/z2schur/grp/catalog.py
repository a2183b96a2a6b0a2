"""Named groups with their presentations.

Names: ``cyclic:n``, ``dihedral:n`` (order 2n), ``symmetric:n``,
``quaternion:8``, ``klein4``, ``abelian:n1xn2x...`` and ``smallgroup:64:182``.
"""

from __future__ import annotations

import numpy as np

from ..errors import UsageError
from .group import FiniteGroup
from .perms import from_permutations
from .presentation import Presentation, default_names
from .todd_coxeter import from_presentation


def _parse(name: str) -> tuple[str, list[int]]:
    parts = name.strip().lower().split(":")
    kind = parts[0]
    try:
        if kind == "abelian":
            if len(parts) != 2:
                raise ValueError
            args = [int(t) for t in parts[1].split("x")]
        else:
            args = [int(t) for t in parts[1:]]
    except ValueError:
        raise UsageError(f"cannot parse group name {name!r}") from None
    if any(a < 1 for a in args):
        raise UsageError(f"group parameters must be positive: {name!r}")
    return kind, args


def catalog_presentations(name: str) -> list[Presentation]:
    """Every presentation the catalog knows for ``name``; the first is the primary one."""
    kind, args = _parse(name)
    if kind == "cyclic" and len(args) == 1:
        n = args[0]
        return [Presentation.from_strings("a", [f"a^{n}"]),
                Presentation.from_strings("ab", [f"a^{n}", "ab^-1"])]
    if kind == "dihedral" and len(args) == 1:
        n = args[0]
        return [Presentation.from_strings("ab", ["a^2", "b^2", "ab" * n]),
                Presentation.from_strings("rs", [f"r^{n}", "s^2", "srsr"])]
    if kind == "symmetric" and len(args) == 1:
        return _symmetric_presentations(args[0])
    if kind == "quaternion" and args == [8]:
        return [Presentation.from_strings("ab", ["a^4", "a^2b^-2", "bab^-1a"]),
                Presentation.from_strings("xy", ["x^2y^-2", "x^2" + "y^-1x^-1" * 2])]
    if kind == "klein4" and not args:
        return [Presentation.from_strings("ab", ["a^2", "b^2", "abab"]),
                Presentation.from_strings("ab", ["a^2", "b^2", "aba^-1b^-1"])]
    if kind == "abelian" and args:
        names = default_names(len(args))
        rels = [f"{x}^{n}" for x, n in zip(names, args)]
        rels += [f"{x}{y}{x}^-1{y}^-1" for i, x in enumerate(names) for y in names[i + 1:]]
        out = [Presentation.from_strings(names, rels)]
        if len(args) > 1:
            rels2 = [f"{x}^{n}" for x, n in zip(names, args)]
            rels2 += [f"{y}{x}{y}^-1{x}^-1" for i, x in enumerate(names) for y in names[i + 1:]]
            out.append(Presentation.from_strings(names, rels2))
        return out
    if kind == "smallgroup" and args == [64, 182]:
        return [Presentation.from_strings("abc", ["a^2b^-2", "aba^-1b", "c^8", "aca^-1c^-3", "bcb^-1c^-5"]),
                Presentation.from_strings("abc", ["a^4", "a^2b^-2", "bab^-1a", "c^8", "aca^-1c^-3", "bcb^-1c^-5"])]
    raise UsageError(f"unknown catalog group {name!r}")


def _symmetric_presentations(n: int) -> list[Presentation]:
    if n == 1:
        return [Presentation.from_strings(["a"], ["a"])]
    names = [f"s{i}" for i in range(1, n)]
    rels = [f"{s}^2" for s in names]
    for i in range(n - 2):
        rels.append((names[i] + names[i + 1]) * 3)
    for i in range(n - 1):
        for j in range(i + 2, n - 1):
            rels.append((names[i] + names[j]) * 2)
    cox = Presentation.from_strings(names, rels)
    # a = (1 2), b = (1 2 ... n)
    moore = ["a^2", f"b^{n}", "ab" * (n - 1)]
    if n > 2:
        moore.append("ab^-1ab" * 3)
    for j in range(2, n // 2 + 1):
        moore.append(f"ab^-{j}ab^{j}" * 2)
    return [cox, Presentation.from_strings("ab", moore)]


def catalog(name: str, coset_limit: int = 1 << 20) -> FiniteGroup:
    """Build a named group; its primary presentation is kept in ``G.presentation``."""
    kind, args = _parse(name)
    pres = catalog_presentations(name)
    if kind == "symmetric":
        n = args[0]
        gens = []
        for i in range(n - 1):
            p = np.arange(n)
            p[i], p[i + 1] = i + 1, i
            gens.append(p)
        G = from_permutations(gens, gen_names=[f"s{i}" for i in range(1, n)], name=name)
        G.presentation = pres[0]
        return G
    G = from_presentation(pres[0], coset_limit=coset_limit, name=name)
    if kind == "dihedral":
        G.aliases["c"] = G.mul(G.gens[0], G.gens[1])
    return G


def abelian_names(max_order: int) -> list[str]:
    """One catalog name per isomorphism type of abelian group of order <= max_order.

    Types are listed by invariant factors n1 | n2 | ... written largest first.
    """
    out = []
    for order in range(1, max_order + 1):
        for facs in _invariant_factor_lists(order):
            out.append("abelian:" + "x".join(str(f) for f in facs))
    return out


def _invariant_factor_lists(n: int) -> list[list[int]]:
    # sequences d1 >= d2 >= ... with d_{i+1} | d_i and product n
    res: list[list[int]] = []

    def rec(remaining: int, prev: int | None, acc: list[int]):
        if remaining == 1:
            res.append(acc[:] if acc else [1])
            return
        for d in range(remaining, 1, -1):
            if remaining % d:
                continue
            if prev is not None and prev % d:
                continue
            acc.append(d)
            rec(remaining // d, d, acc)
            acc.pop()

    rec(n, None, [])
    return res
