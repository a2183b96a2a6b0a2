"""M(G; Z/2) and the unoriented Bogomolov multiplier B0(G; Z/2).

B0 is handled through its dual: the annihilator inside H^2 of the classes of
tori, Klein bottles and projective planes.  A class of a word or surface is
trivial in B0 exactly when it pairs to zero with every annihilator vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohom import CocycleBasis, SurfaceCycle, evaluate_packed, h2, restriction_matrix, surface_cycle
from .f2la import RowBasis, intersect, kernel_basis, to_bitstring
from .grp import FiniteGroup, closure, commuting_pairs, involutions, klein_pairs, subgroup_generated
from .relcalc import UWord, coordinates


def schur_unoriented(G: FiniteGroup, basis: CocycleBasis | None = None) -> tuple[int, CocycleBasis]:
    """dim M(G; Z/2) = dim H^2(G; Z/2), with the cocycle basis."""
    basis = basis or h2(G)
    return basis.dim, basis


def torus_relator(G: FiniteGroup, x: int, y: int) -> list[tuple[int, int]]:
    return [(x, 1), (y, 1), (x, -1), (y, -1)]


def klein_relator(G: FiniteGroup, x: int, y: int) -> list[tuple[int, int]]:
    return [(x, 1), (y, 1), (x, -1), (y, 1)]


def rp2_relator(G: FiniteGroup, z: int) -> list[tuple[int, int]]:
    return [(z, 1), (z, 1)]


def functional_cycles(G: FiniteGroup) -> list[tuple[str, tuple[int, ...], SurfaceCycle]]:
    """Every torus, Klein bottle and projective plane cycle of G."""
    out = []
    for x, y in commuting_pairs(G):
        out.append(("torus", (x, y), surface_cycle(G, torus_relator(G, x, y))))
    for x, y in klein_pairs(G):
        out.append(("klein", (x, y), surface_cycle(G, klein_relator(G, x, y))))
    for z in involutions(G):
        out.append(("rp2", (z,), surface_cycle(G, rp2_relator(G, z))))
    return out


@dataclass
class MultiplierReport:
    group: str
    dim_h2: int
    dim_b0: int
    functional_rank: int
    annihilator: RowBasis = field(repr=False)
    dim_b0_restrictions: int | None = None
    routes_agree: bool | None = None
    basis: CocycleBasis | None = field(default=None, repr=False)

    @property
    def annihilator_basis(self) -> list[int]:
        return self.annihilator.rows

    def pair(self, m_coords: int) -> int:
        """Coordinates over the annihilator basis of a class given by its H^2 pairing vector."""
        out = 0
        for i, c in enumerate(self.annihilator_basis):
            if (c & m_coords).bit_count() & 1:
                out |= 1 << i
        return out

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "dim_h2": self.dim_h2,
            "dim_b0": self.dim_b0,
            "dim_b0_restrictions": self.dim_b0_restrictions,
            "functional_rank": self.functional_rank,
            "routes_agree": self.routes_agree,
            "annihilator_basis": [to_bitstring(c, self.dim_h2) for c in self.annihilator_basis],
        }


def functional_matrix(G: FiniteGroup, basis: CocycleBasis) -> RowBasis:
    """Row space of the torus, Klein and projective functionals on H^2."""
    rows = RowBasis(basis.dim)
    packed = basis.packed
    for _, _, c in functional_cycles(G):
        rows.add_row(evaluate_packed(packed, c))
    return rows


def bogomolov_by_functionals(G: FiniteGroup, basis: CocycleBasis | None = None) -> MultiplierReport:
    basis = basis or h2(G)
    rows = functional_matrix(G, basis)
    ann = kernel_basis(rows, basis.dim)
    return MultiplierReport(
        group=G.name or f"order {G.order}",
        dim_h2=basis.dim,
        dim_b0=basis.dim - rows.rank,
        functional_rank=rows.rank,
        annihilator=ann,
        basis=basis,
    )


def restriction_subgroups(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Generators of the distinct subgroups <z> (involutions) and <x,y> (commuting and Klein pairs)."""
    seen: dict[frozenset, tuple[int, ...]] = {}
    cands: list[tuple[int, ...]] = [(z,) for z in involutions(G)]
    cands += [p for p in commuting_pairs(G) if p[0] < p[1]]
    cands += klein_pairs(G)
    for gens in cands:
        gens = tuple(g for g in gens if g)
        if not gens:
            continue
        key = frozenset(closure(G, gens))
        seen.setdefault(key, gens)
    return [seen[k] for k in sorted(seen, key=lambda s: (len(s), sorted(s)))]


def restriction_kernel(G: FiniteGroup, gens, basis: CocycleBasis) -> RowBasis:
    """Classes of H^2(G) (as masks over basis reps) that restrict to zero on <gens>."""
    d = basis.dim
    A, incl = subgroup_generated(G, list(gens))
    if A.order == G.order:
        return RowBasis(d)
    hA = h2(A)
    mat = restriction_matrix(incl, basis, hA)
    rows = []
    for i in range(hA.dim):
        r = 0
        for j, m in enumerate(mat):
            if (m >> i) & 1:
                r |= 1 << j
        rows.append(r)
    return kernel_basis(rows, d)


def bogomolov_by_restrictions(G: FiniteGroup, basis: CocycleBasis | None = None) -> tuple[int, RowBasis]:
    """Intersection of the restriction kernels; returns (dimension, subspace)."""
    basis = basis or h2(G)
    d = basis.dim
    if d == 0:
        return 0, RowBasis(0)
    current = RowBasis(d, [1 << j for j in range(d)])
    for gens in restriction_subgroups(G):
        current = intersect([current, restriction_kernel(G, gens, basis)])
        if current.rank == 0:
            break
    return current.rank, current


def bogomolov(G: FiniteGroup, basis: CocycleBasis | None = None) -> MultiplierReport:
    """Both routes, with the agreement flag set."""
    rep = bogomolov_by_functionals(G, basis)
    dim_r, sub = bogomolov_by_restrictions(G, rep.basis)
    rep.dim_b0_restrictions = dim_r
    rep.routes_agree = dim_r == rep.dim_b0 and sub == rep.annihilator
    return rep


def class_in_b0(obj, G: FiniteGroup | None = None, report: MultiplierReport | None = None) -> tuple[int, bool]:
    """(coordinates over the annihilator basis, trivial?) for a word in K' or a surface."""
    if isinstance(obj, UWord):
        G = G or obj.group
        report = report or bogomolov_by_functionals(G)
        m = coordinates(obj, report.basis)
    else:
        G = G or obj.group
        report = report or bogomolov_by_functionals(G)
        m = evaluate_packed(report.basis.packed, surface_cycle(G, obj.relator()))
    c = report.pair(m)
    return c, c == 0


def m_coordinates(obj, basis: CocycleBasis) -> int:
    """Pairing vector with the H^2 basis, by extensions for words and by evaluation for surfaces."""
    if isinstance(obj, UWord):
        return coordinates(obj, basis)
    return evaluate_packed(basis.packed, surface_cycle(basis.group, obj.relator()))
