"""Finite groups: construction, presentations, subgroups and the named catalog."""

from .catalog import abelian_names, catalog, catalog_presentations
from .group import DENSE_LIMIT, FiniteGroup, GroupHom, from_table
from .perms import format_cycles, from_permutations, parse_cycles, read_permutations
from .presentation import Presentation, parse_presentation
from .subgroups import (
    abelianization_mod2,
    closure,
    commuting_pairs,
    involutions,
    kernel,
    klein_pairs,
    quotient,
    squares_subgroup,
    subgroup_generated,
)
from .todd_coxeter import DEFAULT_COSET_LIMIT, enumerate_cosets, from_presentation

__all__ = [
    "DENSE_LIMIT",
    "DEFAULT_COSET_LIMIT",
    "FiniteGroup",
    "GroupHom",
    "Presentation",
    "abelian_names",
    "abelianization_mod2",
    "catalog",
    "catalog_presentations",
    "closure",
    "commuting_pairs",
    "enumerate_cosets",
    "format_cycles",
    "from_permutations",
    "from_presentation",
    "from_table",
    "involutions",
    "kernel",
    "klein_pairs",
    "parse_cycles",
    "parse_presentation",
    "quotient",
    "read_permutations",
    "squares_subgroup",
    "subgroup_generated",
]
