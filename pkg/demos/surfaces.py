"""Extendability verdicts for a few surfaces with monodromy in D8 and Z3."""

from z2schur.cob import is_extendable, parse_surface
from z2schur.grp import catalog
from z2schur.mult import bogomolov


def main() -> None:
    cases = [
        ("dihedral:4", "nonorientable k=1 z=(a)"),
        ("dihedral:4", "orientable g=1 pairs=(c,c^2)"),
        ("dihedral:4", "nonorientable k=2 z=(a;b)"),
        ("cyclic:3", "nonorientable k=1 z=(1)"),
        ("cyclic:3", "nonorientable k=2 z=(a;a^2)"),
    ]
    for name, text in cases:
        G = catalog(name)
        v = is_extendable(parse_surface(G, text), bogomolov(G))
        print(f"{name:<12} {text:<34} {v.verdict} (chi mod 2 = {v.chi_mod2})")


if __name__ == "__main__":
    main()
