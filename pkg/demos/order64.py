"""The order-64 group <a,b,c | a^2=b^2, aba^-1=b^-1, c^8, aca^-1=c^3, bcb^-1=c^5>.

Shows dim H^2 = 4, the functional rank of each surface family, and an
explicit rewriting of O[a,c] O[ab,c] as a product of Klein-bottle classes.
"""

from z2schur.cohom import evaluate_packed, h2
from z2schur.f2la import RowBasis, to_bitstring
from z2schur.grp import catalog
from z2schur.mult import bogomolov, functional_cycles
from z2schur.relcalc import coordinates, parse_word


def main() -> None:
    G = catalog("smallgroup:64:182")
    B = h2(G)
    rep = bogomolov(G, B)
    print(f"|G| = {G.order}, dim H2 = {B.dim}, dim B0 = {rep.dim_b0} (restrictions: {rep.dim_b0_restrictions})")
    for kind in ("torus", "klein", "rp2"):
        rows = RowBasis(B.dim, [evaluate_packed(B.packed, c) for k, _, c in functional_cycles(G) if k == kind])
        print(f"  {kind:<6} functionals: rank {rows.rank}")
    w = parse_word(G, "O[a,c] O[ab,c]")
    cert = parse_word(G, "U[a,b] U[b,ac] U[ac,bca]")
    print(f"{w}: M-coordinates {to_bitstring(coordinates(w, B), B.dim)}")
    print(f"{cert}: M-coordinates {to_bitstring(coordinates(cert, B), B.dim)}")
    for kind, x, y, _ in cert.letters:
        print(f"  {kind}[{G.label(x)},{G.label(y)}]: x y x^-1 y = {G.label(G.ucomm(x, y))}")


if __name__ == "__main__":
    main()
