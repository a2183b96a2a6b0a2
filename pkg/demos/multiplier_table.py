"""Print dim H^2(G; Z/2), the Hopf count and dim B0(G; Z/2) for catalog groups."""

import time

from z2schur.cli import catalog_names
from z2schur.cohom import h2
from z2schur.grp import catalog, catalog_presentations
from z2schur.hopf import hopf_multiplier
from z2schur.mult import bogomolov


def main(max_order: int = 64) -> None:
    print(f"{'group':<22}{'order':>6}{'H2':>4}{'hopf':>6}{'B0':>4}  agree")
    for name in catalog_names(max_order):
        t0 = time.perf_counter()
        G = catalog(name)
        B = h2(G)
        hopf = hopf_multiplier(catalog_presentations(name)[0]).dim if G.order <= 64 else "-"
        rep = bogomolov(G, B)
        dt = time.perf_counter() - t0
        print(f"{name:<22}{G.order:>6}{B.dim:>4}{hopf:>6}{rep.dim_b0:>4}  {rep.routes_agree}  ({dt:.2f}s)")


if __name__ == "__main__":
    main()
