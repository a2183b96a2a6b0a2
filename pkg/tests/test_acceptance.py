"""Acceptance criteria 1-9, one PASS/FAIL line each."""

import itertools
import time
import tracemalloc

import numpy as np
import pytest

from conftest import basis, group, report
from z2schur.cli import catalog_names
from z2schur.cob import ElementaryCobordism, SurfaceAction, compose, is_extendable, klein_monodromy
from z2schur.cohom import coboundary, cochain_array, h2
from z2schur.f2la import RowBasis
from z2schur.grp import abelian_names, catalog_presentations, commuting_pairs, involutions, klein_pairs
from z2schur.hopf import hopf_multiplier
from z2schur.mult import bogomolov, bogomolov_by_functionals, bogomolov_by_restrictions, functional_cycles, m_coordinates
from z2schur.relcalc import DEFAULT_SAMPLES, UWord, all_relations, check_relations, coordinates, parse_word

RESULTS: dict[int, str] = {}
SMALL_CATALOG = [n for n in catalog_names(64) if group(n).order <= 16]


def record(capsys, k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail.strip()}"
    RESULTS[k] = line
    with capsys.disabled():
        print("\n" + line)


def test_criterion_1_cyclic(capsys):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 17):
        G = group(f"cyclic:{n}")
        B = h2(G)
        if B.dim != n % 2 ^ 1:
            bad.append(f"dim Z{n}={B.dim}")
        if n % 2 == 0 and coordinates(parse_word(G, f"S[a^{n // 2}]"), B) == 0:
            bad.append(f"S[x^{n // 2}] trivial in Z{n}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    record(capsys, 1, ok, f"n=2..16, {dt:.2f}s (limit 5s) {' '.join(bad)}")
    assert ok


def test_criterion_2_dihedral(capsys):
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 5, 6, 7, 8):
        G = group(f"dihedral:{n}")
        B = h2(G)
        want = 1 if n % 2 else 3
        words = ["S[a]"] if n % 2 else [f"S[c^{n // 2}]", "S[a]", "S[ac]"]
        coords = [coordinates(parse_word(G, w), B) for w in words]
        span = RowBasis(B.dim, coords).rank
        if B.dim != want or 0 in coords or span != want:
            bad.append(f"D{2 * n}: dim={B.dim} coords={coords} span={span}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    record(capsys, 2, ok, f"n in 2..8, {dt:.2f}s (limit 30s) {' '.join(bad)}")
    assert ok


def test_criterion_3_symmetric(capsys):
    t0 = time.perf_counter()
    dims = [h2(group(f"symmetric:{n}")).dim for n in range(1, 6)]
    dt = time.perf_counter() - t0
    ok = dims == [0, 1, 1, 2, 2] and dt <= 600
    record(capsys, 3, ok, f"dims={dims}, {dt:.2f}s (limit 600s)")
    assert ok


def test_criterion_4_triviality(capsys):
    names = abelian_names(32) + [f"dihedral:{n}" for n in range(1, 17)] + [f"symmetric:{n}" for n in range(1, 6)]
    bad = []
    for name in names:
        rep = bogomolov(group(name), basis(name))
        if rep.dim_b0 != 0 or rep.dim_b0_restrictions != 0:
            bad.append(f"{name}:{rep.dim_b0}/{rep.dim_b0_restrictions}")
    ok = not bad
    record(capsys, 4, ok, f"{len(names)} groups, dim B0 = 0 by both routes {' '.join(bad)}")
    assert ok


def test_criterion_5_order_64(capsys):
    t0 = time.perf_counter()
    tracemalloc.start()
    G = group("smallgroup:64:182")
    B = h2(G)
    B_full = h2(G, method="full")
    hopf_dims = {hopf_multiplier(p).dim for p in catalog_presentations("smallgroup:64:182")}
    rep = bogomolov(G, B)
    w = parse_word(G, "O[a,c] O[ab,c]")
    b0_class = rep.pair(coordinates(w, B))
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    dt = time.perf_counter() - t0
    checks = {
        "dim H2 = 4": B.dim == 4 and B_full.dim == 4 and hopf_dims == {4},
        "dim B0 >= 1": rep.dim_b0 >= 1,
        "class nonzero in B0": b0_class != 0,
        "time <= 15 min": dt <= 900,
        "memory <= 2 GB": peak <= 2 * 2**30,
    }
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    detail = (f"dim H2={B.dim} (hopf {sorted(hopf_dims)}), dim B0={rep.dim_b0} "
              f"(restrictions {rep.dim_b0_restrictions}), class={b0_class}, {dt:.1f}s, peak {peak / 2**20:.1f} MB")
    if failed:
        detail += "; failed: " + ", ".join(failed)
    record(capsys, 5, ok, detail)
    assert ok


def test_criterion_6_route_agreement(capsys):
    bad = []
    count = 0
    for name in catalog_names(64):
        G = group(name)
        if G.order <= 64:
            for p in catalog_presentations(name):
                count += 1
                r = hopf_multiplier(p)
                if not (r.dim == r.linear_dim == basis(name).dim):
                    bad.append(f"hopf {name}")
        f = bogomolov_by_functionals(G, basis(name))
        dim_r, sub = bogomolov_by_restrictions(G, basis(name))
        if dim_r != f.dim_b0 or sub != f.annihilator:
            bad.append(f"B0 {name}")
    ok = not bad
    record(capsys, 6, ok, f"{count} presentations, {len(catalog_names(64))} groups {' '.join(bad)}")
    assert ok


def test_criterion_7_relations(capsys):
    total = 0
    failures = []
    short = []
    rels = all_relations()
    for name in catalog_names(64):
        G = group(name)
        samples = None if G.order <= 16 else DEFAULT_SAMPLES
        for c in check_relations(G, rels, basis(name), samples=samples, seed=0):
            total += c.instances
            if not c.ok:
                failures.append(f"{name}/{c.name}")
            if G.order <= 16 and not c.exhaustive:
                short.append(f"{name}/{c.name}")
            if G.order > 16 and not c.exhaustive and c.instances < 10**4:
                short.append(f"{name}/{c.name}")
    ok = not failures and not short
    record(capsys, 7, ok, f"{len(rels)} relations, {total} instances, failures={len(failures)} "
                          f"{' '.join(failures[:10] + short[:10])}")
    assert ok


def _flat_cycles(G):
    """Simplex indices of every nonempty functional cycle, laid out for reduceat."""
    cycles = [c for _, _, c in functional_cycles(G)]
    nonempty = [c for c in cycles if c.simplices]
    flat = np.array([g * G.order + h for c in nonempty for g, h in c.simplices], dtype=np.int64)
    starts = np.cumsum([0] + [len(c.simplices) for c in nonempty])[:-1]
    return cycles, flat, starts


def _eval_all(table, flat, starts):
    if len(flat) == 0:
        return np.zeros(0, dtype=table.dtype)
    return np.bitwise_xor.reduceat(table.reshape(-1)[flat], starts)


def test_criterion_8_well_definedness(capsys):
    rng = np.random.default_rng(0)
    boundary_bad = cobound_bad = invariance_bad = 0
    ncycles = 0
    for name in catalog_names(64):
        G = group(name)
        B = basis(name)
        cycles, flat, starts = _flat_cycles(G)
        ncycles += len(cycles)
        boundary_bad += sum(bool(c.boundary()) for c in cycles)
        for g in range(1, G.order):
            phi = np.zeros(G.order, dtype=np.uint8)
            phi[g] = 1
            d = cochain_array(G, coboundary(G, phi)).astype(np.int64)
            cobound_bad += int(_eval_all(d, flat, starts).any())
        if B.dim == 0:
            continue
        base = _eval_all(B.packed, flat, starts)
        full = (1 << B.dim) - 1
        for _ in range(1000):
            phi = rng.integers(0, 2, G.order).astype(np.uint8)
            phi[0] = 0
            d = cochain_array(G, coboundary(G, phi)).astype(np.int64)
            shifted = B.packed ^ (d * full)
            invariance_bad += int((_eval_all(shifted, flat, starts) != base).any())
    ok = boundary_bad == cobound_bad == invariance_bad == 0
    record(capsys, 8, ok, f"{ncycles} cycles over {len(catalog_names(64))} groups; boundary/coboundary/invariance "
                          f"failures = {boundary_bad}/{cobound_bad}/{invariance_bad}")
    assert ok


def _abelian_surfaces(G, rng, samples=300):
    n = G.order
    yield from (SurfaceAction.orientable_surface(G, [(x, y)]) for x, y in itertools.product(range(n), repeat=2))
    for _ in range(samples):
        x1, y1, x2, y2 = (int(v) for v in rng.integers(0, n, 4))
        yield SurfaceAction.orientable_surface(G, [(x1, y1), (x2, y2)])
    for k in (1, 2):
        for zs in itertools.product(range(n), repeat=k):
            if G.prod(G.mul(z, z) for z in zs) == 0:
                yield SurfaceAction.nonorientable_surface(G, zs)
    for k in (3, 4):
        for _ in range(samples):
            zs = [int(v) for v in rng.integers(0, n, k - 1)]
            last = [z for z in range(n) if G.mul(G.prod(G.mul(a, a) for a in zs), G.mul(z, z)) == 0]
            if last:
                yield SurfaceAction.nonorientable_surface(G, zs + [last[int(rng.integers(len(last)))]])


def test_criterion_9_verdicts(capsys):
    bad = []
    checked = 0
    pants, moebius = ElementaryCobordism("pants"), ElementaryCobordism("moebius")
    for name in SMALL_CATALOG:
        G = group(name)
        rep = report(name)
        surfaces = [SurfaceAction.orientable_surface(G, [p]) for p in commuting_pairs(G)]
        surfaces += [SurfaceAction.nonorientable_surface(G, [x, G.mul(G.inv(x), y)]) for x, y in klein_pairs(G)]
        surfaces += [SurfaceAction.nonorientable_surface(G, [z]) for z in involutions(G)]
        for s in surfaces:
            checked += 1
            if is_extendable(s, rep).verdict != "Extendable":
                bad.append(f"{name} {s}")
        for x, y in itertools.product(range(G.order), repeat=2):
            z2 = G.mul(G.inv(x), y)
            if compose(pants, G, [compose(moebius, G, [x]), compose(moebius, G, [z2])]) != klein_monodromy(G, x, y):
                bad.append(f"fig6 {name} {x},{y}")
        for x, y in klein_pairs(G):
            s = SurfaceAction.nonorientable_surface(G, [x, G.mul(G.inv(x), y)])
            if m_coordinates(s, rep.basis) != coordinates(UWord.U(G, x, y), rep.basis):
                bad.append(f"fig6 class {name} {x},{y}")
    rng = np.random.default_rng(0)
    for name in abelian_names(32):
        G = group(name)
        rep = report(name)
        for s in _abelian_surfaces(G, rng):
            checked += 1
            v = is_extendable(s, rep).verdict
            want = "TrivialRP2Component" if s.chi_total % 2 else "Extendable"
            if v != want:
                bad.append(f"{name} {s} {v}")
        if G.order % 2:
            if is_extendable(SurfaceAction.nonorientable_surface(G, [0]), rep).verdict != "TrivialRP2Component":
                bad.append(f"trivial RP2 {name}")
    ok = not bad
    record(capsys, 9, ok, f"{checked} surfaces {' '.join(bad[:10])}")
    assert ok


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None and RESULTS:
        tr.write_line("")
        tr.write_line("acceptance summary")
        for k in sorted(RESULTS):
            tr.write_line(RESULTS[k])
