import itertools

import pytest

from conftest import basis, group, report
from z2schur.cob import (
    ElementaryCobordism,
    SurfaceAction,
    compose,
    crosscap_monodromy,
    handle_monodromy,
    is_extendable,
    klein_monodromy,
    parse_surface,
)
from z2schur.errors import InvariantError, UsageError
from z2schur.grp import commuting_pairs, involutions, klein_pairs
from z2schur.mult import m_coordinates
from z2schur.relcalc import UWord, coordinates

ORDER16 = ["cyclic:2", "cyclic:6", "klein4", "dihedral:3", "dihedral:4", "quaternion:8", "abelian:4x2",
           "dihedral:8", "abelian:4x4"]

PANTS, MOEBIUS, DISC = ElementaryCobordism("pants"), ElementaryCobordism("moebius"), ElementaryCobordism("disc")


def test_elementary_pieces():
    G = group("dihedral:4")
    for x in range(G.order):
        out = compose(PANTS, G, [x, G.inv(x)])
        assert out == 0
        assert compose(DISC, G, [out]) is None
        for g in range(G.order):
            assert compose(ElementaryCobordism("cylinder", g), G, [x]) == G.conj(g, x)
        assert compose(MOEBIUS, G, [x]) == G.mul(x, x)
    with pytest.raises(InvariantError):
        compose(DISC, G, [1])
    with pytest.raises(InvariantError):
        compose(PANTS, G, [1])
    with pytest.raises(ValueError):
        ElementaryCobordism("sphere")


def test_monodromy_examples():
    G = group("dihedral:4")
    for x, y in commuting_pairs(G):
        if G.mul(y, y) == 0:
            assert klein_monodromy(G, x, y) == 0
    pairs = [p for p in commuting_pairs(G)][:4]
    assert handle_monodromy(G, pairs) == 0
    assert crosscap_monodromy(G, involutions(G)[:3]) == 0


@pytest.mark.parametrize("name", ORDER16)
def test_klein_is_two_moebius_bands(name):
    G = group(name)
    B = basis(name)
    for x, y in itertools.product(range(G.order), repeat=2):
        z2 = G.mul(G.inv(x), y)
        glued = compose(PANTS, G, [compose(MOEBIUS, G, [x]), compose(MOEBIUS, G, [z2])])
        assert glued == klein_monodromy(G, x, y)
    for x, y in klein_pairs(G):
        s = SurfaceAction.nonorientable_surface(G, [x, G.mul(G.inv(x), y)])
        assert m_coordinates(s, B) == coordinates(UWord.U(G, x, y), B)


@pytest.mark.parametrize("name", ORDER16)
def test_basic_surfaces_extend(name):
    G = group(name)
    rep = report(name)
    for x, y in commuting_pairs(G):
        assert is_extendable(SurfaceAction.orientable_surface(G, [(x, y)]), rep).verdict == "Extendable"
    for x, y in klein_pairs(G):
        s = SurfaceAction.nonorientable_surface(G, [x, G.mul(G.inv(x), y)])
        assert is_extendable(s, rep).verdict == "Extendable"
    for z in involutions(G):
        assert is_extendable(SurfaceAction.nonorientable_surface(G, [z]), rep).verdict == "Extendable"


def test_trivial_rp2_odd_order():
    for n in (1, 3, 5, 15):
        G = group(f"cyclic:{n}")
        v = is_extendable(SurfaceAction.nonorientable_surface(G, [0]))
        assert v.verdict == "TrivialRP2Component" and v.chi_mod2 == 1


def test_trivial_rp2_even_order_extends():
    G = group("cyclic:2")
    assert is_extendable(SurfaceAction.nonorientable_surface(G, [0])).verdict == "Extendable"


@pytest.mark.parametrize("name", ["cyclic:3", "cyclic:4", "klein4", "abelian:4x2", "abelian:3x3"])
def test_abelian_surfaces(name):
    G = group(name)
    rep = report(name)
    n = G.order
    for x1, y1, x2, y2 in itertools.product(range(n), repeat=4):
        s = SurfaceAction.orientable_surface(G, [(x1, y1), (x2, y2)])
        assert is_extendable(s, rep).verdict == "Extendable"
    for zs in itertools.product(range(n), repeat=3):
        if crosscap_monodromy(G, zs) == 0:
            v = is_extendable(SurfaceAction.nonorientable_surface(G, zs), rep)
            assert v.verdict == ("TrivialRP2Component" if n % 2 else "Extendable")


def test_conjugation_invariance():
    G = group("dihedral:4")
    B = basis("dihedral:4")
    for x, y in klein_pairs(G):
        s = SurfaceAction.nonorientable_surface(G, [x, G.mul(G.inv(x), y)])
        for g in range(G.order):
            assert m_coordinates(s.conjugate(g), B) == m_coordinates(s, B)


def test_surface_word_and_euler_characteristic():
    G = group("dihedral:4")
    s = SurfaceAction.orientable_surface(G, [(1, 0), (0, 0)])
    assert s.chi_quotient == -2 and s.chi_total == -16 and s.genus == 2
    assert str(s.to_word()).startswith("O[")
    with pytest.raises(InvariantError):
        SurfaceAction.orientable_surface(G, [(G.parse_element("a"), G.parse_element("b"))])
    with pytest.raises(InvariantError):
        SurfaceAction.nonorientable_surface(G, [])


def test_64_handle_data_verdict_follows_b0():
    G = group("smallgroup:64:182")
    rep = report("smallgroup:64:182")
    s = parse_surface(G, "orientable g=2 pairs=(a,c);(ab,c)")
    v = is_extendable(s, rep)
    assert v.chi_mod2 == 0
    assert v.verdict == ("Extendable" if rep.dim_b0 == 0 else "Obstructed")


def test_parse_surface():
    G = group("dihedral:4")
    s = parse_surface(G, "nonorientable k=1 z=(a)")
    assert not s.orientable and s.data == (G.parse_element("a"),)
    s = parse_surface(G, "orientable g=1 pairs=(c,c^2)")
    assert parse_surface(G, str(s)) == s
    for bad in ["torus", "orientable g=2 pairs=(a,a)", "nonorientable k=1 z=(q)", "orientable k=1 z=(a)"]:
        with pytest.raises(UsageError):
            parse_surface(G, bad)


def test_verdict_json():
    G = group("dihedral:4")
    v = is_extendable(parse_surface(G, "nonorientable k=1 z=(a)"), report("dihedral:4"))
    assert v.to_json() == {"verdict": "Extendable", "chi_mod2": 0, "b0_coordinates": ""}
