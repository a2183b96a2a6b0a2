import itertools

import numpy as np
import pytest

from conftest import group
from z2schur.errors import ResourceLimitError, UsageError
from z2schur.grp import (
    Presentation,
    abelian_names,
    abelianization_mod2,
    catalog_presentations,
    closure,
    commuting_pairs,
    from_permutations,
    from_presentation,
    involutions,
    kernel,
    klein_pairs,
    parse_cycles,
    parse_presentation,
    quotient,
    read_permutations,
    squares_subgroup,
)


def perm_group(*cycles, degree=None):
    return from_permutations([parse_cycles(c, degree) for c in cycles])


def test_closure_examples():
    assert perm_group("(1 2)").order == 2
    assert perm_group("(1 2)", "(1 2 3)", degree=3).order == 6
    assert from_permutations([]).order == 1


def test_closure_limit():
    with pytest.raises(ResourceLimitError):
        from_permutations([parse_cycles("(1 2 3 4 5)"), parse_cycles("(1 2)", 5)], max_order=50)


def test_presentation_examples():
    assert from_presentation(Presentation.from_strings("a", ["a^5"])).order == 5
    assert from_presentation(Presentation.from_strings("ab", ["a^2", "b^2", "ababab"])).order == 6
    p = Presentation.from_strings("abc", ["a^2b^-2", "aba^-1b", "c^8", "aca^-1c^-3", "bcb^-1c^-5"])
    assert from_presentation(p).order == 64


def test_presentation_coset_limit():
    p = Presentation.from_strings("ab", ["a^2", "b^3", "ababababab"])  # A5
    with pytest.raises(ResourceLimitError):
        from_presentation(p, coset_limit=20)


def test_parse_presentation_text():
    p = parse_presentation("gens: a b\n# dihedral\nrel: a^2\nrel: b^2\nrel: (ab)^3\n".replace("(ab)^3", "ababab"))
    assert from_presentation(p).order == 6
    with pytest.raises(UsageError):
        parse_presentation("rel: a^2\n")


@pytest.mark.parametrize(
    "name,order",
    [("cyclic:1", 1), ("cyclic:7", 7), ("dihedral:5", 10), ("dihedral:8", 16), ("symmetric:4", 24),
     ("symmetric:5", 120), ("quaternion:8", 8), ("klein4", 4), ("abelian:4x2", 8), ("smallgroup:64:182", 64)],
)
def test_catalog_orders(name, order):
    G = group(name)
    assert G.order == order
    G.check_axioms()


@pytest.mark.parametrize("name", ["cyclic:6", "dihedral:4", "symmetric:4", "quaternion:8", "klein4", "abelian:4x2",
                                  "smallgroup:64:182"])
def test_alternative_presentations_agree(name):
    orders = {from_presentation(p).order for p in catalog_presentations(name)}
    assert orders == {group(name).order}


def test_unknown_name():
    with pytest.raises(UsageError):
        catalog_presentations("mathieu:11")


def test_abelian_names_counts():
    # number of abelian groups of order n for n = 1..32, by the partition counts of prime exponents
    counts = {8: 3, 16: 5, 32: 7, 12: 2, 24: 3, 30: 1}
    names = abelian_names(32)
    for n, c in counts.items():
        got = [x for x in names if np.prod([int(t) for t in x.split(":")[1].split("x")]) == n]
        assert len(got) == c


def test_involutions_examples():
    assert len(involutions(group("cyclic:2"))) == 1
    assert involutions(group("cyclic:3")) == []
    assert len(involutions(group("dihedral:3"))) == 3


def test_pairs():
    A = group("abelian:4x2")
    assert len(commuting_pairs(A)) == A.order ** 2
    S3 = group("symmetric:3")
    r = next(g for g in range(6) if S3.label(g) == "(1 2 3)")
    t = next(g for g in range(6) if S3.label(g) == "(1 2)")
    # x y x^-1 y = 1 holds for x = (1 2), y = (1 2 3); the reversed order gives a 3-cycle
    assert (t, r) in klein_pairs(S3)
    assert (r, t) not in klein_pairs(S3)
    G = group("dihedral:4")
    for x, y in commuting_pairs(G):
        if G.mul(y, y) == 0:
            assert (x, y) in klein_pairs(G)


def test_klein_pairs_bruteforce():
    G = group("dihedral:4")
    brute = [(x, y) for x in range(G.order) for y in range(G.order) if G.ucomm(x, y) == 0]
    assert sorted(klein_pairs(G)) == sorted(brute)


def test_squares_subgroup():
    Z4 = group("cyclic:4")
    S, incl = squares_subgroup(Z4)
    assert sorted(incl.map.tolist()) == sorted([0, Z4.mul(Z4.gens[0], Z4.gens[0])])
    S, _ = squares_subgroup(group("cyclic:9"))
    assert S.order == 9
    D8 = group("dihedral:4")
    S, incl = squares_subgroup(D8)
    assert S.order == 2 and D8.parse_element("c^2") in incl.map.tolist()


def brute_abelianization_mod2(G):
    # count homomorphisms to Z/2 by trying every assignment on generators
    gens = list(G.gens)
    count = 0
    for bits in itertools.product((0, 1), repeat=len(gens)):
        val = {0: 0}
        ok = True
        queue = [0]
        for x in queue:
            for g, b in zip(gens, bits):
                y = G.mul(x, g)
                v = val[x] ^ b
                if y in val:
                    ok &= val[y] == v
                else:
                    val[y] = v
                    queue.append(y)
        count += ok
    return count.bit_length() - 1


@pytest.mark.parametrize("name", ["cyclic:7", "cyclic:8", "dihedral:4", "dihedral:5", "quaternion:8",
                                  "symmetric:4", "abelian:4x2x2", "smallgroup:64:182"])
def test_abelianization_mod2(name):
    assert abelianization_mod2(group(name)) == brute_abelianization_mod2(group(name))


def test_abelianization_examples():
    assert abelianization_mod2(group("smallgroup:64:182")) == 3
    assert abelianization_mod2(group("cyclic:7")) == 0


def test_kernel_and_quotient():
    D8 = group("dihedral:4")
    c = D8.parse_element("c")
    C = closure(D8, [c])
    assert len(C) == 4
    Q, proj, reps = quotient(D8, C)
    assert Q.order == 2
    K, incl = kernel(proj)
    assert sorted(incl.map.tolist()) == sorted(C)


def test_labels_and_words_roundtrip():
    G = group("smallgroup:64:182")
    for g in range(G.order):
        assert G.evaluate([k + 1 for k in G.word(g)]) == g
        assert G.parse_element(G.label(g)) == g


def test_read_permutations():
    G = from_permutations(read_permutations("(1 2)\n# comment\n(1 2 3 4)\n"))
    assert G.order == 24
