import pytest

from conftest import basis
from z2schur.grp import Presentation, catalog_presentations
from z2schur.hopf import coinvariant_dims, cover_presentation, hopf_multiplier, square_cover


def test_cover_of_z2():
    sc = square_cover(Presentation.from_strings("a", ["a^2"]))
    assert sc.cover.order == 4
    assert max(sc.cover.element_order(g) for g in range(4)) == 4
    assert len(sc.kernel_r0) == 2


def test_cover_of_trivial_group():
    p = Presentation.from_strings("a", ["a"])
    sc = square_cover(p)
    assert sc.cover.order == 2 and len(sc.kernel_r0) == 2
    assert hopf_multiplier(p).dim == 0


def test_cover_of_klein4():
    p = catalog_presentations("klein4")[0]
    sc = square_cover(p)
    assert 8 % len(sc.kernel_r0) == 0
    assert hopf_multiplier(p).dim == 3


def test_cover_presentation_shape():
    p = Presentation.from_strings("ab", ["a^2", "b^2", "abab"])
    q = cover_presentation(p)
    assert len(q.relators) == 3 + 3 * 2


@pytest.mark.parametrize("n", range(1, 17))
def test_cyclic(n):
    for p in catalog_presentations(f"cyclic:{n}"):
        assert hopf_multiplier(p).dim == (1 if n % 2 == 0 else 0)


def test_symmetric4_coxeter():
    p = Presentation.from_strings(["s1", "s2", "s3"], ["s1^2", "s2^2", "s3^2", "s1s2s1s2s1s2", "s2s3s2s3s2s3", "s1s3s1s3"])
    assert hopf_multiplier(p).dim == 2


@pytest.mark.parametrize("name", ["dihedral:4", "dihedral:5", "quaternion:8", "symmetric:4", "abelian:4x2x2",
                                  "smallgroup:64:182"])
def test_routes_agree(name):
    for p in catalog_presentations(name):
        r = hopf_multiplier(p)
        assert r.dim == r.linear_dim == basis(name).dim


def test_generator_words_span():
    p = catalog_presentations("dihedral:4")[0]
    r = hopf_multiplier(p)
    assert r.method == "cover" and len(r.generator_words) == r.dim


def test_cover_limit_falls_back_to_linear_count():
    p = catalog_presentations("abelian:2x2x2x2x2")[0]
    r = hopf_multiplier(p)
    assert r.method == "coinvariants" and r.cover_order is None
    assert r.dim == 15  # 5 + C(5,2)


def test_coinvariants_small():
    dim_r0, dim_m = coinvariant_dims(Presentation.from_strings("a", ["a^2"]))
    assert (dim_r0, dim_m) == (1, 1)
