import math
import random

import pytest
from hypothesis import given, strategies as st

from pregroups.errors import FormatError, ResourceError
from pregroups.groups import (FiniteGroup, GroupHom, alternating_group, cyclic_group, dihedral_group,
                              double_cosets, gl3_f2, group_from_generators, hom_from_images, klein_four,
                              left_transversal, normalizer, p_core, random_embedding, right_transversal, subgroups, sylow_subgroup,
                              symmetric_group)
from pregroups.instances import gl3_setup, klein_subgroups


def brute_subgroups(G):
    """Closures of all pairs of elements, which covers every 2-generated subgroup."""
    found = {frozenset(G.closure([x, y])) for x in range(G.order) for y in range(G.order)}
    return found


@pytest.mark.parametrize("degree,gens,order", [
    (1, [], 1),
    (8, [[1, 2, 3, 4, 5, 6, 7, 0], [0, 7, 6, 5, 4, 3, 2, 1]], 16),
    (4, [[1, 0, 2, 3], [1, 2, 3, 0]], 24),
])
def test_group_orders(degree, gens, order):
    assert group_from_generators(degree, gens).order == order


def test_gl3_order():
    assert gl3_f2().order == 168


def test_bad_permutation_rejected():
    with pytest.raises(FormatError):
        FiniteGroup(3, [[0, 0, 1]])


@pytest.mark.parametrize("G,count", [
    (FiniteGroup(1, []), 1),
    (dihedral_group(4), 10),
    (cyclic_group(4), 3),
    (symmetric_group(3), 6),
    (alternating_group(4), 10),
])
def test_subgroup_counts(G, count):
    subs = subgroups(G)
    assert len(subs) == count
    assert len({H.member_set for H in subs}) == count


@pytest.mark.parametrize("G", [dihedral_group(4), symmetric_group(3), cyclic_group(6)])
def test_subgroups_match_pair_closures(G):
    # all these groups have 2-generated subgroups only
    assert {H.member_set for H in subgroups(G)} == brute_subgroups(G)


def test_subgroup_bound(monkeypatch):
    monkeypatch.setenv("PG_MAX_GROUP_ORDER", "10")
    with pytest.raises(ResourceError):
        subgroups(symmetric_group(4))


@pytest.mark.parametrize("G,p,order", [
    (gl3_f2(), 2, 8), (symmetric_group(3), 5, 1), (symmetric_group(3), 3, 3), (alternating_group(4), 2, 4),
])
def test_sylow_orders(G, p, order):
    assert sylow_subgroup(G, p).order == order


def test_normalizers():
    G, S, V, V2, C = gl3_setup()
    assert normalizer(G, V).order == 24
    assert normalizer(G, V2).order == 24
    NV, NV2 = normalizer(G, V), normalizer(G, V2)
    assert NV.member_set & NV2.member_set == S.member_set == normalizer(G, C).member_set
    S3 = symmetric_group(3)
    H = S3.generated([S3.index[(1, 0, 2)]])
    assert normalizer(S3, H) == H
    assert normalizer(S3, S3.whole()) == S3.whole()


def test_normalizer_brute_force():
    G = dihedral_group(4)
    for H in subgroups(G):
        brute = {g for g in range(G.order) if {G.conj(x, g) for x in H.members} == H.member_set}
        assert normalizer(G, H).member_set == brute


@pytest.mark.parametrize("G,p,order", [
    (alternating_group(4), 2, 4), (symmetric_group(3), 2, 1), (symmetric_group(4), 2, 4), (dihedral_group(4), 2, 8),
])
def test_p_core(G, p, order):
    assert p_core(G, p).order == order


def test_transversals_and_double_cosets():
    G = symmetric_group(4)
    H = sylow_subgroup(G, 2)
    for reps in (right_transversal(G, H), left_transversal(G, H)):
        assert 0 in reps and len(reps) == 3
    dcs = double_cosets(G, H, H)
    assert sorted(x for dc in dcs for x in dc) == list(range(24))


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=11))
def test_cyclic_hom(n, k):
    C = cyclic_group(n)
    k %= n
    if n == 1:
        return
    gen = C.label_index["a"]
    h = hom_from_images(C.whole(), [gen], [C.power(gen, k)], C.whole())
    assert h.is_homomorphism()
    assert h.is_injective() == (math.gcd(k, n) == 1)


def test_hom_from_images_rejects_non_hom():
    C = cyclic_group(4)
    with pytest.raises(ValueError):
        hom_from_images(C.whole(), [1], [1], cyclic_group(3).whole())


def test_klein_subgroups_of_d8():
    assert len(klein_subgroups(dihedral_group(4))) == 2


def test_json_round_trip():
    G = gl3_f2()
    H = FiniteGroup.from_json(G.to_json())
    assert H.elements == G.elements and H.labels == G.labels


@pytest.mark.parametrize("src,dst,exists", [
    (cyclic_group(2), cyclic_group(4), True),
    (cyclic_group(4), klein_four(), False),
    (klein_four(), dihedral_group(4), True),
    (cyclic_group(3), symmetric_group(4), True),
])
def test_random_embedding(src, dst, exists):
    h = random_embedding(src.whole(), dst.whole(), random.Random(0))
    assert (h is not None) == exists
    if h is not None:
        assert h.is_injective() and h.is_homomorphism()
