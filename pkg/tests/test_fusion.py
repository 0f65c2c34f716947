import pytest
from hypothesis import given, strategies as st

from conftest import LS, built
from pregroups import instances as inst
from pregroups.errors import ResourceError
from pregroups.fusion import (all_morphisms, brute_force_generated, fusion_equal, fusion_of_group,
                              fusion_of_pregroup, generate_fusion, inner_fusion, is_sylow_in_pregroup,
                              transport)
from pregroups.groups import (GroupHom, cyclic_group, dihedral_group, hom_from_images, klein_four,
                              normalizer, symmetric_group, sylow_subgroup)
from pregroups.pregroup import PgSubgroup


def _aut_count(F, Q):
    return len(F.automorphisms(Q))


def test_inner_fusion_d8_klein():
    D8 = dihedral_group(4)
    F = inner_fusion(D8, 2)
    V = inst.klein_subgroups(D8)[0]
    assert _aut_count(F, V) == 2
    assert not F.check_axioms()


def test_gl3_klein_automorphisms():
    G, S, V, V2, C = inst.gl3_setup()
    F = fusion_of_group(G, S, 2)
    for W in (V, V2):
        assert _aut_count(F, W) == 6
        assert normalizer(G, W).order == 24
    assert not F.check_axioms()


def test_gl3_homsets_agree_with_conjugation():
    G, S, V, V2, C = inst.gl3_setup()
    F = fusion_of_group(G, S, 2)
    expected = {tuple((x, G.conj(x, g)) for x in V.members) for g in range(G.order)
                if {G.conj(x, g) for x in V.members} <= S.member_set}
    assert F.homset(V, S) == expected


def test_c3_inversion_fusion():
    d = inst.ls_c3_inversion()
    F = generate_fusion(d.S, d.maps, 3)
    assert _aut_count(F, d.S.whole()) == 2


@pytest.mark.parametrize("maker", [inst.ls_c3_inversion, inst.ls_c4_square_identity, inst.ls_c2_trivial_edge])
def test_generated_matches_brute_force(maker):
    d = maker()
    F = generate_fusion(d.S, d.maps, d.p)
    B = brute_force_generated(d.S, [m.graph for m in d.maps], d.p)
    assert fusion_equal(F, B)[0]


def test_brute_force_klein_transposition():
    V = klein_four()
    a, b, c = 1, 2, 3
    swap = GroupHom(V.whole(), V.whole(), {0: 0, a: b, b: a, c: c})
    assert fusion_equal(generate_fusion(V, [swap], 2), brute_force_generated(V, [swap.graph], 2))[0]


def test_brute_force_is_bounded():
    with pytest.raises(ResourceError):
        brute_force_generated(dihedral_group(4), [], 2)


def test_generate_rejects_bad_generator():
    S = cyclic_group(4)
    sq = S.subgroup([0, 2])
    with pytest.raises(ValueError):
        generate_fusion(S, [((0, 0), (1, 0), (2, 0), (3, 0))], 2)
    with pytest.raises(ValueError):
        generate_fusion(S, [((0, 0), (2, 1))], 2)
    assert generate_fusion(S, [((0, 0), (2, 2))], 2).size == inner_fusion(S, 2).size
    assert sq.order == 2


@pytest.mark.parametrize("name", LS)
def test_ls_round_trip(name):
    d, P = built(name)
    S = PgSubgroup(P, tuple(range(d.S.order)))
    same, diff = fusion_equal(fusion_of_pregroup(P, S, d.p), generate_fusion(d.S, d.maps, d.p))
    assert same, diff


@pytest.mark.parametrize("name", LS)
def test_ls_sylow(name):
    d, P = built(name)
    S = PgSubgroup(P, tuple(range(d.S.order)))
    res = is_sylow_in_pregroup(P, S, d.p)
    assert res.ok and res.counterexample is None
    assert all(c.verify(P, S) for c in res.certificates.values())


def test_robinson_s3_transport():
    d, P = built("robinson_s3")
    fac = d.factors[0]
    alpha = GroupHom(fac.image, d.S.whole(), {v: u for u, v in fac.f.mapping.items()})
    F_G = transport(fusion_of_group(fac.G, fac.image, 2), alpha)
    S = PgSubgroup(P, tuple(range(d.S.order)))
    assert fusion_equal(fusion_of_pregroup(P, S, 2), F_G)[0]
    assert is_sylow_in_pregroup(P, S, 2).ok


def test_amalgam_sylow_counterexample():
    _, P = built("c2_free_c4")
    S = PgSubgroup(P, tuple(sorted(set(P.meta["from_B"]))))
    res = is_sylow_in_pregroup(P, S, 2)
    assert not res.ok
    assert res.counterexample is not None and res.counterexample.order == 2
    assert res.counterexample.members == tuple(sorted(P.meta["from_A"]))


def test_fusion_difference_reported():
    d = inst.ls_d8_outer()
    F1, F2 = inner_fusion(d.S, 2), generate_fusion(d.S, d.maps, 2)
    same, diff = fusion_equal(F1, F2)
    assert not same and diff.only_in == 2
    assert F2.contains(diff.graph) and not F1.contains(diff.graph)


def test_check_axioms_detects_missing_inverse():
    d = inst.ls_d8_outer()
    F = generate_fusion(d.S, d.maps, 2)
    V = inst.klein_subgroups(d.S)[0]
    g = next(g for g in F.automorphisms(V) if dict(g) != {x: x for x in V.members}
             and any(dict(g)[x] != d.S.conj(x, s) for s in range(8) for x in V.members))
    F.isos[V.member_set].discard(g)
    assert F.check_axioms()


@given(st.sampled_from([symmetric_group(3), symmetric_group(4), dihedral_group(6)]), st.sampled_from([2, 3]))
def test_group_fusion_is_saturated_closure(G, p):
    S = sylow_subgroup(G, p)
    F = fusion_of_group(G, S, p)
    assert not F.check_axioms()
    assert all(F.contains(g) for g in all_morphisms(inner_fusion(S, p)))


def test_to_json_counts():
    F = inner_fusion(cyclic_group(4), 2)
    out = F.to_json(full=True)
    assert sum(h["count"] for h in out["homsets"]) >= F.size
    assert len(out["isomorphisms"]) == F.size
