import pytest

from conftest import built
from pregroups import instances as inst
from pregroups.groups import dihedral_group, subgroups, symmetric_group, sylow_subgroup
from pregroups.locality import (ObjectSet, check_locality, check_objectivity, close_objects,
                                d_delta_member, delta_matches_families, ls_locality_obstruction,
                                robinson_delta_candidate, subgroups_inside, verify_chain)
from pregroups.partial import in_domain
from pregroups.pregroup import PgSubgroup, pregroup_from_group


@pytest.fixture(scope="module")
def gl3():
    L, parts = inst.gl3_locality()
    sub = {k: PgSubgroup(L, parts[k]) for k in ("C", "V", "V2", "S")}
    return L, parts, sub


def test_gl3_is_locality(gl3):
    L, parts, sub = gl3
    delta = ObjectSet(L, list(sub.values()))
    rep = check_locality(L, delta, sub["S"], 4, p=2)
    assert L.n == 40
    assert rep.is_locality and not rep.objectivity.truncated
    assert rep.verdict == "locality (verified to length 4)"


def test_gl3_delta_words_match_normalizers(gl3):
    L, parts, sub = gl3
    delta = ObjectSet(L, list(sub.values()))
    total, bad = delta_matches_families(L, delta, [parts["NV"], parts["NV2"]], 4)
    assert total > 0 and not bad


def test_gl3_smaller_delta_fails(gl3):
    L, parts, sub = gl3
    delta = ObjectSet(L, [sub["S"]])
    rep = check_locality(L, delta, sub["S"], 3, p=2)
    assert rep.refuted and rep.verdict == "not a locality"
    _, bad = delta_matches_families(L, delta, [parts["NV"], parts["NV2"]], 3)
    assert bad


@pytest.mark.parametrize("name,kind", [
    ("ls_c3_inversion", "t_i t_i"),
    ("ls_c4_square_identity", "t_i^-1 s t_i"),
    ("ls_d8_outer", "t_i^-1 s t_i"),
    ("ls_d8_klein_swap", "t_i^-1 s t_i"),
    ("ls_c4_two_equal", "t_i^-1 t_j"),
])
def test_ls_obstruction(name, kind):
    d, P = built(name)
    ob = ls_locality_obstruction(d, P)
    assert ob.kind == kind
    assert not in_domain(P, ob.word)
    assert verify_chain(P, ob.word, ob.chain)
    assert all(X in ob.delta for X in ob.chain)


def test_ls_obstruction_word_labels():
    d, P = built("ls_c4_square_identity")
    assert P.format_word(ls_locality_obstruction(d, P).word) == "T1,a,t1"


def test_robinson_s3_conditions_hold():
    d, P = built("robinson_s3")
    delta, rep = robinson_delta_candidate(d, P, 4, 2)
    assert all(c.ok for c in rep.conditions)
    assert rep.is_locality


def test_robinson_d8_a4_conditions_fail():
    d, P = built("robinson_d8_a4")
    delta, rep = robinson_delta_candidate(d, P, 3, 2)
    assert not any(c.ok for c in rep.conditions)
    for c in rep.conditions:
        assert c.word is not None and not in_domain(P, c.word)
        assert verify_chain(P, c.word, c.chain)
    assert rep.refuted


def test_group_is_locality_over_sylow():
    G = symmetric_group(3)
    P = pregroup_from_group(G)
    S = PgSubgroup(P, sylow_subgroup(G, 2).members)
    delta = ObjectSet(P, subgroups_inside(P, S))
    assert check_locality(P, delta, S, 4, 2).is_locality


def test_p_group_with_single_object():
    P = pregroup_from_group(dihedral_group(4))
    S = PgSubgroup(P, tuple(range(8)))
    assert check_locality(P, ObjectSet(P, [S]), S, 4, 2).is_locality


def test_ob_failure_without_overgroups():
    G = dihedral_group(4)
    P = pregroup_from_group(G)
    S = PgSubgroup(P, tuple(range(8)))
    Z = next(H for H in subgroups(G) if H.order == 2 and all(G.mul(x, g) == G.mul(g, x)
                                                              for x in H.members for g in range(8)))
    rep = check_objectivity(P, ObjectSet(P, [PgSubgroup(P, Z.members), S]), 3)
    assert not rep.ob_ok and rep.ob_failures


def test_maximality_failure():
    G = dihedral_group(4)
    P = pregroup_from_group(G)
    V = inst.klein_subgroups(G)[0]
    S = PgSubgroup(P, V.members)
    rep = check_locality(P, ObjectSet(P, subgroups_inside(P, S)), S, 3, 2)
    assert not rep.maximal and rep.larger_p_subgroup.order == 8
    assert rep.verdict == "not a locality"


def test_oa_counterexample_in_group():
    G = symmetric_group(3)
    P = pregroup_from_group(G)
    S = PgSubgroup(P, sylow_subgroup(G, 2).members)
    rep = check_objectivity(P, ObjectSet(P, [S]), 2)
    assert not rep.oa_ok and rep.only_in_domain
    w = rep.only_in_domain[0]
    assert in_domain(P, w) and d_delta_member(P, ObjectSet(P, [S]), w) is None


def test_truncated_budget_is_inconclusive():
    G = symmetric_group(3)
    P = pregroup_from_group(G)
    S = PgSubgroup(P, sylow_subgroup(G, 2).members)
    delta = ObjectSet(P, subgroups_inside(P, S))
    rep = check_locality(P, delta, S, 6, 2, max_words=50)
    assert rep.objectivity.truncated and not rep.refuted
    assert rep.verdict.startswith("inconclusive")


def test_close_objects_adds_conjugates_and_overgroups():
    d, P = built("ls_d8_outer")
    S = PgSubgroup(P, tuple(range(8)))
    V = inst.klein_subgroups(d.S)[0]
    delta = close_objects(P, S, [PgSubgroup(P, V.members)])
    assert S in delta and len(delta) == 2


def test_objects_must_lie_in_s():
    P = pregroup_from_group(symmetric_group(3))
    S = PgSubgroup(P, sylow_subgroup(symmetric_group(3), 2).members)
    with pytest.raises(ValueError):
        check_locality(P, ObjectSet(P, [PgSubgroup(P, (0,))]), S)
