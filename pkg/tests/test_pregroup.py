import json

import pytest
from hypothesis import given, strategies as st

from conftest import ALL, built
from pregroups.errors import ConjugationDomainError, FormatError
from pregroups.groups import cyclic_group, dihedral_group, symmetric_group
from pregroups.pregroup import (PgSubgroup, Pregroup, conj_domain, conjugate_subgroup, element_order,
                                is_cyclic_element, is_subgroup, pregroup_from_group, subgroups_of_pregroup,
                                validate_pregroup)
from pregroups.groups import subgroups


def test_group_is_pregroup():
    P = pregroup_from_group(symmetric_group(3))
    assert validate_pregroup(P).ok


@pytest.mark.parametrize("name", ALL)
def test_built_pregroups_valid(name):
    _, P = built(name)
    rep = validate_pregroup(P)
    assert rep.ok, rep.lines(P)


def test_missing_inverse_pair_detected():
    P = pregroup_from_group(cyclic_group(3))
    bad = P.mutated(1, 2, -1)
    assert "Pr2" in validate_pregroup(bad).codes()


def test_associativity_violation_detected():
    P = pregroup_from_group(cyclic_group(4))
    bad = P.mutated(1, 1, 3)
    assert not validate_pregroup(bad).ok


def test_pr4_violation_detected():
    # C2 * C2 with the product of the two generators wrongly defined as the unit
    _, P = built("c2_free_c3")
    a, b = P.index["a"], P.index["b"]
    bad = P.mutated(a, b, 0)
    assert not validate_pregroup(bad).ok


@pytest.mark.parametrize("name", ["c4_amalgam_c2", "ls_c3_inversion", "robinson_s3"])
def test_json_round_trip(name):
    _, P = built(name)
    Q = Pregroup.from_json(json.loads(P.dumps()))
    assert Q.to_json() == P.to_json()


@pytest.mark.parametrize("data", [
    {"elements": ["1"], "unit": "x", "inverse": {"1": "1"}, "products": []},
    {"elements": ["1", "a"], "unit": "1", "inverse": {"1": "1"}, "products": []},
    {"elements": ["1"], "unit": "1", "inverse": {"1": "1"}, "products": [["1", "1", "z"]]},
    {"elements": ["1"], "unit": "1", "inverse": {"1": "1"}, "products": [["1", "1"]]},
    {"elements": ["1"], "unit": "1"},
])
def test_bad_files(data):
    with pytest.raises(FormatError):
        Pregroup.from_json(data)


def test_subgroup_checks():
    _, P = built("c4_amalgam_c2")
    ix = P.index
    assert is_subgroup(P, [0, ix["a2"]])
    assert is_subgroup(P, [0, ix["a"], ix["a2"], ix["a3"]])
    assert not is_subgroup(P, [0, ix["a"], ix["b"]])
    assert is_cyclic_element(P, ix["b"])
    assert element_order(P, ix["b"]) == 4
    assert element_order(P, 0) == 1


def test_non_cyclic_element():
    _, P = built("ls_c3_inversion")
    t = P.index["t1"]
    assert not is_cyclic_element(P, t)
    assert element_order(P, t) is None


def test_conj_domain_of_group_is_everything():
    P = pregroup_from_group(symmetric_group(3))
    assert all(conj_domain(P, g) == frozenset(range(P.n)) for g in range(P.n))


def test_conjugate_subgroup_outside_domain():
    _, P = built("ls_c4_square_identity")
    S = PgSubgroup(P, tuple(range(4)))
    with pytest.raises(ConjugationDomainError):
        conjugate_subgroup(P, S, P.index["t1"])
    Q = PgSubgroup(P, (0, P.index["a2"]))
    assert conjugate_subgroup(P, Q, P.index["t1"]) == Q


@pytest.mark.parametrize("G", [cyclic_group(4), dihedral_group(4), symmetric_group(3)])
def test_subgroups_of_group_pregroup(G):
    P = pregroup_from_group(G)
    assert {H.member_set for H in subgroups_of_pregroup(P)} == {H.member_set for H in subgroups(G)}


def test_subgroups_of_amalgam():
    _, P = built("c2_free_c4")
    subs = [tuple(P.labels[x] for x in H.members) for H in subgroups_of_pregroup(P)]
    assert subs == [("1",), ("1", "a"), ("1", "b2"), ("1", "b", "b2", "b3")]


@pytest.mark.parametrize("name", ["ls_d8_outer", "robinson_d8_a4"])
@given(perm_seed=st.randoms(use_true_random=False))
def test_relabel_preserves_validity(name, perm_seed):
    _, P = built(name)
    rest = list(range(1, P.n))
    perm_seed.shuffle(rest)
    Q = P.relabel([0] + rest)
    assert validate_pregroup(Q).ok
    assert Q.domain_size == P.domain_size
