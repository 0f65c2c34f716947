import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import built
from pregroups.errors import HypothesisError
from pregroups.partial import in_domain, pi_product
from pregroups.pregroup import PgSubgroup
from pregroups.words import (AmalgamNormalForm, HnnTowerData, conjugation_chain, equal_in_universal,
                             equality_matrix, is_reduced, oracle_for, reduce, reduced_form, rewrite_randomly,
                             subgroup_conjugation_chain)

ORACLE_CASES = ["c4_amalgam_c2", "c2_free_c3", "ls_c3_inversion", "ls_c4_square_identity", "ls_d8_klein_swap",
                "ls_c4_two_equal"]


def words(P):
    return st.lists(st.integers(0, P.n - 1), max_size=6)


def test_reduce_examples():
    _, P = built("c4_amalgam_c2")
    w = P.parse_word("a,a2,b,b3,a")
    red, trace = reduce(P, w)
    assert red == []
    assert trace.verify(P)
    assert reduce(P, [])[0] == []
    assert reduce(P, P.parse_word("a,b"))[0] == P.parse_word("a,b")


def test_lone_unit_is_absorbed():
    _, P = built("c4_amalgam_c2")
    red, trace = reduce(P, [0])
    assert red == [] and trace.steps[-1].merged == -1 and trace.verify(P)


@pytest.mark.parametrize("name", ORACLE_CASES)
@given(data=st.data())
def test_reduction_trace(name, data):
    _, P = built(name)
    w = data.draw(words(P))
    red, trace = reduce(P, w)
    assert is_reduced(P, red)
    assert trace.verify(P)
    assert tuple(red) == trace.result


@pytest.mark.parametrize("name", ORACLE_CASES)
@given(data=st.data())
def test_equality_agrees_with_oracle(name, data):
    _, P = built(name)
    nf = oracle_for(P)
    w1, w2 = data.draw(words(P)), data.draw(words(P))
    cert = equal_in_universal(P, w1, w2)
    assert cert.equal == (nf(w1) == nf(w2))
    assert cert.verify(P)


@pytest.mark.parametrize("name", ORACLE_CASES)
@given(data=st.data())
def test_rewrites_keep_length_of_reduced_form(name, data):
    _, P = built(name)
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    w = data.draw(words(P))
    w2 = rewrite_randomly(P, w, 6, rng)
    assert oracle_for(P)(w) == oracle_for(P)(w2)
    cert = equal_in_universal(P, w, w2)
    assert cert.equal and len(cert.reduced1) == len(cert.reduced2)


def test_certificate_example():
    _, P = built("c4_amalgam_c2")
    cert = equal_in_universal(P, P.parse_word("a,b"), P.parse_word("a3,b3"))
    assert cert.equal and cert.intercalators == [P.index["a2"]]
    assert cert.to_json(P)["intercalators"] == ["a2"]
    no = equal_in_universal(P, P.parse_word("a,b"), P.parse_word("b,a"))
    assert not no.equal and no.reason == "no-intercalation" and no.verify(P)
    short = equal_in_universal(P, P.parse_word("a,b"), P.parse_word("a"))
    assert short.reason == "length-mismatch"


def test_equality_matrix_classes():
    _, P = built("ls_c3_inversion")
    ws = [list(w) for L in range(3) for w in itertools.product(range(P.n), repeat=L)]
    M, cls = equality_matrix(P, ws)
    nf = oracle_for(P)
    forms = sorted({reduced_form(P, w) for w in ws})
    for i, j in itertools.combinations(range(len(ws)), 2):
        if (i * 7 + j) % 11:
            continue
        assert bool(M[cls[i], cls[j]]) == (nf(ws[i]) == nf(ws[j]))
    assert M.shape[0] == len(forms)


def test_amalgam_oracle_rejects_bad_factor():
    d, _ = built("c4_amalgam_c2")
    with pytest.raises(ValueError):
        AmalgamNormalForm.from_data(d)([("Z", 1)])


def test_hnn_britton():
    d, _ = built("ls_c3_inversion")
    T = HnnTowerData.from_ls(d)
    # t^-1 a t = a^-1, and a pinch-free word with a stable letter is not trivial
    assert T.normal_form([("t", 0, -1), ("s", 1), ("t", 0, 1)]) == T.normal_form([("s", 2)])
    assert T.normal_form([("t", 0, 1)]) != T.normal_form([])


def test_conjugation_chain():
    _, P = built("ls_c4_square_identity")
    a2, t = P.index["a2"], P.index["t1"]
    ch = conjugation_chain(P, a2, [t, t])
    assert ch.verify(P) and ch.elements[-1] == a2 and ch.length == 2
    with pytest.raises(ValueError):
        conjugation_chain(P, t, [t])
    with pytest.raises(HypothesisError):
        conjugation_chain(P, P.index["a"], [t])


def test_subgroup_chain():
    _, P = built("ls_c4_square_identity")
    Q = PgSubgroup(P, (0, P.index["a2"]))
    chain = subgroup_conjugation_chain(P, Q, [P.index["t1"]], target=Q)
    assert [X.members for X in chain] == [Q.members, Q.members]
    S = PgSubgroup(P, tuple(range(4)))
    with pytest.raises(HypothesisError):
        subgroup_conjugation_chain(P, S, [P.index["t1"]])


@pytest.mark.parametrize("name", ["robinson_d8_a4", "ls_d8_outer"])
@given(data=st.data())
def test_domain_products_agree_with_reduction(name, data):
    _, P = built(name)
    w = data.draw(words(P))
    if in_domain(P, w):
        assert reduced_form(P, w) == ((pi_product(P, w),) if pi_product(P, w) else ())
