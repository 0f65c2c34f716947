"""Bundled end-to-end runs, each producing a JSON-ready result bundle.

Every bundle carries ``"ok"``: whether the run reproduced the expected
outcome for that scenario.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .constructions import amalgam_pregroup, leary_stancu_pregroup, robinson_pregroup
from .formats import load_json, read_amalgam_input, read_ls_input, read_robinson_input
from .fusion import (fusion_equal, fusion_of_group, fusion_of_pregroup, generate_fusion,
                     is_sylow_in_pregroup, transport)
from .groups import GroupHom
from .instances import gl3_locality, gl3_setup
from .locality import (ObjectSet, check_locality, delta_matches_families, ls_locality_obstruction,
                       robinson_delta_candidate, verify_chain)
from .partial import in_domain
from .pregroup import PgSubgroup, Pregroup, validate_pregroup


def data_dir() -> Path:
    return Path(str(resources.files("pregroups") / "data"))


def _load(name: str):
    base = data_dir()
    return load_json(base / name), base


def _sylow_bundle(P: Pregroup, S: PgSubgroup, p: int) -> dict:
    res = is_sylow_in_pregroup(P, S, p)
    out = {"sylow": res.ok,
           "certificates_verified": all(c.verify(P, S) for c in res.certificates.values())}
    if res.counterexample is not None:
        out["counterexample"] = [P.labels[x] for x in res.counterexample.members]
    return out


def scenario_gl3(maxlen: int = 4) -> dict:
    G, S, V, V2, C = gl3_setup()
    L, parts = gl3_locality()
    rep = validate_pregroup(L)
    sub = {k: PgSubgroup(L, parts[k]) for k in ("C", "V", "V2", "S")}
    delta = ObjectSet(L, list(sub.values()))
    loc = check_locality(L, delta, sub["S"], maxlen, p=2)
    nwords, bad = delta_matches_families(L, delta, [parts["NV"], parts["NV2"]], maxlen)
    back = {g: x for x, g in enumerate(parts["to_G"])}
    F_L = fusion_of_pregroup(L, sub["S"], 2, realisation=(S, {g: back[g] for g in S.members}))
    same, diff = fusion_equal(F_L, fusion_of_group(G, S, 2))
    out = {
        "scenario": "gl3",
        "order_G": G.order,
        "order_NV": len(parts["NV"]),
        "order_NV2": len(parts["NV2"]),
        "order_L": L.n,
        "valid": rep.ok,
        "delta": delta.labels(),
        "verdict": loc.verdict,
        "locality": loc.is_locality,
        "oa_words_checked": loc.objectivity.words_checked,
        "delta_vs_normalizer_words": {"words": nwords, "mismatches": [L.format_word(w) for w in bad]},
        "fusion_equals_group_fusion": same,
    }
    out["ok"] = (out["order_NV"] == out["order_NV2"] == 24 and L.n == 40 and rep.ok and loc.is_locality
                 and not bad and same)
    return out


def scenario_ls_c3(maxlen: int = 4) -> dict:
    data, base = _load("ls_c3_inversion.json")
    d = read_ls_input(data, base)
    P = leary_stancu_pregroup(d)
    S = PgSubgroup(P, tuple(range(d.S.order)))
    same, diff = fusion_equal(fusion_of_pregroup(P, S, d.p), generate_fusion(d.S, d.maps, d.p))
    ob = ls_locality_obstruction(d, P)
    out = {
        "scenario": "ls-c3",
        "order_P": P.n,
        "valid": validate_pregroup(P).ok,
        "fusion_round_trip": same,
        **_sylow_bundle(P, S, d.p),
        "obstruction": {"kind": ob.kind, "word": P.format_word(ob.word), "in_domain": in_domain(P, ob.word),
                        "chain_verified": verify_chain(P, ob.word, ob.chain)},
    }
    out["ok"] = out["valid"] and same and out["sylow"] and out["certificates_verified"]
    return out


def scenario_robinson_s3(maxlen: int = 4) -> dict:
    data, base = _load("robinson_s3.json")
    d = read_robinson_input(data, base)
    P = robinson_pregroup(d)
    S = PgSubgroup(P, tuple(range(d.S.order)))
    fac = d.factors[0]
    alpha = GroupHom(fac.image, d.S.whole(), {v: u for u, v in fac.f.mapping.items()})
    F_G = transport(fusion_of_group(fac.G, fac.image, d.p), alpha)
    same, diff = fusion_equal(fusion_of_pregroup(P, S, d.p), F_G)
    delta, loc = robinson_delta_candidate(d, P, maxlen, d.p)
    out = {
        "scenario": "robinson-s3",
        "order_P": P.n,
        "valid": validate_pregroup(P).ok,
        "fusion_equals_group_fusion": same,
        **_sylow_bundle(P, S, d.p),
        "delta": delta.labels(),
        "verdict": loc.verdict,
        "conditions": [{"name": c.name, "ok": c.ok} for c in loc.conditions],
    }
    out["ok"] = out["valid"] and same and out["sylow"] and out["certificates_verified"]
    return out


def scenario_amalgam_c2c4(maxlen: int = 4) -> dict:
    data, base = _load("amalgam_c2_c4.json")
    d = read_amalgam_input(data, base)
    P = amalgam_pregroup(d)
    S = PgSubgroup(P, tuple(sorted(set(P.meta["from_B"]))))
    A = PgSubgroup(P, tuple(sorted(P.meta["from_A"])))
    out = {
        "scenario": "amalgam-c2c4",
        "order_P": P.n,
        "valid": validate_pregroup(P).ok,
        "S": [P.labels[x] for x in S.members],
        **_sylow_bundle(P, S, 2),
    }
    out["ok"] = out["valid"] and not out["sylow"] and out.get("counterexample") == [P.labels[x] for x in A.members]
    return out


SCENARIOS = {
    "gl3": scenario_gl3,
    "ls-c3": scenario_ls_c3,
    "robinson-s3": scenario_robinson_s3,
    "amalgam-c2c4": scenario_amalgam_c2c4,
}


def run_scenario(name: str, maxlen: int = 4) -> dict:
    if name not in SCENARIOS:
        raise KeyError(name)
    return SCENARIOS[name](maxlen)
