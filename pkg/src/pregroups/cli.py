"""``pg``: command-line front end.

Exit codes: 0 success or true, 1 false or violation, 2 usage, format error
or inconclusive, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .constructions import amalgam_pregroup, leary_stancu_pregroup, robinson_pregroup
from .errors import ConjugationDomainError, DomainError, FormatError, HypothesisError, ResourceError
from .formats import (load_json, load_pregroup, read_amalgam_input, read_fusion_input, read_ls_input,
                      read_robinson_input)
from .fusion import (FusionSystem, fusion_equal, fusion_of_pregroup, generate_fusion, is_sylow_in_pregroup,
                     transport)
from .groups import GroupHom, smallest_prime_factor
from .locality import ObjectSet, check_locality, close_objects
from .partial import abelian_invariants, nerve_census, universal_presentation
from .pregroup import PgSubgroup, Pregroup, is_subgroup, validate_pregroup
from .scenarios import SCENARIOS, run_scenario
from .words import equal_in_universal, reduce

OK, FALSE, USAGE, RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False, sort_keys=False)


def _emit(obj, out: str | None = None) -> None:
    text = _dump(obj)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _members(P: Pregroup, text: str) -> tuple[int, ...]:
    return tuple(sorted(set(P.parse_word(text))))


def _sylow_arg(P: Pregroup, text: str | None) -> PgSubgroup:
    if not text:
        raise UsageError("--sylow is required")
    ms = _members(P, text)
    if 0 not in ms:
        ms = tuple(sorted(ms + (0,)))
    if not is_subgroup(P, ms):
        raise FormatError(f"{text!r} is not a subgroup of the pregroup")
    return PgSubgroup(P, ms)


def _prime(S_order: int, p: int | None) -> int:
    return p if p is not None else (smallest_prime_factor(S_order) if S_order > 1 else 2)


# subcommands -----------------------------------------------------------------

def cmd_check(a) -> int:
    P = load_pregroup(a.file)
    rep = validate_pregroup(P)
    if rep.ok:
        print(f"pregroup: |P| = {P.n}, |D| = {P.domain_size}, all axioms hold")
        return OK
    for line in rep.lines(P):
        print(line)
    return FALSE


def cmd_reduce(a) -> int:
    P = load_pregroup(a.file)
    w = P.parse_word(a.word)
    red, trace = reduce(P, w)
    if a.trace:
        for st in trace.steps:
            step = "drop the unit" if st.merged < 0 else f"at {st.position}: {P.format_word(st.pair)}"
            print(f"  {step} -> ({P.format_word(st.word)})")
    print(P.format_word(red))
    return OK


def cmd_equal(a) -> int:
    P = load_pregroup(a.file)
    cert = equal_in_universal(P, P.parse_word(a.w1), P.parse_word(a.w2))
    if a.emit_cert:
        _emit(cert.to_json(P))
    else:
        print("equal" if cert.equal else f"not equal ({cert.reason})")
    return OK if cert.equal else FALSE


def cmd_build(a) -> int:
    path = Path(a.input)
    data = load_json(path)
    if a.kind == "ls":
        P = leary_stancu_pregroup(read_ls_input(data, path.parent, a.seed))
    elif a.kind == "robinson":
        P = robinson_pregroup(read_robinson_input(data, path.parent, a.seed))
    else:
        P = amalgam_pregroup(read_amalgam_input(data, path.parent))
    rep = validate_pregroup(P)
    _emit(P.to_json(), a.output)
    if a.output:
        print(f"wrote {a.output}: |P| = {P.n}, |D| = {P.domain_size}")
    if not rep.ok:
        for line in rep.lines(P):
            print(line, file=sys.stderr)
        return FALSE
    return OK


def _is_pregroup_file(data) -> bool:
    return isinstance(data, dict) and "elements" in data and "products" in data


def _fusion_from_file(path: str, sylow: str | None, p: int | None,
                      labels_hint: list[str] | None = None) -> tuple[FusionSystem, list[str]]:
    """A fusion system and the labels of the members of S, in index order of its group."""
    data = load_json(path)
    if _is_pregroup_file(data):
        P = Pregroup.from_json(data)
        if sylow is None and labels_hint is not None:
            sylow = ",".join(labels_hint)
        S = _sylow_arg(P, sylow)
        T, to_group = S.as_group()
        back = {v: k for k, v in to_group.items()}
        F = fusion_of_pregroup(P, S, _prime(S.order, p), realisation=(T.whole(), back))
        return F, [P.labels[back[t]] for t in range(T.order)]
    S, q, gens = read_fusion_input(data, Path(path).parent)
    F = generate_fusion(S, gens, p or q)
    return F, list(S.labels)


def cmd_fusion(a) -> int:
    F, labels = _fusion_from_file(a.file, a.sylow, a.p)
    report = F.to_json(a.full)
    lab = lambda ms: [labels[x] for x in ms]
    report["S"] = lab(report["S"])
    report["homsets"] = [dict(h, source=lab(h["source"]), target=lab(h["target"])) for h in report["homsets"]]
    if a.full:
        report["isomorphisms"] = [{"source": lab(g["source"]), "images": lab(g["images"])}
                                  for g in report["isomorphisms"]]
    report["morphisms"] = F.size
    problems = F.check_axioms()
    report["axioms_ok"] = not problems
    _emit(report, a.output)
    return OK if not problems else FALSE


def cmd_fusion_equal(a) -> int:
    F2, lab2 = _fusion_from_file(a.file2, a.sylow2, a.p)
    F1, lab1 = _fusion_from_file(a.file1, a.sylow, a.p, labels_hint=lab2)
    if sorted(lab1) != sorted(lab2):
        raise FormatError("the two Sylow subgroups do not carry the same element labels")
    idx2 = {l: k for k, l in enumerate(lab2)}
    alpha = GroupHom(F1.S, F2.S, {x: idx2[lab1[x]] for x in F1.S.members})
    if not alpha.is_homomorphism():
        raise FormatError("matching the Sylow subgroups by label is not an isomorphism")
    same, diff = fusion_equal(transport(F1, alpha), F2)
    if same:
        print("equal")
        return OK
    lab = lambda ms: ",".join(lab2[x] for x in ms)
    print(f"not equal: a map {lab(diff.source)} -> {lab(diff.target)} only in system {diff.only_in}: "
          + ", ".join(f"{lab2[x]}->{lab2[y]}" for x, y in diff.graph))
    return FALSE


def cmd_sylow(a) -> int:
    P = load_pregroup(a.file)
    S = _sylow_arg(P, a.sylow)
    p = _prime(S.order, a.p)
    res = is_sylow_in_pregroup(P, S, p)
    out = {"sylow": res.ok, "p": p, "S": [P.labels[x] for x in S.members]}
    if res.ok:
        out["certificates"] = [
            {"subgroup": [P.labels[x] for x in k],
             "conjugators": [P.labels[g] for g in c.conjugators],
             "chain": [[P.labels[x] for x in Q.members] for Q in c.subgroups]}
            for k, c in sorted(res.certificates.items())]
    else:
        out["counterexample"] = [P.labels[x] for x in res.counterexample.members]
    _emit(out, a.output)
    return OK if res.ok else FALSE


def cmd_locality(a) -> int:
    P = load_pregroup(a.file)
    S = _sylow_arg(P, a.sylow)
    seeds = [S]
    if a.objects:
        for part in a.objects.split(";"):
            ms = _members(P, part)
            seeds.append(tuple(sorted(set(ms) | {0})))
    try:
        delta = close_objects(P, S, seeds)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    rep = check_locality(P, delta, S, a.maxlen, a.p, a.max_words)
    obj = rep.objectivity
    print(f"objects: {len(delta)}; (Oa) words checked: {obj.words_checked}")
    print(f"verdict: {rep.verdict}")
    out = {
        "verdict": rep.verdict,
        "locality": rep.is_locality,
        "maxlen": obj.maxlen,
        "truncated": obj.truncated,
        "objects": delta.labels(),
        "oa": obj.oa_ok,
        "ob": obj.ob_ok,
        "maximal": rep.maximal,
        "in_domain_not_in_delta": [P.format_word(w) for w in obj.only_in_domain],
        "in_delta_not_in_domain": [{"word": P.format_word(w), "chain": [[P.labels[x] for x in X.members] for X in ch]}
                                   for w, ch in obj.only_in_delta],
        "ob_failures": [{"X": [P.labels[x] for x in X], "g": P.labels[g], "Y": [P.labels[y] for y in Y],
                         "missing": [P.labels[r] for r in R]} for X, g, Y, R in obj.ob_failures],
    }
    if rep.larger_p_subgroup is not None:
        out["larger_p_subgroup"] = [P.labels[x] for x in rep.larger_p_subgroup.members]
    _emit(out, a.output)
    if rep.refuted:
        return FALSE
    return USAGE if obj.truncated else OK


def cmd_presentation(a) -> int:
    P = load_pregroup(a.file)
    pres = universal_presentation(P)
    out = pres.to_json()
    inv = abelian_invariants(pres)
    out["abelian_invariants"] = {"rank": inv.rank, "torsion": list(inv.torsion), "text": str(inv)}
    _emit(out, a.output)
    return OK


def cmd_nerve(a) -> int:
    P = load_pregroup(a.file)
    rep = nerve_census(P, a.dim)
    out = {"counts": rep.counts, "identities_checked": rep.identities_checked,
           "failures": [{"identity": k, "simplex": P.format_word(w), "i": i, "j": j}
                        for k, w, i, j in rep.failures]}
    _emit(out, a.output)
    return OK if rep.ok else FALSE


def cmd_scenario(a) -> int:
    if a.name not in SCENARIOS:
        raise UsageError(f"unknown scenario {a.name!r}; known: {', '.join(SCENARIOS)}")
    out = run_scenario(a.name, a.maxlen)
    _emit(out, a.output)
    return OK if out["ok"] else FALSE


# parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomised choices")
    ap = _Parser(prog="pg", description="Finite pregroups: checks, word problems, fusion and localities.",
                 parents=[common])
    ap.set_defaults(seed=None)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(*args, **kw):
        return _add(*args, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("check", help="validate a pregroup file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reduce", help="reduce a word")
    s.add_argument("file")
    s.add_argument("word")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("equal", help="decide equality of two words in the universal group")
    s.add_argument("file")
    s.add_argument("w1")
    s.add_argument("w2")
    s.add_argument("--emit-cert", action="store_true", help="print a JSON certificate")
    s.set_defaults(func=cmd_equal)

    s = sub.add_parser("build", help="build a pregroup from construction data")
    s.add_argument("kind", choices=["ls", "robinson", "amalgam"])
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    for name, func in (("fusion", cmd_fusion), ("sylow", cmd_sylow)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("--sylow", help="comma-separated members of S (pregroup files)")
        s.add_argument("--p", type=int)
        s.add_argument("-o", "--output")
        if name == "fusion":
            s.add_argument("--full", action="store_true", help="list every isomorphism")
        s.set_defaults(func=func)

    s = sub.add_parser("fusion-equal", help="compare two fusion systems homset by homset")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--sylow")
    s.add_argument("--sylow2")
    s.add_argument("--p", type=int)
    s.set_defaults(func=cmd_fusion_equal)

    s = sub.add_parser("locality", help="objectivity and locality check")
    s.add_argument("file")
    s.add_argument("--sylow", required=True)
    s.add_argument("--objects", help="seed subgroups, ';'-separated, members comma-separated")
    s.add_argument("--maxlen", type=int, default=4)
    s.add_argument("--p", type=int)
    s.add_argument("--max-words", type=int, default=20_000_000)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_locality)

    s = sub.add_parser("presentation", help="presentation of the universal group")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_presentation)

    s = sub.add_parser("nerve", help="simplex counts and simplicial identities")
    s.add_argument("file")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_nerve)

    s = sub.add_parser("scenario", help="run a bundled scenario")
    s.add_argument("name")
    s.add_argument("--maxlen", type=int, default=4)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_scenario)
    return ap


def run(argv: list[str] | None = None) -> int:
    try:
        a = build_parser().parse_args(argv)
        if not getattr(a, "command", None):
            raise UsageError("no subcommand given")
        if a.seed is not None:
            random.seed(a.seed)
        if getattr(a, "maxlen", 4) < 1:
            raise UsageError("--maxlen must be positive")
        return a.func(a)
    except UsageError as exc:
        print(f"pg: {exc}", file=sys.stderr)
        return USAGE
    except (FormatError, DomainError, ConjugationDomainError, HypothesisError, OSError) as exc:
        print(f"pg: error: {exc}", file=sys.stderr)
        return USAGE
    except ResourceError as exc:
        print(f"pg: resource bound: {exc}", file=sys.stderr)
        return RESOURCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
