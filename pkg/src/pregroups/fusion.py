"""Fusion systems over finite p-groups.

A fusion system is stored through its isomorphisms: for every subgroup P of
S, the set of graphs of the injective maps out of P that belong to the
system, each regarded as an isomorphism onto its image.  A morphism
``P -> Q`` is such an isomorphism whose image lies in Q, which makes the
"isomorphism followed by inclusion" factorisation hold by construction.

Graphs are tuples of ``(x, phi(x))`` pairs sorted by ``x``, in the index
space of the ambient group of ``S``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ResourceError
from .groups import (FiniteGroup, GroupHom, Subgroup, is_prime, max_group_order,
                     smallest_prime_factor, subgroups)
from .pregroup import PgSubgroup, Pregroup, conj_domain, is_subgroup, subgroups_of_pregroup

Graph = tuple


def _key(members: Iterable[int]) -> frozenset[int]:
    return frozenset(members)


def _image(graph: Graph) -> frozenset[int]:
    return frozenset(y for _, y in graph)


def _compose(first: Graph, second: Graph) -> Graph:
    """``second`` after ``first``."""
    m = dict(second)
    return tuple((x, m[y]) for x, y in first)


def _inverse(graph: Graph) -> Graph:
    return tuple(sorted((y, x) for x, y in graph))


def subgroups_of(S: Subgroup) -> list[Subgroup]:
    """Subgroups of S as subgroups of its ambient group, sorted by (order, members)."""
    G = S.parent
    if S.order == G.order:
        return subgroups(G)
    H = S.as_group()
    emb = S.embedding_from(H)
    out = [Subgroup(G, tuple(sorted(emb[m] for m in K.members))) for K in subgroups(H)]
    out.sort(key=lambda s: (s.order, s.members))
    return out


def _prime_of(S: Subgroup, p: int | None) -> int:
    n = S.order
    if p is None:
        if n == 1:
            return 2
        p = smallest_prime_factor(n)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    while n % p == 0:
        n //= p
    if n != 1:
        raise ValueError(f"S has order {S.order}, not a power of {p}")
    return p


@dataclass
class FusionSystem:
    S: Subgroup
    p: int
    objects: list[Subgroup]
    isos: dict[frozenset[int], set[Graph]] = field(default_factory=dict)

    @property
    def group(self) -> FiniteGroup:
        return self.S.parent

    def object_for(self, members: Iterable[int]) -> Subgroup:
        k = _key(members)
        for Q in self.objects:
            if Q.member_set == k:
                return Q
        raise KeyError("not a subgroup of S")

    def homset(self, P: Subgroup | Iterable[int], Q: Subgroup | Iterable[int]) -> set[Graph]:
        kp = _key(P.members if isinstance(P, Subgroup) else P)
        kq = _key(Q.members if isinstance(Q, Subgroup) else Q)
        return {g for g in self.isos.get(kp, ()) if _image(g) <= kq}

    def automorphisms(self, P: Subgroup) -> set[Graph]:
        return self.homset(P, P)

    def homs(self, P: Subgroup, Q: Subgroup) -> list[GroupHom]:
        return [GroupHom(P, Q, dict(g)) for g in sorted(self.homset(P, Q))]

    def contains(self, graph: Graph) -> bool:
        graph = tuple(sorted(graph))
        return graph in self.isos.get(_key(x for x, _ in graph), ())

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.isos.values())

    def counts(self) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
        """Per-pair homset cardinalities, over all ordered pairs of objects."""
        return [(P.members, Q.members, len(self.homset(P, Q))) for P in self.objects for Q in self.objects]

    def check_axioms(self) -> list[str]:
        """Problems with (F1), (F2) or closure; empty for a fusion system."""
        G = self.group
        problems = []
        objs = {Q.member_set for Q in self.objects}
        inner = _inner_isos(self.S, self.objects)
        for P in self.objects:
            k = P.member_set
            for g in self.isos.get(k, ()):
                m = dict(g)
                if set(m) != k or len(set(m.values())) != len(m):
                    problems.append(f"non-injective map on {P.members}")
                    continue
                if _image(g) not in objs:
                    problems.append(f"image of a map on {P.members} is not a subgroup of S")
                    continue
                if any(m[G.mul(x, y)] != G.mul(m[x], m[y]) for x in m for y in m):
                    problems.append(f"map on {P.members} is not a homomorphism")
                if _inverse(g) not in self.isos.get(_image(g), ()):
                    problems.append(f"inverse of an isomorphism on {P.members} is missing")
                for h in self.isos.get(_image(g), ()):
                    if _compose(g, h) not in self.isos[k]:
                        problems.append(f"composite through {sorted(_image(g))} is missing")
                        break
                for R in self.objects:
                    if R.order < P.order and R.member_set <= k:
                        if tuple((x, m[x]) for x in R.members) not in self.isos.get(R.member_set, ()):
                            problems.append(f"restriction of a map on {P.members} to {R.members} is missing")
            for g in inner[k]:
                if g not in self.isos.get(k, ()):
                    problems.append(f"(F1): a conjugation by S on {P.members} is missing")
                    break
        return problems

    def to_json(self, full: bool = False) -> dict:
        out = {"S": list(self.S.members), "p": self.p,
               "homsets": [{"source": list(a), "target": list(b), "count": c} for a, b, c in self.counts()]}
        if full:
            out["isomorphisms"] = [{"source": [x for x, _ in g], "images": [y for _, y in g]}
                                   for P in self.objects for g in sorted(self.isos.get(P.member_set, ()))]
        return out


def _empty(S: Subgroup, p: int | None) -> FusionSystem:
    p = _prime_of(S, p)
    objs = subgroups_of(S)
    return FusionSystem(S, p, objs, {Q.member_set: set() for Q in objs})


def _as_subgroup(S) -> Subgroup:
    return S.whole() if isinstance(S, FiniteGroup) else S


def _inner_isos(S: Subgroup, objects: list[Subgroup]) -> dict[frozenset[int], set[Graph]]:
    G = S.parent
    return {Q.member_set: {tuple((x, G.conj(x, s)) for x in Q.members) for s in S.members}
            for Q in objects}


def inner_fusion(S: Subgroup | FiniteGroup, p: int | None = None) -> FusionSystem:
    """Hom_S(P, Q) for all P, Q <= S."""
    S = _as_subgroup(S)
    F = _empty(S, p)
    F.isos = _inner_isos(S, F.objects)
    return F


def _close(F: FusionSystem) -> FusionSystem:
    """Close under restriction, inverses and composition until nothing changes."""
    subs_below = {P.member_set: [R for R in F.objects if R.order < P.order and R.member_set <= P.member_set]
                  for P in F.objects}
    changed = True
    while changed:
        changed = False
        # restriction first
        for P in F.objects:
            for g in list(F.isos[P.member_set]):
                m = dict(g)
                for R in subs_below[P.member_set]:
                    r = tuple((x, m[x]) for x in R.members)
                    if r not in F.isos[R.member_set]:
                        F.isos[R.member_set].add(r)
                        changed = True
        # then inverses and composition
        for P in F.objects:
            for g in list(F.isos[P.member_set]):
                inv = _inverse(g)
                acc = F.isos[_image(g)]
                if inv not in acc:
                    acc.add(inv)
                    changed = True
                for h in list(F.isos[_image(g)]):
                    c = _compose(g, h)
                    if c not in F.isos[P.member_set]:
                        F.isos[P.member_set].add(c)
                        changed = True
    return F


def _graph_of(hom: GroupHom) -> Graph:
    return tuple(sorted(hom.mapping.items()))


def generate_fusion(S: Subgroup | FiniteGroup, gens: Sequence[GroupHom | Graph] = (),
                    p: int | None = None) -> FusionSystem:
    """Smallest fusion system over S containing ``gens``."""
    S = _as_subgroup(S)
    F = inner_fusion(S, p)
    objs = {Q.member_set for Q in F.objects}
    G = S.parent
    for h in gens:
        g = _graph_of(h) if isinstance(h, GroupHom) else tuple(sorted(h))
        if isinstance(h, GroupHom) and h.source.parent is not G:
            raise ValueError("generator does not live on the ambient group of S")
        src = _key(x for x, _ in g)
        if src not in objs or _image(g) not in objs:
            raise ValueError("generator is not between subgroups of S")
        if len(_image(g)) != len(g):
            raise ValueError("generator is not injective")
        m = dict(g)
        if any(m[G.mul(x, y)] != G.mul(m[x], m[y]) for x in m for y in m):
            raise ValueError("generator is not a homomorphism")
        F.isos[src].add(g)
    return _close(F)


def all_morphisms(F: FusionSystem) -> list[Graph]:
    return [g for P in F.objects for g in sorted(F.isos[P.member_set])]


def fusion_of_group(G: FiniteGroup, S: Subgroup, p: int | None = None) -> FusionSystem:
    """Hom_G(P, Q) for subgroups of S, by scanning the elements of G."""
    if G.order > max_group_order():
        raise ResourceError(f"group order {G.order} exceeds bound {max_group_order()}")
    if S.parent is not G:
        raise ValueError("S is not a subgroup of G")
    F = _empty(S, p)
    objs = {Q.member_set for Q in F.objects}
    for Q in F.objects:
        acc = F.isos[Q.member_set]
        for g in range(G.order):
            gr = tuple((x, G.conj(x, g)) for x in Q.members)
            if _image(gr) in objs:
                acc.add(gr)
    return F


def _realisation(P: Pregroup, S: PgSubgroup) -> tuple[Subgroup, dict[int, int]]:
    """A group carrying S, with a map from group indices to pregroup elements."""
    data = P.meta.get("data")
    sidx = P.meta.get("S_index")
    if data is not None and sidx is not None and isinstance(getattr(data, "S", None), FiniteGroup):
        if tuple(sorted(sidx)) == S.members:
            return data.S.whole(), {s: sidx[s] for s in range(data.S.order)}
    G, to_group = S.as_group()
    return G.whole(), {v: k for k, v in to_group.items()}


def fusion_of_pregroup(P: Pregroup, S: PgSubgroup, p: int | None = None,
                       realisation: tuple[Subgroup, dict[int, int]] | None = None) -> FusionSystem:
    """Fusion system over S generated by the conjugation maps of P.

    ``realisation`` is ``(T, to_pregroup)``: a group model T of S and the
    map from its indices to elements of P.  By default the group the
    pregroup was built from is used when available.
    """
    if not is_subgroup(P, S.members):
        raise ValueError("S is not a subgroup of P")
    T, to_pg = realisation if realisation is not None else _realisation(P, S)
    if sorted(to_pg[x] for x in T.members) != list(S.members):
        raise ValueError("realisation does not match S")
    from_pg = {v: k for k, v in to_pg.items()}
    base = _empty(T, p)
    Sset = S.member_set
    gens = []
    for g in range(P.n):
        dom = conj_domain(P, g)
        for Q in base.objects:
            qs = [to_pg[x] for x in Q.members]
            if not all(x in dom for x in qs):
                continue
            img = [P.conj(x, g) for x in qs]
            if not all(y in Sset for y in img):
                continue
            gens.append(tuple((x, from_pg[y]) for x, y in zip(Q.members, img)))
    return generate_fusion(T, list(dict.fromkeys(gens)), base.p)


def transport(F: FusionSystem, alpha: GroupHom) -> FusionSystem:
    """Image of F under an isomorphism ``alpha`` from F.S onto another p-group."""
    if alpha.source.member_set != F.S.member_set or not alpha.is_injective():
        raise ValueError("alpha must be injective on S")
    T = alpha.image()
    out = _empty(T, F.p)
    a = alpha.mapping
    for k, gs in F.isos.items():
        nk = frozenset(a[x] for x in k)
        out.isos[nk] = {tuple(sorted((a[x], a[y]) for x, y in g)) for g in gs}
    return out


@dataclass
class FusionDifference:
    source: tuple[int, ...]
    target: tuple[int, ...]
    graph: Graph
    only_in: int  # 1 or 2


def fusion_equal(F1: FusionSystem, F2: FusionSystem) -> tuple[bool, FusionDifference | None]:
    """Homset-by-homset comparison, with the first difference found."""
    if F1.S.parent is not F2.S.parent or F1.S.members != F2.S.members:
        raise ValueError("fusion systems live over different p-groups")
    for P in F1.objects:
        a = F1.isos.get(P.member_set, set())
        b = F2.isos.get(P.member_set, set())
        if a != b:
            if a - b:
                g = min(a - b)
                return False, FusionDifference(P.members, tuple(sorted(_image(g))), g, 1)
            g = min(b - a)
            return False, FusionDifference(P.members, tuple(sorted(_image(g))), g, 2)
    return True, None


def is_fusion_system(S: Subgroup, morphisms: set[Graph], objects: list[Subgroup], p: int) -> bool:
    """Check whether a set of graphs (isomorphisms onto images) forms a fusion system."""
    F = FusionSystem(S, p, objects, {Q.member_set: set() for Q in objects})
    for g in morphisms:
        F.isos[_key(x for x, _ in g)].add(g)
    return not F.check_axioms()


def brute_force_generated(S: Subgroup | FiniteGroup, gens: Sequence[Graph], p: int | None = None) -> FusionSystem:
    """Intersection of every fusion system over S containing ``gens``.

    Enumerates all sets of injective maps between subgroups, so it is only
    run for |S| <= 4.
    """
    S = _as_subgroup(S)
    if S.order > 4:
        raise ResourceError("brute-force fusion enumeration is limited to |S| <= 4")
    base = _empty(S, p)
    G = S.parent
    cand = []
    objs = base.objects
    for P in objs:
        for Q in objs:
            if Q.order != P.order:
                continue
            for images in itertools.permutations(Q.members):
                m = dict(zip(P.members, images))
                if all(m[G.mul(x, y)] == G.mul(m[x], m[y]) for x in m for y in m):
                    cand.append(tuple(sorted(m.items())))
    gens = [tuple(sorted(g)) for g in gens]
    inter = None
    for r in range(len(cand) + 1):
        for combo in itertools.combinations(cand, r):
            cs = set(combo)
            if not all(g in cs for g in gens):
                continue
            if is_fusion_system(S, cs, objs, base.p):
                inter = cs if inter is None else inter & cs
    for g in inter or ():
        base.isos[_key(x for x, _ in g)].add(g)
    return base


# Sylow subgroups of pregroups -------------------------------------------

@dataclass
class SylowCertificate:
    """For one p-subgroup: conjugators ``g_1..g_r`` and subgroups ``P_0..P_r`` ending in S."""

    conjugators: list[int]
    subgroups: list[PgSubgroup]

    def verify(self, P: Pregroup, S: PgSubgroup) -> bool:
        if len(self.subgroups) != len(self.conjugators) + 1:
            return False
        for g, A, B in zip(self.conjugators, self.subgroups, self.subgroups[1:]):
            dom = conj_domain(P, g)
            if not A.member_set <= dom:
                return False
            img = {P.conj(x, g) for x in A.members}
            if img != B.member_set or not is_subgroup(P, img):
                return False
            t = P.table
            if any(P.conj(t[x][y], g) != t[P.conj(x, g)][P.conj(y, g)] for x in A.members for y in A.members):
                return False
        return self.subgroups[-1].member_set <= S.member_set


@dataclass
class SylowResult:
    ok: bool
    certificates: dict[tuple[int, ...], SylowCertificate]
    counterexample: PgSubgroup | None = None


def p_subgroups_of_pregroup(P: Pregroup, p: int) -> list[PgSubgroup]:
    out = []
    for Q in subgroups_of_pregroup(P):
        n = Q.order
        while n % p == 0:
            n //= p
        if n == 1:
            out.append(Q)
    return out


def is_sylow_in_pregroup(P: Pregroup, S: PgSubgroup, p: int | None = None) -> SylowResult:
    """Decide whether every p-subgroup reaches S through single conjugations.

    Breadth-first search backwards from the subgroups of S over the
    conjugation graph; each p-subgroup gets a shortest chain.
    """
    if not is_subgroup(P, S.members):
        raise ValueError("S is not a subgroup of P")
    if p is None:
        p = smallest_prime_factor(S.order) if S.order > 1 else 2
    psubs = p_subgroups_of_pregroup(P, p)
    keys = {Q.member_set: Q for Q in psubs}
    doms = [conj_domain(P, g) for g in range(P.n)]
    # forward edges Q -> Q^g
    edges: dict[frozenset[int], list[tuple[int, frozenset[int]]]] = {k: [] for k in keys}
    for k in keys:
        for g in range(P.n):
            if k <= doms[g]:
                img = frozenset(P.conj(x, g) for x in k)
                if img in keys:
                    edges[k].append((g, img))
    # backwards search from subgroups inside S
    nxt: dict[frozenset[int], tuple[int, frozenset[int]] | None] = {}
    queue = deque()
    for k in keys:
        if k <= S.member_set:
            nxt[k] = None
            queue.append(k)
    rev: dict[frozenset[int], list[tuple[int, frozenset[int]]]] = {k: [] for k in keys}
    for k, es in edges.items():
        for g, img in es:
            rev[img].append((g, k))
    while queue:
        k = queue.popleft()
        for g, src in rev[k]:
            if src not in nxt:
                nxt[src] = (g, k)
                queue.append(src)
    certs = {}
    counter = None
    for Q in psubs:
        k = Q.member_set
        if k not in nxt:
            if counter is None or Q.order > counter.order:
                counter = Q
            continue
        gs, chain = [], [Q]
        while nxt[k] is not None:
            g, k = nxt[k]
            gs.append(g)
            chain.append(keys[k])
        certs[Q.members] = SylowCertificate(gs, chain)
    return SylowResult(counter is None, certs, counter)
