"""Builders for explicit pregroups and graph-of-groups presentations.

* ``amalgam_pregroup``: the union of two groups glued along a common subgroup,
  with products defined only inside one factor.
* ``leary_stancu_pregroup``: a finite pregroup whose universal group is the
  HNN tower ``S *_{phi_1} ... *_{phi_r}`` for isomorphisms between subgroups.
* ``robinson_pregroup``: a finite pregroup whose universal group is the
  iterated amalgam of ``S`` with groups ``G_i`` along embedded ``S_i``.

Each builder records in ``P.meta`` how every carrier element is parametrised.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import FormatError
from .groups import (FiniteGroup, GroupHom, Subgroup, double_cosets, left_transversal,
                     right_transversal)
from .pregroup import Pregroup

UNDEF = -1


def _coset_transversal(G: FiniteGroup, H: Subgroup, side: str, rng: random.Random | None) -> list[int]:
    """Transversal of left or right cosets of H, with the identity representing H.

    Least-index members by default, random members when ``rng`` is given.
    """
    t = G.table
    seen: set[int] = set()
    reps = []
    for x in range(G.order):
        if x in seen:
            continue
        coset = sorted(t[x][h] for h in H.members) if side == "left" else sorted(t[h][x] for h in H.members)
        seen.update(coset)
        if 0 in coset:
            reps.append(0)
        else:
            reps.append(rng.choice(coset) if rng is not None else coset[0])
    return reps


# amalgams ---------------------------------------------------------------

@dataclass
class AmalgamData:
    A: FiniteGroup
    B: FiniteGroup
    C: FiniteGroup
    phi_A: GroupHom  # C.whole() -> A.whole()
    phi_B: GroupHom  # C.whole() -> B.whole()

    def __post_init__(self):
        for nm, phi, X in (("phi_A", self.phi_A, self.A), ("phi_B", self.phi_B, self.B)):
            if phi.source.parent is not self.C or phi.target.parent is not X:
                raise ValueError(f"{nm} has the wrong source or target")
            if not phi.is_injective() or not phi.is_homomorphism():
                raise ValueError(f"{nm} is not an injective homomorphism")


def amalgam_pregroup(d: AmalgamData, name: str = "") -> Pregroup:
    """Carrier A ⊔ (B minus the image of C); D = pairs inside A or inside B."""
    A, B, C = d.A, d.B, d.C
    from_A = list(range(A.order))
    cA = {d.phi_B(c): d.phi_A(c) for c in range(C.order)}
    from_B = [0] * B.order
    labels = list(A.labels)
    used = set(labels)
    nxt = A.order
    for b in range(B.order):
        if b in cA:
            from_B[b] = cA[b]
        else:
            from_B[b] = nxt
            nxt += 1
            lab = B.labels[b]
            labels.append(lab if lab not in used else f"B:{lab}")
            used.add(labels[-1])
    n = nxt
    table = [[UNDEF] * n for _ in range(n)]
    for x in range(A.order):
        row = A.table[x]
        for y in range(A.order):
            table[x][y] = row[y]
    for x in range(B.order):
        row = B.table[x]
        px = from_B[x]
        for y in range(B.order):
            table[px][from_B[y]] = from_B[row[y]]
    inv = [0] * n
    for x in range(A.order):
        inv[x] = A.inv(x)
    for x in range(B.order):
        inv[from_B[x]] = from_B[B.inv(x)]
    meta = {"kind": "amalgam", "data": d, "from_A": from_A, "from_B": from_B}
    return Pregroup(labels, inv, table, meta=meta, name=name or f"{A.name}*{B.name}")


def amalgam_over_trivial(A: FiniteGroup, B: FiniteGroup) -> AmalgamData:
    C = FiniteGroup(1, [], "1")
    return AmalgamData(A, B, C, GroupHom(C.whole(), A.whole(), {0: 0}),
                       GroupHom(C.whole(), B.whole(), {0: 0}))


# Leary-Stancu ----------------------------------------------------------

@dataclass
class LSData:
    """Fusion data ``phi_i: P_i -> Q_i`` on a p-group S with coset transversals.

    ``A[i]`` represents the right cosets ``Q_i x`` and ``B[i]`` the right
    cosets ``P_i x``; both contain the identity.
    """

    S: FiniteGroup
    maps: list[GroupHom]
    A: list[list[int]] = field(default_factory=list)
    B: list[list[int]] = field(default_factory=list)
    p: int | None = None

    def __post_init__(self):
        for k, phi in enumerate(self.maps):
            if phi.source.parent is not self.S or phi.target.parent is not self.S:
                raise ValueError(f"map {k + 1} does not live on S")
            if not phi.is_injective() or not phi.is_homomorphism():
                raise ValueError(f"map {k + 1} is not an injective homomorphism")
            if set(phi.mapping.values()) != phi.target.member_set:
                raise ValueError(f"map {k + 1} is not onto its target Q_i")
        if not self.A:
            self.A = [right_transversal(self.S, phi.target) for phi in self.maps]
        if not self.B:
            self.B = [right_transversal(self.S, phi.source) for phi in self.maps]
        S = self.S
        for k, phi in enumerate(self.maps):
            for reps, H, nm in ((self.A[k], phi.target, "A"), (self.B[k], phi.source, "B")):
                if 0 not in reps:
                    raise ValueError(f"transversal {nm}_{k + 1} must contain the identity")
                covered = sorted(S.table[h][x] for x in reps for h in H.members)
                if covered != list(range(S.order)):
                    raise ValueError(f"{nm}_{k + 1} is not a right transversal")

    @property
    def r(self) -> int:
        return len(self.maps)

    def P_(self, i: int) -> Subgroup:
        return self.maps[i].source

    def Q_(self, i: int) -> Subgroup:
        return self.maps[i].target

    @classmethod
    def with_random_transversals(cls, S: FiniteGroup, maps: list[GroupHom], rng: random.Random,
                                 p: int | None = None) -> "LSData":
        A = [_coset_transversal(S, phi.target, "right", rng) for phi in maps]
        B = [_coset_transversal(S, phi.source, "right", rng) for phi in maps]
        return cls(S, maps, A, B, p)


def _ls_label(S: FiniteGroup, x: int, letter: str, y: int) -> str:
    parts = ([S.labels[x]] if x else []) + [letter] + ([S.labels[y]] if y else [])
    return ".".join(parts)


def leary_stancu_pregroup(d: LSData, name: str = "") -> Pregroup:
    """The finite pregroup of elements s, a·t_i·a', b·t_i^-1·b'.

    Labels: S labels, then ``a.t1.a2`` style symbols where identity parts
    are omitted and ``T1`` stands for ``t1^-1``.
    """
    S = d.S
    ts = S.table
    inv = S.inverses
    nS = S.order
    keys: list[tuple] = [("S", s) for s in range(nS)]
    for i in range(d.r):
        for a in range(nS):
            for a2 in d.A[i]:
                keys.append(("t", i, a, a2))
        for b in range(nS):
            for b2 in d.B[i]:
                keys.append(("T", i, b, b2))
    pos = {k: n for n, k in enumerate(keys)}

    # x = q * rep with q in H and rep in the transversal
    def split(H: Subgroup, reps: list[int]) -> dict[int, tuple[int, int]]:
        out = {}
        for q in H.members:
            for r in reps:
                out[ts[q][r]] = (q, r)
        return out

    splitQ = [split(d.Q_(i), d.A[i]) for i in range(d.r)]
    splitP = [split(d.P_(i), d.B[i]) for i in range(d.r)]
    phi = [d.maps[i].mapping for i in range(d.r)]
    phinv = [{v: u for u, v in phi[i].items()} for i in range(d.r)]

    def norm_t(i, x, y):
        # x t y = x phi^-1(q) t rep, where y = q rep, q in Q_i
        q, r = splitQ[i][y]
        return pos[("t", i, ts[x][phinv[i][q]], r)]

    def norm_T(i, x, y):
        # x t^-1 y = x phi(p) t^-1 rep, where y = p rep, p in P_i
        p, r = splitP[i][y]
        return pos[("T", i, ts[x][phi[i][p]], r)]

    n = len(keys)
    table = [[UNDEF] * n for _ in range(n)]
    for x, kx in enumerate(keys):
        row = table[x]
        for y, ky in enumerate(keys):
            if kx[0] == "S":
                s = kx[1]
                if ky[0] == "S":
                    row[y] = ts[s][ky[1]]
                elif ky[0] == "t":
                    _, i, a, a2 = ky
                    row[y] = norm_t(i, ts[s][a], a2)
                else:
                    _, i, b, b2 = ky
                    row[y] = norm_T(i, ts[s][b], b2)
            elif ky[0] == "S":
                s = ky[1]
                _, i, a, a2 = kx
                row[y] = norm_t(i, a, ts[a2][s]) if kx[0] == "t" else norm_T(i, a, ts[a2][s])
            elif kx[1] == ky[1] and kx[0] != ky[0]:
                i = kx[1]
                if kx[0] == "t":  # (a t a', b t^-1 b')
                    _, _, a, a2 = kx
                    _, _, b, b2 = ky
                    q = ts[a2][b]
                    if q in d.Q_(i).member_set:
                        row[y] = ts[ts[a][phinv[i][q]]][b2]
                else:  # (b t^-1 b', a t a')
                    _, _, b, b2 = kx
                    _, _, a, a2 = ky
                    u = ts[b2][a]
                    if u in d.P_(i).member_set:
                        row[y] = ts[ts[b][phi[i][u]]][a2]
    invl = [0] * n
    for x, k in enumerate(keys):
        if k[0] == "S":
            invl[x] = inv[k[1]]
        elif k[0] == "t":
            _, i, a, a2 = k
            invl[x] = norm_T(i, inv[a2], inv[a])
        else:
            _, i, b, b2 = k
            invl[x] = norm_t(i, inv[b2], inv[b])
    labels = []
    for k in keys:
        if k[0] == "S":
            labels.append(S.labels[k[1]])
        else:
            _, i, a, a2 = k
            labels.append(_ls_label(S, a, f"{k[0]}{i + 1}", a2))
    meta = {"kind": "leary-stancu", "data": d, "parse": keys, "S_index": list(range(nS))}
    return Pregroup(labels, invl, table, meta=meta, name=name or f"LS({S.name})")


def ls_expected_size(d: LSData) -> int:
    nS = d.S.order
    return nS * (1 + sum(nS // d.P_(i).order + nS // d.Q_(i).order for i in range(d.r)))


# Robinson ---------------------------------------------------------------

@dataclass
class RobinsonFactor:
    """A group ``G`` with ``f: S_i -> G`` embedding S_i as a Sylow subgroup."""

    G: FiniteGroup
    S_i: Subgroup
    f: GroupHom
    H: list[int] = field(default_factory=list)
    T: dict[int, Subgroup] = field(default_factory=dict)
    A: dict[int, list[int]] = field(default_factory=dict)

    @property
    def image(self) -> Subgroup:
        return self.f.image()


@dataclass
class RobinsonData:
    S: FiniteGroup
    factors: list[RobinsonFactor]
    p: int | None = None
    rng: random.Random | None = None

    def __post_init__(self):
        S = self.S
        for k, fac in enumerate(self.factors):
            if fac.S_i.parent is not S:
                raise ValueError(f"S_{k + 1} is not a subgroup of S")
            if fac.f.source != fac.S_i or fac.f.target.parent is not fac.G:
                raise ValueError(f"f_{k + 1} has the wrong source or target")
            if not fac.f.is_injective() or not fac.f.is_homomorphism():
                raise ValueError(f"f_{k + 1} is not an injective homomorphism")
            Sp = fac.image
            G = fac.G
            dcs = [dc for dc in double_cosets(G, Sp, Sp) if 0 not in dc]
            if not fac.H:
                fac.H = [self.rng.choice(dc) if self.rng else dc[0] for dc in dcs]
            else:
                hit = sorted(next(j for j, dc in enumerate(dcs) if h in dc) for h in fac.H
                             if any(h in dc for dc in dcs))
                if hit != list(range(len(dcs))):
                    raise ValueError(f"H_{k + 1} is not a transversal of the non-trivial double cosets")
            finv = {v: u for u, v in fac.f.mapping.items()}
            Spm = Sp.member_set
            for g in fac.H:
                conj = {G.mul(G.mul(g, x), G.inv(g)) for x in Sp.members}  # g S' g^-1
                T = Subgroup(S, tuple(sorted(finv[x] for x in Spm & conj)))
                fac.T.setdefault(g, T)
                if g not in fac.A:
                    fac.A[g] = _coset_transversal(S, fac.T[g], "left", self.rng)

    @property
    def r(self) -> int:
        return len(self.factors)


def robinson_pregroup(d: RobinsonData, name: str = "") -> Pregroup:
    """Carrier S ⊔ {a·g·a' : g in H_i, a in A_{i,g}, a' in S}.

    Labels ``a.g@i.a'`` (identity parts omitted), with ``g`` a label in G_i.
    """
    S = d.S
    ts = S.table
    nS = S.order
    keys: list[tuple] = [("S", s) for s in range(nS)]
    for i, fac in enumerate(d.factors):
        for g in fac.H:
            for a in fac.A[g]:
                for a2 in range(nS):
                    keys.append(("g", i, a, g, a2))
    pos = {k: n for n, k in enumerate(keys)}

    # per factor: double coset decomposition k0 = f(u) k f(u') and left splits xu = c v
    decomp = []
    lsplit = []
    for fac in d.factors:
        G = fac.G
        f = fac.f.mapping
        finv = {v: u for u, v in f.items()}
        dec = {}
        for k in fac.H:
            for u in fac.S_i.members:
                for u2 in fac.S_i.members:
                    k0 = G.mul(G.mul(f[u], k), f[u2])
                    dec.setdefault(k0, (u, k, u2))
        ls = {}
        for k in fac.H:
            T = fac.T[k]
            for c in fac.A[k]:
                for v in T.members:
                    ls[(k, ts[c][v])] = (c, v)
        decomp.append((dec, finv))
        lsplit.append(ls)

    def norm(i, x, k0, y):
        """Carrier index of x·k0·y with x, y in S and k0 in G_i."""
        fac = d.factors[i]
        G = fac.G
        dec, finv = decomp[i]
        if k0 in finv:
            return ts[ts[x][finv[k0]]][y]
        u, k, u2 = dec[k0]
        c, v = lsplit[i][(k, ts[x][u])]
        w = finv[G.mul(G.mul(G.inv(k), fac.f(v)), k)]
        return pos[("g", i, c, k, ts[ts[w][u2]][y])]

    n = len(keys)
    table = [[UNDEF] * n for _ in range(n)]
    for x, kx in enumerate(keys):
        row = table[x]
        for y, ky in enumerate(keys):
            if kx[0] == "S" and ky[0] == "S":
                row[y] = ts[kx[1]][ky[1]]
            elif kx[0] == "S":
                _, i, a, g, a2 = ky
                row[y] = norm(i, ts[kx[1]][a], g, a2)
            elif ky[0] == "S":
                _, i, a, g, a2 = kx
                row[y] = norm(i, a, g, ts[a2][ky[1]])
            else:
                _, i, a, g, a2 = kx
                _, j, b, h, b2 = ky
                if i != j:
                    continue
                fac = d.factors[i]
                u = ts[a2][b]
                if u not in fac.S_i.member_set:
                    continue
                G = fac.G
                row[y] = norm(i, a, G.mul(G.mul(g, fac.f(u)), h), b2)
    invl = [0] * n
    for x, k in enumerate(keys):
        if k[0] == "S":
            invl[x] = S.inv(k[1])
        else:
            _, i, a, g, a2 = k
            invl[x] = norm(i, S.inv(a2), d.factors[i].G.inv(g), S.inv(a))
    labels = []
    for k in keys:
        if k[0] == "S":
            labels.append(S.labels[k[1]])
        else:
            _, i, a, g, a2 = k
            mid = f"{d.factors[i].G.labels[g]}@{i + 1}"
            parts = ([S.labels[a]] if a else []) + [mid] + ([S.labels[a2]] if a2 else [])
            labels.append(".".join(parts))
    meta = {"kind": "robinson", "data": d, "parse": keys, "S_index": list(range(nS))}
    return Pregroup(labels, invl, table, meta=meta, name=name or f"Rob({S.name})")


def robinson_expected_size(d: RobinsonData) -> int:
    nS = d.S.order
    return nS * (1 + sum(nS // fac.T[g].order for fac in d.factors for g in fac.H))


# domain descriptions -----------------------------------------------------

def _ls_condition(P: Pregroup, word: Sequence[int]) -> bool:
    d: LSData = P.meta["data"]
    keys = P.meta["parse"]
    ts = d.S.table
    idx = None
    prev = None  # key of the previous non-S term
    s = 0        # product of S terms since then
    for x in word:
        k = keys[x]
        if k[0] == "S":
            s = ts[s][k[1]]
            continue
        if idx is None:
            idx = k[1]
        elif k[1] != idx:
            return False
        if prev is not None:
            if prev[0] == k[0]:
                return False
            if prev[0] == "t":   # a t a' ... b t^-1 b': a' s b in Q_i
                if ts[ts[prev[3]][s]][k[2]] not in d.Q_(idx).member_set:
                    return False
            else:                # b t^-1 b' ... a t a': b' s a in P_i
                if ts[ts[prev[3]][s]][k[2]] not in d.P_(idx).member_set:
                    return False
        prev = k
        s = 0
    return True


def _robinson_condition(P: Pregroup, word: Sequence[int]) -> bool:
    d: RobinsonData = P.meta["data"]
    keys = P.meta["parse"]
    ts = d.S.table
    idx = None
    prev = None
    s = 0
    for x in word:
        k = keys[x]
        if k[0] == "S":
            s = ts[s][k[1]]
            continue
        if idx is None:
            idx = k[1]
        elif k[1] != idx:
            return False
        if prev is not None and ts[ts[prev[4]][s]][k[2]] not in d.factors[idx].S_i.member_set:
            return False
        prev = k
        s = 0
    return True


@dataclass
class DomainDescriptionReport:
    checked: int
    mismatches: list[tuple[tuple[int, ...], bool, bool]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def explicit_domain_condition(P: Pregroup, word: Sequence[int]) -> bool:
    kind = P.meta.get("kind")
    if kind == "leary-stancu":
        return _ls_condition(P, word)
    if kind == "robinson":
        return _robinson_condition(P, word)
    raise ValueError("pregroup was not built by leary_stancu_pregroup or robinson_pregroup")


def domain_description_check(P: Pregroup, maxlen: int = 4, limit: int = 20) -> DomainDescriptionReport:
    """Compare in_domain with the explicit alternation conditions on all short words."""
    from .partial import in_domain

    explicit_domain_condition(P, [])
    mism = []
    checked = 0
    for L in range(maxlen + 1):
        for w in itertools.product(range(P.n), repeat=L):
            checked += 1
            a = in_domain(P, w)
            b = explicit_domain_condition(P, w)
            if a != b and len(mism) < limit:
                mism.append((w, a, b))
    return DomainDescriptionReport(checked, mism)


# graphs of groups ---------------------------------------------------------

@dataclass
class GraphEdge:
    """Geometric edge from ``tail`` to ``head`` with group ``group`` and two embeddings.

    ``to_tail`` and ``to_head`` map edge-group indices to vertex-group indices.
    """

    tail: int
    head: int
    group: FiniteGroup
    to_tail: GroupHom
    to_head: GroupHom
    name: str = ""


@dataclass
class GraphOfGroups:
    vertices: list[FiniteGroup]
    edges: list[GraphEdge]
    vertex_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.vertex_names:
            self.vertex_names = [f"v{k}" for k in range(len(self.vertices))]
        for k, e in enumerate(self.edges):
            if not e.name:
                e.name = f"e{k + 1}"
            for phi, v in ((e.to_tail, e.tail), (e.to_head, e.head)):
                if not 0 <= v < len(self.vertices):
                    raise FormatError(f"edge {e.name} refers to a missing vertex")
                if phi.source.parent is not e.group or phi.target.parent is not self.vertices[v]:
                    raise ValueError(f"edge map of {e.name} has wrong source or target")
                if not phi.is_injective() or not phi.is_homomorphism():
                    raise ValueError(f"edge map of {e.name} is not an injective homomorphism")

    def is_connected(self) -> bool:
        nv = len(self.vertices)
        if nv == 0:
            return False
        adj = {v: set() for v in range(nv)}
        for e in self.edges:
            adj[e.tail].add(e.head)
            adj[e.head].add(e.tail)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == nv

    def bfs_tree(self) -> frozenset[int]:
        """Edges of the breadth-first spanning tree from vertex 0, least edge index first."""
        seen = {0}
        tree = []
        frontier = [0]
        while frontier:
            nxt = []
            for v in frontier:
                for k, e in enumerate(self.edges):
                    for a, b in ((e.tail, e.head), (e.head, e.tail)):
                        if a == v and b not in seen:
                            seen.add(b)
                            tree.append(k)
                            nxt.append(b)
            frontier = nxt
        return frozenset(tree)

    def spanning_trees(self) -> list[frozenset[int]]:
        nv = len(self.vertices)
        out = []
        for combo in itertools.combinations(range(len(self.edges)), nv - 1):
            parent = list(range(nv))

            def root(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            ok = True
            for k in combo:
                a, b = root(self.edges[k].tail), root(self.edges[k].head)
                if a == b:
                    ok = False
                    break
                parent[a] = b
            if ok:
                out.append(frozenset(combo))
        return out


def _edge_from(H: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """H as a group in its own right, with its inclusion into the parent."""
    E = H.as_group()
    G = H.parent
    return E, GroupHom(E.whole(), G.whole(), dict(enumerate(H.embedding_from(E))))


def amalgam_graph(d: AmalgamData) -> GraphOfGroups:
    """One edge from A to B carrying C."""
    return GraphOfGroups([d.A, d.B], [GraphEdge(0, 1, d.C, d.phi_A, d.phi_B)], ["A", "B"])


def ls_graph(d: LSData) -> GraphOfGroups:
    """One vertex S with a loop per map ``phi_i: P_i -> Q_i``."""
    edges = []
    for k, phi in enumerate(d.maps):
        E, inc = _edge_from(phi.source)
        to_head = GroupHom(E.whole(), d.S.whole(), {c: phi.mapping[x] for c, x in inc.mapping.items()})
        edges.append(GraphEdge(0, 0, E, inc, to_head, f"t{k + 1}"))
    return GraphOfGroups([d.S], edges, ["S"])


def robinson_graph(d: RobinsonData) -> GraphOfGroups:
    """A star: S in the middle, an edge carrying S_i to each G_i."""
    edges = []
    for k, fac in enumerate(d.factors):
        E, inc = _edge_from(fac.S_i)
        to_head = GroupHom(E.whole(), fac.G.whole(), {c: fac.f.mapping[x] for c, x in inc.mapping.items()})
        edges.append(GraphEdge(0, k + 1, E, inc, to_head))
    return GraphOfGroups([d.S] + [fac.G for fac in d.factors], edges,
                         ["S"] + [f"G{k + 1}" for k in range(d.r)])


def graph_presentation(g: GraphOfGroups, tree: frozenset[int] | None = None):
    """Presentation of the fundamental group relative to a spanning tree.

    Generators: every vertex-group element (tagged with its vertex) and one
    letter per geometric edge; the reversed edge is the inverse letter.
    Relators: vertex multiplication tables, the unit relators, the edge
    relations ``e · to_head(c) · e^-1 = to_tail(c)`` and ``e = 1`` on tree edges.
    """
    from .partial import Presentation

    if not g.is_connected():
        raise ValueError("graph of groups is not connected")
    if tree is None:
        tree = g.bfs_tree()
    tree = frozenset(tree)
    if len(tree) != len(g.vertices) - 1 or tree not in set(g.spanning_trees()):
        raise ValueError("edge subset is not a spanning tree")
    gens: list[str] = []
    for v, G in enumerate(g.vertices):
        gens += [f"{g.vertex_names[v]}:{lab}" for lab in G.labels]
    gens += [e.name for e in g.edges]
    rels: list[list[tuple[str, int]]] = []
    for v, G in enumerate(g.vertices):
        nm = g.vertex_names[v]
        lab = G.labels
        rels.append([(f"{nm}:{lab[0]}", 1)])
        for x in range(G.order):
            for y in range(G.order):
                if x and y:
                    rels.append([(f"{nm}:{lab[x]}", 1), (f"{nm}:{lab[y]}", 1),
                                 (f"{nm}:{lab[G.mul(x, y)]}", -1)])
    for k, e in enumerate(g.edges):
        Vt, Vh = g.vertices[e.tail], g.vertices[e.head]
        nt, nh = g.vertex_names[e.tail], g.vertex_names[e.head]
        for c in range(e.group.order):
            rels.append([(e.name, 1), (f"{nh}:{Vh.labels[e.to_head(c)]}", 1), (e.name, -1),
                         (f"{nt}:{Vt.labels[e.to_tail(c)]}", -1)])
        if k in tree:
            rels.append([(e.name, 1)])
    return Presentation(gens, rels)
