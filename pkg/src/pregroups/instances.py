"""Small named instances used by the scenarios, the tests and the benchmark."""

from __future__ import annotations

import itertools
import random

from .constructions import (AmalgamData, LSData, RobinsonData, RobinsonFactor, amalgam_over_trivial,
                            amalgam_pregroup, ls_expected_size,
                            robinson_expected_size)
from .groups import (FiniteGroup, GroupHom, Subgroup, alternating_group, cyclic_group, dihedral_group,
                     direct_product, gl3_f2, gl3_matrix_perm, hom_from_images, identity_hom, klein_four,
                     normalizer, random_embedding, subgroups, sylow_subgroup, symmetric_group)
from .pregroup import Pregroup


def klein_subgroups(S: Subgroup | FiniteGroup) -> list[Subgroup]:
    """Subgroups of order 4 and exponent 2, in the order ``subgroups`` lists them."""
    G = S if isinstance(S, FiniteGroup) else S.parent
    inside = None if isinstance(S, FiniteGroup) else S.member_set
    out = []
    for H in subgroups(G):
        if H.order == 4 and all(G.element_order(x) <= 2 for x in H.members):
            if inside is None or H.member_set <= inside:
                out.append(H)
    return out


def inclusion(H: Subgroup, K: Subgroup) -> GroupHom:
    """The identity map of a subgroup into an overgroup."""
    return GroupHom(H, K, {x: x for x in H.members})


# amalgams -------------------------------------------------------------------

def c4_amalgam_c2() -> AmalgamData:
    """C4 *_{C2} C4 with the two squares identified."""
    A = cyclic_group(4)
    B = FiniteGroup(4, [[1, 2, 3, 0]], "C4b", ["b"])
    C = cyclic_group(2)
    phi_A = GroupHom(C.whole(), A.whole(), {0: 0, 1: A.label_index["a2"]})
    phi_B = GroupHom(C.whole(), B.whole(), {0: 0, 1: B.label_index["b2"]})
    return AmalgamData(A, B, C, phi_A, phi_B)


def c2_free_c4() -> AmalgamData:
    """C2 * C4 over the trivial group."""
    return amalgam_over_trivial(cyclic_group(2), FiniteGroup(4, [[1, 2, 3, 0]], "C4b", ["b"]))


def c2_free_c3() -> AmalgamData:
    return amalgam_over_trivial(cyclic_group(2), FiniteGroup(3, [[1, 2, 0]], "C3b", ["b"]))


# Leary-Stancu data ------------------------------------------------------------

def ls_c3_inversion() -> LSData:
    S = cyclic_group(3)
    return LSData(S, [hom_from_images(S.whole(), [1], [2], S.whole())], p=3)


def ls_c4_square_identity() -> LSData:
    S = cyclic_group(4)
    H = S.subgroup([0, S.label_index["a2"]])
    return LSData(S, [identity_hom(H)], p=2)


def ls_d8_outer() -> LSData:
    """D8 with a 3-cycle on the involutions of a Klein subgroup."""
    S = dihedral_group(4)
    V = klein_subgroups(S)[0]
    a, b, c = (x for x in V.members if x)
    return LSData(S, [GroupHom(V, V, {0: 0, a: b, b: c, c: a})], p=2)


def ls_d8_klein_swap() -> LSData:
    """D8 with an isomorphism between its two Klein subgroups, so P_1 != Q_1."""
    S = dihedral_group(4)
    V, V2 = klein_subgroups(S)[:2]
    src = [x for x in V.members if x]
    dst = [x for x in V2.members if x]
    return LSData(S, [GroupHom(V, V2, {0: 0, **dict(zip(src, dst))})], p=2)


def ls_c4_two_equal() -> LSData:
    """Two copies of the identity on the square subgroup of C4."""
    d = ls_c4_square_identity()
    return LSData(d.S, [d.maps[0], d.maps[0]], p=2)


def ls_c2_trivial_edge() -> LSData:
    """HNN extension of C2 over the trivial subgroup."""
    S = cyclic_group(2)
    return LSData(S, [identity_hom(S.trivial())], p=2)


# Robinson data ---------------------------------------------------------------

def robinson_s3() -> RobinsonData:
    """S = C2 embedded in S3 as a transposition."""
    S = cyclic_group(2)
    G = symmetric_group(3)
    f = hom_from_images(S.whole(), [1], [G.index[(1, 0, 2)]], G.whole())
    return RobinsonData(S, [RobinsonFactor(G, S.whole(), f)], p=2)


def robinson_d8_a4() -> RobinsonData:
    """A Klein subgroup of D8 embedded as the Sylow 2-subgroup of A4."""
    S = dihedral_group(4)
    G = alternating_group(4)
    V = klein_subgroups(S)[0]
    target = [x for x in normal_klein_of_a4(G).members if x]
    gens = list(V.generators)
    for a, b in itertools.permutations(target, 2):
        try:
            f = hom_from_images(V, gens, [a, b], G.whole())
        except ValueError:
            continue
        return RobinsonData(S, [RobinsonFactor(G, V, f)], p=2)
    raise RuntimeError("no embedding found")  # pragma: no cover


def normal_klein_of_a4(G: FiniteGroup) -> Subgroup:
    return klein_subgroups(G)[0]


# GL3(F2) ----------------------------------------------------------------------

def gl3_setup():
    """GL3(F2), its upper unitriangular S, the Klein subgroups V, V' and the cyclic C."""
    G = gl3_f2()
    gens = [gl3_matrix_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            gl3_matrix_perm([[1, 0, 0], [0, 1, 1], [0, 0, 1]])]
    S = G.generated([G.index[g] for g in gens])
    V, V2 = klein_subgroups(S)
    C = next(H for H in subgroups(G) if H.order == 4 and H.member_set <= S.member_set
             and any(G.element_order(x) == 4 for x in H.members))
    return G, S, V, V2, C


def gl3_locality() -> tuple[Pregroup, dict]:
    """The amalgam N_G(V) *_S N_G(V') written with GL3 element labels.

    Returns the pregroup and a dict with the carrier positions of ``C``,
    ``V``, ``V2``, ``S``, ``NV`` and ``NV2`` plus ``to_G``, the element of
    G each carrier element stands for.
    """
    G, S, V, V2, C = gl3_setup()
    NV, NV2 = normalizer(G, V), normalizer(G, V2)
    A, B, Cg = NV.as_group(), NV2.as_group(), S.as_group()
    to_A = {c: A.index[Cg.elements[c]] for c in range(Cg.order)}
    to_B = {c: B.index[Cg.elements[c]] for c in range(Cg.order)}
    d = AmalgamData(A, B, Cg, GroupHom(Cg.whole(), A.whole(), to_A), GroupHom(Cg.whole(), B.whole(), to_B))
    P = amalgam_pregroup(d, name="L(GL3)")
    to_G = [0] * P.n
    for a in range(A.order):
        to_G[P.meta["from_A"][a]] = G.index[A.elements[a]]
    for b in range(B.order):
        to_G[P.meta["from_B"][b]] = G.index[B.elements[b]]
    labels = [G.labels[g] for g in to_G]
    meta = dict(P.meta)
    meta["to_G"] = to_G
    meta["group"] = G
    L = Pregroup(labels, P.inv, P.table, meta=meta, name="L(GL3)")
    back = {g: x for x, g in enumerate(to_G)}

    def pos(H: Subgroup) -> tuple[int, ...]:
        return tuple(sorted(back[g] for g in H.members))

    parts = {"C": pos(C), "V": pos(V), "V2": pos(V2), "S": pos(S), "NV": pos(NV), "NV2": pos(NV2),
             "to_G": to_G}
    return L, parts


# random instances --------------------------------------------------------------

def small_groups() -> list[FiniteGroup]:
    """Groups of order at most 24 used for random instances."""
    return [cyclic_group(n) for n in (1, 2, 3, 4, 5, 6, 8)] + [
        klein_four(), symmetric_group(3), dihedral_group(4), dihedral_group(5), dihedral_group(6),
        alternating_group(4), symmetric_group(4), direct_product(cyclic_group(2), cyclic_group(4)),
        direct_product(symmetric_group(3), cyclic_group(2)), direct_product(symmetric_group(3), cyclic_group(3)),
    ]


def small_p_groups() -> list[tuple[FiniteGroup, int]]:
    """Groups of prime power order at most 16, with their prime."""
    return [(cyclic_group(2), 2), (cyclic_group(4), 2), (cyclic_group(8), 2), (klein_four(), 2),
            (dihedral_group(4), 2), (direct_product(cyclic_group(2), cyclic_group(4)), 2),
            (direct_product(klein_four(), cyclic_group(2)), 2), (dihedral_group(8), 2),
            (cyclic_group(3), 3), (cyclic_group(9), 3), (direct_product(cyclic_group(3), cyclic_group(3)), 3),
            (cyclic_group(5), 5)]


def random_amalgam(rng: random.Random) -> AmalgamData:
    """A ∪_C B for random A, B of order at most 24 and a common subgroup C."""
    pool = small_groups()
    while True:
        A = rng.choice(pool)
        Csub = rng.choice(subgroups(A))
        C = Csub.as_group()
        B = rng.choice(pool)
        phi_B = random_embedding(C.whole(), B.whole(), rng)
        if phi_B is None:
            continue
        phi_A = random_embedding(C.whole(), A.whole(), rng)
        return AmalgamData(A, B, C, phi_A, phi_B)


def random_ls(rng: random.Random, max_maps: int = 2, max_size: int = 512) -> LSData:
    """Random injective maps between subgroups of a p-group of order at most 16.

    Draws are repeated until the pregroup has at most ``max_size`` elements.
    """
    while True:
        d = _random_ls_once(rng, max_maps)
        if ls_expected_size(d) <= max_size:
            return d


def _random_ls_once(rng: random.Random, max_maps: int) -> LSData:
    S, p = rng.choice(small_p_groups())
    subs = subgroups(S)
    maps = []
    count = rng.randint(1, max_maps)
    while len(maps) < count:
        P = rng.choice(subs)
        Qs = [Q for Q in subs if Q.order == P.order]
        rng.shuffle(Qs)
        for Q in Qs:
            phi = random_embedding(P, Q, rng)
            if phi is not None:
                maps.append(phi)
                break
    return LSData.with_random_transversals(S, maps, rng, p)


def random_robinson(rng: random.Random, max_factors: int = 2, max_size: int = 512) -> RobinsonData:
    """Random groups G_i of order at most 24 glued to a p-group S along Sylow subgroups.

    Draws are repeated until the pregroup has at most ``max_size`` elements.
    """
    while True:
        S, p = rng.choice(small_p_groups())
        cands = [G for G in small_groups() if G.order % p == 0]
        factors = []
        for _ in range(rng.randint(1, max_factors)):
            G = rng.choice(cands)
            Syl = sylow_subgroup(G, p)
            if Syl.order > S.order:
                continue
            targets = [Q for Q in subgroups(S) if Q.order == Syl.order]
            rng.shuffle(targets)
            for Q in targets:
                e = random_embedding(Syl, Q, rng)
                if e is not None:
                    f = GroupHom(Q, G.whole(), {v: u for u, v in e.mapping.items()})
                    factors.append(RobinsonFactor(G, Q, f))
                    break
        if factors:
            d = RobinsonData(S, factors, p, rng)
            if robinson_expected_size(d) <= max_size:
                return d
