"""Finite permutation groups.

Elements are tuples of 0-based images.  A group enumerates its elements once
(breadth-first from the generators, identity first) and afterwards works with
element indices; the Cayley table is built lazily.  Products compose left to
right: ``(p * q)[i] == q[p[i]]``, i.e. ``p`` is applied first.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import FormatError, ResourceError

Perm = tuple  # tuple[int, ...]

DEFAULT_MAX_ORDER = 512


def max_group_order() -> int:
    """Size bound for subgroup enumeration (``PG_MAX_GROUP_ORDER`` overrides)."""
    raw = os.environ.get("PG_MAX_GROUP_ORDER")
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise FormatError(f"PG_MAX_GROUP_ORDER is not an integer: {raw!r}") from exc
    return DEFAULT_MAX_ORDER


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def as_perm(images: Sequence[int], degree: int) -> Perm:
    """Validate an image array and return it as a tuple."""
    try:
        p = tuple(int(i) for i in images)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"permutation entries must be integers: {images!r}") from exc
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise FormatError(f"not a permutation of {degree} points: {list(images)!r}")
    return p


def _word_label(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts: list[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name, k = names[word[i]], j - i
        if k == 1:
            parts.append(name)
        elif len(name) == 1:
            parts.append(f"{name}{k}")
        else:
            parts.append(f"{name}^{k}")
        i = j
    return "".join(parts)


def default_generator_names(k: int) -> list[str]:
    letters = "abcdefghijklmnopqrsuvwxyz"  # no 't': reserved for stable letters
    if k <= len(letters):
        return list(letters[:k])
    return [f"g{i}" for i in range(k)]


class FiniteGroup:
    """A permutation group with enumerated elements.

    ``elements[0]`` is the identity.  Each element gets a label spelling the
    shortlex-least generator word reaching it, with repeated letters
    compressed (``"a2b"`` means a*a*b).
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], name: str = "",
                 generator_names: Sequence[str] | None = None):
        self.degree = int(degree)
        gens = [as_perm(g, self.degree) for g in generators]
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.name = name
        if generator_names is None:
            generator_names = default_generator_names(len(gens))
        if len(generator_names) != len(gens):
            raise FormatError("generator_names length does not match generators")
        self.generator_names = tuple(generator_names)

        identity = tuple(range(self.degree))
        elements = [identity]
        words: list[tuple[int, ...]] = [()]
        index = {identity: 0}
        limit = 1 << 22
        for x, w in zip(elements, words):
            for k, g in enumerate(gens):
                y = perm_mul(x, g)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    words.append(w + (k,))
                    if len(elements) > limit:
                        raise ResourceError("group too large to enumerate")
        self.elements: tuple[Perm, ...] = tuple(elements)
        self.index: dict[Perm, int] = index
        self.words = tuple(words)
        self.labels = tuple(_word_label(w, self.generator_names) for w in words)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}

    # basic structure -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{nm} order={self.order} degree={self.degree}>"

    @cached_property
    def table(self) -> list[list[int]]:
        idx = self.index
        els = self.elements
        return [[idx[perm_mul(x, y)] for y in els] for x in els]

    @cached_property
    def inverses(self) -> list[int]:
        return [self.index[perm_inv(x)] for x in self.elements]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        t = self.table
        return t[t[self.inverses[g]][x]][g]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        r = 0
        row = self.table
        for _ in range(k):
            r = row[r][x]
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.table[y][x]
            k += 1
        return k

    def find(self, ref) -> int:
        """Resolve an element reference: index, label or image list."""
        if isinstance(ref, bool):
            raise FormatError(f"bad element reference {ref!r}")
        if isinstance(ref, int):
            if not 0 <= ref < self.order:
                raise FormatError(f"element index {ref} out of range for order {self.order}")
            return ref
        if isinstance(ref, str):
            if ref not in self.label_index:
                raise FormatError(f"unknown element label {ref!r}")
            return self.label_index[ref]
        p = as_perm(ref, self.degree)
        if p not in self.index:
            raise FormatError(f"permutation {list(p)} is not in the group")
        return self.index[p]

    def closure(self, gens: Iterable[int], start: Iterable[int] = (0,)) -> frozenset[int]:
        """Subgroup generated by ``gens``.

        ``start`` only pre-seeds the search and must lie inside the result.
        """
        gens = list(gens)
        t = self.table
        seen = bytearray(self.order)
        out = []
        for s in start:
            if not seen[s]:
                seen[s] = 1
                out.append(s)
        for x in out:
            row = t[x]
            for g in gens:
                y = row[g]
                if not seen[y]:
                    seen[y] = 1
                    out.append(y)
        return frozenset(out)

    def subgroup(self, members: Iterable[int], check: bool = True) -> "Subgroup":
        ms = tuple(sorted(set(members)))
        sub = Subgroup(self, ms)
        if check and not sub.is_closed():
            raise ValueError("members do not form a subgroup")
        return sub

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(self.closure(gens))))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def is_p_group(self, p: int | None = None) -> bool:
        n = self.order
        if n == 1:
            return True
        q = p if p is not None else smallest_prime_factor(n)
        while n % q == 0:
            n //= q
        return n == 1

    def to_json(self) -> dict:
        d = {"degree": self.degree, "generators": [list(g) for g in self.generators],
             "name": self.name}
        if tuple(self.generator_names) != tuple(default_generator_names(len(self.generators))):
            d["generator_names"] = list(self.generator_names)
        return d

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        try:
            return cls(data["degree"], data.get("generators", []), data.get("name", ""),
                       data.get("generator_names"))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad group description: {exc}") from exc


@dataclass(frozen=True)
class Subgroup:
    """A subset of a parent group's element indices, stored sorted."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_closed(self) -> bool:
        ms = self.member_set
        if 0 not in ms:
            return False
        t = self.parent.table
        return all(t[x][y] in ms for x in self.members for y in self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by index."""
        g = self.parent
        gens: list[int] = []
        cur = frozenset({0})
        for m in self.members:
            if m not in cur:
                gens.append(m)
                cur = g.closure(gens)
        return tuple(gens)

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, tuple(sorted(G.conj(x, g) for x in self.members)))

    def as_group(self) -> FiniteGroup:
        G = self.parent
        return FiniteGroup(G.degree, [G.elements[i] for i in self.generators])

    def embedding_from(self, H: FiniteGroup) -> list[int]:
        """Positions in the parent of the elements of ``H`` (same permutations)."""
        return [self.parent.index[p] for p in H.elements]


class GroupHom:
    """A map between subgroups given extensionally on the source members."""

    def __init__(self, source: Subgroup, target: Subgroup, mapping: dict[int, int]):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if set(self.mapping) != source.member_set:
            raise ValueError("mapping must be defined exactly on the source members")
        if not set(self.mapping.values()) <= target.member_set:
            raise ValueError("mapping leaves the target subgroup")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def __repr__(self) -> str:
        return f"GroupHom({sorted(self.mapping.items())})"

    @property
    def graph(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.mapping.items()))

    def is_homomorphism(self) -> bool:
        ts = self.source.parent.table
        tt = self.target.parent.table
        m = self.mapping
        return all(m[ts[x][y]] == tt[m[x]][m[y]] for x in m for y in m)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def image(self) -> Subgroup:
        return Subgroup(self.target.parent, tuple(sorted(set(self.mapping.values()))))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``other`` after ``self``."""
        return GroupHom(self.source, other.target, {x: other.mapping[y] for x, y in self.mapping.items()})

    def inverse(self) -> "GroupHom":
        if not self.is_injective():
            raise ValueError("not injective")
        img = self.image()
        return GroupHom(img, self.source, {y: x for x, y in self.mapping.items()})

    def restrict(self, sub: Subgroup) -> "GroupHom":
        return GroupHom(sub, self.target, {x: self.mapping[x] for x in sub.members})


def hom_from_images(source: Subgroup, gens: Sequence[int], images: Sequence[int],
                    target: Subgroup | None = None) -> GroupHom:
    """Extend ``gens[i] -> images[i]`` to a homomorphism on ``source``.

    Raises ``ValueError`` when the assignment does not extend, or when the
    generators do not generate ``source``.
    """
    if len(gens) != len(images):
        raise ValueError("gens and images differ in length")
    G = source.parent
    if target is None:
        raise ValueError("target subgroup required")
    H = target.parent
    ts, th = G.table, H.table
    m = {0: 0}
    queue = [0]
    for x in queue:
        for g, im in zip(gens, images):
            y = ts[x][g]
            v = th[m[x]][im]
            if y in m:
                if m[y] != v:
                    raise ValueError("generator images do not define a homomorphism")
            else:
                m[y] = v
                queue.append(y)
    if set(m) != source.member_set:
        raise ValueError("generators do not generate the source subgroup")
    hom = GroupHom(source, target, m)
    if not hom.is_homomorphism():
        raise ValueError("generator images do not define a homomorphism")
    return hom


def random_embedding(source: Subgroup, target: Subgroup, rng: random.Random) -> GroupHom | None:
    """A uniformly chosen injective homomorphism ``source -> target``, or None."""
    H = target.parent
    gens = list(source.generators)
    G = source.parent
    pools = [[y for y in target.members if H.element_order(y) == G.element_order(g)] for g in gens]
    choices = list(itertools.product(*pools))
    rng.shuffle(choices)
    for images in choices:
        try:
            hom = hom_from_images(source, gens, list(images), target)
        except ValueError:
            continue
        if hom.is_injective():
            return hom
    return None


def identity_hom(sub: Subgroup) -> GroupHom:
    return GroupHom(sub, sub, {x: x for x in sub.members})


def conjugation_hom(sub: Subgroup, g: int, target: Subgroup | None = None) -> GroupHom:
    G = sub.parent
    img = sub.conjugate(g)
    return GroupHom(sub, target or img, {x: G.conj(x, g) for x in sub.members})


# classical computations ---------------------------------------------

def smallest_prime_factor(n: int) -> int:
    for q in range(2, int(n ** 0.5) + 1):
        if n % q == 0:
            return q
    return n


def is_prime(p: int) -> bool:
    return p >= 2 and smallest_prime_factor(p) == p


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def group_from_generators(degree: int, gens: Sequence[Sequence[int]], name: str = "",
                          generator_names: Sequence[str] | None = None) -> FiniteGroup:
    return FiniteGroup(degree, gens, name, generator_names)


def group_from_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Right regular representation of a group given by its Cayley table.

    Element ``i`` becomes the permutation ``j -> table[j][i]``.  The returned
    group enumerates elements in its own order; use ``group.index`` with
    :func:`regular_perm` to translate.
    """
    n = len(table)
    if any(len(r) != n for r in table):
        raise FormatError("Cayley table must be square")
    gens = [regular_perm(table, i) for i in range(n)]
    return FiniteGroup(n, gens, name)


def regular_perm(table: Sequence[Sequence[int]], i: int) -> Perm:
    return as_perm([table[j][i] for j in range(len(table))], len(table))


def cyclic_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    seen: dict[frozenset[int], None] = {}
    for x in range(G.order):
        seen.setdefault(G.closure([x]), None)
    return list(seen)


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, by repeatedly joining cyclic subgroups onto known ones.

    The output is sorted by (order, members).
    """
    if G.order > max_group_order():
        raise ResourceError(f"group order {G.order} exceeds bound {max_group_order()}")
    cyc = cyclic_subgroups(G)
    # one generator per cyclic subgroup
    cyc_gens = []
    for c in cyc:
        for x in sorted(c):
            if G.closure([x]) == c:
                cyc_gens.append(x)
                break
    found: dict[frozenset[int], tuple[int, ...]] = {}
    layer: list[frozenset[int]] = []
    for c, x in zip(cyc, cyc_gens):
        if c not in found:
            found[c] = (x,) if x else ()
            layer.append(c)
    while layer:
        nxt = []
        for H in layer:
            gH = found[H]
            for c, x in zip(cyc, cyc_gens):
                if x in H:
                    continue
                K = G.closure(gH + (x,), start=sorted(H))
                if K not in found:
                    found[K] = gH + (x,)
                    nxt.append(K)
        layer = nxt
    subs = [Subgroup(G, tuple(sorted(H))) for H in found]
    subs.sort(key=lambda s: (s.order, s.members))
    return subs


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    if H.parent is not G:
        raise ValueError("H is not a subgroup of G")
    if not H.is_closed():
        raise ValueError("H is not closed under the group product")
    ms = H.member_set
    out = [g for g in range(G.order) if all(G.conj(h, g) in ms for h in H.members)]
    return Subgroup(G, tuple(out))


def centralizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    t = G.table
    out = [g for g in range(G.order) if all(t[g][h] == t[h][g] for h in H.members)]
    return Subgroup(G, tuple(out))


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """One Sylow p-subgroup, grown one factor of p at a time inside normalizers."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    P = G.trivial()
    t = G.table
    while P.order < target:
        N = normalizer(G, P)
        ms = P.member_set
        for x in N.members:
            if x in ms:
                continue
            y = x
            for _ in range(p - 1):
                y = t[y][x]
            if y in ms:
                P = G.generated(list(P.generators) + [x])
                break
        else:  # pragma: no cover - impossible by Sylow's theorem
            raise RuntimeError("Sylow growth stalled")
    return P


def p_core(G: FiniteGroup, p: int) -> Subgroup:
    """Largest normal p-subgroup: the intersection of all Sylow conjugates."""
    P = sylow_subgroup(G, p)
    core = set(P.members)
    for g in range(G.order):
        core &= P.conjugate(g).member_set
        if len(core) == 1:
            break
    return Subgroup(G, tuple(sorted(core)))


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[tuple[int, ...]]:
    """The (H, K)-double cosets of G, each sorted, ordered by least member."""
    t = G.table
    seen = bytearray(G.order)
    out = []
    for g in range(G.order):
        if seen[g]:
            continue
        dc = sorted({t[t[h][g]][k] for h in H.members for k in K.members})
        for x in dc:
            seen[x] = 1
        out.append(tuple(dc))
    return out


def right_transversal(G: FiniteGroup, H: Subgroup, within: Subgroup | None = None) -> list[int]:
    """Least-index representatives of the right cosets Hx of H in ``within``."""
    t = G.table
    pool = within.members if within is not None else range(G.order)
    seen = set()
    reps = []
    for x in pool:
        if x in seen:
            continue
        reps.append(x)
        seen.update(t[h][x] for h in H.members)
    return reps


def left_transversal(G: FiniteGroup, H: Subgroup, within: Subgroup | None = None) -> list[int]:
    """Least-index representatives of the left cosets xH of H in ``within``."""
    t = G.table
    pool = within.members if within is not None else range(G.order)
    seen = set()
    reps = []
    for x in pool:
        if x in seen:
            continue
        reps.append(x)
        seen.update(t[x][h] for h in H.members)
    return reps


# standard groups ------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(1, [], f"C1")
    return FiniteGroup(n, [[(i + 1) % n for i in range(n)]], f"C{n}")


def dihedral_group(m: int) -> FiniteGroup:
    """Dihedral group of order 2m acting on an m-gon (m >= 3)."""
    rot = [(i + 1) % m for i in range(m)]
    ref = [(-i) % m for i in range(m)]
    return FiniteGroup(m, [rot, ref], f"D{2 * m}")


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup(max(n, 1), [], f"S{n}")
    if n == 2:
        return FiniteGroup(2, [[1, 0]], "S2")
    cyc = [(i + 1) % n for i in range(n)]
    sw = [1, 0] + list(range(2, n))
    return FiniteGroup(n, [sw, cyc], f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = []
    for k in range(2, n):
        g = list(range(n))
        g[0], g[1], g[k] = 1, k, 0
        gens.append(g)
    return FiniteGroup(n, gens, f"A{n}")


def klein_four() -> FiniteGroup:
    return FiniteGroup(4, [[1, 0, 3, 2], [2, 3, 0, 1]], "V4")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """A x B acting on the disjoint union of the two point sets."""
    da, db = A.degree, B.degree
    gens = [list(g) + [da + i for i in range(db)] for g in A.generators]
    gens += [list(range(da)) + [da + i for i in g] for g in B.generators]
    names = list(A.generator_names) + [n + "'" if n in A.generator_names else n
                                       for n in B.generator_names]
    return FiniteGroup(da + db, gens, name or f"{A.name}x{B.name}", names)


def gl3_matrix_perm(rows: Sequence[Sequence[int]]) -> Perm:
    """Action of a 3x3 matrix over F2 on the nonzero vectors of F2^3.

    Vector ``v`` (bit ``i`` = coordinate ``i``) sits at point ``v - 1``.
    """
    out = []
    for v in range(1, 8):
        x = [(v >> i) & 1 for i in range(3)]
        y = [sum(rows[r][c] * x[c] for c in range(3)) % 2 for r in range(3)]
        out.append(y[0] + 2 * y[1] + 4 * y[2] - 1)
    return as_perm(out, 7)


def gl3_f2() -> FiniteGroup:
    """GL_3(F_2) on 7 points, generated by an elementary transvection and a coordinate cycle."""
    e12 = gl3_matrix_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    cyc = gl3_matrix_perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    return FiniteGroup(7, [e12, cyc], "GL3(F2)", ["e", "c"])
