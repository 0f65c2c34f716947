"""Finite pregroups: a set with a unit, an involution and a partial product.

The product is stored extensionally as an ``n x n`` table with -1 marking
pairs outside the domain ``D``.  The unit always sits at index 0; labels are
opaque strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import ConjugationDomainError, FormatError, ResourceError
from .groups import FiniteGroup, max_group_order

PAIR_AXIOM_BOUND = 4096
QUAD_AXIOM_BOUND = 512


class Pregroup:
    """Pregroup with unit 0, inverse table ``inv`` and product table ``table``."""

    def __init__(self, labels: Sequence[str], inverse: Sequence[int], table, meta: dict | None = None,
                 name: str = ""):
        self.labels: tuple[str, ...] = tuple(str(s) for s in labels)
        n = len(self.labels)
        if n == 0:
            raise FormatError("a pregroup needs at least the unit")
        if len(set(self.labels)) != n:
            raise FormatError("element labels must be distinct")
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != (n, n):
            raise FormatError(f"product table must be {n}x{n}, got {arr.shape}")
        if arr.size and (arr.min() < -1 or arr.max() >= n):
            raise FormatError("product table refers to a missing element")
        inv = [int(v) for v in inverse]
        if len(inv) != n or any(not 0 <= v < n for v in inv):
            raise FormatError("inverse table refers to a missing element")
        self.n = n
        self.inv: tuple[int, ...] = tuple(inv)
        self.arr = arr.astype(np.int32)
        self.arr.setflags(write=False)
        self.table: list[list[int]] = self.arr.tolist()
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.meta = meta if meta is not None else {}
        self.name = name

    def __repr__(self) -> str:
        return f"<Pregroup {self.name or ''} |P|={self.n} |D|={self.domain_size}>"

    def __len__(self) -> int:
        return self.n

    @cached_property
    def kernel_tables(self):
        return kernels.prepare(self.arr, np.asarray(self.inv, dtype=np.int32))

    @cached_property
    def domain_size(self) -> int:
        return int((self.arr >= 0).sum())

    # element access -------------------------------------------------
    unit = 0

    def defined(self, x: int, y: int) -> bool:
        return self.table[x][y] >= 0

    def m(self, x: int, y: int) -> int:
        """Product of a pair in D; -1 when undefined."""
        return self.table[x][y]

    def pairs(self):
        """All pairs of D in lexicographic order."""
        for x, row in enumerate(self.table):
            for y, z in enumerate(row):
                if z >= 0:
                    yield x, y

    def find(self, ref) -> int:
        if isinstance(ref, int) and not isinstance(ref, bool):
            if not 0 <= ref < self.n:
                raise FormatError(f"element index {ref} out of range")
            return ref
        ref = str(ref).strip()
        if ref not in self.index:
            raise FormatError(f"unknown element {ref!r}")
        return self.index[ref]

    def parse_word(self, text: str) -> list[int]:
        """Comma-separated labels; the empty string is the empty word."""
        text = text.strip()
        if not text:
            return []
        return [self.find(tok) for tok in text.split(",")]

    def format_word(self, word: Iterable[int]) -> str:
        return ",".join(self.labels[x] for x in word)

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g computed as (g^-1 x) g; -1 if a step is undefined."""
        t = self.table
        h = t[self.inv[g]][x]
        return t[h][g] if h >= 0 else -1

    # derived pregroups ----------------------------------------------
    def relabel(self, perm: Sequence[int]) -> "Pregroup":
        """Same pregroup with element ``i`` moved to position ``perm[i]`` (unit fixed)."""
        if perm[0] != 0:
            raise ValueError("relabelling must fix the unit")
        n = self.n
        back = [0] * n
        for i, j in enumerate(perm):
            back[j] = i
        table = [[-1] * n for _ in range(n)]
        for x, y in self.pairs():
            table[perm[x]][perm[y]] = perm[self.table[x][y]]
        labels = [self.labels[back[j]] for j in range(n)]
        inv = [perm[self.inv[back[j]]] for j in range(n)]
        return Pregroup(labels, inv, table, name=self.name)

    def mutated(self, x: int, y: int, value: int) -> "Pregroup":
        """Copy with one product entry replaced (``-1`` removes the pair)."""
        table = [row[:] for row in self.table]
        table[x][y] = value
        return Pregroup(self.labels, self.inv, table, name=self.name)

    # serialisation --------------------------------------------------
    def to_json(self) -> dict:
        lab = self.labels
        return {
            "elements": list(lab),
            "unit": lab[0],
            "inverse": {lab[i]: lab[j] for i, j in enumerate(self.inv)},
            "products": [[lab[x], lab[y], lab[self.table[x][y]]] for x, y in self.pairs()],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "Pregroup":
        try:
            elements = [str(e) for e in data["elements"]]
            unit = str(data["unit"])
            inverse = data["inverse"]
            products = data["products"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"pregroup file is missing a field: {exc}") from exc
        if unit not in elements:
            raise FormatError(f"unit {unit!r} is not an element")
        order = [unit] + [e for e in elements if e != unit]
        if len(set(order)) != len(elements):
            raise FormatError("duplicate element labels")
        idx = {e: i for i, e in enumerate(order)}

        def look(v):
            if str(v) not in idx:
                raise FormatError(f"dangling element {v!r}")
            return idx[str(v)]

        if not isinstance(inverse, dict) or set(map(str, inverse)) != set(order):
            raise FormatError("inverse must map every element")
        inv = [0] * len(order)
        for k, v in inverse.items():
            inv[look(k)] = look(v)
        n = len(order)
        table = [[-1] * n for _ in range(n)]
        for entry in products:
            if not isinstance(entry, (list, tuple)) or len(entry) != 3:
                raise FormatError(f"bad product entry {entry!r}")
            x, y, z = (look(v) for v in entry)
            if table[x][y] >= 0 and table[x][y] != z:
                raise FormatError(f"conflicting products for {entry[0]!r},{entry[1]!r}")
            table[x][y] = z
        return cls(order, inv, table, name=name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=False)


def pregroup_from_group(G: FiniteGroup) -> Pregroup:
    """A finite group viewed as a pregroup with full domain."""
    return Pregroup(G.labels, G.inverses, G.table, name=G.name,
                    meta={"kind": "group", "group": G})


# validation ---------------------------------------------------------

AXIOM_TEXT = {
    "Pr1": "unit does not act as identity",
    "Pr2": "x with its inverse is undefined or not the unit",
    "inv": "inverse is not an involution",
    "Pr3": "(w,x,y) fails conditional associativity",
    "Pr4": "(w,x,y,z): neither (w,xy) nor (xy,z) in D",
    "L2": "simplification identity fails",
    "L3": "inverse of a product identity fails",
    "L4": "intercalation identity fails",
}


@dataclass(frozen=True)
class Violation:
    code: str
    witness: tuple[int, ...]

    def describe(self, P: Pregroup | None = None) -> str:
        w = self.witness if P is None else tuple(P.labels[i] for i in self.witness)
        return f"{self.code}: {AXIOM_TEXT.get(self.code, '')} at {w}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    checked: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def lines(self, P: Pregroup | None = None) -> list[str]:
        return [v.describe(P) for v in self.violations]


def validate_pregroup(P: Pregroup, limit: int = 20, check_pr4: bool = True) -> ValidationReport:
    """Check (Pr1)-(Pr4), involutivity and the derived identities.

    Reports at most ``limit`` witnesses per axiom.
    """
    if P.n > PAIR_AXIOM_BOUND:
        raise ResourceError(f"|P| = {P.n} exceeds the pair-axiom bound {PAIR_AXIOM_BOUND}")
    if check_pr4 and P.n > QUAD_AXIOM_BOUND:
        raise ResourceError(f"|P| = {P.n} exceeds the quadruple-axiom bound {QUAD_AXIOM_BOUND}")
    raw = kernels.check_axioms(P.kernel_tables, limit, check_pr4)
    checked = tuple(c for c in AXIOM_TEXT if check_pr4 or c != "Pr4")
    return ValidationReport([Violation(c, tuple(int(v) for v in w)) for c, w in raw], checked)


def is_pregroup(P: Pregroup) -> bool:
    return validate_pregroup(P, limit=1).ok


# subgroups ------------------------------------------------------------

@dataclass(frozen=True)
class PgSubgroup:
    parent: Pregroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __eq__(self, other) -> bool:
        return isinstance(other, PgSubgroup) and other.parent is self.parent and other.members == self.members

    def __repr__(self) -> str:
        return "PgSubgroup{" + ",".join(self.parent.labels[m] for m in self.members) + "}"

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def issubset(self, other: "PgSubgroup") -> bool:
        return self.member_set <= other.member_set

    def as_group(self) -> tuple[FiniteGroup, dict[int, int]]:
        """Regular permutation representation and the map member -> group index."""
        ms = self.members
        pos = {m: i for i, m in enumerate(ms)}
        t = self.parent.table
        k = len(ms)

        def reg(m):
            return [pos[t[ms[j]][m]] for j in range(k)]

        gens = []
        cur = {0}
        P = self.parent
        for m in ms:
            if m not in cur:
                gens.append(m)
                cur = set(_pg_closure(P, gens) or ())
        G = FiniteGroup(k, [reg(m) for m in gens], generator_names=[P.labels[m] for m in gens]
                        if all(len(P.labels[m]) == 1 for m in gens) else None)
        to_group = {m: G.index[tuple(reg(m))] for m in ms}
        return G, to_group


def is_subgroup(P: Pregroup, members: Iterable[int]) -> bool:
    ms = set(members)
    if 0 not in ms:
        return False
    t = P.table
    for x in ms:
        if P.inv[x] not in ms:
            return False
        row = t[x]
        for y in ms:
            z = row[y]
            if z < 0 or z not in ms:
                return False
    return True


def is_cyclic_element(P: Pregroup, x: int) -> bool:
    return P.table[x][x] >= 0


def cyclic_subgroup(P: Pregroup, x: int) -> PgSubgroup | None:
    """The powers of ``x`` when they form a subgroup, else None."""
    if x == 0:
        return PgSubgroup(P, (0,))
    if not is_cyclic_element(P, x):
        return None
    powers = [0, x]
    y = x
    while True:
        y = P.table[y][x]
        if y < 0:
            return None
        if y == 0:
            break
        if y in powers:
            return None
        powers.append(y)
    if not is_subgroup(P, powers):
        return None
    return PgSubgroup(P, tuple(powers))


def element_order(P: Pregroup, x: int) -> int | None:
    """Order of ``x`` inside its cyclic subgroup; None for non-cyclic elements."""
    C = cyclic_subgroup(P, x)
    return None if C is None else C.order


def conj_domain(P: Pregroup, g: int) -> frozenset[int]:
    """Elements x with (g^-1, x), (x, g) and (g^-1 x, g) all in D."""
    t = P.table
    gi = P.inv[g]
    out = []
    for x in range(P.n):
        h = t[gi][x]
        if h >= 0 and t[x][g] >= 0 and t[h][g] >= 0:
            out.append(x)
    return frozenset(out)


@dataclass(frozen=True)
class PgHom:
    """Map between subgroups of a pregroup, stored on the source members."""

    source: PgSubgroup
    target: PgSubgroup
    mapping: tuple[tuple[int, int], ...]

    def __call__(self, x: int) -> int:
        return dict(self.mapping)[x]

    def is_homomorphism(self) -> bool:
        m = dict(self.mapping)
        ts, tt = self.source.parent.table, self.target.parent.table
        return all(tt[m[x]][m[y]] == m[ts[x][y]] for x in m for y in m)

    def is_isomorphism(self) -> bool:
        vals = {v for _, v in self.mapping}
        return self.is_homomorphism() and vals == self.target.member_set and len(vals) == len(self.mapping)

    def inverse(self) -> "PgHom":
        return PgHom(self.target, self.source, tuple(sorted((v, k) for k, v in self.mapping)))


def conjugation_hom(P: Pregroup, Q: PgSubgroup, g: int) -> PgHom:
    """c_g restricted to Q; raises when Q leaves the conjugation domain of g."""
    dom = conj_domain(P, g)
    for x in Q.members:
        if x not in dom:
            raise ConjugationDomainError(
                f"{P.labels[x]} is not in the conjugation domain of {P.labels[g]}", member=x)
    mapping = tuple((x, P.conj(x, g)) for x in Q.members)
    image = PgSubgroup(P, tuple(v for _, v in mapping))
    return PgHom(Q, image, mapping)


def conjugate_subgroup(P: Pregroup, Q: PgSubgroup, g: int) -> PgSubgroup:
    """Q^g, verified to be a subgroup with c_g an isomorphism onto it."""
    hom = conjugation_hom(P, Q, g)
    img = hom.target
    if not is_subgroup(P, img.members) or not hom.is_isomorphism():
        raise ConjugationDomainError(f"conjugation by {P.labels[g]} does not give a subgroup")
    return img


def _pg_closure(P: Pregroup, gens: Sequence[int], start: Iterable[int] = (0,)) -> frozenset[int] | None:
    """Right-multiplication closure; None as soon as a needed product is undefined."""
    t = P.table
    seen = set(start)
    out = list(seen)
    for x in out:
        row = t[x]
        for g in gens:
            y = row[g]
            if y < 0:
                return None
            if y not in seen:
                seen.add(y)
                out.append(y)
    return frozenset(out)


def subgroups_of_pregroup(P: Pregroup) -> list[PgSubgroup]:
    """Every subgroup of P, sorted by (order, members).

    Subgroups are joins of cyclic subgroups; a join candidate is discarded as
    soon as some required product falls outside D.
    """
    if P.n > max_group_order():
        raise ResourceError(f"|P| = {P.n} exceeds bound {max_group_order()}")
    cyc: dict[frozenset[int], int] = {}
    for x in range(P.n):
        C = cyclic_subgroup(P, x)
        if C is not None and C.member_set not in cyc:
            cyc[C.member_set] = x
    found: dict[frozenset[int], tuple[int, ...]] = {}
    layer = []
    for c, x in cyc.items():
        found[c] = (x,) if x else ()
        layer.append(c)
    items = list(cyc.items())
    while layer:
        nxt = []
        for H in layer:
            gH = found[H]
            for c, x in items:
                if x in H:
                    continue
                K = _pg_closure(P, gH + (x,), start=sorted(H))
                if K is None or K in found or not is_subgroup(P, K):
                    continue
                found[K] = gH + (x,)
                nxt.append(K)
        layer = nxt
    subs = [PgSubgroup(P, tuple(H)) for H in found]
    subs.sort(key=lambda s: (s.order, s.members))
    return subs


def is_p_subgroup(Q: PgSubgroup, p: int) -> bool:
    n = Q.order
    while n % p == 0:
        n //= p
    return n == 1
