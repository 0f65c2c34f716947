"""Words over a pregroup: reduction, equality in the universal group, normal forms.

Equality of two words is decided without ever touching the (usually
infinite) universal group.  Both words are reduced; reduced words of
different length are never equal, and reduced words of the same length are
equal exactly when an intercalation chain carries one to the other.

Two independent oracles are included for cross-checking: a coset normal
form for amalgamated products and a Britton-style normal form for iterated
HNN extensions.  Neither consults the pregroup product table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import HypothesisError
from .groups import FiniteGroup, GroupHom, Subgroup, left_transversal, right_transversal
from .pregroup import PgSubgroup, Pregroup, conjugate_subgroup, is_cyclic_element

Word = list


# reduction --------------------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    position: int
    pair: tuple[int, int]
    merged: int          # -1 when a lone unit letter was absorbed
    word: tuple[int, ...]


@dataclass
class ReductionTrace:
    start: tuple[int, ...]
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def result(self) -> tuple[int, ...]:
        return self.steps[-1].word if self.steps else self.start

    def verify(self, P: Pregroup) -> bool:
        """Replay every step against the product table."""
        cur = list(self.start)
        for st in self.steps:
            i = st.position
            if st.merged < 0:
                if cur != [0]:
                    return False
                cur = []
            else:
                if cur[i:i + 2] != list(st.pair) or P.m(*st.pair) != st.merged:
                    return False
                cur[i:i + 2] = [st.merged]
            if tuple(cur) != st.word:
                return False
        return is_reduced(P, cur)


def is_reduced(P: Pregroup, w: Sequence[int]) -> bool:
    if len(w) == 1 and w[0] == 0:
        return False
    t = P.table
    return all(t[w[i]][w[i + 1]] < 0 for i in range(len(w) - 1))


def reduce(P: Pregroup, w: Sequence[int]) -> tuple[Word, ReductionTrace]:
    """Leftmost-first reduction to a P-reduced word.

    The lone unit letter ``(1)`` is absorbed into the empty word, so that the
    identity has a single reduced representative.
    """
    out, raw = kernels.reduce_word(P.kernel_tables, w)
    trace = ReductionTrace(tuple(int(v) for v in w))
    cur = list(trace.start)
    for pos, left, right, merged in raw:
        if merged < 0:
            cur = []
            trace.steps.append(ReductionStep(0, (0, 0), -1, ()))
        else:
            cur[pos:pos + 2] = [merged]
            trace.steps.append(ReductionStep(pos, (left, right), merged, tuple(cur)))
    return [int(v) for v in out], trace


def reduced_form(P: Pregroup, w: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in kernels.reduce_word(P.kernel_tables, w)[0])


def reduce_randomly(P: Pregroup, w: Sequence[int], rng: random.Random) -> Word:
    """Reduce by merging a random reducible pair at each step."""
    t = P.table
    cur = list(w)
    while True:
        spots = [i for i in range(len(cur) - 1) if t[cur[i]][cur[i + 1]] >= 0]
        if not spots:
            break
        i = rng.choice(spots)
        cur[i:i + 2] = [t[cur[i]][cur[i + 1]]]
    return [] if cur == [0] else cur


def rewrite_randomly(P: Pregroup, w: Sequence[int], steps: int, rng: random.Random) -> Word:
    """Apply random defining relations of the universal group to ``w``.

    Moves: merge a pair in D, split a letter into a pair in D, insert or
    delete a cancelling pair ``(x, x^-1)``.  The group element never changes.
    """
    t, inv = P.table, P.inv
    cur = list(w)
    for _ in range(steps):
        move = rng.randrange(4)
        if move == 0 and len(cur) >= 2:
            i = rng.randrange(len(cur) - 1)
            z = t[cur[i]][cur[i + 1]]
            if z >= 0:
                cur[i:i + 2] = [z]
        elif move == 1 and cur:
            i = rng.randrange(len(cur))
            x = rng.randrange(P.n)
            y = t[inv[x]][cur[i]]
            if y >= 0:
                cur[i:i + 1] = [x, y]
        elif move == 2:
            i = rng.randrange(len(cur) + 1)
            x = rng.randrange(P.n)
            cur[i:i] = [x, inv[x]]
        elif move == 3 and len(cur) >= 2:
            i = rng.randrange(len(cur) - 1)
            if cur[i + 1] == inv[cur[i]]:
                del cur[i:i + 2]
    return cur


# equality ---------------------------------------------------------------

@dataclass
class EqualityCertificate:
    """Verdict on two words, with the intercalators when they are equal.

    ``y_i = a_{i-1}^-1 x_i a_i`` for the reduced forms ``x`` and ``y``, where
    ``a_0 = a_n = 1``.
    """

    equal: bool
    reduced1: tuple[int, ...]
    reduced2: tuple[int, ...]
    intercalators: list[int] | None = None
    reason: str | None = None  # "length-mismatch" or "no-intercalation"

    def verify(self, P: Pregroup) -> bool:
        x, y = self.reduced1, self.reduced2
        if not self.equal:
            return self.intercalators is None
        if len(x) != len(y) or self.intercalators is None:
            return False
        if not x:
            return not self.intercalators
        a = [0] + list(self.intercalators) + [0]
        if len(a) != len(x) + 1:
            return False
        t, inv = P.table, P.inv
        for i in range(len(x)):
            ai = inv[a[i]]
            z = t[ai][x[i]]
            w = t[x[i]][a[i + 1]]
            left = t[z][a[i + 1]] if z >= 0 else -1
            right = t[ai][w] if w >= 0 else -1
            if y[i] not in (left, right):
                return False
        return True

    def to_json(self, P: Pregroup) -> dict:
        lab = P.labels
        return {
            "equal": self.equal,
            "reduced1": [lab[v] for v in self.reduced1],
            "reduced2": [lab[v] for v in self.reduced2],
            "intercalators": None if self.intercalators is None else [lab[v] for v in self.intercalators],
            "reason": self.reason,
        }


def equal_in_universal(P: Pregroup, w1: Sequence[int], w2: Sequence[int]) -> EqualityCertificate:
    x = reduced_form(P, w1)
    y = reduced_form(P, w2)
    if len(x) != len(y):
        return EqualityCertificate(False, x, y, reason="length-mismatch")
    chain = kernels.intercalate(P.kernel_tables, list(x), list(y))
    if chain is None:
        return EqualityCertificate(False, x, y, reason="no-intercalation")
    return EqualityCertificate(True, x, y, intercalators=[int(a) for a in chain])


def equality_matrix(P: Pregroup, words: Sequence[Sequence[int]]) -> tuple[np.ndarray, list[int]]:
    """Pairwise equality on the distinct reduced forms of ``words``.

    Returns ``(M, cls)`` where ``cls[k]`` indexes the reduced form of
    ``words[k]`` and ``M[i, j]`` is 1 when forms i and j are equal in U(P).
    """
    forms: dict[tuple[int, ...], int] = {}
    cls = []
    for w in words:
        r = reduced_form(P, w)
        cls.append(forms.setdefault(r, len(forms)))
    M = kernels.equal_reduced_matrix(P.kernel_tables, [list(f) for f in forms])
    return M, cls


def product_in_P(P: Pregroup, w: Sequence[int]) -> int | None:
    """The element of P equal to ``w`` in U(P), if there is one."""
    r = reduced_form(P, w)
    if not r:
        return 0
    return r[0] if len(r) == 1 else None


# amalgam oracle ---------------------------------------------------------

class AmalgamNormalForm:
    """Coset normal form in ``A *_C B``: alternating representatives then a tail in C.

    Each element is written ``r_1 ... r_k c`` where the ``r_j`` are non-trivial
    least-index representatives of left cosets ``r C`` taken alternately
    from A and B, and ``c`` lies in C.
    """

    def __init__(self, A: FiniteGroup, B: FiniteGroup, C: FiniteGroup, phi_A: GroupHom, phi_B: GroupHom):
        self.groups = {"A": A, "B": B}
        self.maps = {"A": phi_A.mapping, "B": phi_B.mapping}
        self.back = {f: {v: u for u, v in m.items()} for f, m in self.maps.items()}
        self.split = {}
        for f, X in self.groups.items():
            img = Subgroup(X, tuple(sorted(self.maps[f].values())))
            sp = {}
            for r in left_transversal(X, img):
                for c in img.members:
                    sp[X.mul(r, c)] = (r, c)
            self.split[f] = sp

    @classmethod
    def from_data(cls, d) -> "AmalgamNormalForm":
        return cls(d.A, d.B, d.C, d.phi_A, d.phi_B)

    def __call__(self, seq: Iterable[tuple[str, int]]) -> tuple[tuple[tuple[str, int], ...], int]:
        reps: list[tuple[str, int]] = []
        c = 0
        for f, x in seq:
            if f not in self.groups:
                raise ValueError(f"unknown factor {f!r}")
            X = self.groups[f]
            if not 0 <= x < X.order:
                raise ValueError(f"{x} is not an element of factor {f}")
            y = X.mul(self.maps[f][c], x)
            if reps and reps[-1][0] == f:
                y = X.mul(reps.pop()[1], y)
            r, cc = self.split[f][y]
            if r != 0:
                reps.append((f, r))
            c = self.back[f][cc]
        return tuple(reps), c


def amalgam_sequence(P: Pregroup, w: Sequence[int]) -> list[tuple[str, int]]:
    """Tag each letter of a word over an amalgam pregroup with its factor."""
    from_A, from_B = P.meta["from_A"], P.meta["from_B"]
    nA = len(from_A)
    back_B = {p: b for b, p in enumerate(from_B)}
    return [("A", x) if x < nA else ("B", back_B[x]) for x in w]


def amalgam_normal_form(d, seq: Iterable[tuple[str, int]]):
    return AmalgamNormalForm.from_data(d)(seq)


# HNN tower oracle ------------------------------------------------------

@dataclass
class HnnTowerData:
    """Base group S with isomorphisms ``phi_i: P_i -> Q_i`` and stable letters ``t_i``.

    Relations ``t_i^-1 u t_i = phi_i(u)`` for ``u`` in P_i.  Transversals are
    the least-index right coset representatives of Q_i (for letters ``t_i``)
    and P_i (for letters ``t_i^-1``).
    """

    S: FiniteGroup
    maps: list[GroupHom]

    def __post_init__(self):
        S = self.S
        self.phi = [m.mapping for m in self.maps]
        self.phinv = [{v: u for u, v in m.items()} for m in self.phi]
        self.splitQ = []
        self.splitP = []
        for m in self.maps:
            for H, store in ((m.target, self.splitQ), (m.source, self.splitP)):
                sp = {}
                for r in right_transversal(S, H):
                    for h in H.members:
                        sp[S.mul(h, r)] = (h, r)
                store.append(sp)

    @classmethod
    def from_ls(cls, d) -> "HnnTowerData":
        return cls(d.S, list(d.maps))

    def normal_form(self, seq: Iterable[tuple]) -> tuple:
        """Canonical form of a sequence of ``("s", x)`` and ``("t", i, +-1)`` items.

        Pinches are removed with a stack, then S-parts are pushed leftwards
        so that each one after a stable letter is a transversal element.
        """
        S = self.S
        ss = [0]
        ls: list[tuple[int, int]] = []
        for item in seq:
            if item[0] == "s":
                ss[-1] = S.mul(ss[-1], item[1])
                continue
            _, i, e = item
            if ls and ls[-1] == (i, -e):
                s = ss[-1]
                if e == 1 and s in self.phi[i]:      # t_i^-1 s t_i with s in P_i
                    new = self.phi[i][s]
                elif e == -1 and s in self.phinv[i]:  # t_i s t_i^-1 with s in Q_i
                    new = self.phinv[i][s]
                else:
                    new = None
                if new is not None:
                    ls.pop()
                    ss.pop()
                    ss[-1] = S.mul(ss[-1], new)
                    continue
            ls.append((i, e))
            ss.append(0)
        for j in range(len(ls), 0, -1):
            i, e = ls[j - 1]
            if e == 1:   # t q = phi^-1(q) t for q in Q_i
                q, r = self.splitQ[i][ss[j]]
                ss[j - 1] = S.mul(ss[j - 1], self.phinv[i][q])
            else:        # t^-1 p = phi(p) t^-1 for p in P_i
                p, r = self.splitP[i][ss[j]]
                ss[j - 1] = S.mul(ss[j - 1], self.phi[i][p])
            ss[j] = r
        return tuple(ss), tuple(ls)


def ls_sequence(P: Pregroup, w: Sequence[int]) -> list[tuple]:
    """Spell a word over a Leary-Stancu pregroup in S and the stable letters."""
    keys = P.meta["parse"]
    out: list[tuple] = []
    for x in w:
        k = keys[x]
        if k[0] == "S":
            out.append(("s", k[1]))
        else:
            _, i, a, a2 = k
            out += [("s", a), ("t", i, 1 if k[0] == "t" else -1), ("s", a2)]
    return out


def hnn_tower_normal_form(T: HnnTowerData, seq: Iterable[tuple]) -> tuple:
    return T.normal_form(seq)


def oracle_for(P: Pregroup):
    """A function word -> canonical form for pregroups built by this package."""
    kind = P.meta.get("kind")
    if kind == "amalgam":
        nf = AmalgamNormalForm.from_data(P.meta["data"])
        return lambda w: nf(amalgam_sequence(P, w))
    if kind == "leary-stancu":
        T = HnnTowerData.from_ls(P.meta["data"])
        return lambda w: T.normal_form(ls_sequence(P, w))
    raise ValueError("no normal-form oracle for this pregroup")


# conjugation chains -----------------------------------------------------

@dataclass
class ConjugationChain:
    """Elements ``x_0 .. x_k`` and conjugators ``g_0 .. g_{k-1}`` with ``x_{i+1} = g_i^-1 x_i g_i``.

    ``certificates[i]`` holds ``(g_i^-1 x_i, x_i g_i)``, the two partial
    products showing that the triple associates.
    """

    elements: list[int]
    conjugators: list[int]
    certificates: list[tuple[int, int]]

    @property
    def length(self) -> int:
        return len(self.conjugators)

    def verify(self, P: Pregroup) -> bool:
        t, inv = P.table, P.inv
        if len(self.elements) != len(self.conjugators) + 1:
            return False
        for i, g in enumerate(self.conjugators):
            x = self.elements[i]
            left, right = t[inv[g]][x], t[x][g]
            if (left, right) != tuple(self.certificates[i]) or left < 0 or right < 0:
                return False
            y = t[left][g]
            if y < 0 or y != t[inv[g]][right] or y != self.elements[i + 1]:
                return False
        return True


def _conjugate_word(P: Pregroup, x: int, g: Sequence[int]) -> list[int]:
    return [P.inv[v] for v in reversed(g)] + [x] + list(g)


def conjugation_chain(P: Pregroup, x: int, g: Sequence[int]) -> ConjugationChain:
    """Walk ``x`` through the letters of reduced ``g`` one conjugation at a time.

    Requires ``x`` of finite order and ``g^-1 x g`` in P.
    """
    if not is_cyclic_element(P, x):
        raise ValueError(f"{P.labels[x]} does not have finite order")
    gr = reduced_form(P, g)
    if product_in_P(P, _conjugate_word(P, x, gr)) is None:
        raise HypothesisError(f"the conjugate of {P.labels[x]} by {P.format_word(g)} is not in P")
    t, inv = P.table, P.inv
    elems, certs = [x], []
    for gi in gr:
        cur = elems[-1]
        left, right = t[inv[gi]][cur], t[cur][gi]
        nxt = t[left][gi] if left >= 0 else -1
        if left < 0 or right < 0 or nxt < 0:
            raise HypothesisError(f"({P.labels[inv[gi]]}, {P.labels[cur]}, {P.labels[gi]}) does not associate")
        certs.append((left, right))
        elems.append(nxt)
    return ConjugationChain(elems, list(gr), certs)


def subgroup_conjugation_chain(P: Pregroup, Q: PgSubgroup, g: Sequence[int],
                               target: PgSubgroup | None = None) -> list[PgSubgroup]:
    """Subgroups ``Q_0 = Q, ..., Q_k`` obtained by conjugating with the letters of reduced ``g``.

    With ``target`` given, the last subgroup must equal it.
    """
    gr = reduced_form(P, g)
    for x in Q.members:
        if product_in_P(P, _conjugate_word(P, x, gr)) is None:
            raise HypothesisError(f"the conjugate of {P.labels[x]} by {P.format_word(g)} is not in P")
    chain = [Q]
    for gi in gr:
        chain.append(conjugate_subgroup(P, chain[-1], gi))
    if target is not None and chain[-1] != target:
        raise HypothesisError("the conjugating word does not reach the target subgroup")
    return chain
