"""The partial-group view of a pregroup and presentation machinery.

A word lies in the domain when every contiguous subproduct lies in P.  Since
``(x, y)`` is in D exactly when ``xy`` lies in P, membership is decided by
extending products one letter at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DomainError
from .pregroup import Pregroup, Violation

Word = tuple  # tuple[int, ...]


# domain and product ---------------------------------------------------------

def interval_products(P: Pregroup, w: Sequence[int]) -> list[list[int]] | None:
    """``prod[i][j]`` = product of ``w[i..j]``, or None if ``w`` is outside the domain."""
    t = P.table
    n = len(w)
    prod = [[-1] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        prod[i][i] = w[i]
        row = prod[i]
        for j in range(i + 1, n):
            z = t[row[j - 1]][w[j]]
            if z < 0:
                return None
            row[j] = z
    return prod


def in_domain(P: Pregroup, w: Sequence[int]) -> bool:
    t = P.table
    suffix: list[int] = []
    for x in w:
        nxt = []
        for s in suffix:
            z = t[s][x]
            if z < 0:
                return False
            nxt.append(z)
        nxt.append(x)
        suffix = nxt
    return True


def pi_product(P: Pregroup, w: Sequence[int], check_brackets: bool = True) -> int:
    """Product of a domain word; the empty word gives the unit."""
    if not w:
        return 0
    prod = interval_products(P, w)
    if prod is None:
        raise DomainError(f"word ({P.format_word(w)}) is not in the domain")
    if check_brackets:
        # every split point must give the same answer
        t = P.table
        n = len(w)
        for i in range(1, n):
            if t[prod[0][i - 1]][prod[i][n - 1]] != prod[0][n - 1]:
                raise AssertionError("bracketing dependence: pregroup axioms are violated")
    return prod[0][len(w) - 1]


def domain_words(P: Pregroup, maxlen: int, letters: Sequence[int] | None = None) -> Iterator[Word]:
    """All domain words of length at most ``maxlen``, by depth-first extension."""
    t = P.table
    letters = list(range(P.n)) if letters is None else list(letters)

    def rec(word, suffix):
        yield word
        if len(word) == maxlen:
            return
        for x in letters:
            nxt = []
            for s in suffix:
                z = t[s][x]
                if z < 0:
                    break
                nxt.append(z)
            else:
                nxt.append(x)
                yield from rec(word + (x,), nxt)

    yield from rec((), [])


def word_inverse(P: Pregroup, w: Sequence[int]) -> Word:
    return tuple(P.inv[x] for x in reversed(w))


# partial group axioms -------------------------------------------------------

@dataclass
class PartialReport:
    violations: list[Violation] = field(default_factory=list)
    words_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_partial_axioms(P: Pregroup, maxlen: int = 4, limit: int = 20) -> PartialReport:
    """Check (D1), (D2), (P1)-(P3) and the multiplicativity/cancellation
    consequences on every word of length at most ``maxlen``.

    (D2) and (P2) are checked over all words, not only domain words, so a
    table whose domain is not subword-closed is caught.
    """
    if maxlen < 2:
        raise ValueError("maxlen must be at least 2")
    rep = PartialReport()

    def bad(code, w):
        if len(rep.violations) < limit:
            rep.violations.append(Violation(code, tuple(w)))

    t = P.table
    for x in range(P.n):
        if not in_domain(P, (x,)):
            bad("D1", (x,))
        if pi_product(P, (x,), check_brackets=False) != x:
            bad("P1", (x,))
    if not in_domain(P, ()):
        bad("D2", ())
    for w in domain_words(P, maxlen):
        rep.words_checked += 1
        n = len(w)
        prod = interval_products(P, w)
        total = prod[0][n - 1] if n else 0
        for i in range(n + 1):
            u, v = w[:i], w[i:]
            if not (in_domain(P, u) and in_domain(P, v)):
                bad("D2", w)
                continue
            pu = pi_product(P, u, False)
            pv = pi_product(P, v, False)
            if t[pu][pv] != total:
                bad("L1.2(1)", w)
            if len(u) + 2 * len(v) <= maxlen + 2:
                ui = word_inverse(P, u)
                if not in_domain(P, ui + w) or pi_product(P, ui + w, False) != pv:
                    bad("L1.2(2)", w)
                vi = word_inverse(P, v)
                if not in_domain(P, w + vi) or pi_product(P, w + vi, False) != pu:
                    bad("L1.2(2)", w)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                contracted = w[:i] + (prod[i][j - 1],) + w[j:]
                if not in_domain(P, contracted) or pi_product(P, contracted, False) != total:
                    bad("P2", w)
        wi = word_inverse(P, w)
        if not in_domain(P, wi + w) or pi_product(P, wi + w, False) != 0:
            bad("P3", w)
    return rep


# nerve ----------------------------------------------------------------------

def face(P: Pregroup, w: Word, i: int) -> Word:
    n = len(w)
    if i == 0:
        return w[1:]
    if i == n:
        return w[:-1]
    return w[:i - 1] + (P.table[w[i - 1]][w[i]],) + w[i + 1:]


def degeneracy(w: Word, i: int) -> Word:
    return w[:i] + (0,) + w[i:]


@dataclass
class NerveReport:
    counts: list[int]
    identities_checked: int
    failures: list[tuple[str, Word, int, int]]

    @property
    def ok(self) -> bool:
        return not self.failures


def nerve_census(P: Pregroup, n: int = 3, limit: int = 20) -> NerveReport:
    """Count simplices in dimensions 0..n and check all simplicial identities.

    Faces run over i in 0..k on a k-simplex (the last one drops the final letter).
    """
    if n > 4:
        raise ValueError("nerve census is limited to dimension 4")
    counts = [0] * (n + 1)
    checked = 0
    fails: list[tuple[str, Word, int, int]] = []

    def fail(kind, w, i, j):
        if len(fails) < limit:
            fails.append((kind, w, i, j))

    for w in domain_words(P, n):
        k = len(w)
        counts[k] += 1
        if k >= 1:
            for i in range(k + 1):
                if not in_domain(P, face(P, w, i)):
                    fail("face-closed", w, i, -1)
        for i in range(k + 1):
            if not in_domain(P, degeneracy(w, i)):
                fail("degeneracy-closed", w, i, -1)
        # d_i d_j = d_{j-1} d_i for i < j
        if k >= 2:
            for j in range(k + 1):
                for i in range(j):
                    checked += 1
                    if face(P, face(P, w, j), i) != face(P, face(P, w, i), j - 1):
                        fail("dd", w, i, j)
        # face/degeneracy relations on s_j(w), a (k+1)-simplex
        for j in range(k + 1):
            sw = degeneracy(w, j)
            for i in range(k + 2):
                checked += 1
                lhs = face(P, sw, i)
                if i < j:
                    rhs = degeneracy(face(P, w, i), j - 1)
                elif i in (j, j + 1):
                    rhs = w
                else:
                    rhs = degeneracy(face(P, w, i - 1), j)
                if lhs != rhs:
                    fail("ds", w, i, j)
        # s_i s_j = s_{j+1} s_i for i <= j
        for j in range(k + 1):
            for i in range(j + 1):
                checked += 1
                if degeneracy(degeneracy(w, j), i) != degeneracy(degeneracy(w, i), j + 1):
                    fail("ss", w, i, j)
    return NerveReport(counts, checked, fails)


# presentations --------------------------------------------------------------

Relator = list  # list[tuple[str, int]]


@dataclass
class Presentation:
    generators: list[str]
    relators: list[Relator]

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, e in r:
                if g not in gens:
                    raise ValueError(f"relator letter {g!r} is not a generator")
                if e == 0:
                    raise ValueError("zero exponent in relator")

    def to_json(self) -> dict:
        def tok(g, e):
            return g if e == 1 else f"{g}^{e}"

        return {"generators": list(self.generators),
                "relators": [[tok(g, e) for g, e in r] for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        rels = []
        for r in data["relators"]:
            rel = []
            for tok in r:
                if "^" in tok:
                    g, e = tok.rsplit("^", 1)
                    rel.append((g, int(e)))
                else:
                    rel.append((tok, 1))
            rels.append(rel)
        return cls(list(data["generators"]), rels)

    def exponent_matrix(self) -> list[list[int]]:
        col = {g: k for k, g in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for g, e in r:
                row[col[g]] += e
            rows.append(row)
        return rows


def universal_presentation(P: Pregroup, include_unit_pairs: bool = False) -> Presentation:
    """Generators: the elements of P.  Relators: ``m(x,y) y^-1 x^-1`` per pair in D,
    and the unit itself.

    Pairs involving the unit give relators that follow from the unit relator;
    they are left out unless ``include_unit_pairs``.
    """
    lab = P.labels
    rels: list[Relator] = [[(lab[0], 1)]]
    for x, y in P.pairs():
        if not include_unit_pairs and (x == 0 or y == 0):
            continue
        rels.append([(lab[P.table[x][y]], 1), (lab[y], -1), (lab[x], -1)])
    return Presentation(list(lab), rels)


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"C{d}" for d in self.torsion]
        return " x ".join(parts) or "1"


def _eliminate_units(rows: list[dict[int, int]]) -> tuple[list[dict[int, int]], int]:
    """Split off unit pivots from sparse integer rows.

    Rows are taken one at a time and reduced against the pivots found so far;
    a reduced row with an entry of absolute value 1 becomes a new pivot.
    Pivot k vanishes on the columns of pivots 1..k-1, so the pivot block is
    unit upper triangular and contributes invariant factors 1 only.  Returns
    the leftover rows (zero on every pivot column) and the number of pivots.
    """
    pivots: dict[int, tuple[int, dict[int, int]]] = {}

    def reduced(row: dict[int, int]) -> dict[int, int]:
        row = dict(row)
        while True:
            c = next((c for c in row if c in pivots), None)
            if c is None:
                return row
            sign, prow = pivots[c]
            q = row[c] * sign
            for cc, v in prow.items():
                nv = row.get(cc, 0) - q * v
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)

    rest = []
    for r in rows:
        r = reduced(r)
        if not r:
            continue
        c = next((c for c, v in r.items() if abs(v) == 1), None)
        if c is None:
            rest.append(r)
        else:
            pivots[c] = (r[c], r)
    out = [x for x in (reduced(r) for r in rest) if x]
    return out, len(pivots)


def smith_diagonal(matrix: Iterable[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    sparse = [{c: v for c, v in enumerate(r) if v} for r in matrix]
    rest, units = _eliminate_units(sparse)
    cols = sorted({c for r in rest for c in r})
    pos = {c: k for k, c in enumerate(cols)}
    dense = []
    seen = set()
    for r in rest:
        key = tuple(sorted(r.items()))
        if key in seen:
            continue
        seen.add(key)
        row = [0] * len(cols)
        for c, v in r.items():
            row[pos[c]] = v
        dense.append(row)
    return [1] * units + _dense_smith(dense)


def _dense_smith(A: list[list[int]]) -> list[int]:
    """Invariant factors of a dense matrix, pivoting on an entry of least absolute value."""
    A = [r for r in A if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    diag: list[int] = []
    t = 0
    while A:
        best = None
        for i, row in enumerate(A):
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[0], A[i] = A[i], A[0]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[0][t]
            moved = False
            # clear column t below the pivot
            for row in A[1:]:
                q = row[t] // p
                if q:
                    for c in range(t, ncols):
                        row[c] -= q * A[0][c]
            k = min((r for r in range(1, len(A)) if A[r][t]), key=lambda r: abs(A[r][t]), default=None)
            if k is not None:
                A[0], A[k] = A[k], A[0]
                moved = True
            else:
                # clear row t
                piv = A[0]
                for c in range(t + 1, ncols):
                    q = piv[c] // p
                    if q:
                        for row in A:
                            row[c] -= q * row[t]
                cmin = min((c for c in range(t + 1, ncols) if piv[c]), key=lambda c: abs(piv[c]), default=None)
                if cmin is not None:
                    for row in A:
                        row[t], row[cmin] = row[cmin], row[t]
                    moved = True
                else:
                    # divisibility of the remaining block
                    off = next(((r, c) for r in range(1, len(A)) for c in range(t + 1, ncols)
                                if A[r][c] % p), None)
                    if off is not None:
                        r = off[0]
                        for c in range(t, ncols):
                            A[0][c] += A[r][c]
                        moved = True
            if not moved:
                break
        diag.append(abs(A[0][t]))
        A = [row for row in A[1:] if any(row[t + 1:])]
        t += 1
    return diag


def abelian_invariants(pres: Presentation) -> AbelianInvariants:
    diag = smith_diagonal(pres.exponent_matrix())
    rank = len(pres.generators) - len(diag)
    return AbelianInvariants(rank, tuple(d for d in diag if d > 1))
