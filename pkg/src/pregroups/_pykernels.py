"""Reference implementation of the table kernels (numpy + plain Python).

Mirrors ``_ckernels`` exactly, including the order in which violations are
reported, so the two backends can be compared output for output.

Tables: ``mul`` is an ``(n, n)`` int32 array with -1 for undefined products,
``inv`` an int32 array, and element 0 is the unit.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class Tables(NamedTuple):
    mul: np.ndarray
    inv: np.ndarray
    rows: list
    invl: list


def prepare(mul, inv) -> Tables:
    m = np.ascontiguousarray(mul, dtype=np.int32)
    v = np.ascontiguousarray(inv, dtype=np.int32)
    return Tables(m, v, m.tolist(), v.tolist())


def _take(out, code, hits, limit):
    room = limit - sum(1 for c, _ in out if c == code)
    for h in hits[:max(room, 0)]:
        out.append((code, tuple(int(v) for v in h)))


def check_axioms(t: Tables, limit: int = 20, check_pr4: bool = True) -> list:
    """Scan the pregroup axioms and derived identities.

    Returns ``(code, witness)`` pairs, at most ``limit`` per code, in the
    fixed order Pr1, Pr2, inv, Pr3, Pr4, L2, L3, L4.
    """
    mul, inv = t.mul, t.inv
    n = mul.shape[0]
    out: list = []
    ar = np.arange(n)

    bad = np.nonzero((mul[0, :] != ar) | (mul[:, 0] != ar))[0]
    _take(out, "Pr1", bad[:, None], limit)
    bad = np.nonzero((mul[ar, inv] != 0) | (mul[inv, ar] != 0))[0]
    _take(out, "Pr2", bad[:, None], limit)
    bad = np.nonzero(inv[inv] != ar)[0]
    _take(out, "inv", bad[:, None], limit)

    defined = mul >= 0
    # Pr3: pivot x, then (w, y) in lexicographic order
    count = 0
    for x in range(n):
        if count >= limit:
            break
        W = np.nonzero(defined[:, x])[0]
        Y = np.nonzero(defined[x, :])[0]
        if len(W) == 0 or len(Y) == 0:
            continue
        wx = mul[W, x]
        xy = mul[x, Y]
        left = mul[wx[:, None], Y[None, :]]
        right = mul[W[:, None], xy[None, :]]
        hits = np.argwhere(left != right)
        if len(hits):
            trip = np.column_stack([W[hits[:, 0]], np.full(len(hits), x), Y[hits[:, 1]]])
            _take(out, "Pr3", trip, limit)
            count = min(limit, count + len(hits))

    # Pr4: pivot (x, y), then (w, z)
    if check_pr4:
        count = 0
        for x in range(n):
            if count >= limit:
                break
            Y = np.nonzero(defined[x, :])[0]
            W = np.nonzero(defined[:, x])[0]
            if len(Y) == 0 or len(W) == 0:
                continue
            M = mul[x, Y]
            badw = mul[W[:, None], M[None, :]] < 0          # (|W|, |Y|)
            badz = (mul[M, :] < 0) & defined[Y, :]          # (|Y|, n)
            for j in np.nonzero(badw.any(axis=0) & badz.any(axis=1))[0]:
                ws = W[badw[:, j]]
                zs = np.nonzero(badz[j])[0]
                quad = [(w, x, Y[j], z) for w in ws for z in zs]
                _take(out, "Pr4", quad, limit)
                count = min(limit, count + len(quad))
                if count >= limit:
                    break

    # L2 simplification and L3 inverse of a product, over D in (x, y) order
    xs, ys = np.nonzero(defined)
    z = mul[xs, ys]
    ok2 = (mul[inv[xs], z] == ys) & (mul[z, inv[ys]] == xs)
    _take(out, "L2", np.column_stack([xs, ys])[~ok2], limit)
    ok3 = mul[inv[ys], inv[xs]] == inv[z]
    _take(out, "L3", np.column_stack([xs, ys])[~ok3], limit)

    # L4 intercalation: pivot a, then (x, y)
    count = 0
    for a in range(n):
        if count >= limit:
            break
        X = np.nonzero(defined[:, a])[0]
        Y = np.nonzero(defined[inv[a], :])[0]
        if len(X) == 0 or len(Y) == 0:
            continue
        xa = mul[X, a]
        ay = mul[inv[a], Y]
        lhs = mul[X[:, None], Y[None, :]]
        rhs = mul[xa[:, None], ay[None, :]]
        hits = np.argwhere(lhs != rhs)
        if len(hits):
            trip = np.column_stack([X[hits[:, 0]], np.full(len(hits), a), Y[hits[:, 1]]])
            _take(out, "L4", trip, limit)
            count = min(limit, count + len(hits))
    return out


def reduce_word(t: Tables, word) -> tuple[list, list]:
    """Leftmost-first reduction.

    Returns the reduced word and the steps ``(pos, left, right, merged)``.
    A lone unit letter is absorbed into the empty word (step with merged -1).
    """
    rows = t.rows
    w = [int(v) for v in word]
    steps = []
    i = 0
    while i < len(w) - 1:
        z = rows[w[i]][w[i + 1]]
        if z >= 0:
            steps.append((i, w[i], w[i + 1], z))
            w[i:i + 2] = [z]
            if i:
                i -= 1
        else:
            i += 1
    if len(w) == 1 and w[0] == 0:
        steps.append((0, 0, -1, -1))
        w = []
    return w, steps


def intercalate(t: Tables, x, y):
    """Intercalators carrying reduced ``x`` to reduced ``y`` of equal length.

    Returns ``[a_1, ..., a_{n-1}]`` with ``y_i = a_{i-1}^-1 x_i a_i`` and
    ``a_0 = a_n = 1``, or ``None`` when no chain exists.
    """
    rows, invl = t.rows, t.invl
    n = len(x)
    if n != len(y):
        return None
    levels = [[(0, -1)]]
    for i in range(n):
        xi, yi = x[i], y[i]
        cur = []
        seen = set()
        for k, (ap, _) in enumerate(levels[-1]):
            ai = invl[ap]
            z = rows[ai][xi]
            if z >= 0:
                a = rows[invl[z]][yi]
                if a >= 0 and rows[z][a] == yi and a not in seen:
                    seen.add(a)
                    cur.append((a, k))
            w = rows[ap][yi]
            if w >= 0:
                a = rows[invl[xi]][w]
                if a >= 0 and rows[xi][a] == w and rows[ai][w] == yi and a not in seen:
                    seen.add(a)
                    cur.append((a, k))
        if not cur:
            return None
        levels.append(cur)
    for k, (a, parent) in enumerate(levels[n]):
        if a == 0:
            chain = []
            j = parent
            for lvl in range(n - 1, 0, -1):
                a_l, p = levels[lvl][j]
                chain.append(a_l)
                j = p
            return chain[::-1]
    return None


def equal_reduced_matrix(t: Tables, forms) -> np.ndarray:
    """Pairwise equality in the universal group of reduced words."""
    k = len(forms)
    out = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        out[i, i] = 1
        fi = forms[i]
        for j in range(i + 1, k):
            fj = forms[j]
            if len(fi) == len(fj) and intercalate(t, fi, fj) is not None:
                out[i, j] = out[j, i] = 1
    return out
