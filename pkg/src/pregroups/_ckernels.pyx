# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def prepare(mul, inv):
    m = np.array(mul, dtype=np.int32, order="C", copy=True)
    v = np.array(inv, dtype=np.int32, order="C", copy=True)
    return (m, v)


cdef inline void _push(list out, str code, tuple w, int *count, int limit):
    if count[0] < limit:
        out.append((code, w))
        count[0] += 1


def check_axioms(tables, int limit=20, bint check_pr4=True):
    cdef int[:, ::1] mul = tables[0]
    cdef int[::1] inv = tables[1]
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t w, x, y, z, a, m, wx, xy, xa, ay
    cdef int count
    cdef bint anyw, anyz
    cdef list out = []

    count = 0
    for x in range(n):
        if mul[0, x] != x or mul[x, 0] != x:
            _push(out, "Pr1", (x,), &count, limit)
    count = 0
    for x in range(n):
        if mul[x, inv[x]] != 0 or mul[inv[x], x] != 0:
            _push(out, "Pr2", (x,), &count, limit)
    count = 0
    for x in range(n):
        if inv[inv[x]] != x:
            _push(out, "inv", (x,), &count, limit)

    count = 0
    for x in range(n):
        if count >= limit:
            break
        for w in range(n):
            wx = mul[w, x]
            if wx < 0:
                continue
            for y in range(n):
                xy = mul[x, y]
                if xy < 0:
                    continue
                if mul[wx, y] != mul[w, xy]:
                    _push(out, "Pr3", (w, x, y), &count, limit)

    if check_pr4:
        count = 0
        for x in range(n):
            if count >= limit:
                break
            for y in range(n):
                m = mul[x, y]
                if m < 0:
                    continue
                anyw = False
                for w in range(n):
                    if mul[w, x] >= 0 and mul[w, m] < 0:
                        anyw = True
                        break
                if not anyw:
                    continue
                anyz = False
                for z in range(n):
                    if mul[y, z] >= 0 and mul[m, z] < 0:
                        anyz = True
                        break
                if not anyz:
                    continue
                for w in range(n):
                    if mul[w, x] >= 0 and mul[w, m] < 0:
                        for z in range(n):
                            if mul[y, z] >= 0 and mul[m, z] < 0:
                                _push(out, "Pr4", (w, x, y, z), &count, limit)
                if count >= limit:
                    break

    count = 0
    for x in range(n):
        for y in range(n):
            m = mul[x, y]
            if m < 0:
                continue
            if mul[inv[x], m] != y or mul[m, inv[y]] != x:
                _push(out, "L2", (x, y), &count, limit)
    count = 0
    for x in range(n):
        for y in range(n):
            m = mul[x, y]
            if m < 0:
                continue
            if mul[inv[y], inv[x]] != inv[m]:
                _push(out, "L3", (x, y), &count, limit)

    count = 0
    for a in range(n):
        if count >= limit:
            break
        for x in range(n):
            xa = mul[x, a]
            if xa < 0:
                continue
            for y in range(n):
                ay = mul[inv[a], y]
                if ay < 0:
                    continue
                if mul[x, y] != mul[xa, ay]:
                    _push(out, "L4", (x, a, y), &count, limit)
    return out


def reduce_word(tables, word):
    cdef int[:, ::1] mul = tables[0]
    cdef list w = [int(v) for v in word]
    cdef list steps = []
    cdef Py_ssize_t i = 0
    cdef int z, l, r
    while i < len(w) - 1:
        l = w[i]
        r = w[i + 1]
        z = mul[l, r]
        if z >= 0:
            steps.append((i, l, r, z))
            w[i:i + 2] = [z]
            if i:
                i -= 1
        else:
            i += 1
    if len(w) == 1 and w[0] == 0:
        steps.append((0, 0, -1, -1))
        w = []
    return w, steps


cdef int _intercalate(int[:, ::1] mul, int[::1] inv, int[::1] x, int[::1] y,
                      int[:, ::1] lev_a, int[:, ::1] lev_p, int[::1] lev_n) nogil:
    # lev_a[i, k], lev_p[i, k]: candidate k at level i and its parent slot.
    # Returns the slot of the unit at level n, or -1.
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, k, j, cnt
    cdef int ap, ai, xi, yi, z, a, w
    cdef bint dup
    lev_a[0, 0] = 0
    lev_p[0, 0] = -1
    lev_n[0] = 1
    for i in range(n):
        xi = x[i]
        yi = y[i]
        cnt = 0
        for k in range(lev_n[i]):
            ap = lev_a[i, k]
            ai = inv[ap]
            z = mul[ai, xi]
            if z >= 0:
                a = mul[inv[z], yi]
                if a >= 0 and mul[z, a] == yi:
                    dup = False
                    for j in range(cnt):
                        if lev_a[i + 1, j] == a:
                            dup = True
                            break
                    if not dup:
                        lev_a[i + 1, cnt] = a
                        lev_p[i + 1, cnt] = k
                        cnt += 1
            w = mul[ap, yi]
            if w >= 0:
                a = mul[inv[xi], w]
                if a >= 0 and mul[xi, a] == w and mul[ai, w] == yi:
                    dup = False
                    for j in range(cnt):
                        if lev_a[i + 1, j] == a:
                            dup = True
                            break
                    if not dup:
                        lev_a[i + 1, cnt] = a
                        lev_p[i + 1, cnt] = k
                        cnt += 1
        if cnt == 0:
            return -1
        lev_n[i + 1] = cnt
    for k in range(lev_n[n]):
        if lev_a[n, k] == 0:
            return k
    return -1


def intercalate(tables, x, y):
    cdef int[:, ::1] mul = tables[0]
    cdef int[::1] inv = tables[1]
    cdef Py_ssize_t n = len(x)
    if n != len(y):
        return None
    nsize = mul.shape[0]
    xa = np.asarray(x, dtype=np.int32)
    ya = np.asarray(y, dtype=np.int32)
    width = 2 * nsize + 2
    la = np.zeros((n + 1, width), dtype=np.int32)
    lp = np.zeros((n + 1, width), dtype=np.int32)
    ln = np.zeros(n + 1, dtype=np.int32)
    cdef int slot = _intercalate(mul, inv, xa, ya, la, lp, ln)
    if slot < 0:
        return None
    chain = []
    j = lp[n, slot]
    for lvl in range(n - 1, 0, -1):
        chain.append(int(la[lvl, j]))
        j = lp[lvl, j]
    return chain[::-1]


def equal_reduced_matrix(tables, forms):
    cdef int[:, ::1] mul = tables[0]
    cdef int[::1] inv = tables[1]
    cdef Py_ssize_t k = len(forms)
    cdef Py_ssize_t i, j, L
    out = np.zeros((k, k), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] o = out
    cdef Py_ssize_t maxlen = max([len(f) for f in forms], default=0)
    nsize = mul.shape[0]
    width = 2 * nsize + 2
    la_np = np.zeros((maxlen + 1, width), dtype=np.int32)
    lp_np = np.zeros((maxlen + 1, width), dtype=np.int32)
    ln_np = np.zeros(maxlen + 1, dtype=np.int32)
    cdef int[:, ::1] la = la_np
    cdef int[:, ::1] lp = lp_np
    cdef int[::1] ln = ln_np
    arrs = [np.asarray(f, dtype=np.int32) for f in forms]
    lens = np.array([len(f) for f in forms], dtype=np.int64)
    cdef cnp.int64_t[::1] lv = lens
    cdef int[::1] xi, yj
    for i in range(k):
        o[i, i] = 1
        xi = arrs[i]
        for j in range(i + 1, k):
            if lv[i] != lv[j]:
                continue
            yj = arrs[j]
            if _intercalate(mul, inv, xi, yj, la, lp, ln) >= 0:
                o[i, j] = 1
                o[j, i] = 1
    return out
