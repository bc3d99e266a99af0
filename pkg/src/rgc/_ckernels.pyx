# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; same functions and results as ``_pykernels``."""

from libc.stdint cimport uint64_t

BACKEND = "cython"

cdef enum:
    MAXN = 260


cdef int _traverse(const int* sigma, const int* iota, int root, int n,
                   const int* best, bint have_best, int* code, int* label) noexcept nogil:
    # 0: aborted (worse than best), 1: strictly better or first, 2: equal to best
    cdef int order[MAXN]
    cdef int i, s, t, c, j, nxt
    cdef bint tight = have_best
    for i in range(n):
        label[i] = -1
    label[root] = 0
    order[0] = root
    j = iota[root]
    label[j] = 1
    order[1] = j
    nxt = 2
    for i in range(n):
        s = sigma[order[i]]
        if label[s] < 0:
            label[s] = nxt
            order[nxt] = s
            t = iota[s]
            label[t] = nxt + 1
            order[nxt + 1] = t
            nxt += 2
        c = label[s]
        if tight:
            if c > best[i]:
                return 0
            if c < best[i]:
                tight = False
        code[i] = c
    return 2 if tight else 1


cdef int _parity(const int* seq, int m) noexcept nogil:
    cdef int i, j, inv = 0
    for i in range(m):
        for j in range(i + 1, m):
            if seq[i] > seq[j]:
                inv += 1
    return inv & 1


cdef int _cycle_mins(const int* perm, const int* label, int n, int* mins) noexcept nogil:
    cdef char seen[MAXN]
    cdef int h, j, m, count = 0
    for h in range(n):
        seen[h] = 0
    for h in range(n):
        if seen[h]:
            continue
        m = label[h]
        j = h
        while not seen[j]:
            seen[j] = 1
            if label[j] < m:
                m = label[j]
            j = perm[j]
        mins[count] = m
        count += 1
    return count


cdef int _sign(const int* sigma, const int* iota, const int* label, int n, int parity) noexcept nogil:
    cdef int buf[MAXN]
    cdef int beta[MAXN]
    cdef int h, k, a, b, m = 0, flips = 0, odd
    if parity == 0:
        for h in range(n):
            k = iota[h]
            if h < k:
                a = label[h]
                b = label[k]
                buf[m] = a if a < b else b
                m += 1
        return -1 if _parity(buf, m) else 1
    for h in range(n):
        k = iota[h]
        if h < k and label[h] > label[k]:
            flips += 1
        beta[h] = sigma[iota[h]]
    m = _cycle_mins(sigma, label, n, buf)
    odd = flips + _parity(buf, m)
    m = _cycle_mins(beta, label, n, buf)
    odd += _parity(buf, m)
    return -1 if odd & 1 else 1


cdef void _canonical(const int* sigma, const int* iota, int n, int parity, bint want_sign,
                     int* best, int* sign, bint* zero) noexcept nogil:
    cdef int code[MAXN]
    cdef int label[MAXN]
    cdef int root, r, i, s
    cdef bint have = False
    sign[0] = 1
    zero[0] = False
    for root in range(n):
        r = _traverse(sigma, iota, root, n, best, have, code, label)
        if r == 0:
            continue
        if r == 1:
            for i in range(n):
                best[i] = code[i]
            have = True
            if want_sign:
                sign[0] = _sign(sigma, iota, label, n, parity)
                zero[0] = False
        elif want_sign and not zero[0]:
            s = _sign(sigma, iota, label, n, parity)
            if s != sign[0]:
                zero[0] = True


cdef int _load(object seq, int* out) except -1:
    cdef int n = len(seq)
    cdef int i
    if n > MAXN - 2:
        raise ValueError("graph too large for the compiled kernels")
    for i in range(n):
        out[i] = seq[i]
    return n


cdef bytes _to_bytes(const int* code, int n):
    cdef bytearray out = bytearray(n)
    cdef int i
    for i in range(n):
        out[i] = code[i]
    return bytes(out)


def relabel_sign(sigma, iota, label, int parity):
    cdef int s[MAXN]
    cdef int io[MAXN]
    cdef int lab[MAXN]
    cdef int n = _load(sigma, s)
    _load(iota, io)
    _load(label, lab)
    return _sign(s, io, lab, n, parity)


def canonical_labels(sigma, iota):
    cdef int s[MAXN]
    cdef int io[MAXN]
    cdef int best[MAXN]
    cdef int code[MAXN]
    cdef int label[MAXN]
    cdef int n = _load(sigma, s)
    cdef int root, r, i
    cdef bint have = False
    _load(iota, io)
    labels = []
    for root in range(n):
        r = _traverse(s, io, root, n, best, have, code, label)
        if r == 0:
            continue
        if r == 1:
            for i in range(n):
                best[i] = code[i]
            have = True
            labels = []
        labels.append([label[i] for i in range(n)])
    return _to_bytes(best, n), labels


def canonical(sigma, iota, int parity):
    cdef int s[MAXN]
    cdef int io[MAXN]
    cdef int best[MAXN]
    cdef int sign
    cdef bint zero
    cdef int n = _load(sigma, s)
    _load(iota, io)
    _canonical(s, io, n, parity, True, best, &sign, &zero)
    return _to_bytes(best, n), sign, bool(zero)


def code_only(sigma, iota):
    cdef int s[MAXN]
    cdef int io[MAXN]
    cdef int best[MAXN]
    cdef int sign
    cdef bint zero
    cdef int n = _load(sigma, s)
    _load(iota, io)
    _canonical(s, io, n, 0, False, best, &sign, &zero)
    return _to_bytes(best, n)


def expand(sigma, iota, int parity, bint full=False):
    cdef int s[MAXN]
    cdef int io[MAXN]
    cdef int s2[MAXN]
    cdef int io2[MAXN]
    cdef int best[MAXN]
    cdef int cyc[MAXN]
    cdef int mins[MAXN]
    cdef int seq[MAXN]
    cdef int start_of[MAXN]
    cdef char seen[MAXN]
    cdef int n = _load(sigma, s)
    cdef int X = n, Y = n + 1, n2 = n + 2
    cdef int h, j, i, m, k, vi, nv = 0, length, t, st, c, minA, minB, sign, vsign
    cdef bint zero
    _load(iota, io)
    for h in range(n):
        io2[h] = io[h]
        seen[h] = 0
    io2[X] = Y
    io2[Y] = X
    # vertex cycles by minimal half-edge
    for h in range(n):
        if not seen[h]:
            mins[nv] = h
            nv += 1
            j = h
            while not seen[j]:
                seen[j] = 1
                j = s[j]
    out = {}
    for vi in range(nv):
        k = 0
        j = mins[vi]
        while True:
            cyc[k] = j
            k += 1
            j = s[j]
            if j == mins[vi]:
                break
        for length in range(1, k):
            for t in range(length):
                st = (k - t) % k
                for h in range(n):
                    s2[h] = s[h]
                minA = n
                for m in range(length):
                    c = cyc[(st + m) % k]
                    if c < minA:
                        minA = c
                    if m < length - 1:
                        s2[c] = cyc[(st + m + 1) % k]
                    else:
                        s2[c] = X
                s2[X] = cyc[st]
                minB = n
                for m in range(k - length):
                    c = cyc[(st + length + m) % k]
                    if c < minB:
                        minB = c
                    if m < k - length - 1:
                        s2[c] = cyc[(st + length + m + 1) % k]
                    else:
                        s2[c] = Y
                s2[Y] = cyc[(st + length) % k]
                for i in range(vi):
                    seq[i] = mins[i]
                seq[vi] = minA
                seq[vi + 1] = minB
                for i in range(vi + 1, nv):
                    seq[i + 1] = mins[i]
                vsign = -1 if (_parity(seq, nv + 1) ^ (vi & 1)) else 1
                _canonical(s2, io2, n2, parity, True, best, &sign, &zero)
                if zero:
                    continue
                if parity:
                    sign *= vsign
                key = _to_bytes(best, n2)
                out[key] = out.get(key, 0) + sign
        if not full:
            continue
        for c in range(k):
            for h in range(n):
                s2[h] = s[h]
            s2[X] = X
            for m in range(k - 1):
                s2[cyc[(c + m) % k]] = cyc[(c + m + 1) % k]
            s2[cyc[(c + k - 1) % k]] = Y
            s2[Y] = cyc[c]
            for i in range(vi):
                seq[i] = mins[i]
            seq[vi] = X
            seq[vi + 1] = cyc[0]
            for i in range(vi + 1, nv):
                seq[i + 1] = mins[i]
            vsign = -1 if (_parity(seq, nv + 1) ^ (vi & 1)) else 1
            _canonical(s2, io2, n2, parity, True, best, &sign, &zero)
            if zero:
                continue
            if parity:
                sign *= vsign
            key = _to_bytes(best, n2)
            out[key] = out.get(key, 0) + sign
    return {key: v for key, v in out.items() if v}


def rank_modp(columns, uint64_t p):
    """Rank of sparse columns ``{row: value}`` (values already reduced mod ``p``)."""
    cdef dict pivots = {}
    cdef dict v, w
    cdef uint64_t f, x, y, inv
    cdef Py_ssize_t r
    order = sorted(range(len(columns)), key=lambda c: (len(columns[c]), c))
    for jcol in order:
        v = dict(columns[jcol])
        while v:
            r = min(v)
            w = pivots.get(r)
            if w is None:
                inv = pow(<object>v[r], -1, <object>p)
                pivots[r] = {kk: (<uint64_t>xx * inv) % p for kk, xx in v.items()}
                break
            f = v[r]
            for kk, xx in w.items():
                x = xx
                y = (<uint64_t>v.get(kk, 0) + p - (f * x) % p) % p
                if y:
                    v[kk] = y
                else:
                    v.pop(kk, None)
    return len(pivots)
