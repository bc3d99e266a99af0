"""Pure-Python hot kernels for ribbon graphs.

This module is the reference implementation.  ``_ckernels.pyx`` mirrors it
function by function; ``rgc.kernels`` picks one of the two at import time.

A graph is given by two integer sequences ``sigma`` (vertex permutation) and
``iota`` (edge involution) on the half-edges ``0..n-1``.  The canonical code
of a connected graph is the vertex permutation of its canonical relabelling,
stored as ``bytes``; the canonical relabelling always has the standard edge
involution ``(0 1)(2 3)...``.
"""

BACKEND = "python"


def _traverse(sigma, iota, root, n, best):
    """Relabel from ``root``.  Returns ``(code, label)`` or ``None`` when the
    partial code already exceeds ``best`` (a list, or ``None``)."""
    label = [-1] * n
    order = [0] * n
    label[root] = 0
    order[0] = root
    j = iota[root]
    label[j] = 1
    order[1] = j
    nxt = 2
    code = [0] * n
    tight = best is not None
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
            b = best[i]
            if c > b:
                return None
            if c < b:
                tight = False
        code[i] = c
    return code, label


def _inversion_parity(seq):
    """Parity of the permutation that sorts ``seq`` (distinct values)."""
    m = len(seq)
    if m < 2:
        return 0
    rank = sorted(range(m), key=seq.__getitem__)
    seen = [False] * m
    cycles = 0
    for i in range(m):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = rank[j]
    return (m - cycles) & 1


def _cycle_new_mins(perm, label, n):
    """New-label minimum of each cycle of ``perm``, cycles listed by old minimum."""
    seen = [False] * n
    mins = []
    for h in range(n):
        if seen[h]:
            continue
        m = label[h]
        j = h
        while not seen[j]:
            seen[j] = True
            if label[j] < m:
                m = label[j]
            j = perm[j]
        mins.append(m)
    return mins


def relabel_sign(sigma, iota, label, parity):
    """Sign of the relabelling ``label`` (old -> new) between induced orientations."""
    n = len(sigma)
    if parity == 0:
        mins = []
        for h in range(n):
            k = iota[h]
            if h < k:
                a, b = label[h], label[k]
                mins.append(a if a < b else b)
        return -1 if _inversion_parity(mins) else 1
    flips = 0
    for h in range(n):
        k = iota[h]
        if h < k and label[h] > label[k]:
            flips += 1
    beta = [sigma[iota[h]] for h in range(n)]
    odd = (flips
           + _inversion_parity(_cycle_new_mins(sigma, label, n))
           + _inversion_parity(_cycle_new_mins(beta, label, n))) & 1
    return -1 if odd else 1


def canonical_labels(sigma, iota):
    """Return ``(code, labels)`` with every relabelling that attains the minimal code."""
    n = len(sigma)
    best = None
    labels = []
    for root in range(n):
        res = _traverse(sigma, iota, root, n, best)
        if res is None:
            continue
        code, label = res
        if best is None or code < best:
            best = code
            labels = [label]
        else:
            labels.append(label)
    return bytes(best), labels


def canonical(sigma, iota, parity):
    """Canonical code, sign of the input relative to it, and zero-class flag."""
    code, labels = canonical_labels(sigma, iota)
    sign = relabel_sign(sigma, iota, labels[0], parity)
    for label in labels[1:]:
        if relabel_sign(sigma, iota, label, parity) != sign:
            return code, sign, True
    return code, sign, False


def code_only(sigma, iota):
    """Canonical code without sign data (faster: keeps only the minimum)."""
    n = len(sigma)
    best = None
    for root in range(n):
        res = _traverse(sigma, iota, root, n, best)
        if res is not None:
            best = res[0]
    return bytes(best)


def vertex_cycles(sigma):
    n = len(sigma)
    seen = [False] * n
    cycles = []
    for h in range(n):
        if seen[h]:
            continue
        cyc = []
        j = h
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = sigma[j]
        cycles.append(cyc)
    return cycles


def splittings(sigma, iota, full):
    """Yield ``(sigma', iota', vertex_sign)`` for every vertex splitting.

    Each unordered split of a vertex into two contiguous arcs is produced
    once.  New half-edges are ``n`` (on the vertex holding the first arc) and
    ``n + 1``.  ``vertex_sign`` is the parity-1 sign: the split vertex is
    replaced in place by the ordered pair of new vertices, acting as an odd
    derivation on the wedge of vertices, then reordered by minimal half-edge.
    Parity-0 callers ignore it.
    """
    n = len(sigma)
    X, Y = n, n + 1
    cycles = vertex_cycles(sigma)
    mins = [c[0] for c in cycles]
    iota2 = list(iota) + [Y, X]
    for vi, cyc in enumerate(cycles):
        k = len(cyc)
        arcs = []
        for length in range(1, k):
            for t in range(length):
                arcs.append(((k - t) % k, length))
        for start, length in arcs:
            A = [cyc[(start + m) % k] for m in range(length)]
            B = [cyc[(start + length + m) % k] for m in range(k - length)]
            s2 = list(sigma) + [0, 0]
            for m in range(length - 1):
                s2[A[m]] = A[m + 1]
            s2[A[-1]] = X
            s2[X] = A[0]
            for m in range(k - length - 1):
                s2[B[m]] = B[m + 1]
            s2[B[-1]] = Y
            s2[Y] = B[0]
            seq = mins[:vi] + [min(A), min(B)] + mins[vi + 1:]
            yield s2, iota2, -1 if (_inversion_parity(seq) ^ vi) & 1 else 1
        if not full:
            continue
        for c in range(k):
            B = cyc[c:] + cyc[:c]
            s2 = list(sigma) + [0, 0]
            s2[X] = X
            for m in range(k - 1):
                s2[B[m]] = B[m + 1]
            s2[B[-1]] = Y
            s2[Y] = B[0]
            seq = mins[:vi] + [X, cyc[0]] + mins[vi + 1:]
            yield s2, iota2, -1 if (_inversion_parity(seq) ^ vi) & 1 else 1


def expand(sigma, iota, parity, full=False):
    """Vertex expansion of a labelled graph as ``{code: coefficient}``.

    Terms landing on zero classes are dropped; cancelled terms are removed.
    """
    out = {}
    for s2, i2, vsign in splittings(sigma, iota, full):
        code, sign, zero = canonical(s2, i2, parity)
        if zero:
            continue
        if parity:
            sign *= vsign
        out[code] = out.get(code, 0) + sign
    return {c: v for c, v in out.items() if v}
