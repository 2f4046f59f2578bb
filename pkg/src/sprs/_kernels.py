"""Compiled kernels for reduction graphs over very long strings.

Optional: :mod:`sprs.graph` imports this lazily and only for inputs large
enough to amortize the JIT machinery, falling back to its pure-numpy path
when numba is unavailable.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# States of the per-identity table driving dense_pair; non-negative entries
# hold the kept-occurrence index of a first occurrence.
UNSEEN = -1
KEPT_PAIRED = -2
REMOVED_ONCE = -3
REMOVED_UNSEEN = -4
REMOVED_PAIRED = -5


@njit(cache=True)
def dense_pair(arr, seen):
    """One pass over the pointer array: legality validation, kept
    positions, occurrence pairs, and the compact walk-successor array.

    ``arr`` holds the signed pointers; ``seen`` is the state table indexed
    by identity, preset to REMOVED_UNSEEN at removed identities and UNSEEN
    elsewhere (it is consumed destructively).  Returns (err, removed_ids,
    pos, g0, g1, same, comp): err is 1 when some identity does not occur
    exactly twice; removed_ids counts the distinct removed identities
    present, for the caller's subset check.  comp[v] = d(r(v)) with -1
    where undefined, so the chase from s ends exactly when the walk's
    reality edge hits t.
    """
    n0 = arr.size
    pos = np.empty(n0, np.int32)
    half = n0 // 2
    g0 = np.empty(half, np.int32)
    g1 = np.empty(half, np.int32)
    same = np.empty(half, np.bool_)
    k = 0
    m = 0
    unpaired = 0
    removed_ids = 0
    err = 0
    for i in range(n0):
        p = arr[i]
        a = p if p >= 0 else -p
        st = seen[a]
        if st == UNSEEN:
            seen[a] = k
            unpaired += 1
        elif st >= 0:
            g0[m] = st
            g1[m] = k
            same[m] = arr[pos[st]] == p
            m += 1
            seen[a] = KEPT_PAIRED
            unpaired -= 1
        elif st == REMOVED_UNSEEN:
            seen[a] = REMOVED_ONCE
            unpaired += 1
            removed_ids += 1
            continue
        elif st == REMOVED_ONCE:
            seen[a] = REMOVED_PAIRED
            unpaired -= 1
            continue
        else:
            err = 1
            break
        pos[k] = i
        k += 1
    if err == 0 and unpaired != 0:
        err = 1
    n = k
    comp = np.full(2 * n + 2, -1, np.int32)
    if err == 0:
        for t in range(m):
            ci = 2 * g0[t] + 2
            cj = 2 * g1[t] + 2
            s = 1 if same[t] else 0
            # Scatter d(x) to comp[r(x)]: r is an involution with
            # r(2) = s, r(2k) = 2k-1, r(2k+1) = 2k+2, r(2n+1) = t.
            comp[0 if ci == 2 else ci - 1] = cj + s
            comp[0 if cj == 2 else cj - 1] = ci + s
            comp[1 if ci == 2 * n else ci + 2] = cj + 1 - s
            comp[1 if cj == 2 * n else cj + 2] = ci + 1 - s
    return err, removed_ids, pos[:n], g0[:m], g1[:m], same[:m], comp


@njit(cache=True)
def chase_emit(comp, pos, arr):
    """Follow comp from s and concatenate the removed segments the walk
    reads, reversing and negating those read through even vertices."""
    n = pos.size
    n0 = arr.size
    # The chase first: its dependent loads through comp are the latency
    # bottleneck, so keep that loop to the single indirection.
    visited = np.empty(2 * n + 2, np.int32)
    steps = 0
    v = 0
    while v != -1:
        visited[steps] = v
        steps += 1
        v = comp[v]
    out = np.empty(n0, arr.dtype)
    w = 0
    for q in range(steps):
        v = visited[q]
        if v == 0:
            j = 0
            forward = True
        elif v & 1:
            j = (v - 1) // 2
            forward = True
        else:
            j = v // 2 - 1
            forward = False
        a = pos[j - 1] + 1 if j > 0 else 0
        b = pos[j] if j < n else n0
        if forward:
            for i in range(a, b):
                out[w] = arr[i]
                w += 1
        else:
            for i in range(b - 1, a - 1, -1):
                out[w] = -arr[i]
                w += 1
    return out[:w]
