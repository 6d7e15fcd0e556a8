"""Per-length factor statistics by window-id refinement.

Windows of S = P # P^R are given dense integer ids so that two windows of the
same length share an id iff they spell the same word.  Going from length n to
n+1 re-keys each window as (id, next symbol) and renumbers through a presence
table, so every step is a handful of linear numpy passes and no sort.
"""
from __future__ import annotations

import numpy as np


def _renumber(key: np.ndarray, bound: int, out: np.ndarray) -> int:
    """Overwrite ``out`` with dense ids for ``key``; return the number of ids."""
    if bound <= 8 * len(key) + 1024:
        present = np.zeros(bound, dtype=bool)
        present[key] = True
        dense = np.cumsum(present) - 1
        np.take(dense, key, out=out)
        return int(dense[-1]) + 1
    uniq, inv = np.unique(key, return_inverse=True)
    out[:] = inv
    return len(uniq)


def window_counts(p: bytes, n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(rho, refl, pal) arrays over n = 0..n_max."""
    L = len(p)
    arr = np.frombuffer(p, dtype=np.uint8).astype(np.intp)
    sigma = int(arr.max()) + 2 if L else 2
    sep = sigma - 1
    s = np.concatenate((arr, [sep], arr[::-1])).astype(np.intp)
    N = len(s)
    rho = np.ones(n_max + 1, dtype=np.int64)
    refl = np.ones(n_max + 1, dtype=np.int64)
    pal = np.ones(n_max + 1, dtype=np.int64)
    ids = np.zeros(N, dtype=np.intp)  # length-0 windows all equal
    key = np.empty(N, dtype=np.intp)
    groups = 1
    for n in range(1, n_max + 1):
        m = N - n + 1  # windows of length n start at 0..m-1
        k = key[:m]
        np.multiply(ids[:m], sigma, out=k)
        np.add(k, s[n - 1:N], out=k)
        ids = ids[:m]
        groups = _renumber(k, groups * sigma, ids)
        wp = L - n + 1  # P-windows start at 0..wp-1
        fwd = ids[:wp]
        rev = ids[L + 1:L + 1 + wp]
        seen_p = np.zeros(groups, dtype=bool)
        seen_p[fwd] = True
        seen_r = np.zeros(groups, dtype=bool)
        seen_r[rev] = True
        rho[n] = np.count_nonzero(seen_p)
        refl[n] = np.count_nonzero(seen_p & seen_r)
        # P-window i reversed is the P^R window starting at L+1 + (L-i-n)
        seen_pal = np.zeros(groups, dtype=bool)
        seen_pal[fwd[fwd == rev[::-1]]] = True
        pal[n] = np.count_nonzero(seen_pal)
    return rho, refl, pal


def compressed_counts(p: bytes, n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Same result as ``window_counts``, via the distinct longest windows.

    Every length-n factor of P is a prefix of some length-n_max window or lies
    inside the last n_max-1 letters.  When P has few distinct long windows this
    shrinks the work to one hashing pass plus set operations on a small set.
    Falls back to id refinement when the distinct windows are too many.
    """
    L = len(p)
    if n_max == 0 or L < 4 * n_max:
        return window_counts(p, n_max)
    longest = {p[i:i + n_max] for i in range(L - n_max + 1)}
    if len(longest) * n_max > L:
        return window_counts(p, n_max)
    tail = p[L - n_max + 1:]
    rho = np.ones(n_max + 1, dtype=np.int64)
    refl = np.ones(n_max + 1, dtype=np.int64)
    pal = np.ones(n_max + 1, dtype=np.int64)
    for n in range(1, n_max + 1):
        fac = {w[:n] for w in longest}
        fac.update(tail[i:i + n] for i in range(len(tail) - n + 1))
        rho[n] = len(fac)
        refl[n] = sum(1 for w in fac if w[::-1] in fac)
        pal[n] = sum(1 for w in fac if w == w[::-1])
    return rho, refl, pal
