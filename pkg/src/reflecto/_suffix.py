"""Bulk factor statistics for every length at once.

For a prefix P we build S = P # P^R and its suffix array with LCP.  Distinct
length-n words of P give rho(n); distinct length-n words of P or P^R give the
size of the union, and |Fac_P(n) & Fac_P(n)^R| = 2 rho(n) - |union|, which is
exactly the number of reflected factors.  Palindromes come from an eertree.
"""
from __future__ import annotations

import numpy as np


def suffix_array(s: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix array; ``s`` holds nonnegative ints."""
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    # dense ranks keep rank * (n + 2) + second collision-free
    rank = np.unique(s, return_inverse=True)[1].astype(np.int64).reshape(-1)
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        second[: n - k] = rank[k:] + 1
        key = rank * (n + 2) + second
        sa = np.argsort(key, kind="stable")
        ks = key[sa]
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.concatenate(([0], np.cumsum(ks[1:] != ks[:-1])))
        rank = new
        if rank.max() == n - 1 or k >= n:
            return sa
        k *= 2


def lcp_array(s: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai: lcp[i] = LCP(suffix sa[i-1], suffix sa[i]), lcp[0] = 0."""
    n = len(s)
    seq = s.tolist()
    sal = sa.tolist()
    rank = [0] * n
    for i, p in enumerate(sal):
        rank[p] = i
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sal[r - 1]
        while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


def _distinct_counts(sa, lcp, usable, member, n_max):
    """count[n] = distinct length-n prefixes among member suffixes, n <= n_max."""
    order = np.flatnonzero(member[sa])
    # lo[j] = LCP of member j with member j-1 in SA order
    #       = min lcp[order[j-1]+1 .. order[j]]
    lo = np.zeros(len(order), dtype=np.int64)
    if len(order) > 1:
        shifted = np.append(lcp[1:], 0)
        lo[1:] = np.minimum.reduceat(shifted, order)[:-1]
    hi = usable[sa[order]]
    diff = np.zeros(n_max + 2, dtype=np.int64)
    keep = hi > lo
    a = np.minimum(lo[keep] + 1, n_max + 1)
    b = np.minimum(hi[keep], n_max) + 1
    np.add.at(diff, a, 1)
    np.add.at(diff, b, -1)
    counts = np.cumsum(diff)[: n_max + 1]
    counts[0] = 1
    return counts


def palindrome_counts(p: bytes, n_max: int) -> np.ndarray:
    """Number of distinct palindromic factors of each length 0..n_max (eertree)."""
    # node 0: imaginary root (len -1), node 1: empty root (len 0)
    length = [-1, 0]
    link = [0, 0]
    edges: list[dict] = [{}, {}]
    last = 1
    for i, c in enumerate(p):
        cur = last
        while True:
            L = length[cur]
            if i - 1 - L >= 0 and p[i - 1 - L] == c:
                break
            cur = link[cur]
        nxt = edges[cur].get(c)
        if nxt is not None:
            last = nxt
            continue
        node = len(length)
        length.append(length[cur] + 2)
        edges.append({})
        if length[node] == 1:
            link.append(1)
        else:
            q = link[cur]
            while True:
                L = length[q]
                if i - 1 - L >= 0 and p[i - 1 - L] == c:
                    break
                q = link[q]
            link.append(edges[q][c])
        edges[cur][c] = node
        last = node
    counts = np.zeros(n_max + 1, dtype=np.int64)
    lens = np.asarray(length[2:], dtype=np.int64)
    lens = lens[lens <= n_max]
    np.add.at(counts, lens, 1)
    counts[0] = 1
    return counts


def bulk_counts(p: bytes, n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(rho, refl, pal) arrays over n = 0..n_max for the factors of p."""
    L = len(p)
    sep = 256
    arr = np.frombuffer(p, dtype=np.uint8).astype(np.int64)
    s = np.concatenate((arr, [sep], arr[::-1]))
    N = len(s)
    sa = suffix_array(s)
    lcp = lcp_array(s, sa)
    pos = np.arange(N)
    usable = np.where(pos < L, L - pos, np.where(pos == L, 0, N - pos))
    rho = _distinct_counts(sa, lcp, usable, pos < L, n_max)
    union = _distinct_counts(sa, lcp, usable, pos != L, n_max)
    refl = 2 * rho - union
    refl[0] = 1
    pal = palindrome_counts(p, n_max)
    return rho, refl, pal
