"""Rooted containment tables.

Each kernel takes a rooted pattern and a rooted host in CSR form (``ptr``,
``idx`` for children, ``post`` for a postorder) and fills a table indexed by
``[pattern vertex, host vertex]``:

* ``embed_table``: ``E[v, x]`` iff ``(T_v, v)`` embeds with ``v -> x`` and
  children sent to children.
* ``topo_table``: ``T[v, x]`` iff a subdivision of ``(T_v, v)`` embeds with
  ``v -> x``; ``D[v, x]`` iff ``T[v, z]`` for some ``z`` in ``S_x``.
* ``minor_table``: ``A[v, x]`` iff ``(T_v, v)`` has a rooted minor model in
  ``(S_x, x)`` whose branch set of ``v`` has top ``x``. The table is closed
  upward (``A[v, z]`` implies ``A[v, x]`` for every ancestor ``x`` of ``z``).

The ``*_py`` functions are the plain reference; the exported names are the
numba-compiled versions unless the backend switch turns compilation off.
"""

import numpy as np

from ._accel import njit

MAX_MINOR_CHILDREN = 16


def match_left_py(adj):
    """Left-saturating matching of a 0/1 matrix, or ``-1`` entries on failure.

    Augmenting paths are searched breadth first from each left vertex in
    ascending order, so the result is deterministic.
    """
    k, m = adj.shape
    match_l = np.full(k, -1, dtype=np.int64)
    if k > m:
        return match_l
    match_r = np.full(m, -1, dtype=np.int64)
    prev_l = np.empty(m, dtype=np.int64)
    seen = np.empty(m, dtype=np.bool_)
    queue = np.empty(k + 1, dtype=np.int64)
    for u in range(k):
        seen[:] = False
        head = 0
        tail = 1
        queue[0] = u
        found = -1
        while head < tail and found < 0:
            left = queue[head]
            head += 1
            for r in range(m):
                if adj[left, r] and not seen[r]:
                    seen[r] = True
                    prev_l[r] = left
                    if match_r[r] < 0:
                        found = r
                        break
                    queue[tail] = match_r[r]
                    tail += 1
        if found < 0:
            match_l[:] = -1
            return match_l
        r = found
        while r >= 0:
            left = prev_l[r]
            nxt = match_l[left]
            match_r[r] = left
            match_l[left] = r
            r = nxt
    return match_l


match_left = njit(match_left_py)


def _make_embed(match):
    def embed_table(pptr, pidx, ppost, hptr, hidx, hpost):
        npat = ppost.shape[0]
        nhost = hpost.shape[0]
        E = np.zeros((npat, nhost), dtype=np.uint8)
        for v in ppost:
            k = pptr[v + 1] - pptr[v]
            for x in hpost:
                m = hptr[x + 1] - hptr[x]
                if k == 0:
                    E[v, x] = 1
                elif k <= m:
                    adj = np.zeros((k, m), dtype=np.uint8)
                    for i in range(k):
                        w = pidx[pptr[v] + i]
                        for j in range(m):
                            adj[i, j] = E[w, hidx[hptr[x] + j]]
                    if match(adj)[0] >= 0:
                        E[v, x] = 1
        return E

    return embed_table


def _make_topo(match):
    def topo_table(pptr, pidx, ppost, hptr, hidx, hpost):
        npat = ppost.shape[0]
        nhost = hpost.shape[0]
        T = np.zeros((npat, nhost), dtype=np.uint8)
        D = np.zeros((npat, nhost), dtype=np.uint8)
        for v in ppost:
            k = pptr[v + 1] - pptr[v]
            for x in hpost:
                m = hptr[x + 1] - hptr[x]
                if k == 0:
                    T[v, x] = 1
                elif k <= m:
                    adj = np.zeros((k, m), dtype=np.uint8)
                    for i in range(k):
                        w = pidx[pptr[v] + i]
                        for j in range(m):
                            adj[i, j] = D[w, hidx[hptr[x] + j]]
                    if match(adj)[0] >= 0:
                        T[v, x] = 1
                d = T[v, x]
                for j in range(m):
                    if D[v, hidx[hptr[x] + j]]:
                        d = 1
                D[v, x] = d
        return T, D

    return topo_table


def minor_table_py(pptr, pidx, ppost, hptr, hidx, hpost):
    npat = ppost.shape[0]
    nhost = hpost.shape[0]
    A = np.zeros((npat, nhost), dtype=np.uint8)
    for v in ppost:
        k = pptr[v + 1] - pptr[v]
        if k == 0:
            A[v, :] = 1
            continue
        full = (1 << k) - 1
        # P[mask, x]: the children in mask fit at pairwise incomparable tops inside S_x
        P = np.zeros((full + 1, nhost), dtype=np.uint8)
        G = np.zeros(full + 1, dtype=np.uint8)
        H = np.zeros(full + 1, dtype=np.uint8)
        for x in hpost:
            G[:] = 0
            G[0] = 1
            for j in range(hptr[x], hptr[x + 1]):
                c = hidx[j]
                H[:] = G
                for mask in range(1, full + 1):
                    if H[mask]:
                        continue
                    sub = mask
                    while sub > 0:
                        if P[sub, c] and G[mask ^ sub]:
                            H[mask] = 1
                            break
                        sub = (sub - 1) & mask
                G[:] = H
            for mask in range(1, full + 1):
                if mask & (mask - 1) == 0:
                    bit = 0
                    while (1 << bit) != mask:
                        bit += 1
                    P[mask, x] = A[pidx[pptr[v] + bit], x]
                else:
                    P[mask, x] = G[mask]
            A[v, x] = G[full]
    return A


embed_table_py = _make_embed(match_left_py)
topo_table_py = _make_topo(match_left_py)

embed_table = njit(_make_embed(match_left))
topo_table = njit(_make_topo(match_left))
minor_table = njit(minor_table_py)

PY_KERNELS = {"embed": embed_table_py, "topo": topo_table_py, "minor": minor_table_py}
KERNELS = {"embed": embed_table, "topo": topo_table, "minor": minor_table}
