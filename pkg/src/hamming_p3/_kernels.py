"""Numba kernels for closure and traversal over large vertex universes.

Hamming neighbours are generated on the fly from (radices, strides); the
adjacency of a Hamming graph is never materialised here.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def hull_hamming(radices, strides, seed):
    n = radices.size
    size = seed.size
    contaminated = seed.copy()
    # saturating counter: only the 0 -> 1 -> 2 transitions matter
    count = np.zeros(size, np.uint8)
    queue = np.empty(size, np.int64)
    tail = 0
    for r in range(size):
        if contaminated[r]:
            queue[tail] = r
            tail += 1
    head = 0
    while head < tail:
        r = queue[head]
        head += 1
        for i in range(n):
            s = strides[i]
            d = (r // s) % radices[i]
            base = r - d * s
            for value in range(radices[i]):
                if value == d:
                    continue
                u = base + value * s
                if contaminated[u]:
                    continue
                if count[u] >= 1:
                    contaminated[u] = True
                    queue[tail] = u
                    tail += 1
                else:
                    count[u] = 1
    return contaminated


@njit(cache=True, nogil=True)
def hull_csr(indptr, indices, seed):
    size = seed.size
    contaminated = seed.copy()
    count = np.zeros(size, np.uint8)
    queue = np.empty(size, np.int64)
    tail = 0
    for r in range(size):
        if contaminated[r]:
            queue[tail] = r
            tail += 1
    head = 0
    while head < tail:
        r = queue[head]
        head += 1
        for k in range(indptr[r], indptr[r + 1]):
            u = indices[k]
            if contaminated[u]:
                continue
            if count[u] >= 1:
                contaminated[u] = True
                queue[tail] = u
                tail += 1
            else:
                count[u] = 1
    return contaminated


@njit(cache=True, nogil=True)
def label_components_hamming(radices, strides, members):
    """Label connected components of the subgraph induced by ``members``.

    Labels follow the lowest rank of each component; non-members get -1.
    """
    n = radices.size
    size = members.size
    labels = np.full(size, -1, np.int64)
    stack = np.empty(size, np.int64)
    current = 0
    for start in range(size):
        if not members[start] or labels[start] >= 0:
            continue
        labels[start] = current
        top = 0
        stack[top] = start
        top += 1
        while top > 0:
            top -= 1
            r = stack[top]
            for i in range(n):
                s = strides[i]
                d = (r // s) % radices[i]
                base = r - d * s
                for value in range(radices[i]):
                    if value == d:
                        continue
                    u = base + value * s
                    if members[u] and labels[u] < 0:
                        labels[u] = current
                        stack[top] = u
                        top += 1
        current += 1
    return labels, current


@njit(cache=True, nogil=True)
def bfs_distance_hamming(radices, strides, sources, targets):
    """Graph distance from the set ``sources`` to the set ``targets`` (-1 if none)."""
    n = radices.size
    size = sources.size
    dist = np.full(size, -1, np.int64)
    queue = np.empty(size, np.int64)
    tail = 0
    for r in range(size):
        if sources[r]:
            if targets[r]:
                return 0
            dist[r] = 0
            queue[tail] = r
            tail += 1
    head = 0
    while head < tail:
        r = queue[head]
        head += 1
        for i in range(n):
            s = strides[i]
            d = (r // s) % radices[i]
            base = r - d * s
            for value in range(radices[i]):
                if value == d:
                    continue
                u = base + value * s
                if dist[u] >= 0:
                    continue
                if targets[u]:
                    return dist[r] + 1
                dist[u] = dist[r] + 1
                queue[tail] = u
                tail += 1
    return -1
