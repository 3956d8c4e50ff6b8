"""Maximum cardinality matching on general graphs (blossom contraction).

BFS over alternating trees with on-the-fly blossom bases, the classic
O(V^3) formulation. Exact on any simple graph; the deadline is polled
once per augmenting round so budgeted callers can cancel promptly.
"""

from __future__ import annotations

import time


def max_matching_size(n, rows, deadline: float | None = None) -> int | None:
    if deadline is not None and time.monotonic() >= deadline:
        return None
    if n == 0:
        return 0
    adj = [list(_bits_of(r)) for r in rows]
    match = [-1] * n
    # greedy warm start saves most augmenting rounds
    for v in range(n):
        if match[v] < 0:
            for u in adj[v]:
                if match[u] < 0:
                    match[v] = u
                    match[u] = v
                    break

    parent = [-1] * n
    base = list(range(n))

    def lca(a, b):
        used = [False] * n
        while True:
            a = base[a]
            used[a] = True
            if match[a] < 0:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if used[b]:
                return b
            b = parent[match[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting(root):
        nonlocal parent, base
        parent = [-1] * n
        base = list(range(n))
        in_queue = [False] * n
        queue = [root]
        in_queue[root] = True
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for u in adj[v]:
                if base[v] == base[u] or match[v] == u:
                    continue
                if u == root or (match[u] >= 0 and parent[match[u]] >= 0):
                    # odd cycle: contract the blossom around the common base
                    b = lca(v, u)
                    blossom = [False] * n
                    mark_path(v, b, u, blossom)
                    mark_path(u, b, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = b
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif parent[u] < 0:
                    parent[u] = v
                    if match[u] < 0:
                        return u  # augmenting path endpoint found
                    if not in_queue[match[u]]:
                        in_queue[match[u]] = True
                        queue.append(match[u])
        return -1

    for root in range(n):
        if match[root] >= 0:
            continue
        if deadline is not None and time.monotonic() >= deadline:
            return None
        u = find_augmenting(root)
        while u >= 0:
            pv = parent[u]
            ppv = match[pv]
            match[u] = pv
            match[pv] = u
            u = ppv
    # COMPUTED means finished within budget; a late finish is a timeout
    if deadline is not None and time.monotonic() >= deadline:
        return None
    return sum(1 for v in match if v >= 0) // 2


def _bits_of(r):
    while r:
        yield (r & -r).bit_length() - 1
        r &= r - 1
