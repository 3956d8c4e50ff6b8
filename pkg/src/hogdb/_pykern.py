"""Pure-Python kernels: canonical labeling and exact NP-hard solvers.

This module is the fallback for the compiled extension in _ckern; both
expose the same three entry points and must return identical results:

    canonicalize(n, rows)                 -> (perm, code)
    max_clique_size(n, rows, deadline)    -> int | None
    chromatic_number(n, rows, deadline)   -> int | None

Graphs are passed as adjacency bitmask rows (bit u of rows[v] set iff
u ~ v). `perm` maps old labels to new ones and `code` is the packed
column-major upper-triangle bit vector of the relabeled graph (see
_bits), minimal over all labelings, so equal codes mean isomorphic.

Canonical labeling: equitable partition refinement (iterated splitting
by neighbour counts, fragments ordered by count), then backtracking
over individualized vertices of the first non-singleton cell. Leaf
labelings are compared by code; automorphisms discovered at equal
leaves prune branches whose root vertex lies in the orbit of an
already explored one, which keeps highly symmetric graphs (complete,
empty, circulant) far away from the factorial worst case.

Solvers return None when the wall-clock deadline (time.monotonic
domain) passes; they poll it frequently enough to honor cancellation
within far less than 100 ms.
"""

from __future__ import annotations

import time


def _refine(n, rows, cells):
    """Equitable refinement of an ordered partition.

    Repeatedly splits every cell by the number of neighbours its
    vertices have in a splitter cell, replacing the cell in place by
    its fragments in ascending count order, until stable. The result
    depends only on the ordered partition and the graph structure,
    never on vertex labels, which is what makes the search canonical.
    """
    while True:
        changed = False
        for splitter in list(cells):
            smask = 0
            for v in splitter:
                smask |= 1 << v
            new_cells = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((rows[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for k in sorted(groups):
                        new_cells.append(groups[k])
            cells = new_cells
            if changed:
                break
        if not changed:
            return cells


def _leaf_code(n, rows, perm):
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    code = 0
    for j in range(1, n):
        rj = rows[inv[j]]
        for i in range(j):
            code = (code << 1) | ((rj >> inv[i]) & 1)
    return code


_MAX_GENS = 4096  # heavily symmetric graphs yield O(n^2) generators


class _CanonSearch:
    def __init__(self, n, rows):
        self.n = n
        self.rows = rows
        self.best_code = -1
        self.best_perm = None
        self.gens: list[list[int]] = []  # automorphism generators, old -> old
        self._gen_seen: set[tuple[int, ...]] = set()

    def run(self, cells):
        self._descend(cells, [])
        return self.best_perm, self.best_code

    def _descend(self, cells, path):
        target = None
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                target = idx
                break
        if target is None:
            self._leaf(cells)
            return
        cell = cells[target]
        candidates = cell[:1] if self._interchangeable(cell) else cell
        tried: list[int] = []
        for v in candidates:
            if tried and self._in_tried_orbit(v, tried, path):
                continue
            tried.append(v)
            split = cells[:target] + [[v], [u for u in cell if u != v]] + cells[target + 1:]
            self._descend(_refine(self.n, self.rows, split), path + [v])

    def _interchangeable(self, cell) -> bool:
        """True when every transposition inside the cell is an automorphism:
        identical neighbourhoods outside, clique or independent inside."""
        cmask = 0
        for v in cell:
            cmask |= 1 << v
        rows = self.rows
        outside = rows[cell[0]] & ~cmask
        inner0 = rows[cell[0]] & cmask
        clique = inner0 == cmask & ~(1 << cell[0])
        if not clique and inner0 != 0:
            return False
        for v in cell[1:]:
            if rows[v] & ~cmask != outside:
                return False
            inner = rows[v] & cmask
            if inner != (cmask & ~(1 << v) if clique else 0):
                return False
        return True

    def _leaf(self, cells):
        n = self.n
        perm = [0] * n
        for pos, cell in enumerate(cells):
            perm[cell[0]] = pos
        code = _leaf_code(n, self.rows, perm)
        if self.best_perm is None or code < self.best_code:
            self.best_code = code
            self.best_perm = perm
        elif code == self.best_code:
            # equal leaves witness an automorphism: gamma = leaf^-1 o best
            inv_leaf = [0] * n
            for old, new in enumerate(perm):
                inv_leaf[new] = old
            gamma = [inv_leaf[self.best_perm[x]] for x in range(n)]
            key = tuple(gamma)
            if (gamma != list(range(n)) and len(self.gens) < _MAX_GENS
                    and key not in self._gen_seen):
                self.gens.append(gamma)
                self._gen_seen.add(key)

    def _in_tried_orbit(self, v, tried, path):
        """True if v is equivalent to an already-tried branch vertex.

        Only automorphisms fixing every vertex individualized on the
        current path may be used, otherwise pruning would be unsound.
        """
        if not self.gens:
            return False
        fixing = [g for g in self.gens if all(g[p] == p for p in path)]
        if not fixing:
            return False
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in fixing:
            for x in range(self.n):
                rx, ry = find(x), find(g[x])
                if rx != ry:
                    parent[rx] = ry
        root_v = find(v)
        return any(find(u) == root_v for u in tried)


def canonicalize(n, rows):
    """Canonical permutation (old label -> new label) and canonical code."""
    if n == 0:
        return [], 0
    if n == 1:
        return [0], 0
    cells = _refine(n, rows, [list(range(n))])
    return _CanonSearch(n, rows).run(cells)


def _deadline_passed(deadline):
    return deadline is not None and time.monotonic() >= deadline


def max_clique_size(n, rows, deadline=None):
    """Exact maximum clique via branch and bound with a colouring bound."""
    if _deadline_passed(deadline):
        return None
    if n == 0:
        return 0
    best = 1
    full = (1 << n) - 1
    checks = 0

    def expand(size, cand):
        nonlocal best, checks
        checks += 1
        if checks & 0xFF == 0 and _deadline_passed(deadline):
            raise TimeoutError
        if not cand:
            if size > best:
                best = size
            return
        # greedy colouring of the candidate set; colour number bounds the
        # clique extension, vertices visited in descending bound order
        order = []
        bounds = []
        q = cand
        colour = 0
        while q:
            colour += 1
            avail = q
            cls = 0
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(rows[v] | (1 << v))
                cls |= 1 << v
                order.append(v)
                bounds.append(colour)
            q &= ~cls
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best:
                return
            v = order[idx]
            expand(size + 1, cand & rows[v])
            cand &= ~(1 << v)

    try:
        expand(0, full)
    except TimeoutError:
        return None
    # COMPUTED means finished within budget; a late finish is a timeout
    if _deadline_passed(deadline):
        return None
    return best


def _greedy_colouring(n, rows):
    """Sequential colouring, highest-degree first; returns colour count."""
    order = sorted(range(n), key=lambda v: (-rows[v].bit_count(), v))
    colour = [-1] * n
    used = 0
    for v in order:
        taken = 0
        r = rows[v]
        for u in range(n):
            if colour[u] >= 0 and (r >> u) & 1:
                taken |= 1 << colour[u]
        c = 0
        while (taken >> c) & 1:
            c += 1
        colour[v] = c
        used = max(used, c + 1)
    return used


def _max_clique_mask(n, rows):
    """A maximal clique bitmask, greedily grown from the densest vertex."""
    mask = 0
    cand = (1 << n) - 1
    while cand:
        bestv, bestd = -1, -1
        q = cand
        while q:
            v = (q & -q).bit_length() - 1
            q &= q - 1
            d = (rows[v] & cand).bit_count()
            if d > bestd:
                bestv, bestd = v, d
        mask |= 1 << bestv
        cand &= rows[bestv]
    return mask


def chromatic_number(n, rows, deadline=None):
    """Exact chromatic number: try k from the clique bound upward.

    Each k-colourability test is a backtracking search over vertices in
    descending degree order with two symmetry breaks: a maximal clique
    is precoloured, and a vertex may open at most one colour beyond
    those already in use.
    """
    if _deadline_passed(deadline):
        return None
    if n == 0:
        return 0
    lb = max_clique_size(n, rows, deadline)
    if lb is None:
        return None
    ub = _greedy_colouring(n, rows)
    if lb == ub:
        return None if _deadline_passed(deadline) else lb

    clique_mask = _max_clique_mask(n, rows)
    clique = [v for v in range(n) if (clique_mask >> v) & 1]
    rest = sorted((v for v in range(n) if not (clique_mask >> v) & 1),
                  key=lambda v: (-rows[v].bit_count(), v))
    order = clique + rest
    colour = [-1] * n
    for i, v in enumerate(clique):
        colour[v] = i

    checks = 0

    def colourable(k):
        nonlocal checks
        if len(clique) > k:
            return False

        def place(idx, opened):
            nonlocal checks
            checks += 1
            if checks & 0xFF == 0 and _deadline_passed(deadline):
                raise TimeoutError
            if idx == n:
                return True
            v = order[idx]
            taken = 0
            r = rows[v]
            for u in order[:idx]:
                if (r >> u) & 1:
                    taken |= 1 << colour[u]
            limit = min(k, opened + 1)
            for c in range(limit):
                if not (taken >> c) & 1:
                    colour[v] = c
                    if place(idx + 1, max(opened, c + 1)):
                        return True
            colour[v] = -1
            return False

        return place(len(clique), len(clique))

    try:
        answer = ub
        for k in range(lb, ub):
            if colourable(k):
                answer = k
                break
    except TimeoutError:
        return None
    if _deadline_passed(deadline):
        return None
    return answer
