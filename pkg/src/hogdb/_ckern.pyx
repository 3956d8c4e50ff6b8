# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: canonical labeling and exact solvers for n <= 64.

Mirrors hogdb._pykern exactly (same refinement order, same branching,
same pruning) so both backends return identical permutations and
codes; the selector in hogdb.kernels routes larger graphs to the pure
implementation. Deadlines are doubles in the time.monotonic domain,
which on Linux is CLOCK_MONOTONIC.
"""

from libc.stdint cimport uint64_t
from posix.time cimport CLOCK_MONOTONIC, clock_gettime, timespec

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return <double>ts.tv_sec + <double>ts.tv_nsec * 1e-9


cdef inline int _pop(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int _ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


DEF MAXN = 64
DEF MAXW = 32          # 64*63/2 bits fit in 32 words
DEF MAXGENS = 4096     # heavily symmetric graphs yield O(n^2) generators


# -- canonical labeling -------------------------------------------------------

cdef class _Canon:
    cdef int n, nwords
    cdef uint64_t adj[MAXN]
    cdef int elems[MAXN + 1][MAXN]
    cdef uint64_t starts[MAXN + 1]
    cdef uint64_t best[MAXW]
    cdef bint has_best
    cdef int best_perm[MAXN]
    cdef unsigned char gens[MAXGENS][MAXN]
    cdef int n_gens
    cdef int path[MAXN + 1]

    cdef bint _refine(self, int depth) noexcept nogil:
        """Equitable refinement of frame `depth`, fragments in ascending
        count order; returns via side effects only."""
        cdef int n = self.n
        cdef int si_start, si_end, a, b, p, q, i, v
        cdef int cnt[MAXN]
        cdef int key_cnt, key_elem
        cdef uint64_t smask, starts
        cdef bint changed, any_split
        cdef int* elems = &self.elems[depth][0]

        while True:
            any_split = False
            si_start = 0
            while si_start < n:
                starts = self.starts[depth]
                si_end = si_start + 1
                while si_end < n and not (starts >> si_end) & 1:
                    si_end += 1
                smask = 0
                for p in range(si_start, si_end):
                    smask |= (<uint64_t>1) << elems[p]
                # split every cell by neighbour count into smask
                changed = False
                a = 0
                while a < n:
                    b = a + 1
                    while b < n and not (starts >> b) & 1:
                        b += 1
                    if b - a > 1:
                        for p in range(a, b):
                            cnt[p] = _pop(self.adj[elems[p]] & smask)
                        # stable insertion sort of the segment by count
                        for p in range(a + 1, b):
                            key_cnt = cnt[p]
                            key_elem = elems[p]
                            q = p - 1
                            while q >= a and cnt[q] > key_cnt:
                                cnt[q + 1] = cnt[q]
                                elems[q + 1] = elems[q]
                                q -= 1
                            cnt[q + 1] = key_cnt
                            elems[q + 1] = key_elem
                        for p in range(a + 1, b):
                            if cnt[p] != cnt[p - 1]:
                                if not (self.starts[depth] >> p) & 1:
                                    self.starts[depth] |= (<uint64_t>1) << p
                                    changed = True
                    a = b
                if changed:
                    any_split = True
                    break  # restart the splitter scan on the new partition
                si_start = si_end
            if not any_split:
                return True

    cdef void _descend(self, int depth) noexcept nogil:
        cdef int n = self.n
        cdef int a, b, p, idx, v, n_tried, cand_end
        cdef uint64_t starts = self.starts[depth]
        cdef int* elems = &self.elems[depth][0]
        cdef int tried[MAXN]

        # first non-singleton cell
        a = 0
        b = -1
        while a < n:
            p = a + 1
            while p < n and not (starts >> p) & 1:
                p += 1
            if p - a > 1:
                b = p
                break
            a = p
        if b < 0:
            self._leaf(depth)
            return

        cand_end = b
        if self._interchangeable(depth, a, b):
            cand_end = a + 1
        n_tried = 0
        for idx in range(a, cand_end):
            v = elems[idx]
            if n_tried > 0 and self._in_tried_orbit(v, tried, n_tried, depth):
                continue
            tried[n_tried] = v
            n_tried += 1
            # child frame: v individualized at the front of its cell
            for p in range(n):
                self.elems[depth + 1][p] = elems[p]
            for p in range(idx, a, -1):
                self.elems[depth + 1][p] = self.elems[depth + 1][p - 1]
            self.elems[depth + 1][a] = v
            self.starts[depth + 1] = starts | ((<uint64_t>1) << (a + 1))
            self.path[depth] = v
            self._refine(depth + 1)
            self._descend(depth + 1)

    cdef bint _interchangeable(self, int depth, int a, int b) noexcept nogil:
        """True when every transposition inside the cell (positions a..b of
        frame `depth`) is an automorphism: identical neighbourhoods
        outside the cell, clique or independent set inside."""
        cdef int p, v
        cdef uint64_t cmask = 0, outside, inner
        cdef bint clique
        cdef int* elems = &self.elems[depth][0]

        for p in range(a, b):
            cmask |= (<uint64_t>1) << elems[p]
        v = elems[a]
        outside = self.adj[v] & ~cmask
        inner = self.adj[v] & cmask
        clique = inner == (cmask & ~((<uint64_t>1) << v))
        if not clique and inner != 0:
            return False
        for p in range(a + 1, b):
            v = elems[p]
            if self.adj[v] & ~cmask != outside:
                return False
            inner = self.adj[v] & cmask
            if clique:
                if inner != (cmask & ~((<uint64_t>1) << v)):
                    return False
            elif inner != 0:
                return False
        return True

    cdef void _leaf(self, int depth) noexcept nogil:
        cdef int n = self.n
        cdef int* inv = &self.elems[depth][0]  # inv[new] = old at a leaf
        cdef uint64_t words[MAXW]
        cdef uint64_t rowj
        cdef int i, j, t, w
        cdef int cmp  # -1 worse, 0 equal, 1 better

        for w in range(self.nwords):
            words[w] = 0
        t = 0
        for j in range(1, n):
            rowj = self.adj[inv[j]]
            for i in range(j):
                if (rowj >> inv[i]) & 1:
                    words[t >> 6] |= (<uint64_t>1) << (63 - (t & 63))
                t += 1
        if not self.has_best:
            cmp = 1
        else:
            cmp = 0
            for w in range(self.nwords):
                if words[w] != self.best[w]:
                    cmp = 1 if words[w] < self.best[w] else -1
                    break
        if cmp > 0:
            self.has_best = True
            for w in range(self.nwords):
                self.best[w] = words[w]
            for i in range(n):
                self.best_perm[inv[i]] = i
        elif cmp == 0:
            # equal leaves witness an automorphism: gamma = leaf^-1 o best
            if self.n_gens < MAXGENS:
                for i in range(n):
                    self.gens[self.n_gens][i] = <unsigned char>inv[self.best_perm[i]]
                self._record_gen()

    cdef void _record_gen(self) noexcept nogil:
        """Keep the staged generator unless it is the identity or a duplicate."""
        cdef int n = self.n
        cdef int i, gi
        cdef bint same
        same = True
        for i in range(n):
            if self.gens[self.n_gens][i] != i:
                same = False
                break
        if same:
            return
        for gi in range(self.n_gens):
            same = True
            for i in range(n):
                if self.gens[gi][i] != self.gens[self.n_gens][i]:
                    same = False
                    break
            if same:
                return
        self.n_gens += 1

    cdef bint _in_tried_orbit(self, int v, int* tried, int n_tried,
                              int depth) noexcept nogil:
        """Orbit pruning under automorphisms that fix the current path."""
        cdef int n = self.n
        cdef int parent[MAXN]
        cdef int gi, i, x, rx, ry, root_v
        cdef bint fixes, merged

        if self.n_gens == 0:
            return False
        merged = False
        for i in range(n):
            parent[i] = i
        for gi in range(self.n_gens):
            fixes = True
            for i in range(depth):
                x = self.path[i]
                if self.gens[gi][x] != x:
                    fixes = False
                    break
            if not fixes:
                continue
            merged = True
            for x in range(n):
                rx = x
                while parent[rx] != rx:
                    parent[rx] = parent[parent[rx]]
                    rx = parent[rx]
                ry = self.gens[gi][x]
                while parent[ry] != ry:
                    parent[ry] = parent[parent[ry]]
                    ry = parent[ry]
                if rx != ry:
                    parent[rx] = ry
        if not merged:
            return False
        root_v = v
        while parent[root_v] != root_v:
            root_v = parent[root_v]
        for i in range(n_tried):
            rx = tried[i]
            while parent[rx] != rx:
                rx = parent[rx]
            if rx == root_v:
                return True
        return False


def canonicalize(int n, rows):
    """Canonical permutation (old -> new) and packed canonical code."""
    if n > MAXN:
        raise ValueError(f"compiled kernel handles at most {MAXN} vertices")
    if n == 0:
        return [], 0
    if n == 1:
        return [0], 0

    cdef _Canon st = _Canon.__new__(_Canon)
    cdef int i, w
    st.n = n
    st.nwords = (n * (n - 1) // 2 + 63) >> 6
    st.has_best = False
    st.n_gens = 0
    for i in range(n):
        st.adj[i] = <uint64_t>rows[i]
        st.elems[0][i] = i
    st.starts[0] = 1
    with nogil:
        st._refine(0)
        st._descend(0)

    perm = [0] * n
    for i in range(n):
        perm[i] = st.best_perm[i]
    code = 0
    for w in range(st.nwords):
        code = (code << 64) | st.best[w]
    code >>= st.nwords * 64 - n * (n - 1) // 2
    return perm, code


# -- exact solvers --------------------------------------------------------------

cdef struct _BB:
    uint64_t adj[MAXN]
    int n
    int best
    double deadline
    unsigned long long checks
    bint timed_out


cdef void _clique_expand(_BB* bb, int size, uint64_t cand) noexcept nogil:
    cdef int order[MAXN]
    cdef int bounds[MAXN]
    cdef int n_order = 0
    cdef int colour = 0
    cdef int v, idx
    cdef uint64_t q, avail, cls

    if bb.timed_out:
        return
    bb.checks += 1
    if (bb.checks & 0xFF) == 0 and bb.deadline >= 0 and _now() >= bb.deadline:
        bb.timed_out = True
        return
    if cand == 0:
        if size > bb.best:
            bb.best = size
        return
    q = cand
    while q:
        colour += 1
        avail = q
        cls = 0
        while avail:
            v = _ctz(avail)
            avail &= ~(bb.adj[v] | ((<uint64_t>1) << v))
            cls |= (<uint64_t>1) << v
            order[n_order] = v
            bounds[n_order] = colour
            n_order += 1
        q &= ~cls
    for idx in range(n_order - 1, -1, -1):
        if size + bounds[idx] <= bb.best:
            return
        v = order[idx]
        _clique_expand(bb, size + 1, cand & bb.adj[v])
        if bb.timed_out:
            return
        cand &= ~((<uint64_t>1) << v)


cdef int _clique_run(_BB* bb) noexcept nogil:
    cdef uint64_t full = 0
    cdef int i
    for i in range(bb.n):
        full |= (<uint64_t>1) << i
    bb.best = 1
    _clique_expand(bb, 0, full)
    return bb.best


cdef bint _load(_BB* bb, int n, rows, deadline) except? False:
    cdef int i
    if n > MAXN:
        raise ValueError(f"compiled kernel handles at most {MAXN} vertices")
    bb.n = n
    bb.deadline = <double>deadline if deadline is not None else -1.0
    bb.checks = 0
    bb.timed_out = False
    for i in range(n):
        bb.adj[i] = <uint64_t>rows[i]
    return True


def max_clique_size(int n, rows, deadline=None):
    cdef _BB bb
    _load(&bb, n, rows, deadline)
    if bb.deadline >= 0 and _now() >= bb.deadline:
        return None
    if n == 0:
        return 0
    cdef int best
    with nogil:
        best = _clique_run(&bb)
    if bb.timed_out or (bb.deadline >= 0 and _now() >= bb.deadline):
        return None
    return best


cdef struct _Col:
    uint64_t adj[MAXN]
    int n
    int k
    int order[MAXN]
    int colour[MAXN]
    int fixed            # precoloured prefix length
    double deadline
    unsigned long long checks
    bint timed_out


cdef bint _place(_Col* c, int idx, int opened) noexcept nogil:
    cdef int v, i, u, limit, col
    cdef uint64_t taken, r

    c.checks += 1
    if (c.checks & 0xFF) == 0 and c.deadline >= 0 and _now() >= c.deadline:
        c.timed_out = True
        return False
    if idx == c.n:
        return True
    v = c.order[idx]
    taken = 0
    r = c.adj[v]
    for i in range(idx):
        u = c.order[i]
        if (r >> u) & 1:
            taken |= (<uint64_t>1) << c.colour[u]
    limit = opened + 1
    if limit > c.k:
        limit = c.k
    for col in range(limit):
        if not (taken >> col) & 1:
            c.colour[v] = col
            if _place(c, idx + 1, opened if opened > col + 1 else col + 1):
                return True
            if c.timed_out:
                return False
    c.colour[v] = -1
    return False


def chromatic_number(int n, rows, deadline=None):
    cdef _BB bb
    cdef _Col c
    cdef int i, v, u, k, lb, ub, used, best_v, best_d, d, n_rest
    cdef uint64_t mask, candm, q, taken
    cdef bint ok

    _load(&bb, n, rows, deadline)
    if bb.deadline >= 0 and _now() >= bb.deadline:
        return None
    if n == 0:
        return 0
    with nogil:
        lb = _clique_run(&bb)
    if bb.timed_out:
        return None

    # greedy upper bound, highest degree first
    cdef int deg[MAXN]
    cdef int order[MAXN]
    cdef int colour[MAXN]
    for i in range(n):
        deg[i] = _pop(bb.adj[i])
        order[i] = i
        colour[i] = -1
    for i in range(1, n):  # insertion sort by (-deg, v)
        v = order[i]
        u = i - 1
        while u >= 0 and (deg[order[u]] < deg[v] or
                          (deg[order[u]] == deg[v] and order[u] > v)):
            order[u + 1] = order[u]
            u -= 1
        order[u + 1] = v
    ub = 0
    for i in range(n):
        v = order[i]
        taken = 0
        for u in range(n):
            if colour[u] >= 0 and (bb.adj[v] >> u) & 1:
                taken |= (<uint64_t>1) << colour[u]
        k = 0
        while (taken >> k) & 1:
            k += 1
        colour[v] = k
        if k + 1 > ub:
            ub = k + 1
    if lb == ub:
        if bb.deadline >= 0 and _now() >= bb.deadline:
            return None
        return lb

    # greedy maximal clique for precolouring
    mask = 0
    candm = 0
    for i in range(n):
        candm |= (<uint64_t>1) << i
    while candm:
        best_v = -1
        best_d = -1
        q = candm
        while q:
            v = _ctz(q)
            q &= q - 1
            d = _pop(bb.adj[v] & candm)
            if d > best_d:
                best_v = v
                best_d = d
        mask |= (<uint64_t>1) << best_v
        candm &= bb.adj[best_v]

    c.n = n
    c.deadline = bb.deadline
    c.checks = 0
    c.timed_out = False
    for i in range(n):
        c.adj[i] = bb.adj[i]
        c.colour[i] = -1
    c.fixed = 0
    for v in range(n):
        if (mask >> v) & 1:
            c.order[c.fixed] = v
            c.colour[v] = c.fixed
            c.fixed += 1
    # rest by (-deg, v), stable
    n_rest = c.fixed
    for i in range(n):
        order[i] = i
    for i in range(1, n):
        v = order[i]
        u = i - 1
        while u >= 0 and (deg[order[u]] < deg[v] or
                          (deg[order[u]] == deg[v] and order[u] > v)):
            order[u + 1] = order[u]
            u -= 1
        order[u + 1] = v
    for i in range(n):
        v = order[i]
        if not (mask >> v) & 1:
            c.order[n_rest] = v
            n_rest += 1

    answer = ub
    for k in range(lb, ub):
        if c.fixed > k:
            continue
        c.k = k
        for i in range(n):
            if not (mask >> i) & 1:
                c.colour[i] = -1
        with nogil:
            ok = _place(&c, c.fixed, c.fixed)
        if c.timed_out:
            return None
        if ok:
            answer = k
            break
    if bb.deadline >= 0 and _now() >= bb.deadline:
        return None
    return answer
