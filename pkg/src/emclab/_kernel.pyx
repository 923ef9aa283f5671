# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled search kernels over bitmask edge families.

Same contract as ``_kernel_py``: matching search and the down-set
branch-and-bound used by the exact verifier.  Requires n <= 63.
"""

from libc.stdlib cimport malloc, free

IMPL = "cython"

cdef extern from *:
    """
    static inline int popcount64(unsigned long long x) {
    #if defined(__GNUC__) || defined(__clang__)
        return __builtin_popcountll(x);
    #else
        int c = 0; while (x) { x &= x - 1; c++; } return c;
    #endif
    }
    """
    int popcount64(unsigned long long x) nogil


cdef struct SearchCtx:
    unsigned long long *masks
    int k


cdef int _find(SearchCtx *ctx, int need, unsigned long long used,
               int *avail, int n_avail, int *out) nogil:
    cdef unsigned long long acc = 0, v_bit, m
    cdef int i, j, idx, n_rest, n_sub
    cdef int *rest
    cdef int *sub
    if need == 0:
        return 1
    for i in range(n_avail):
        acc |= ctx.masks[avail[i]]
    if popcount64(acc) < need * ctx.k:
        return 0
    v_bit = acc & (~acc + 1)
    rest = <int *> malloc(n_avail * sizeof(int))
    sub = <int *> malloc(n_avail * sizeof(int))
    if rest == NULL or sub == NULL:
        if rest != NULL: free(rest)
        if sub != NULL: free(sub)
        return -1
    n_rest = 0
    for i in range(n_avail):
        if not (ctx.masks[avail[i]] & v_bit):
            rest[n_rest] = avail[i]
            n_rest += 1
    # edges through the least active vertex, high index first: pairing a
    # scarce low vertex with the greediest partner wastes the fewest other
    # scarce vertices
    for i in range(n_avail - 1, -1, -1):
        idx = avail[i]
        m = ctx.masks[idx]
        if not (m & v_bit):
            continue
        n_sub = 0
        for j in range(n_rest):
            if not (ctx.masks[rest[j]] & m):
                sub[n_sub] = rest[j]
                n_sub += 1
        if _find(ctx, need - 1, used | m, sub, n_sub, out + 1) == 1:
            out[0] = idx
            free(rest); free(sub)
            return 1
    # least vertex left unmatched
    i = _find(ctx, need, used | v_bit, rest, n_rest, out)
    free(rest); free(sub)
    return i


def find_matching(masks, int k, int need, unsigned long long used=0):
    """Indices of `need` pairwise-disjoint edges avoiding `used`, or None."""
    cdef int n = len(masks)
    cdef int i, rc, n_avail
    cdef unsigned long long *cmasks
    cdef int *avail
    cdef int *out
    cdef SearchCtx ctx
    if need <= 0:
        return []
    cmasks = <unsigned long long *> malloc(max(n, 1) * sizeof(unsigned long long))
    avail = <int *> malloc(max(n, 1) * sizeof(int))
    out = <int *> malloc(need * sizeof(int))
    if cmasks == NULL or avail == NULL or out == NULL:
        if cmasks != NULL: free(cmasks)
        if avail != NULL: free(avail)
        if out != NULL: free(out)
        raise MemoryError
    try:
        n_avail = 0
        for i in range(n):
            cmasks[i] = masks[i]
            if not (cmasks[i] & used):
                avail[n_avail] = i
                n_avail += 1
        ctx.masks = cmasks
        ctx.k = k
        rc = _find(&ctx, need, used, avail, n_avail, out)
        if rc == -1:
            raise MemoryError
        if rc == 0:
            return None
        return [out[i] for i in range(need)]
    finally:
        free(cmasks); free(avail); free(out)


def greedy_matching(masks, unsigned long long used=0):
    """Lexicographic greedy maximal matching; returns chosen indices."""
    cdef unsigned long long m
    out = []
    for i, mask in enumerate(masks):
        m = mask
        if not (m & used):
            out.append(i)
            used |= m
    return out


cdef class _DownsetSearch:
    cdef unsigned long long *masks
    cdef int m_count, k, s
    cdef long long budget, nodes
    cdef char *status          # 0 undecided, 1 included, 2 excluded
    cdef list succs
    cdef list trail
    cdef public long long best
    cdef public list witness
    cdef public bint exhausted

    def __cinit__(self, masks, succs, int s, long long budget):
        cdef int i
        self.m_count = len(masks)
        self.k = popcount64(masks[0]) if self.m_count else 1
        self.s = s
        self.budget = budget
        self.nodes = 0
        self.best = -1
        self.witness = []
        self.exhausted = True
        self.succs = succs
        self.trail = []
        self.masks = <unsigned long long *> malloc(max(self.m_count, 1) * sizeof(unsigned long long))
        self.status = <char *> malloc(max(self.m_count, 1))
        if self.masks == NULL or self.status == NULL:
            raise MemoryError
        for i in range(self.m_count):
            self.masks[i] = masks[i]
            self.status[i] = 0

    def __dealloc__(self):
        if self.masks != NULL:
            free(self.masks)
        if self.status != NULL:
            free(self.status)

    cdef bint exclude(self, int idx):
        cdef list stack = [idx]
        cdef int j
        while stack:
            j = stack.pop()
            if self.status[j] == 2:
                continue
            if self.status[j] == 1:
                return False
            self.status[j] = 2
            self.trail.append(j)
            stack.extend(<list> self.succs[j])
        return True

    cdef bint force_in(self, int idx):
        if self.status[idx] == 2:
            return False
        if self.status[idx] == 0:
            self.status[idx] = 1
            self.trail.append(-idx - 1)
        return True

    cdef void undo(self, Py_ssize_t mark):
        cdef int j
        while len(self.trail) > mark:
            j = self.trail.pop()
            if j < 0:
                self.status[-j - 1] = 0
            else:
                self.status[j] = 0

    cdef void search(self):
        cdef int i, pos, f
        cdef Py_ssize_t mark
        cdef bint ok
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = False
            return
        closure = []
        for i in range(self.m_count):
            if self.status[i] != 2:
                closure.append(i)
        if len(closure) <= self.best:
            return
        cmasks = [self.masks[i] for i in closure]
        hit = find_matching(cmasks, self.k, self.s + 1)
        if hit is None:
            self.best = len(closure)
            self.witness = closure
            return
        branch = [closure[j] for j in hit if self.status[closure[j]] != 1]
        if not branch:
            return
        for pos in range(len(branch)):
            f = branch[pos]
            mark = len(self.trail)
            ok = self.exclude(f)
            if ok:
                for i in range(pos):
                    if not self.force_in(branch[i]):
                        ok = False
                        break
            if ok:
                self.search()
            self.undo(mark)
            if not self.exhausted:
                return


def downset_max_edges(masks, succs, int s, long long budget):
    """Maximize family size over dominance down-sets with matching number <= s.

    Returns (best, witness_indices, exhausted, nodes).
    """
    srch = _DownsetSearch(masks, [list(x) for x in succs], s, budget)
    srch.search()
    return max(srch.best, 0), srch.witness, srch.exhausted, srch.nodes
