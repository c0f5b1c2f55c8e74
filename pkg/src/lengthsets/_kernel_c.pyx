# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Same contracts as _kernel_py (the reference implementation); values and
targets must fit in signed 64-bit range, which the dispatcher guarantees.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free


cdef int64_t _gcd(int64_t a, int64_t b) nogil:
    cdef int64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _fill_suffix(int64_t* vals, int k, int64_t* sgcd, int64_t* smax) nogil:
    cdef int i
    sgcd[k] = 0
    smax[k] = 1
    for i in range(k - 1, -1, -1):
        sgcd[i] = _gcd(sgcd[i + 1], vals[i])
        smax[i] = smax[i + 1] if smax[i + 1] > vals[i] else vals[i]


cdef void _solve(int64_t* vals, int64_t* sgcd, int64_t* smax, int k, int i,
                 int64_t r, int64_t budget, int64_t* counts, list out):
    cdef int64_t v, c
    cdef int j
    if r == 0:
        out.append(tuple([counts[j] if j < i else 0 for j in range(k)]))
        return
    if i == k:
        return
    if r % sgcd[i] != 0:
        return
    if (r + smax[i] - 1) // smax[i] > budget:
        return
    v = vals[i]
    if i == k - 1:
        if r % v == 0 and r // v <= budget:
            counts[i] = r // v
            out.append(tuple([counts[j] for j in range(k)]))
        return
    c = r // v
    if c > budget:
        c = budget
    while c >= 0:
        counts[i] = c
        _solve(vals, sgcd, smax, k, i + 1, r - c * v, budget - c, counts, out)
        c -= 1
    counts[i] = 0


def solutions(values, target, cap):
    cdef int k = len(values)
    cdef int64_t tgt = target
    cdef int64_t budget = cap
    if tgt < 0 or budget < 0:
        return []
    if k == 0:
        return [()] if tgt == 0 else []
    cdef int64_t* vals = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int64_t* sgcd = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int64_t* smax = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int64_t* counts = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int i
    out = []
    try:
        for i in range(k):
            vals[i] = values[i]
            counts[i] = 0
        _fill_suffix(vals, k, sgcd, smax)
        _solve(vals, sgcd, smax, k, 0, tgt, budget, counts, out)
    finally:
        free(vals); free(sgcd); free(smax); free(counts)
    return out


cdef void _lengths(int64_t* vals, int64_t* sgcd, int64_t* smax, int k, int i,
                   int64_t r, int64_t used, int64_t cap, set found):
    cdef int64_t v, c
    if r == 0:
        found.add(used)
        return
    if i == k:
        return
    if r % sgcd[i] != 0:
        return
    if (r + smax[i] - 1) // smax[i] > cap - used:
        return
    v = vals[i]
    if i == k - 1:
        if r % v == 0 and used + r // v <= cap:
            found.add(used + r // v)
        return
    c = r // v
    if c > cap - used:
        c = cap - used
    while c >= 0:
        _lengths(vals, sgcd, smax, k, i + 1, r - c * v, used + c, cap, found)
        c -= 1


def lengths_dfs(values, target, cap):
    cdef int k = len(values)
    cdef int64_t tgt = target
    cdef int64_t budget = cap
    found = set()
    if tgt < 0 or budget < 0:
        return found
    if tgt == 0:
        found.add(0)
        return found
    if k == 0:
        return found
    cdef int64_t* vals = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int64_t* sgcd = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int64_t* smax = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int i
    try:
        for i in range(k):
            vals[i] = values[i]
        _fill_suffix(vals, k, sgcd, smax)
        _lengths(vals, sgcd, smax, k, 0, tgt, 0, budget, found)
    finally:
        free(vals); free(sgcd); free(smax)
    return found


cdef bint _exists(int64_t* vals, int64_t* sgcd, int k, int i, int64_t r) nogil:
    cdef int64_t v, c
    if r == 0:
        return True
    if i == k:
        return False
    if r % sgcd[i] != 0:
        return False
    v = vals[i]
    if i == k - 1:
        return r % v == 0
    c = r // v
    while c >= 0:
        if _exists(vals, sgcd, k, i + 1, r - c * v):
            return True
        c -= 1
    return False


def exists(values, target):
    cdef int k = len(values)
    cdef int64_t tgt = target
    if tgt < 0:
        return False
    if tgt == 0:
        return True
    if k == 0:
        return False
    cdef int64_t* vals = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int64_t* sgcd = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int64_t* smax = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int i
    cdef bint ok
    try:
        for i in range(k):
            vals[i] = values[i]
        _fill_suffix(vals, k, sgcd, smax)
        ok = _exists(vals, sgcd, k, 0, tgt)
    finally:
        free(vals); free(sgcd); free(smax)
    return ok


def member_table(values, bound):
    cdef int64_t b = bound
    table = bytearray(b + 1)
    cdef unsigned char[::1] t = table
    t[0] = 1
    vals_small = [v for v in values if v <= b]
    cdef int k = len(vals_small)
    if k == 0:
        return table
    cdef int64_t* vals = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int64_t x
    cdef int i
    try:
        for i in range(k):
            vals[i] = vals_small[i]
        for x in range(1, b + 1):
            for i in range(k):
                if vals[i] <= x and t[x - vals[i]]:
                    t[x] = 1
                    break
    finally:
        free(vals)
    return table


def probe_candidate(values, xmin, xmax, target):
    """Fused realization-search step over one candidate generating set.

    Returns -2 when values is not a minimal generating set, else the first
    x in [xmin, xmax] whose exact length mask equals target, else -1.
    """
    cdef int k = len(values)
    cdef int64_t lo = xmin
    cdef int64_t xm = xmax
    cdef uint64_t tgt = target
    cdef uint64_t BIT63 = (<uint64_t> 1) << 63
    if k == 0 or xm < 0:
        return -1
    cdef int64_t* vals = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int64_t* sub = <int64_t*> malloc(k * sizeof(int64_t))
    cdef int64_t* sgcd = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef int64_t* smax = <int64_t*> malloc((k + 1) * sizeof(int64_t))
    cdef uint64_t* table = <uint64_t*> malloc((xm + 1) * sizeof(uint64_t))
    cdef int i, j, w
    cdef int64_t x, res
    cdef uint64_t acc, s
    res = -1
    try:
        for i in range(k):
            vals[i] = values[i]
        if k > 1:
            for i in range(k):
                w = 0
                for j in range(k):
                    if j != i:
                        sub[w] = vals[j]
                        w += 1
                _fill_suffix(sub, w, sgcd, smax)
                if _exists(sub, sgcd, w, 0, vals[i]):
                    res = -2
                    break
        if res != -2:
            table[0] = 1
            for x in range(1, xm + 1):
                acc = 0
                for i in range(k):
                    if vals[i] <= x:
                        s = table[x - vals[i]]
                        if s:
                            acc |= (s << 1) | (s & BIT63)
                table[x] = acc
            if lo < 0:
                lo = 0
            for x in range(lo, xm + 1):
                if table[x] == tgt:
                    res = x
                    break
    finally:
        free(vals); free(sub); free(sgcd); free(smax); free(table)
    return res


def lengths_table64(values, xmax):
    cdef int64_t xm = xmax
    cdef uint64_t BIT63 = (<uint64_t> 1) << 63
    vals_small = [v for v in values if v <= xm]
    cdef int k = len(vals_small)
    cdef uint64_t* table = <uint64_t*> malloc((xm + 1) * sizeof(uint64_t))
    cdef int64_t* vals = <int64_t*> malloc(k * sizeof(int64_t)) if k else NULL
    cdef int64_t x
    cdef int i
    cdef uint64_t acc, s
    out = []
    try:
        for i in range(k):
            vals[i] = vals_small[i]
        table[0] = 1
        for x in range(1, xm + 1):
            acc = 0
            for i in range(k):
                if vals[i] <= x:
                    s = table[x - vals[i]]
                    if s:
                        acc |= (s << 1) | (s & BIT63)
            table[x] = acc
        for x in range(xm + 1):
            out.append(table[x])
    finally:
        free(table)
        if vals != NULL:
            free(vals)
    return out
