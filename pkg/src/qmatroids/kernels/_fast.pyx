# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the GF(2) hot loops (see _pure.py for the contract)."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

BACKEND = "fast"

ctypedef unsigned long long u64


cdef inline int _rref_c(u64* rows, int nrows, u64* out) noexcept nogil:
    cdef int rank = 0, i, j
    cdef u64 r, low
    for i in range(nrows):
        r = rows[i]
        for j in range(rank):
            low = out[j] & (~out[j] + 1)
            if r & low:
                r ^= out[j]
        if r:
            low = r & (~r + 1)
            for j in range(rank):
                if out[j] & low:
                    out[j] ^= r
            j = rank
            while j > 0 and (out[j - 1] & (~out[j - 1] + 1)) > low:
                out[j] = out[j - 1]
                j -= 1
            out[j] = r
            rank += 1
    return rank


def gf2_rref(rows, ncols):
    cdef int nrows = len(rows)
    cdef int i, rank
    cdef u64* buf = <u64*> malloc(nrows * sizeof(u64))
    cdef u64* out = <u64*> malloc((nrows if nrows else 1) * sizeof(u64))
    try:
        for i in range(nrows):
            buf[i] = rows[i]
        rank = _rref_c(buf, nrows, out)
        return [out[i] for i in range(rank)], rank
    finally:
        free(buf)
        free(out)


def gf2_key(rows, ncols):
    cdef u64 key = 0
    cdef int i
    for i in range(len(rows)):
        key |= (<u64> rows[i]) << (i * ncols)
    return key


cdef inline bint _triple_ok(unsigned int s1, unsigned int s2, unsigned int s3) noexcept nogil:
    cdef unsigned int x
    x = s1 ^ s2
    if x != 0 and x != s3 and x != s1 and x != s2:
        return 0
    x = s1 ^ s3
    if x != 0 and x != s2 and x != s1 and x != s3:
        return 0
    x = s2 ^ s3
    if x != 0 and x != s1 and x != s2 and x != s3:
        return 0
    return 1


def gf2_lmap_violation(table, dim_domain):
    cdef int size = 1 << dim_domain
    cdef unsigned int* t = <unsigned int*> malloc(size * sizeof(unsigned int))
    cdef int a, b, c
    cdef unsigned int ta, tb, tc
    try:
        for a in range(size):
            t[a] = table[a]
        for a in range(1, size):
            ta = t[a]
            for b in range(a + 1, size):
                c = a ^ b
                if c < b:
                    continue
                tb = t[b]
                tc = t[c]
                if not _triple_ok(ta, tb, tc):
                    return (a, b, c)
        return None
    finally:
        free(t)


def gf2_factor_search(fixed, dim_domain, order, value_order):
    cdef int size = 1 << dim_domain
    cdef int depth = len(order)
    cdef int nvals = len(value_order)
    cdef int ntrip = 0, i, j, a, b, c, d, v, vi, ok
    cdef long long nodes = 0
    cdef int* table = <int*> malloc(size * sizeof(int))
    cdef int* ordv = <int*> malloc((depth if depth else 1) * sizeof(int))
    cdef int* vals = <int*> malloc((nvals if nvals else 1) * sizeof(int))
    # triples with a < b < c = a^b
    for a in range(1, size):
        for b in range(a + 1, size):
            if (a ^ b) > b:
                ntrip += 1
    cdef int* trip = <int*> malloc(3 * (ntrip if ntrip else 1) * sizeof(int))
    cdef int* slot_cnt = <int*> malloc(size * sizeof(int))
    cdef int* slot_start = <int*> malloc((size + 1) * sizeof(int))
    cdef int* slot_items = NULL
    cdef int* cursor = NULL
    cdef int* stack_vi = NULL
    try:
        for i in range(size):
            table[i] = fixed[i]
        for i in range(depth):
            ordv[i] = order[i]
        for i in range(nvals):
            vals[i] = value_order[i]
        i = 0
        for a in range(1, size):
            for b in range(a + 1, size):
                c = a ^ b
                if c > b:
                    trip[3 * i] = a
                    trip[3 * i + 1] = b
                    trip[3 * i + 2] = c
                    i += 1
        # fixed-only conflicts rule out every completion
        for i in range(ntrip):
            a = trip[3 * i]; b = trip[3 * i + 1]; c = trip[3 * i + 2]
            if table[a] >= 0 and table[b] >= 0 and table[c] >= 0:
                if not _triple_ok(table[a], table[b], table[c]):
                    return None, 0
        # per-slot triple index lists (only for free slots)
        memset(slot_cnt, 0, size * sizeof(int))
        for i in range(ntrip):
            for j in range(3):
                v = trip[3 * i + j]
                if fixed[v] < 0:
                    slot_cnt[v] += 1
        slot_start[0] = 0
        for v in range(size):
            slot_start[v + 1] = slot_start[v] + slot_cnt[v]
        slot_items = <int*> malloc((slot_start[size] if slot_start[size] else 1) * sizeof(int))
        cursor = <int*> malloc(size * sizeof(int))
        for v in range(size):
            cursor[v] = slot_start[v]
        for i in range(ntrip):
            for j in range(3):
                v = trip[3 * i + j]
                if fixed[v] < 0:
                    slot_items[cursor[v]] = i
                    cursor[v] += 1
        # iterative backtracking over free slots
        stack_vi = <int*> malloc((depth + 1 if depth else 1) * sizeof(int))
        d = 0
        stack_vi[0] = 0
        if depth == 0:
            return [table[i] for i in range(size)], 0
        while True:
            v = ordv[d]
            vi = stack_vi[d]
            if vi >= nvals:
                table[v] = -1
                d -= 1
                if d < 0:
                    return None, nodes
                stack_vi[d] += 1
                continue
            table[v] = vals[vi]
            nodes += 1
            ok = 1
            for i in range(slot_start[v], slot_start[v + 1]):
                j = slot_items[i]
                a = trip[3 * j]; b = trip[3 * j + 1]; c = trip[3 * j + 2]
                if table[a] >= 0 and table[b] >= 0 and table[c] >= 0:
                    if not _triple_ok(table[a], table[b], table[c]):
                        ok = 0
                        break
            if not ok:
                stack_vi[d] += 1
                continue
            d += 1
            if d == depth:
                return [table[i] for i in range(size)], nodes
            stack_vi[d] = 0
    finally:
        free(table); free(ordv); free(vals); free(trip)
        free(slot_cnt); free(slot_start)
        if slot_items != NULL: free(slot_items)
        if cursor != NULL: free(cursor)
        if stack_vi != NULL: free(stack_vi)


def gl2_iso_search(n, space_rows, space_dims, ranks1, rank2_by_key,
                   flag_ranks1, prune):
    cdef int cn = n
    cdef int size = 1 << cn
    cdef int nspaces = len(space_dims)
    cdef long long keyspace = 1
    cdef int i, j
    for i in range(cn * cn):
        keyspace <<= 1
    cdef u64* srows = <u64*> malloc(nspaces * cn * sizeof(u64))
    cdef int* sdims = <int*> malloc(nspaces * sizeof(int))
    cdef int* r1 = <int*> malloc(nspaces * sizeof(int))
    cdef signed char* r2 = <signed char*> malloc(keyspace * sizeof(signed char))
    cdef int* flags = <int*> malloc(cn * sizeof(int))
    cdef u64* rows = <u64*> malloc(cn * sizeof(u64))
    cdef u64* basis = <u64*> malloc((cn + 1) * cn * sizeof(u64))  # per-depth rref
    cdef int* bsize = <int*> malloc((cn + 1) * sizeof(int))
    cdef int* vstack = <int*> malloc(cn * sizeof(int))
    cdef u64* tmp = <u64*> malloc(cn * sizeof(u64))
    cdef u64* img = <u64*> malloc(cn * sizeof(u64))
    cdef long long leaves = 0, nodes = 0
    cdef int depth, v, ok, d2, rank, use_prune = 1 if prune else 0
    cdef u64 r, w, key, t, low
    try:
        for i in range(nspaces):
            sdims[i] = space_dims[i]
            r1[i] = ranks1[i]
            for j in range(cn):
                srows[i * cn + j] = space_rows[i * cn + j]
        for i in range(keyspace):
            r2[i] = rank2_by_key[i]
        for i in range(cn):
            flags[i] = flag_ranks1[i]
        bsize[0] = 0
        depth = 0
        vstack[0] = 1
        while True:
            v = vstack[depth]
            if v >= size:
                depth -= 1
                if depth < 0:
                    return None, leaves, nodes
                vstack[depth] += 1
                continue
            # skip vectors already in the span of previous rows
            r = <u64> v
            for j in range(bsize[depth]):
                low = basis[depth * cn + j] & (~basis[depth * cn + j] + 1)
                if r & low:
                    r ^= basis[depth * cn + j]
            if r == 0:
                vstack[depth] += 1
                continue
            nodes += 1
            rows[depth] = <u64> v
            for j in range(bsize[depth]):
                tmp[j] = basis[depth * cn + j]
            tmp[bsize[depth]] = <u64> v
            rank = _rref_c(tmp, bsize[depth] + 1, basis + (depth + 1) * cn)
            bsize[depth + 1] = rank
            if use_prune:
                key = 0
                for j in range(rank):
                    key |= basis[(depth + 1) * cn + j] << (j * cn)
                if r2[key] != flags[depth]:
                    vstack[depth] += 1
                    continue
            if depth + 1 == cn:
                leaves += 1
                ok = 1
                for i in range(nspaces):
                    d2 = sdims[i]
                    for j in range(d2):
                        t = srows[i * cn + j]
                        w = 0
                        while t:
                            low = t & (~t + 1)
                            w ^= rows[_bit_index(low)]
                            t ^= low
                        img[j] = w
                    rank = _rref_c(img, d2, tmp)
                    key = 0
                    for j in range(rank):
                        key |= tmp[j] << (j * cn)
                    if r2[key] != r1[i]:
                        ok = 0
                        break
                if ok:
                    return [rows[j] for j in range(cn)], leaves, nodes
                vstack[depth] += 1
                continue
            depth += 1
            vstack[depth] = 1
    finally:
        free(srows); free(sdims); free(r1); free(r2); free(flags)
        free(rows); free(basis); free(bsize); free(vstack); free(tmp); free(img)


cdef inline int _bit_index(u64 low) noexcept nogil:
    cdef int i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i
