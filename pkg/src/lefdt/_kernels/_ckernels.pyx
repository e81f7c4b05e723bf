# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Mirrors ``_pykernels`` exactly (same signatures,
same enumeration order, same results)."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    MAX_CELL = 64

STAT_FIXED = 0
STAT_LEFSCHETZ = 1
STAT_AFP = 2


cdef inline int _parity(int* seq, int size) nogil:
    cdef int inv = 0, i, j
    for i in range(size):
        for j in range(i + 1, size):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


cdef inline int _popcount(unsigned int x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef long _cell_lefschetz(int* assign, const int* cptr, const int* cverts,
                          const int* cdims, int ncells, int cubical) nogil:
    cdef long total = 0
    cdef int c, lo, size, j, k, img, q, r, e, b, sign
    cdef unsigned long long used
    cdef int perm[MAX_CELL]
    cdef int pi[8]
    for c in range(ncells):
        lo = cptr[c]
        size = cptr[c + 1] - lo
        used = 0
        for j in range(size):
            img = assign[cverts[lo + j]]
            k = 0
            while k < size and cverts[lo + k] != img:
                k += 1
            if k == size or (used >> k) & 1:
                break
            used |= (<unsigned long long>1) << k
            perm[j] = k
        else:
            q = cdims[c]
            if cubical:
                r = perm[0]
                for j in range(q):
                    e = perm[1 << j] ^ r
                    b = 0
                    while e > 1:
                        e >>= 1
                        b += 1
                    pi[j] = b
                sign = _parity(pi, q)
                if _popcount(r) & 1:
                    sign = -sign
            else:
                sign = _parity(perm, size)
            if q & 1:
                total -= sign
            else:
                total += sign
    return total


cdef class _Walker:
    cdef int n, m
    cdef int* order
    cdef int* back_ptr
    cdef int* back_idx
    cdef unsigned char* close
    cdef unsigned char* allowed
    cdef int* cl_ptr
    cdef int* cl_idx
    cdef int* assign
    cdef int* cursor
    cdef long long nodes

    def __cinit__(self, order, back_ptr, back_idx, close, allowed):
        cdef int i, y, t
        cdef cnp.ndarray[cnp.int32_t, ndim=1] o = np.ascontiguousarray(order, dtype=np.int32)
        cdef cnp.ndarray[cnp.int32_t, ndim=1] bp = np.ascontiguousarray(back_ptr, dtype=np.int32)
        cdef cnp.ndarray[cnp.int32_t, ndim=1] bi = np.ascontiguousarray(back_idx, dtype=np.int32)
        cdef cnp.ndarray[cnp.uint8_t, ndim=2] cl = np.ascontiguousarray(close, dtype=np.uint8)
        cdef cnp.ndarray[cnp.uint8_t, ndim=2] al = np.ascontiguousarray(allowed, dtype=np.uint8)
        self.n = o.shape[0]
        self.m = cl.shape[0]
        self.order = <int*>malloc(max(self.n, 1) * sizeof(int))
        self.back_ptr = <int*>malloc((self.n + 1) * sizeof(int))
        self.back_idx = <int*>malloc(max(bi.shape[0], 1) * sizeof(int))
        self.close = <unsigned char*>malloc(max(self.m * self.m, 1))
        self.allowed = <unsigned char*>malloc(max(self.n * self.m, 1))
        self.cl_ptr = <int*>malloc((self.m + 1) * sizeof(int))
        self.cl_idx = <int*>malloc(max(self.m * self.m, 1) * sizeof(int))
        self.assign = <int*>malloc(max(self.n, 1) * sizeof(int))
        self.cursor = <int*>malloc((self.n + 1) * sizeof(int))
        for i in range(self.n):
            self.order[i] = o[i]
            self.assign[i] = 0
        for i in range(self.n + 1):
            self.back_ptr[i] = bp[i]
        for i in range(bi.shape[0]):
            self.back_idx[i] = bi[i]
        t = 0
        for i in range(self.m):
            self.cl_ptr[i] = t
            for y in range(self.m):
                self.close[i * self.m + y] = cl[i, y]
                if cl[i, y]:
                    self.cl_idx[t] = y
                    t += 1
        self.cl_ptr[self.m] = t
        for i in range(self.n):
            for y in range(self.m):
                self.allowed[i * self.m + y] = al[i, y]
        self.nodes = 0

    def __dealloc__(self):
        free(self.order); free(self.back_ptr); free(self.back_idx)
        free(self.close); free(self.allowed); free(self.cl_ptr)
        free(self.cl_idx); free(self.assign); free(self.cursor)

    cdef int next_value(self, int k) nogil:
        """Advance position k to its next admissible value; -1 when exhausted."""
        cdef int v = self.order[k]
        cdef int b0 = self.back_ptr[k], b1 = self.back_ptr[k + 1]
        cdef int y, base, j, ok, lo, hi
        if b0 == b1:
            while self.cursor[k] < self.m:
                y = self.cursor[k]
                self.cursor[k] += 1
                if self.allowed[v * self.m + y]:
                    return y
            return -1
        base = self.assign[self.back_idx[b0]]
        lo = self.cl_ptr[base]
        hi = self.cl_ptr[base + 1]
        while self.cursor[k] < hi - lo:
            y = self.cl_idx[lo + self.cursor[k]]
            self.cursor[k] += 1
            if not self.allowed[v * self.m + y]:
                continue
            ok = 1
            for j in range(b0 + 1, b1):
                if not self.close[self.assign[self.back_idx[j]] * self.m + y]:
                    ok = 0
                    break
            if ok:
                return y
        return -1


def enumerate_maps(order, back_ptr, back_idx, close, allowed, long long max_maps,
                   long long max_nodes):
    """All admissible maps as an ``(count, n)`` int32 array."""
    cdef _Walker w = _Walker(order, back_ptr, back_idx, close, allowed)
    cdef int n = w.n, k, y, i
    cdef long long count = 0, cap = 1024
    cdef int status = 0
    if n == 0:
        return np.zeros((1, 0), dtype=np.int32), 0, 0
    buf = np.empty((cap, n), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] view = buf
    k = 0
    w.cursor[0] = 0
    while k >= 0:
        y = w.next_value(k)
        if y < 0:
            k -= 1
            continue
        w.assign[w.order[k]] = y
        w.nodes += 1
        if w.nodes > max_nodes:
            status = 2
            break
        if k + 1 == n:
            if count >= max_maps:
                status = 1
                break
            if count == cap:
                cap *= 2
                buf = np.resize(buf, (cap, n))
                view = buf
            for i in range(n):
                view[count, i] = w.assign[i]
            count += 1
        else:
            k += 1
            w.cursor[k] = 0
    return buf[:count].copy(), w.nodes, status


def scan_maps(order, back_ptr, back_idx, close, allowed, int stat,
              cell_ptr, cell_verts, cell_dims, int cubical, dist, long long radius,
              long long max_maps, long long max_nodes):
    """Enumerate maps, evaluating one statistic per map without storing them."""
    cdef _Walker w = _Walker(order, back_ptr, back_idx, close, allowed)
    cdef int n = w.n, k, y, i
    cdef long long count = 0, value
    cdef int status = 0
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cp = np.ascontiguousarray(cell_ptr, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cv = np.ascontiguousarray(
        cell_verts if len(cell_verts) else np.zeros(1), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cd = np.ascontiguousarray(
        cell_dims if len(cell_dims) else np.zeros(1), dtype=np.int32)
    cdef int ncells = len(cell_dims)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] dm
    if stat == STAT_AFP:
        dm = np.ascontiguousarray(dist, dtype=np.int64)
    else:
        dm = np.zeros((1, 1), dtype=np.int64)
    witnesses = {}
    cdef long long offset = 1 << 20
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(2 * offset + 1, dtype=np.uint8)
    if n == 0:
        witnesses[0] = ()
        return witnesses, 1, 0, 0
    k = 0
    w.cursor[0] = 0
    while k >= 0:
        y = w.next_value(k)
        if y < 0:
            k -= 1
            continue
        w.assign[w.order[k]] = y
        w.nodes += 1
        if w.nodes > max_nodes:
            status = 2
            break
        if k + 1 == n:
            if count >= max_maps:
                status = 1
                break
            count += 1
            value = 0
            if stat == STAT_FIXED:
                for i in range(n):
                    if w.assign[i] == i:
                        value += 1
            elif stat == STAT_LEFSCHETZ:
                value = _cell_lefschetz(w.assign, <int*>&cp[0], <int*>&cv[0], <int*>&cd[0], ncells, cubical)
            else:
                for i in range(n):
                    if dm[i, w.assign[i]] >= 0 and dm[i, w.assign[i]] <= radius:
                        value += 1
            if not seen[value + offset]:
                seen[value + offset] = 1
                witnesses[value] = tuple([w.assign[i] for i in range(n)])
        else:
            k += 1
            w.cursor[k] = 0
    return witnesses, count, w.nodes, status


def lefschetz_batch(maps, cell_ptr, cell_verts, cell_dims, int cubical):
    """Chain-level Lefschetz numbers of many self-maps (rows of ``maps``)."""
    cdef cnp.ndarray[cnp.int32_t, ndim=2] M = np.ascontiguousarray(maps, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cp = np.ascontiguousarray(cell_ptr, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cv = np.ascontiguousarray(
        cell_verts if len(cell_verts) else np.zeros(1), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cd = np.ascontiguousarray(
        cell_dims if len(cell_dims) else np.zeros(1), dtype=np.int32)
    cdef int ncells = len(cell_dims)
    cdef Py_ssize_t r, rows = M.shape[0]
    out = np.empty(rows, dtype=np.int64)
    cdef cnp.int64_t[::1] ov = out
    if M.shape[1] == 0:
        out[:] = 0
        return out
    for r in range(rows):
        ov[r] = _cell_lefschetz(<int*>&M[r, 0], <int*>&cp[0], <int*>&cv[0], <int*>&cd[0], ncells, cubical)
    return out
