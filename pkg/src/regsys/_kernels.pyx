# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; call-compatible with ``regsys._kernels_py``.

Only used for moduli below 2**31 so that every product of two residues
fits in a signed 64-bit word before reduction.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _mod(i64 x, i64 p) nogil:
    x %= p
    return x + p if x < 0 else x


cdef i64 _inv(i64 a, i64 p) nogil:
    cdef i64 t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    return _mod(t, p)


cdef i64* _load(object a, Py_ssize_t rows, Py_ssize_t cols, i64 p) except NULL:
    cdef i64* buf = <i64*> malloc((rows * cols + 1) * sizeof(i64))
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    for i in range(rows):
        row = a[i]
        for j in range(cols):
            buf[i * cols + j] = _mod(<i64> row[j], p)
    return buf


cdef list _dump(i64* buf, Py_ssize_t rows, Py_ssize_t cols):
    cdef Py_ssize_t i, j
    return [[buf[i * cols + j] for j in range(cols)] for i in range(rows)]


cdef void _identity(i64* buf, Py_ssize_t n) nogil:
    cdef Py_ssize_t i
    for i in range(n * n):
        buf[i] = 0
    for i in range(n):
        buf[i * n + i] = 1


def matmul(a, b, i64 mod, Py_ssize_t rows, Py_ssize_t inner, Py_ssize_t cols):
    cdef i64* x = _load(a, rows, inner, mod)
    cdef i64* y = _load(b, inner, cols, mod)
    cdef i64* z = <i64*> malloc((rows * cols + 1) * sizeof(i64))
    cdef Py_ssize_t i, j, k
    cdef i64 acc, xv
    try:
        for i in range(rows):
            for j in range(cols):
                z[i * cols + j] = 0
            for k in range(inner):
                xv = x[i * inner + k]
                if xv:
                    for j in range(cols):
                        z[i * cols + j] = (z[i * cols + j] + xv * y[k * cols + j]) % mod
        return _dump(z, rows, cols)
    finally:
        free(x)
        free(y)
        free(z)


def field_rank(a, i64 p, Py_ssize_t rows, Py_ssize_t cols):
    cdef i64* m = _load(a, rows, cols, p)
    cdef Py_ssize_t i, j, jj, piv, rank = 0
    cdef i64 inv, c, tmp
    try:
        for j in range(cols):
            if rank == rows:
                break
            piv = -1
            for i in range(rank, rows):
                if m[i * cols + j]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for jj in range(cols):
                    tmp = m[rank * cols + jj]
                    m[rank * cols + jj] = m[piv * cols + jj]
                    m[piv * cols + jj] = tmp
            inv = _inv(m[rank * cols + j], p)
            for i in range(rank + 1, rows):
                c = m[i * cols + j] * inv % p
                if c:
                    for jj in range(j, cols):
                        m[i * cols + jj] = _mod(m[i * cols + jj] - c * m[rank * cols + jj], p)
            rank += 1
        return rank
    finally:
        free(m)


def field_smith(a, i64 p, Py_ssize_t rows, Py_ssize_t cols):
    cdef i64* m = _load(a, rows, cols, p)
    cdef i64* u = <i64*> malloc((rows * rows + 1) * sizeof(i64))
    cdef i64* v = <i64*> malloc((cols * cols + 1) * sizeof(i64))
    cdef Py_ssize_t i, j, k, pi, pj, rank = 0
    cdef i64 inv, c, tmp
    try:
        _identity(u, rows)
        _identity(v, cols)
        for k in range(min(rows, cols)):
            pi = -1
            pj = -1
            for j in range(k, cols):
                for i in range(k, rows):
                    if m[i * cols + j]:
                        pi = i
                        pj = j
                        break
                if pi >= 0:
                    break
            if pi < 0:
                break
            if pi != k:
                for j in range(cols):
                    tmp = m[k * cols + j]; m[k * cols + j] = m[pi * cols + j]; m[pi * cols + j] = tmp
                for j in range(rows):
                    tmp = u[k * rows + j]; u[k * rows + j] = u[pi * rows + j]; u[pi * rows + j] = tmp
            if pj != k:
                for i in range(rows):
                    tmp = m[i * cols + k]; m[i * cols + k] = m[i * cols + pj]; m[i * cols + pj] = tmp
                for i in range(cols):
                    tmp = v[i * cols + k]; v[i * cols + k] = v[i * cols + pj]; v[i * cols + pj] = tmp
            inv = _inv(m[k * cols + k], p)
            # scale the pivot column, not the row: U stays a product of swaps and transvections
            for i in range(rows):
                m[i * cols + k] = m[i * cols + k] * inv % p
            for i in range(cols):
                v[i * cols + k] = v[i * cols + k] * inv % p
            for i in range(k + 1, rows):
                c = m[i * cols + k]
                if c:
                    for j in range(cols):
                        m[i * cols + j] = _mod(m[i * cols + j] - c * m[k * cols + j], p)
                    for j in range(rows):
                        u[i * rows + j] = _mod(u[i * rows + j] - c * u[k * rows + j], p)
            for j in range(k + 1, cols):
                c = m[k * cols + j]
                if c:
                    m[k * cols + j] = 0
                    for i in range(cols):
                        v[i * cols + j] = _mod(v[i * cols + j] - c * v[i * cols + k], p)
            rank += 1
        return rank, _dump(u, rows, rows), _dump(v, cols, cols)
    finally:
        free(m)
        free(u)
        free(v)


def field_inverse(a, i64 p, Py_ssize_t n):
    cdef Py_ssize_t w = 2 * n
    cdef i64* m = <i64*> malloc((n * w + 1) * sizeof(i64))
    cdef Py_ssize_t i, j, k, piv
    cdef i64 inv, c, tmp
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            row = a[i]
            for j in range(n):
                m[i * w + j] = _mod(<i64> row[j], p)
                m[i * w + n + j] = 1 if i == j else 0
        for k in range(n):
            piv = -1
            for i in range(k, n):
                if m[i * w + k]:
                    piv = i
                    break
            if piv < 0:
                return None
            if piv != k:
                for j in range(w):
                    tmp = m[k * w + j]; m[k * w + j] = m[piv * w + j]; m[piv * w + j] = tmp
            inv = _inv(m[k * w + k], p)
            for j in range(w):
                m[k * w + j] = m[k * w + j] * inv % p
            for i in range(n):
                if i != k:
                    c = m[i * w + k]
                    if c:
                        for j in range(w):
                            m[i * w + j] = _mod(m[i * w + j] - c * m[k * w + j], p)
        return [[m[i * w + n + j] for j in range(n)] for i in range(n)]
    finally:
        free(m)


def orbit_labels(i64 mod, Py_ssize_t n, Py_ssize_t m, gens):
    cdef Py_ssize_t nn = n * n, nm = n * m, dims = nn + nm
    cdef Py_ssize_t ngen = len(gens)
    cdef i64 total = 1
    cdef Py_ssize_t k, i, j, l, g
    for k in range(dims):
        total *= mod
    cdef int* labels = <int*> malloc(total * sizeof(int))
    cdef i64* stack = <i64*> malloc(total * sizeof(i64))
    cdef i64* weights = <i64*> malloc((dims + 1) * sizeof(i64))
    cdef i64* gp = <i64*> malloc((ngen * nn + 1) * sizeof(i64))
    cdef i64* gpi = <i64*> malloc((ngen * nn + 1) * sizeof(i64))
    cdef i64* gq = <i64*> malloc((ngen * m * m + 1) * sizeof(i64))
    cdef i64* gk = <i64*> malloc((ngen * nm + 1) * sizeof(i64))
    cdef i64* st = <i64*> malloc((dims + 1) * sizeof(i64))
    cdef i64* c = <i64*> malloc((nn + 1) * sizeof(i64))
    cdef i64* pc = <i64*> malloc((nn + 1) * sizeof(i64))
    cdef i64* pb = <i64*> malloc((nm + 1) * sizeof(i64))
    cdef i64* nw = <i64*> malloc((dims + 1) * sizeof(i64))
    cdef i64 s, t, code, acc
    cdef Py_ssize_t top
    cdef int count = 0
    cdef i64* a
    cdef i64* b
    cdef i64* P
    cdef i64* Pi
    cdef i64* Q
    cdef i64* K
    try:
        if (labels == NULL or stack == NULL or weights == NULL or gp == NULL or gpi == NULL
                or gq == NULL or gk == NULL or st == NULL or c == NULL or pc == NULL
                or pb == NULL or nw == NULL):
            raise MemoryError()
        weights[0] = 1
        for k in range(1, dims):
            weights[k] = weights[k - 1] * mod
        for g in range(ngen):
            P_, Pi_, Q_, K_ = gens[g]
            for k in range(nn):
                gp[g * nn + k] = _mod(<i64> P_[k], mod)
                gpi[g * nn + k] = _mod(<i64> Pi_[k], mod)
            for k in range(m * m):
                gq[g * m * m + k] = _mod(<i64> Q_[k], mod)
            for k in range(nm):
                gk[g * nm + k] = _mod(<i64> K_[k], mod)
        for s in range(total):
            labels[s] = -1
        with nogil:
            for s in range(total):
                if labels[s] >= 0:
                    continue
                labels[s] = count
                top = 0
                stack[top] = s
                top += 1
                while top > 0:
                    top -= 1
                    t = stack[top]
                    for k in range(dims):
                        st[k] = t % mod
                        t = t // mod
                    a = st
                    b = st + nn
                    for g in range(ngen):
                        P = gp + g * nn
                        Pi = gpi + g * nn
                        Q = gq + g * m * m
                        K = gk + g * nm
                        for i in range(n):
                            for j in range(n):
                                acc = a[i * n + j]
                                for l in range(m):
                                    acc += b[i * m + l] * K[l * n + j]
                                c[i * n + j] = acc % mod
                        for i in range(n):
                            for j in range(n):
                                acc = 0
                                for l in range(n):
                                    acc += P[i * n + l] * c[l * n + j]
                                pc[i * n + j] = acc % mod
                        for i in range(n):
                            for j in range(n):
                                acc = 0
                                for l in range(n):
                                    acc += pc[i * n + l] * Pi[l * n + j]
                                nw[i * n + j] = acc % mod
                        for i in range(n):
                            for j in range(m):
                                acc = 0
                                for l in range(n):
                                    acc += P[i * n + l] * b[l * m + j]
                                pb[i * m + j] = acc % mod
                        for i in range(n):
                            for j in range(m):
                                acc = 0
                                for l in range(m):
                                    acc += pb[i * m + l] * Q[l * m + j]
                                nw[nn + i * m + j] = acc % mod
                        code = 0
                        for k in range(dims):
                            code += nw[k] * weights[k]
                        if labels[code] < 0:
                            labels[code] = count
                            stack[top] = code
                            top += 1
                count += 1
        return [labels[k] for k in range(total)], count
    finally:
        free(labels); free(stack); free(weights); free(gp); free(gpi)
        free(gq); free(gk); free(st); free(c); free(pc); free(pb); free(nw)
