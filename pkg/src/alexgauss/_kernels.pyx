# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over Z[T].

Same contract as ``_kernels_py``.  Products and determinants run on int64
buffers with overflow detection; any overflow (or a coefficient that does not
fit in 64 bits) reroutes the call to the arbitrary-precision Python path.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

from alexgauss import _kernels_py as _py

BACKEND = "cython"

ctypedef long long i64

cdef extern from *:
    """
    #include <limits.h>
    #define AG_I64_MIN LLONG_MIN
    static inline int ag_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ag_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int ag_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint ag_mul_ovf(i64 a, i64 b, i64 *r) nogil
    bint ag_add_ovf(i64 a, i64 b, i64 *r) nogil
    bint ag_sub_ovf(i64 a, i64 b, i64 *r) nogil
    const i64 AG_I64_MIN

cdef enum:
    OK = 0
    OVERFLOW = 1
    INEXACT = 2
    SINGULAR = 3

cdef i64 I64_MAX = 9223372036854775807
cdef i64 I64_MIN = -9223372036854775807


cdef inline Py_ssize_t _trimlen(const i64 *a, Py_ssize_t n) nogil:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef int _load(object seq, i64 *buf, Py_ssize_t cap) except -1:
    # copies seq into buf (zero padded up to cap); returns 1 if a value is too wide
    cdef Py_ssize_t i = 0
    memset(buf, 0, cap * sizeof(i64))
    for c in seq:
        if c > I64_MAX or c < I64_MIN:
            return 1
        buf[i] = c
        i += 1
    return 0


cdef int _cmul(const i64 *a, Py_ssize_t la, const i64 *b, Py_ssize_t lb,
               i64 *out) nogil:
    # out must hold la + lb - 1 entries; la, lb >= 1
    cdef Py_ssize_t i, j
    cdef i64 p, s
    memset(out, 0, (la + lb - 1) * sizeof(i64))
    for i in range(la):
        if a[i] == 0:
            continue
        for j in range(lb):
            if b[j] == 0:
                continue
            if ag_mul_ovf(a[i], b[j], &p):
                return OVERFLOW
            if ag_add_ovf(out[i + j], p, &s):
                return OVERFLOW
            out[i + j] = s
    return OK


cdef int _cdivexact(i64 *r, Py_ssize_t ln, const i64 *b, Py_ssize_t lb,
                    i64 *q, Py_ssize_t *lq) nogil:
    # divides r (destroyed) by b; quotient into q
    cdef Py_ssize_t t, s, off, nq
    cdef i64 lead = b[lb - 1]
    cdef i64 c, qc, p, d
    if ln == 0:
        lq[0] = 0
        return OK
    nq = ln - lb + 1
    if nq <= 0:
        return INEXACT
    memset(q, 0, nq * sizeof(i64))
    t = ln - 1
    while t >= lb - 1:
        c = r[t]
        if c != 0:
            if lead == -1 and c == AG_I64_MIN:
                return OVERFLOW
            if c % lead != 0:
                return INEXACT
            qc = c // lead
            off = t - lb + 1
            q[off] = qc
            for s in range(lb):
                if b[s] == 0:
                    continue
                if ag_mul_ovf(qc, b[s], &p):
                    return OVERFLOW
                if ag_sub_ovf(r[off + s], p, &d):
                    return OVERFLOW
                r[off + s] = d
        t -= 1
    for s in range(lb - 1):
        if r[s] != 0:
            return INEXACT
    lq[0] = _trimlen(q, nq)
    return OK


def mul(a, b):
    cdef Py_ssize_t la = len(a), lb = len(b), n, i
    cdef i64 *buf
    cdef int rc
    if la == 0 or lb == 0:
        return []
    buf = <i64 *> malloc((la + lb + la + lb - 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        if _load(a, buf, la) or _load(b, buf + la, lb):
            return _py.mul(a, b)
        with nogil:
            rc = _cmul(buf, la, buf + la, lb, buf + la + lb)
        if rc != OK:
            return _py.mul(a, b)
        n = _trimlen(buf + la + lb, la + lb - 1)
        return [buf[la + lb + i] for i in range(n)]
    finally:
        free(buf)


def divexact(a, b):
    cdef Py_ssize_t la = len(a), lb = len(b), lq = 0, i
    cdef i64 *buf
    cdef int rc
    if lb == 0 or not b[lb - 1]:
        if not any(b):
            raise ZeroDivisionError("polynomial division by zero")
        return _py.divexact(a, b)
    if la == 0:
        return []
    buf = <i64 *> malloc((la + lb + la) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        if _load(a, buf, la) or _load(b, buf + la, lb):
            return _py.divexact(a, b)
        with nogil:
            rc = _cdivexact(buf, la, buf + la, lb, buf + la + lb, &lq)
        if rc == INEXACT:
            raise ArithmeticError("inexact polynomial division")
        if rc == OVERFLOW:
            return _py.divexact(a, b)
        return [buf[la + lb + i] for i in range(lq)]
    finally:
        free(buf)


cdef int _cbareiss(i64 *mat, Py_ssize_t *lens, Py_ssize_t n, Py_ssize_t cap,
                   i64 *t1, i64 *t2, i64 *prev, int *sign) nogil:
    # entry (r, c) lives at mat + (r * n + c) * cap with length lens[r * n + c]
    cdef Py_ssize_t k, i, j, r, s, lp, lt, l1, l2, lq
    cdef Py_ssize_t *rowmap = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t rk, ri, tmp
    cdef i64 *akk
    cdef i64 *aik
    cdef i64 *akj
    cdef i64 *aij
    cdef i64 d
    cdef int rc = OK
    if rowmap == NULL:
        return OVERFLOW
    for i in range(n):
        rowmap[i] = i
    prev[0] = 1
    lp = 1
    sign[0] = 1
    for k in range(n - 1):
        if lens[rowmap[k] * n + k] == 0:
            r = k + 1
            while r < n and lens[rowmap[r] * n + k] == 0:
                r += 1
            if r == n:
                free(rowmap)
                return SINGULAR
            tmp = rowmap[k]
            rowmap[k] = rowmap[r]
            rowmap[r] = tmp
            sign[0] = -sign[0]
        rk = rowmap[k]
        akk = mat + (rk * n + k) * cap
        for i in range(k + 1, n):
            ri = rowmap[i]
            aik = mat + (ri * n + k) * cap
            for j in range(k + 1, n):
                aij = mat + (ri * n + j) * cap
                akj = mat + (rk * n + j) * cap
                l1 = 0
                if lens[ri * n + j] != 0:
                    rc = _cmul(akk, lens[rk * n + k], aij, lens[ri * n + j], t1)
                    if rc != OK:
                        free(rowmap)
                        return rc
                    l1 = lens[rk * n + k] + lens[ri * n + j] - 1
                if lens[ri * n + k] != 0 and lens[rk * n + j] != 0:
                    rc = _cmul(aik, lens[ri * n + k], akj, lens[rk * n + j], t2)
                    if rc != OK:
                        free(rowmap)
                        return rc
                    l2 = lens[ri * n + k] + lens[rk * n + j] - 1
                    if l2 > l1:
                        memset(t1 + l1, 0, (l2 - l1) * sizeof(i64))
                        l1 = l2
                    for s in range(l2):
                        if ag_sub_ovf(t1[s], t2[s], &d):
                            free(rowmap)
                            return OVERFLOW
                        t1[s] = d
                lt = _trimlen(t1, l1)
                if lt == 0:
                    lens[ri * n + j] = 0
                    continue
                if lp == 1 and prev[0] == 1:
                    if lt > cap:
                        free(rowmap)
                        return OVERFLOW
                    memcpy(aij, t1, lt * sizeof(i64))
                    lens[ri * n + j] = lt
                else:
                    rc = _cdivexact(t1, lt, prev, lp, t2, &lq)
                    if rc != OK or lq > cap:
                        free(rowmap)
                        return OVERFLOW if rc != INEXACT else INEXACT
                    memcpy(aij, t2, lq * sizeof(i64))
                    lens[ri * n + j] = lq
            lens[ri * n + k] = 0
        lp = lens[rk * n + k]
        memcpy(prev, akk, lp * sizeof(i64))
    # final entry is copied into prev for the caller
    rk = rowmap[n - 1]
    lp = lens[rk * n + n - 1]
    memcpy(prev, mat + (rk * n + n - 1) * cap, lp * sizeof(i64))
    lens[n * n] = lp
    free(rowmap)
    return OK


def det(rows):
    cdef Py_ssize_t n = len(rows), i, j, cap, deg, rowdeg, total
    cdef i64 *mat = NULL
    cdef i64 *t1 = NULL
    cdef i64 *t2 = NULL
    cdef i64 *prev = NULL
    cdef Py_ssize_t *lens = NULL
    cdef int rc, sign = 1
    if n == 0:
        return [1]
    if n == 1:
        return list(rows[0][0])
    total = 0
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
        rowdeg = 0
        for e in row:
            if len(e) > rowdeg:
                rowdeg = len(e)
        if rowdeg == 0:
            return []
        total += rowdeg - 1
    cap = total + 1
    try:
        mat = <i64 *> malloc(n * n * cap * sizeof(i64))
        lens = <Py_ssize_t *> malloc((n * n + 1) * sizeof(Py_ssize_t))
        t1 = <i64 *> malloc((2 * cap + 1) * sizeof(i64))
        t2 = <i64 *> malloc((2 * cap + 1) * sizeof(i64))
        prev = <i64 *> malloc((cap + 1) * sizeof(i64))
        if mat == NULL or lens == NULL or t1 == NULL or t2 == NULL or prev == NULL:
            raise MemoryError()
        for i in range(n):
            for j in range(n):
                e = rows[i][j]
                if _load(e, mat + (i * n + j) * cap, cap):
                    return _py.det(rows)
                lens[i * n + j] = _trimlen(mat + (i * n + j) * cap, len(e))
        with nogil:
            rc = _cbareiss(mat, lens, n, cap, t1, t2, prev, &sign)
        if rc == SINGULAR:
            return []
        if rc == INEXACT:
            raise ArithmeticError("inexact division inside fraction-free elimination")
        if rc != OK:
            return _py.det(rows)
        deg = lens[n * n]
        if sign < 0:
            return [-prev[i] for i in range(deg)]
        return [prev[i] for i in range(deg)]
    finally:
        free(mat)
        free(lens)
        free(t1)
        free(t2)
        free(prev)


def gcd(a, b):
    return _py.gcd(a, b)
