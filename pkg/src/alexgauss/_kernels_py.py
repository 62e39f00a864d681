"""Pure-Python polynomial kernels over Z[T].

A polynomial is a list of Python ints, index = exponent, no trailing zeros
(the empty list is zero).  The compiled extension ``_kernels`` exports the
same four functions with identical semantics; ``kernels`` picks one at import.
"""
from __future__ import annotations

from math import gcd as _igcd

BACKEND = "python"


def _trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    if n != len(a):
        del a[n:]
    return a


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def divexact(a, b):
    """Quotient ``a / b``; raises ArithmeticError unless the division is exact."""
    a, b = _trim(list(a)), _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    lb = len(b)
    lead = b[-1]
    if lb == 1:
        out = []
        for c in a:
            q, r = divmod(c, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return out
    r = list(a)
    nq = len(a) - lb + 1
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * nq
    for t in range(len(a) - 1, lb - 2, -1):
        c = r[t]
        if not c:
            continue
        qc, rem = divmod(c, lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        off = t - lb + 1
        q[off] = qc
        for s in range(lb):
            r[off + s] -= qc * b[s]
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def det(rows):
    """Determinant of a square matrix of polynomials by fraction-free elimination.

    ``rows`` is a list of rows, each a list of polynomials.  The input is not
    modified.
    """
    n = len(rows)
    if n == 0:
        return [1]
    a = [[list(e) for e in row] for row in rows]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return []
        akk = a[k][k]
        rowk = a[k]
        unit_prev = prev == [1]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                t = mul(akk, rowi[j])
                if aik and rowk[j]:
                    u = mul(aik, rowk[j])
                    if len(u) > len(t):
                        t.extend([0] * (len(u) - len(t)))
                    for s, c in enumerate(u):
                        t[s] -= c
                    _trim(t)
                rowi[j] = t if unit_prev else divexact(t, prev)
            rowi[k] = []
        prev = akk
    res = a[n - 1][n - 1]
    return [-c for c in res] if sign < 0 else list(res)


def content(a):
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def _primitive(a):
    c = content(a)
    if c > 1:
        a = [x // c for x in a]
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def _pseudo_rem(a, b):
    # lead(b)^(deg a - deg b + 1) * a  mod  b, computed without division
    r = list(a)
    lb = len(b)
    lead = b[-1]
    while len(r) >= lb:
        c = r[-1]
        off = len(r) - lb
        r = [x * lead for x in r]
        for s in range(lb):
            r[off + s] -= c * b[s]
        _trim(r)
    return r


def gcd(a, b):
    """Greatest common divisor in Z[T] with positive leading coefficient."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not a:
        return _primitive(b) if len(b) > 1 else ([abs(b[0])] if b else [])
    if not b:
        return _primitive(a) if len(a) > 1 else [abs(a[0])]
    g_content = _igcd(content(a), content(b))
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [g_content]
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r) if r else []
    return [g_content * c for c in _primitive(a)]
