# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fincke-Pohst enumeration; same contract as ``_enum_py.enumerate_norm``."""

from libc.math cimport sqrt, ceil, floor, fabs
from libc.stdlib cimport malloc, free

# exact int64 arithmetic is used while |products| stay below this
cdef double SAFE = 4.0e18


cdef object _exact_python(list xs, R, U, norm, int n):
    if sum(R[a][b] * xs[a] * xs[b] for a in range(n) for b in range(n)) != norm:
        return None
    return tuple(sum(xs[a] * U[a][k] for a in range(n)) for k in range(n))


def enumerate_norm(qd, mu, R, U, long long norm, long long cap):
    cdef int n = len(qd)
    cdef double *cq = <double *> malloc(n * sizeof(double))
    cdef double *cm = <double *> malloc(n * n * sizeof(double))
    cdef long long *cr = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *cu = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    cdef long long *upper = <long long *> malloc(n * sizeof(long long))
    cdef double *center = <double *> malloc(n * sizeof(double))
    cdef double *partial = <double *> malloc((n + 1) * sizeof(double))
    cdef int i, j, a, b
    cdef long long nodes = 0, acc
    cdef double d, val, c, r, s, mr = 0.0, mx_u = 0.0  # max |R|, max |U|
    cdef double bound = <double> norm
    out = []
    try:
        for i in range(n):
            cq[i] = qd[i]
            for j in range(n):
                cm[i * n + j] = mu[i][j]
                cr[i * n + j] = R[i][j]
                cu[i * n + j] = U[i][j]
                mr = max(mr, fabs(<double> R[i][j]))
                mx_u = max(mx_u, fabs(<double> U[i][j]))
            x[i] = 0
            center[i] = 0.0
            partial[i] = 0.0
        partial[n] = 0.0
        i = n - 1
        r = sqrt(max(bound, 0.0) / cq[i])
        x[i] = <long long> ceil(-r - 1e-9)
        upper[i] = <long long> floor(r + 1e-9)
        while True:
            if x[i] > upper[i]:
                i += 1
                if i == n:
                    break
                x[i] += 1
                continue
            nodes += 1
            if nodes > cap:
                raise OverflowError(nodes)
            d = x[i] - center[i]
            val = partial[i + 1] + cq[i] * d * d
            if val > bound + 1e-6:
                x[i] += 1
                continue
            if i == 0:
                s = 0.0
                for j in range(n):
                    s += fabs(<double> x[j])
                if mr * s * s < SAFE and mx_u * s < SAFE:
                    acc = 0
                    for a in range(n):
                        for b in range(n):
                            acc += cr[a * n + b] * x[a] * x[b]
                    if acc == norm:
                        out.append(tuple([sum_col(x, cu, n, j) for j in range(n)]))
                else:
                    v = _exact_python([x[j] for j in range(n)], R, U, norm, n)
                    if v is not None:
                        out.append(v)
                x[0] += 1
                continue
            partial[i] = val
            i -= 1
            c = 0.0
            for j in range(i + 1, n):
                c -= cm[i * n + j] * x[j]
            center[i] = c
            r = sqrt(max(bound - partial[i + 1], 0.0) / cq[i])
            x[i] = <long long> ceil(c - r - 1e-9)
            upper[i] = <long long> floor(c + r + 1e-9)
    finally:
        free(cq)
        free(cm)
        free(cr)
        free(cu)
        free(x)
        free(upper)
        free(center)
        free(partial)
    return out, nodes


cdef inline long long sum_col(long long *x, long long *cu, int n, int k):
    cdef long long acc = 0
    cdef int a
    for a in range(n):
        acc += x[a] * cu[a * n + k]
    return acc
