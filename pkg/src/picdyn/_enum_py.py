"""Pure-Python Fincke-Pohst enumeration (fallback for the compiled kernel)."""

from __future__ import annotations

import math


def enumerate_norm(qd, mu, R, U, norm: int, cap: int):
    """Integer y with y^T R y == norm, returned as y U.

    ``qd``/``mu`` come from the floating Cholesky-type decomposition of the
    positive definite integer Gram matrix ``R``; the float search has a small
    slack and every leaf is checked exactly.  Returns (vectors, nodes); raises
    OverflowError when more than ``cap`` tree nodes are visited.
    """
    n = len(qd)
    bound = float(norm)
    x = [0] * n
    center = [0.0] * n
    partial = [0.0] * (n + 1)  # partial[i]: contribution of levels >= i
    upper = [0] * n
    out = []
    nodes = 0
    i = n - 1
    r = math.sqrt(max(bound, 0.0) / qd[i])
    x[i] = math.ceil(-r - 1e-9)
    upper[i] = math.floor(r + 1e-9)
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
        val = partial[i + 1] + qd[i] * d * d
        if val > bound + 1e-6:
            x[i] += 1
            continue
        if i == 0:
            if sum(R[a][b] * x[a] * x[b] for a in range(n) for b in range(n)) == norm:
                out.append(tuple(sum(x[a] * U[a][k] for a in range(n)) for k in range(n)))
            x[0] += 1
            continue
        partial[i] = val
        i -= 1
        c = 0.0
        for j in range(i + 1, n):
            c -= mu[i][j] * x[j]
        center[i] = c
        r = math.sqrt(max(bound - partial[i + 1], 0.0) / qd[i])
        x[i] = math.ceil(c - r - 1e-9)
        upper[i] = math.floor(c + r + 1e-9)
    return out, nodes
