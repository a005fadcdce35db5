"""Exact short-vector enumeration in positive definite integer lattices.

The search tree runs in floating point (compiled kernel when available, pure
Python otherwise) with a small slack; every candidate is then checked with
exact integer arithmetic, so results never depend on rounding.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import linalg

DEFAULT_CAP = 10**7

if os.environ.get("PICDYN_PURE") == "1":
    from ._enum_py import enumerate_norm

    BACKEND = "python"
else:
    try:
        from ._enum_ext import enumerate_norm

        BACKEND = "compiled"
    except ImportError:
        from ._enum_py import enumerate_norm

        BACKEND = "python"


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"enumeration visited more than {cap} nodes")
        self.cap = cap


def _decompose(Q) -> tuple[list[float], list[list[float]]]:
    n = len(Q)
    q = [[float(Q[i][j]) for j in range(n)] for i in range(n)]
    # Q(x) = sum_i qd[i] (x_i + sum_{j>i} mu[i][j] x_j)^2
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    qd = [q[i][i] for i in range(n)]
    if min(qd) <= 0:
        raise ValueError("Gram matrix is not positive definite")
    mu = [[q[i][j] if j > i else 0.0 for j in range(n)] for i in range(n)]
    return qd, mu


def vectors_of_norm(
    Q: Sequence[Sequence[int]], norm: int, cap: int = DEFAULT_CAP, kernel=None
) -> list[tuple[int, ...]]:
    """All integer x with x^T Q x == norm, for positive definite integer Q.

    The Gram matrix is LLL-reduced first; results are returned in the
    original coordinates, sorted.
    """
    n = len(Q)
    if n == 0:
        return [()] if norm == 0 else []
    U = linalg.lll_gram(Q)  # rows: reduced basis in original coordinates
    R = linalg.gram_of(Q, U)
    qd, mu = _decompose(R)
    run = kernel or enumerate_norm
    try:
        out, _ = run(qd, mu, R, U, int(norm), int(cap))
    except OverflowError:
        raise EnumerationCapExceeded(cap) from None
    out.sort()
    return out
