"""Exact integer and rational matrix helpers.

Matrices are lists (or tuples) of rows holding Python ints or Fractions.
Heavy lifting (rank, HNF, LLL, nullspace) is delegated to FLINT; everything
returned to callers is plain Python data.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import flint

Matrix = Sequence[Sequence[int]]


class LinalgError(ValueError):
    pass


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Matrix) -> list[list]:
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def vecmat(v: Sequence, A: Matrix) -> list:
    return [sum(v[i] * A[i][j] for i in range(len(v))) for j in range(len(A[0]))]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def bilinear(gram: Matrix, u: Sequence, v: Sequence):
    return dot(u, matvec(gram, v))


def mat_sub(A: Matrix, B: Matrix) -> list[list]:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A: Matrix, B: Matrix) -> list[list]:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> list[list]:
    return [[c * a for a in row] for row in A]


def mat_pow(A: Matrix, n: int) -> list[list]:
    """Nonnegative power by repeated squaring."""
    if n < 0:
        raise LinalgError("negative exponent; invert first")
    result = identity(len(A))
    base = [list(r) for r in A]
    while n:
        if n & 1:
            result = matmul(result, base)
        n >>= 1
        if n:
            base = matmul(base, base)
    return result


def is_identity(A: Matrix) -> bool:
    return all(A[i][j] == (i == j) for i in range(len(A)) for j in range(len(A)))


def to_flint(A: Matrix) -> flint.fmpz_mat:
    if len(A) == 0:
        return flint.fmpz_mat(0, 0)
    return flint.fmpz_mat([[int(x) for x in row] for row in A])


def from_flint(M: flint.fmpz_mat) -> list[list[int]]:
    return [[int(x) for x in row] for row in M.tolist()]


def det(A: Matrix) -> int:
    if len(A) == 0:
        return 1
    return int(to_flint(A).det())


def rank(A: Matrix) -> int:
    if len(A) == 0 or len(A[0]) == 0:
        return 0
    return int(to_flint(A).rank())


def rational_rank(A: Sequence[Sequence[Fraction]]) -> int:
    return rank(clear_denominators_rows(A))


def clear_denominators_rows(A) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in A:
        den = 1
        for x in row:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise LinalgError("zero vector has no primitive part")
    return [int(x) // g for x in v]


def primitive_rational(v: Sequence) -> list[int]:
    """Integral primitive vector on the same ray as a rational vector."""
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return primitive([int(Fraction(x) * den) for x in v])


def nullspace(A: Matrix) -> list[list[int]]:
    """Basis of the rational kernel of A, as primitive integer vectors."""
    n = len(A[0])
    M = to_flint(A)
    X, nullity = M.nullspace()
    cols = from_flint(X)
    basis = [[cols[i][j] for i in range(n)] for j in range(int(nullity))]
    return [primitive(b) for b in basis]


def integer_kernel(A: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Z-basis of {x in Z^n : A x = 0}, LLL-reduced.

    The returned basis spans the saturated kernel lattice, not merely a
    finite-index sublattice.
    """
    n = ncols if ncols is not None else len(A[0])
    m = len(A)
    if m == 0:
        return identity(n)
    aug = [[A[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    H = from_flint(to_flint(aug).hnf())
    kernel = [row[m:] for row in H if all(x == 0 for x in row[:m]) and any(row[m:])]
    if not kernel:
        return []
    return lll_rows(kernel)


def lll_rows(rows: Matrix) -> list[list[int]]:
    if not rows:
        return []
    return from_flint(to_flint(rows).lll())


def lll_gram(gram: Matrix) -> list[list[int]]:
    """Unimodular U (rows = new basis) LLL-reducing a positive definite Gram matrix."""
    M = to_flint(gram)
    _, U = M.lll(transform=True, rep="gram")
    return from_flint(U)


def ext_gcd_vector(u: Sequence[int]) -> list[int]:
    """w with w . u = gcd(u)."""
    w = [0] * len(u)
    g = 0
    for i, x in enumerate(u):
        x = int(x)
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            w[i] = 1 if x > 0 else -1
            continue
        d, s, t = _egcd(g, x)
        w = [s * c for c in w]
        w[i] = t
        g = d
    return w


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def complement_basis(u: Sequence[int]) -> list[list[int]]:
    """Vectors completing the primitive vector u to a basis of Z^k."""
    w = ext_gcd_vector(u)
    if dot(w, u) != 1:
        raise LinalgError("vector is not primitive")
    return integer_kernel([w], len(u))


def solve_rational(A: Matrix, b: Sequence) -> list[Fraction] | None:
    """Some solution x of A x = b over Q, or None."""
    m, n = len(A), len(A[0])
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


def solve_integer(B: Matrix, v: Sequence[int]) -> list[int]:
    """Coordinates of v in the column basis B; raises if not integral."""
    x = solve_rational(B, v)
    if x is None or any(c.denominator != 1 for c in x):
        raise LinalgError("vector is not in the integer span of the basis")
    return [int(c) for c in x]


def inverse_rational(A: Matrix) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise LinalgError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def inverse_unimodular(A: Matrix) -> list[list[int]]:
    d = det(A)
    if abs(d) != 1:
        raise LinalgError(f"matrix is not unimodular (det = {d})")
    inv = inverse_rational(A)
    return [[int(x) for x in row] for row in inv]


def smith_invariants(A: Matrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    if not A or not A[0]:
        return []
    S = from_flint(to_flint(A).snf())
    return [abs(S[i][i]) for i in range(min(len(S), len(S[0]))) if S[i][i] != 0]


def is_saturated(columns: Matrix) -> bool:
    """Whether the span of the given integer vectors is primitive in Z^n."""
    if not columns:
        return True
    return all(d == 1 for d in smith_invariants(columns))


def signature(gram: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix."""
    n = len(gram)
    A = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/column i += row/column j turns the diagonal entry nonzero
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            p = i
        piv = A[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(p)
        for i in idx:
            if A[i][p] != 0:
                f = A[i][p] / piv
                for k in range(n):
                    A[i][k] -= f * A[p][k]
        for i in idx:
            A[i][p] = Fraction(0)
            A[p][i] = Fraction(0)
    return pos, neg, n - pos - neg


def gram_of(gram: Matrix, basis: Sequence[Sequence[int]]) -> list[list[int]]:
    """Gram matrix of the form restricted to the given vectors."""
    images = [matvec(gram, b) for b in basis]
    return [[dot(u, gv) for gv in images] for u in basis]
