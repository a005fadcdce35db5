"""Degree-growth classification from the Jordan structure of a lattice isometry."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from . import algebraic as alg
from . import linalg
from .cancel import CancelToken, check
from .isometry import IsometryCandidate, char_poly, matrix_power
from .lattice import ClassVector, LatticeMismatch, PicLattice

BOUNDED = "Bounded"
QUADRATIC = "Quadratic"
EXPONENTIAL = "Exponential"
NOT_REALIZABLE = "NotRealizable"


class GrowthError(ValueError):
    pass


class NotQuadratic(GrowthError):
    pass


class NotExponential(GrowthError):
    pass


@dataclass
class GrowthReport:
    kind: str
    char_poly: flint.fmpz_poly
    char_poly_factors: list[tuple[list[int], int]]
    jordan_summary: tuple[int, int, int]
    period: int | None = None
    coefficient: Fraction | None = None
    lam: alg.AlgebraicNumber | None = None
    number_type: str | None = None
    reason: str | None = None
    cyclotomic_orders: list[tuple[int, int]] = field(default_factory=list)

    @property
    def entropy(self) -> float:
        if self.kind == EXPONENTIAL:
            return math.log(float(self.lam))
        return 0.0

    def as_dict(self) -> dict:
        d: dict = {
            "kind": self.kind,
            "char_poly": [str(c) for c in alg.coeff_list(self.char_poly)],
            "char_poly_factors": [
                {"poly": [str(c) for c in f], "multiplicity": m} for f, m in self.char_poly_factors
            ],
            "jordan_summary": list(self.jordan_summary),
            "entropy": "0" if self.kind != EXPONENTIAL else repr(self.entropy),
        }
        if self.period is not None:
            d["period"] = str(self.period)
        if self.coefficient is not None:
            d["coefficient"] = _fraction_str(self.coefficient)
        if self.lam is not None:
            d["lambda"] = algebraic_to_dict(self.lam)
            d["number_type"] = self.number_type
        if self.reason is not None:
            d["reason"] = self.reason
        return d


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def algebraic_to_dict(a: alg.AlgebraicNumber) -> dict:
    r = a.refine()
    return {
        "min_poly": [str(c) for c in alg.coeff_list(r.min_poly)],
        "interval_lo": _fraction_str(r.lo),
        "interval_hi": _fraction_str(r.hi),
        "decimal": f"{float(r):.12f}",
    }


def _poly_at_matrix(p, M) -> list[list[int]]:
    """p(M) by Horner's rule."""
    n = len(M)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(alg.coeff_list(p)):
        acc = linalg.matmul(acc, M)
        for i in range(n):
            acc[i][i] += c
    return acc


def _is_zero(M) -> bool:
    return all(x == 0 for row in M for x in row)


def _shifted(M, s: int = 1) -> list[list[int]]:
    n = len(M)
    return [[M[i][j] - (s if i == j else 0) for j in range(n)] for i in range(n)]


def unipotent_ranks(M, kmax: int = 4) -> list[int]:
    """[rank (M - I)^k for k = 0..kmax]."""
    N = _shifted(M)
    out = [len(M)]
    P = linalg.identity(len(M))
    for _ in range(kmax):
        P = linalg.matmul(P, N)
        out.append(linalg.rank(P))
    return out


def _candidate_matrix(L: PicLattice, Phi: IsometryCandidate):
    Phi.require_verified()
    if Phi.lattice.lattice_id != L.lattice_id:
        raise LatticeMismatch("candidate belongs to a different lattice")
    return Phi.matrix


def classify(L: PicLattice, Phi: IsometryCandidate, cancel: CancelToken | None = None) -> GrowthReport:
    """Bounded, Quadratic, Exponential or NotRealizable, decided exactly."""
    M = _candidate_matrix(L, Phi)
    P = char_poly(M)
    check(cancel)
    factors = [(alg.coeff_list(f), int(m)) for f, m in P.factor()[1]]
    factors.sort(key=lambda fm: (len(fm[0]), fm[0]))
    ranks = unipotent_ranks(M)
    summary = (ranks[1], ranks[2], ranks[3])
    residual, cyclo = alg.strip_cyclotomic(P)
    check(cancel)
    base = dict(char_poly=P, char_poly_factors=factors, jordan_summary=summary, cyclotomic_orders=cyclo)

    if residual.degree() > 0:
        try:
            lam = alg.largest_real_root(residual)
        except alg.PolynomialError:
            return GrowthReport(NOT_REALIZABLE, reason="non-cyclotomic part has no real root", **base)
        if not lam > 1:
            return GrowthReport(NOT_REALIZABLE, reason="largest real root of the non-cyclotomic part is not above 1", **base)
        recip = flint.fmpz_poly(list(reversed(alg.coeff_list(lam.min_poly))))
        if not divmod(P, _normalized(recip))[1].is_zero():
            return GrowthReport(NOT_REALIZABLE, reason="1/lambda is not a root of the characteristic polynomial", **base)
        tag = alg.classify_number(lam)
        number_type = tag.value if tag in (alg.NumberType.SALEM, alg.NumberType.RECIPROCAL_QUADRATIC) else "Inconsistent"
        return GrowthReport(EXPONENTIAL, lam=lam.refine(), number_type=number_type, **base)

    orders = [m for m, _ in cyclo]
    distinct = flint.fmpz_poly([1])
    for m in orders:
        distinct *= alg.cyclotomic(m)
    if _is_zero(_poly_at_matrix(distinct, M)):
        period = 1
        for m in orders:
            period = period * m // math.gcd(period, m)
        if not linalg.is_identity(matrix_power(M, period)):
            raise GrowthError("period check failed")  # pragma: no cover
        return GrowthReport(BOUNDED, period=period, **base)

    b = [ranks[k - 1] - ranks[k] for k in range(1, 5)]  # b[k-1] = blocks of size >= k at 1
    others = flint.fmpz_poly([1])
    for m in orders:
        if m != 1:
            others *= alg.cyclotomic(m)
    cube = flint.fmpz_poly([-1, 3, -3, 1])  # (t - 1)^3
    if b[1] == 1 and b[2] == 1 and b[3] == 0 and _is_zero(_poly_at_matrix(cube * others, M)):
        report = GrowthReport(QUADRATIC, **base)
        report.coefficient = quadratic_coefficient(L, Phi, L.anchor, _report=report)
        return report
    if b[1] == 0:
        reason = "eigenvalue other than 1 carries a nontrivial Jordan block"
    elif b[3] > 0:
        reason = "Jordan block of size at least 4 at eigenvalue 1"
    elif b[2] == 0:
        reason = "Jordan block of size 2 at eigenvalue 1"
    elif b[1] != b[2]:
        reason = "Jordan blocks of size 2 and 3 coexist at eigenvalue 1"
    elif b[2] > 1:
        reason = "more than one Jordan block of size 3 at eigenvalue 1"
    else:
        reason = "eigenvalue other than 1 carries a nontrivial Jordan block"
    return GrowthReport(NOT_REALIZABLE, reason=reason, **base)


def _normalized(f):
    return alg._normalize(f)


def degree_sequence(
    L: PicLattice, Phi: IsometryCandidate, h: ClassVector, h2: ClassVector, N: int
) -> list[int]:
    """[(Phi^n h) . h2 for n = 0..N]."""
    M = _candidate_matrix(L, Phi)
    for v in (h, h2):
        if v.lattice_id != L.lattice_id:
            raise LatticeMismatch("vector does not belong to this lattice")
    g2 = linalg.matvec(L.gram, h2.coords)
    out = []
    v = list(h.coords)
    for _ in range(N + 1):
        out.append(linalg.dot(v, g2))
        v = linalg.matvec(M, v)
    return out


def bidegree_sequence(L: PicLattice, Phi: IsometryCandidate, N: int, hx: str = "Hx", hy: str = "Hy") -> list[list[list[int]]]:
    """Per n = 0..N the matrix [[deg_x X_n, deg_y X_n], [deg_x Y_n, deg_y Y_n]].

    The class of {X_n = c} is Phi^{-n} Hx, so its degree in x is
    (Phi^{-n} Hx) . Hy = (Phi^n Hy) . Hx, and similarly for the other entries.
    """
    Hx, Hy = L.basis_vector(hx), L.basis_vector(hy)
    xx = degree_sequence(L, Phi, Hy, Hx, N)
    xy = degree_sequence(L, Phi, Hx, Hx, N)
    yx = degree_sequence(L, Phi, Hy, Hy, N)
    yy = degree_sequence(L, Phi, Hx, Hy, N)
    return [[[xx[n], xy[n]], [yx[n], yy[n]]] for n in range(N + 1)]


def p1p1_degree_sequence(L: PicLattice, Phi: IsometryCandidate, N: int, hx: str = "Hx", hy: str = "Hy") -> list[int]:
    """max over components of the bidegree sum, n = 0..N."""
    return [max(row[0] + row[1] for row in B) for B in bidegree_sequence(L, Phi, N, hx, hy)]


def _rational_kernel(A) -> list[list[Fraction]]:
    return [[Fraction(x) for x in v] for v in linalg.nullspace(A)]


def jordan_chain(L: PicLattice, Phi: IsometryCandidate, choice: int = 0) -> tuple[list[int], list[int], list[int]]:
    """Integral (v1, v2, v3) with v2 = (Phi - I) v3, v1 = (Phi - I) v2, v1 != 0.

    ``choice`` picks among kernel vectors of (Phi - I)^3 (and their sums)
    so that different chains can be compared.
    """
    M = _candidate_matrix(L, Phi)
    N = _shifted(M)
    N2 = linalg.matmul(N, N)
    N3 = linalg.matmul(N2, N)
    ker = linalg.nullspace(N3)
    good = [v for v in ker if any(linalg.matvec(N2, v))]
    if not good:
        raise NotQuadratic("no Jordan block of size 3 at eigenvalue 1")
    v3 = list(good[choice % len(good)])
    if choice >= len(good):
        # mix in further kernel vectors to obtain a genuinely different chain
        for k, w in enumerate(ker):
            v3 = [a + (k + 1) * b for a, b in zip(v3, w)]
        if not any(linalg.matvec(N2, v3)):
            v3 = list(good[0])
    v2 = linalg.matvec(N, v3)
    v1 = linalg.matvec(N, v2)
    return v1, v2, v3


def quadratic_coefficient(
    L: PicLattice, Phi: IsometryCandidate, h: ClassVector, chain_choice: int = 0, _report=None
) -> Fraction:
    """Exact limit of (Phi^n h . h) / n^2, namely (h, v1)^2 / (2 (v3, v1))."""
    if h.lattice_id != L.lattice_id:
        raise LatticeMismatch("vector does not belong to this lattice")
    report = _report or classify(L, Phi)
    if report.kind != QUADRATIC:
        raise NotQuadratic(f"classification is {report.kind}")
    v1, _, v3 = jordan_chain(L, Phi, chain_choice)
    hv1 = linalg.bilinear(L.gram, h.coords, v1)
    v31 = linalg.bilinear(L.gram, v3, v1)
    if v31 == 0:
        raise GrowthError("degenerate Jordan chain")  # pragma: no cover
    c = Fraction(hv1 * hv1, 2 * v31)
    if c < 0:
        raise GrowthError("negative quadratic coefficient; candidate is not realizable")
    return c


@dataclass
class ExpCoefficient:
    value: alg.FieldElement
    lo: Fraction
    hi: Fraction

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def field_eigenvector(M, mu: alg.FieldElement) -> list[alg.FieldElement]:
    F = mu.field
    n = len(M)
    rows = [[F(M[i][j]) - (mu if i == j else 0) for j in range(n)] for i in range(n)]
    ker = alg.field_nullspace(rows, F)
    if len(ker) != 1:
        raise GrowthError(f"eigenspace has dimension {len(ker)}, expected 1")
    return ker[0]


def field_pair(gram, u, v):
    return alg.field_vector_pair(gram, u, v)


def exp_leading_coefficient(
    L: PicLattice, Phi: IsometryCandidate, h: ClassVector, width: Fraction = alg.DEFAULT_WIDTH
) -> ExpCoefficient:
    """(h, v1)(h, v2)/(v1, v2) in Q(lambda) with v1, v2 eigenvectors for lambda, 1/lambda."""
    if h.lattice_id != L.lattice_id:
        raise LatticeMismatch("vector does not belong to this lattice")
    report = classify(L, Phi)
    if report.kind != EXPONENTIAL:
        raise NotExponential(f"classification is {report.kind}")
    F = alg.NumberField(report.lam)
    lam = F.gen
    v1 = field_eigenvector(Phi.matrix, lam)
    v2 = field_eigenvector(Phi.matrix, lam.inverse())
    G = L.gram
    hv = [F(x) for x in h.coords]
    value = field_pair(G, hv, v1) * field_pair(G, hv, v2) / field_pair(G, v1, v2)
    lo, hi = value.enclosure(width)
    return ExpCoefficient(value, lo, hi)
