"""Candidate Cremona isometries: verification, characteristic polynomial, powers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import flint

from . import linalg
from .lattice import ClassVector, LatticeError, LatticeMismatch, PicLattice


class IsometryError(ValueError):
    pass


class NotVerified(IsometryError):
    pass


@dataclass(frozen=True)
class VerificationReport:
    form_preserved: bool
    canonical_preserved: bool
    unimodular: bool
    curve_permutation: bool | None  # None: no curve data supplied
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (
            self.form_preserved
            and self.canonical_preserved
            and self.unimodular
            and self.curve_permutation is not False
        )

    def as_dict(self) -> dict:
        cp = "not-applicable" if self.curve_permutation is None else self.curve_permutation
        return {
            "form_preserved": self.form_preserved,
            "canonical_preserved": self.canonical_preserved,
            "unimodular": self.unimodular,
            "curve_permutation": cp,
            "passed": self.passed,
            "failures": list(self.failures),
        }


@dataclass(frozen=True, eq=False)
class IsometryCandidate:
    """Integer matrix acting on column class vectors of a lattice."""

    matrix: tuple[tuple[int, ...], ...]
    lattice: PicLattice
    verified: VerificationReport | None = None
    motions: tuple[tuple[str, str], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def require_verified(self) -> None:
        if self.verified is None or not self.verified.passed:
            raise NotVerified("candidate has not passed verification")

    def apply(self, v: ClassVector) -> ClassVector:
        if v.lattice_id != self.lattice.lattice_id:
            raise LatticeMismatch("vector does not belong to the candidate's lattice")
        return self.lattice.vector(linalg.matvec(self.matrix, v.coords))

    def inverse(self) -> "IsometryCandidate":
        inv = _inverse_matrix(self.matrix)
        back = tuple((b, a) for a, b in self.motions)
        return IsometryCandidate(inv, self.lattice, self.verified, back)


def _as_matrix(Phi, n: int) -> tuple[tuple[int, ...], ...]:
    if isinstance(Phi, IsometryCandidate):
        Phi = Phi.matrix
    M = tuple(tuple(int(x) for x in row) for row in Phi)
    if len(M) != n or any(len(row) != n for row in M):
        raise IsometryError(f"matrix must be {n}x{n}")
    return M


def _inverse_matrix(M) -> tuple[tuple[int, ...], ...]:
    d = linalg.det(M)
    if abs(d) != 1:
        raise IsometryError("matrix is not invertible over the integers")
    adj = _adjugate(M)
    return tuple(tuple(x // d for x in row) for row in adj)


def _adjugate(M) -> list[list[int]]:
    """adj(M) = det(M) M^{-1}, computed exactly."""
    d = linalg.det(M)
    if d == 0:
        raise IsometryError("singular matrix")
    inv = linalg.inverse_rational(M)
    out = [[x * d for x in row] for row in inv]
    if any(x.denominator != 1 for row in out for x in row):
        raise IsometryError("adjugate is not integral")  # pragma: no cover
    return [[int(x) for x in row] for row in out]


def verify(
    L: PicLattice,
    Phi,
    motions: Sequence[tuple[str, str]] | None = None,
) -> VerificationReport:
    """Check the lattice-decidable Cremona axioms exactly.

    ``motions`` is an optional list of (source, target) curve labels from the
    lattice curve list; each must satisfy Phi(source) = target.  Without
    motions, the curve check asks that Phi permute the supplied curve classes.
    With neither, the check is not applicable.
    """
    M = _as_matrix(Phi, L.rank)
    G = L.gram
    failures = []
    form = linalg.matmul(linalg.matmul(linalg.transpose(M), G), M) == [list(r) for r in G]
    if not form:
        failures.append("Phi^T G Phi != G")
    canon = tuple(linalg.matvec(M, L.canonical_coords)) == L.canonical_coords
    if not canon:
        failures.append("Phi K != K")
    unimod = abs(linalg.det(M)) == 1
    if not unimod:
        failures.append("|det Phi| != 1")
    curve_perm: bool | None = None
    if motions:
        curve_perm = True
        for src, dst in motions:
            try:
                a, b = L.curve(src), L.curve(dst)
            except KeyError as exc:
                raise IsometryError(f"unknown curve label {exc.args[0]!r} in motion list") from None
            if tuple(linalg.matvec(M, a.cls.coords)) != b.cls.coords:
                curve_perm = False
                failures.append(f"Phi({src}) != {dst}")
    elif L.curves:
        classes = {c.cls.coords for c in L.curves}
        images = {tuple(linalg.matvec(M, c)) for c in classes}
        curve_perm = images == classes
        if not curve_perm:
            failures.append("Phi does not permute the supplied curves")
    return VerificationReport(form, canon, unimod, curve_perm, tuple(failures))


def certify(L: PicLattice, Phi, motions: Sequence[tuple[str, str]] | None = None) -> IsometryCandidate:
    """Verified candidate, or NotVerified with the failing checks."""
    M = _as_matrix(Phi, L.rank)
    report = verify(L, M, motions)
    if not report.passed:
        raise NotVerified("; ".join(report.failures))
    return IsometryCandidate(M, L, report, tuple(tuple(m) for m in motions or ()))


def char_poly(Phi) -> flint.fmpz_poly:
    """det(tI - Phi) by Faddeev-LeVerrier with exact big-integer division."""
    M = Phi.matrix if isinstance(Phi, IsometryCandidate) else tuple(tuple(int(x) for x in r) for r in Phi)
    n = len(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]  # M_0 = 0
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        Mk = linalg.matmul(M, Mk)
        for i in range(n):
            Mk[i][i] += c
        AM = linalg.matmul(M, Mk)
        tr = sum(AM[i][i] for i in range(n))
        if tr % k:
            raise IsometryError("non-integral trace step")  # pragma: no cover
        c = -tr // k
        coeffs[n - k] = c
    return flint.fmpz_poly(coeffs)


def matrix_power(M, n: int) -> list[list[int]]:
    if n >= 0:
        return linalg.mat_pow(M, n)
    return linalg.mat_pow(_inverse_matrix(M), -n)


def power_apply(Phi: IsometryCandidate, n: int, v: ClassVector) -> ClassVector:
    """Phi^n v for any integer n."""
    Phi.require_verified()
    if v.lattice_id != Phi.lattice.lattice_id:
        raise LatticeMismatch("vector does not belong to the candidate's lattice")
    return Phi.lattice.vector(linalg.matvec(matrix_power(Phi.matrix, n), v.coords))


def conjugate(Phi, M) -> list[list[int]]:
    """M^{-1} Phi M: the matrix of Phi in the basis formed by the columns of M."""
    Minv = linalg.inverse_unimodular(M)
    return linalg.matmul(linalg.matmul(Minv, Phi), M)


def reflection(gram, alpha: Sequence[int]) -> list[list[int]]:
    """s(v) = v - 2 (v.alpha)/(alpha.alpha) alpha, integral for alpha^2 in {-1, -2}."""
    a2 = linalg.bilinear(gram, alpha, alpha)
    if a2 not in (-1, -2, 1, 2):
        raise IsometryError("reflection root must have norm +-1 or +-2")
    ga = linalg.matvec(gram, alpha)
    n = len(alpha)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            val = Fraction(int(i == j)) - Fraction(2 * alpha[i] * ga[j], a2)
            if val.denominator != 1:
                raise IsometryError("reflection is not integral")  # pragma: no cover
            row.append(int(val))
        out.append(row)
    return out


def _lattice_guard(L: PicLattice, Phi) -> None:
    if isinstance(Phi, IsometryCandidate) and Phi.lattice is not L and Phi.lattice.lattice_id != L.lattice_id:
        raise LatticeError("candidate belongs to a different lattice")
