"""Dominant vectors, contractible exceptional classes, and contraction to a minimal model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import algebraic as alg
from . import linalg
from .growth import (
    EXPONENTIAL,
    QUADRATIC,
    NotExponential,
    NotQuadratic,
    classify,
    field_eigenvector,
    field_pair,
)
from .isometry import IsometryCandidate, certify
from .lattice import ClassVector, LatticeError, LatticeMismatch, PicLattice, geometric_anchor, make_lattice
from .shortvec import DEFAULT_CAP, vectors_of_norm

UNSUPPORTED = "Unsupported"


class MinimizeError(ValueError):
    pass


class InvalidExceptionalSet(MinimizeError):
    pass


class NotPermuted(MinimizeError):
    pass


def _require_kind(L: PicLattice, Phi: IsometryCandidate, kind: str):
    report = classify(L, Phi)
    if report.kind != kind:
        exc = NotQuadratic if kind == QUADRATIC else NotExponential
        raise exc(f"classification is {report.kind}")
    return report


def _shifted(M):
    n = len(M)
    return [[M[i][j] - (i == j) for j in range(n)] for i in range(n)]


def dominant_vector_quadratic(L: PicLattice, Phi: IsometryCandidate) -> ClassVector:
    """Primitive integral generator of Ker(Phi - I) ∩ Im(Phi - I)^2, positive on the anchor."""
    _require_kind(L, Phi, QUADRATIC)
    N = _shifted(Phi.matrix)
    N2 = linalg.matmul(N, N)
    N3 = linalg.matmul(N2, N)
    images = [linalg.matvec(N2, y) for y in linalg.nullspace(N3)]
    images = [v for v in images if any(v)]
    if not images or linalg.rank(images) != 1:
        raise MinimizeError("Ker(Phi - I) ∩ Im(Phi - I)^2 is not one-dimensional")  # pragma: no cover
    v = linalg.primitive(images[0])
    if linalg.bilinear(L.gram, v, L.anchor_coords) < 0:
        v = [-x for x in v]
    G = L.gram
    if linalg.bilinear(G, v, v) != 0 or linalg.bilinear(G, v, L.canonical_coords) != 0:
        raise MinimizeError("dominant vector is not isotropic and orthogonal to K")
    return L.vector(v)


def dominant_vector_exponential(L: PicLattice, Phi: IsometryCandidate) -> list[alg.FieldElement]:
    """Eigenvector for lambda over Q(lambda), normalized so v . anchor > 0."""
    report = _require_kind(L, Phi, EXPONENTIAL)
    F = alg.NumberField(report.lam)
    v = field_eigenvector(Phi.matrix, F.gen)
    anchor = [F(x) for x in L.anchor_coords]
    s = field_pair(L.gram, v, anchor).sign()
    if s == 0:
        raise MinimizeError("dominant eigenvector is orthogonal to the anchor")  # pragma: no cover
    if s < 0:
        v = [-x for x in v]
    vv = field_pair(L.gram, v, v)
    if vv is not None and not vv.is_zero():
        raise MinimizeError("dominant eigenvector is not isotropic")
    return v


def _sorted_classes(L: PicLattice, vecs) -> list[ClassVector]:
    return [L.vector(v) for v in sorted({tuple(v) for v in vecs})]


def exceptional_set_quadratic(
    L: PicLattice,
    Phi: IsometryCandidate,
    cap: int = DEFAULT_CAP,
    diagnostics: list | None = None,
) -> list[ClassVector]:
    """{E : E^2 = -1, E.v1 = 0, E.K = -1, E.e0 >= 0, (v1 - E).e0 >= 3}."""
    v1 = list(dominant_vector_quadratic(L, Phi).coords)
    G, K = L.gram, L.canonical_coords
    W = linalg.integer_kernel([linalg.matvec(G, v1)], L.rank)  # rows: basis of v1-perp
    Wt = linalg.transpose(W)
    u = linalg.solve_integer(Wt, v1)
    comp = linalg.complement_basis(u)  # completes u to a basis of Z^{n-1}
    B = [linalg.vecmat(c, W) for c in comp]  # complement vectors in Pic coordinates
    Q = [[-x for x in row] for row in linalg.gram_of(G, B)]
    e0 = None
    d = None
    found = []
    for x in vectors_of_norm(Q, 1, cap):
        Ebar = linalg.vecmat(list(x), B)
        if linalg.bilinear(G, Ebar, K) != -1:
            continue
        if e0 is None:
            e0 = list(geometric_anchor(L).coords)
            d = linalg.bilinear(G, v1, e0)
            if d <= 0:
                raise MinimizeError("dominant vector does not pair positively with the geometric anchor")
        c = linalg.bilinear(G, Ebar, e0)
        # c + k d >= 0 and d - c - k d >= 3
        k_lo = -(c // d)  # ceil(-c / d)
        k_hi = (d - c - 3) // d
        ks = list(range(k_lo, k_hi + 1))
        if len(ks) != 1 and diagnostics is not None:
            diagnostics.append({"quotient_class": list(Ebar), "admissible_shifts": ks})
        for k in ks:
            found.append([a + k * b for a, b in zip(Ebar, v1)])
    return _sorted_classes(L, found)


def exceptional_set_exponential(L: PicLattice, Phi: IsometryCandidate, cap: int = DEFAULT_CAP) -> list[ClassVector]:
    """{E : E^2 = -1, E.v = 0, E.K = -1, E.e0 >= 0} with v the dominant eigenvector."""
    v = dominant_vector_exponential(L, Phi)
    G, K = L.gram, L.canonical_coords
    deg = v[0].field.root.degree
    # E . v = sum_k lambda^k (E . c_k): one rational condition per power of lambda
    coeffs = [fe.coefficients() for fe in v]
    rows = []
    for k in range(deg):
        ck = [coeffs[i][k] for i in range(L.rank)]
        rows.append(linalg.matvec(G, ck))
    rows = [r for r in linalg.clear_denominators_rows(rows) if any(r)]
    W = linalg.integer_kernel(rows, L.rank)
    if not W:
        return []
    Q = [[-x for x in row] for row in linalg.gram_of(G, W)]
    try:
        e0 = list(geometric_anchor(L).coords)
    except LatticeError:
        e0 = list(L.anchor_coords)
    found = []
    for x in vectors_of_norm(Q, 1, cap):
        E = linalg.vecmat(list(x), W)
        if linalg.bilinear(G, E, K) == -1 and linalg.bilinear(G, E, e0) >= 0:
            found.append(E)
    return _sorted_classes(L, found)


def exceptional_set(L: PicLattice, Phi: IsometryCandidate, cap: int = DEFAULT_CAP) -> list[ClassVector]:
    kind = classify(L, Phi).kind
    if kind == QUADRATIC:
        return exceptional_set_quadratic(L, Phi, cap)
    if kind == EXPONENTIAL:
        return exceptional_set_exponential(L, Phi, cap)
    raise MinimizeError(f"minimization is not supported for {kind} candidates")


@dataclass
class ContractionPlan:
    exceptional_classes: list[ClassVector]
    reduced_lattice: PicLattice
    reduced_isometry: IsometryCandidate
    pushforward: list[list[int]]  # (rank - m) x rank matrix
    complement_basis: list[list[int]]  # reduced basis vectors in original coordinates
    lifted_canonical_identity: dict = field(default_factory=dict)

    def push(self, v: ClassVector) -> ClassVector:
        return self.reduced_lattice.vector(linalg.matvec(self.pushforward, v.coords))


def _validate_set(L: PicLattice, Phi: IsometryCandidate, Es: Sequence[ClassVector]) -> None:
    G, K = L.gram, L.canonical_coords
    for E in Es:
        if E.lattice_id != L.lattice_id:
            raise LatticeMismatch("exceptional class does not belong to this lattice")
        if linalg.bilinear(G, E.coords, E.coords) != -1:
            raise InvalidExceptionalSet(f"{L.describe(E)} does not have self-intersection -1")
        if linalg.bilinear(G, E.coords, K) != -1:
            raise InvalidExceptionalSet(f"{L.describe(E)} does not pair to -1 with K")
    for i, E in enumerate(Es):
        for F in Es[i + 1:]:
            if linalg.bilinear(G, E.coords, F.coords) != 0:
                raise InvalidExceptionalSet("exceptional classes are not pairwise orthogonal")
    classes = {E.coords for E in Es}
    if len(classes) != len(Es):
        raise InvalidExceptionalSet("repeated exceptional class")
    for E in Es:
        if tuple(linalg.matvec(Phi.matrix, E.coords)) not in classes:
            raise NotPermuted(f"Phi does not map {L.describe(E)} into the set")


def contract(L: PicLattice, Phi: IsometryCandidate, Es: Sequence[ClassVector]) -> ContractionPlan:
    """Blow down a Phi-stable set of disjoint exceptional classes."""
    Phi.require_verified()
    Es = list(Es)
    _validate_set(L, Phi, Es)
    n, m = L.rank, len(Es)
    G = L.gram
    if m == 0:
        P = linalg.identity(n)
        return ContractionPlan([], L, Phi, P, linalg.identity(n), {"holds": True})
    B = linalg.integer_kernel([linalg.matvec(G, E.coords) for E in Es], n)
    full = linalg.transpose(B + [list(E.coords) for E in Es])
    if abs(linalg.det(full)) != 1:
        raise InvalidExceptionalSet("complement and exceptional classes do not span the lattice")
    Bt = linalg.transpose(B)

    def push(v):
        w = list(v)
        for E in Es:
            c = linalg.bilinear(G, v, E.coords)
            w = [a + c * b for a, b in zip(w, E.coords)]
        return linalg.solve_integer(Bt, w)

    P = linalg.transpose([push([int(i == j) for i in range(n)]) for j in range(n)])
    gram2 = linalg.gram_of(G, B)
    K2 = linalg.matvec(P, L.canonical_coords)
    anchors = [linalg.matvec(P, L.anchor_coords)]
    try:
        e0 = list(geometric_anchor(L).coords)
        anchors.append(linalg.matvec(P, e0))
    except LatticeError:
        e0 = None
    anchor2 = None
    for a in anchors:
        if linalg.bilinear(gram2, a, a) > 0 and linalg.bilinear(gram2, a, K2) < 0:
            anchor2 = a
            break
    if anchor2 is None:
        raise MinimizeError("no pushed-forward class can serve as anchor")  # pragma: no cover
    geo2 = None
    if e0 is not None:
        pe0 = linalg.matvec(P, e0)
        if linalg.bilinear(gram2, pe0, pe0) == 1 and linalg.bilinear(gram2, pe0, K2) == -3:
            geo2 = pe0
    labels2 = [f"R{i}" for i in range(len(B))]
    curves2 = []
    for c in L.curves:
        if all(linalg.bilinear(G, c.cls.coords, E.coords) == 0 for E in Es):
            curves2.append((c.label, linalg.matvec(P, c.cls.coords), c.self_intersection))
    L2 = make_lattice(gram2, K2, anchor2, labels2, curves2, geometric_anchor=geo2)
    Phi2 = linalg.matmul(linalg.matmul(P, Phi.matrix), Bt)
    kept = {label for label, _, _ in curves2}
    motions2 = [(a, b) for a, b in Phi.motions if a in kept and b in kept]
    if Phi.motions and not motions2:
        L2 = make_lattice(gram2, K2, anchor2, labels2, geometric_anchor=geo2)
    reduced = certify(L2, Phi2, motions2)
    pulled = linalg.matvec(Bt, K2)
    sumE = [sum(E.coords[i] for E in Es) for i in range(n)]
    identity = {
        "pullback_reduced_K": pulled,
        "sum_exceptional": sumE,
        "holds": [a + b for a, b in zip(pulled, sumE)] == list(L.canonical_coords),
    }
    if not identity["holds"]:
        raise MinimizeError("K != pullback K' + sum E")  # pragma: no cover
    return ContractionPlan(Es, L2, reduced, P, B, identity)


def is_minimal(L: PicLattice, Phi: IsometryCandidate, cap: int = DEFAULT_CAP) -> bool | str:
    """True iff no contractible exceptional class exists; 'Unsupported' outside the
    quadratic and exponential cases."""
    kind = classify(L, Phi).kind
    if kind not in (QUADRATIC, EXPONENTIAL):
        return UNSUPPORTED
    return not exceptional_set(L, Phi, cap)


def minimize(L: PicLattice, Phi: IsometryCandidate, cap: int = DEFAULT_CAP) -> ContractionPlan:
    return contract(L, Phi, exceptional_set(L, Phi, cap))


@dataclass
class HalphenReport:
    rank_is_10: bool
    k_squared_zero: bool
    anticanonical_equals_dominant: bool | None
    nef_versus_supplied_curves: str
    dynkin: str
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "rank_is_10": self.rank_is_10,
            "k_squared_zero": self.k_squared_zero,
            "anticanonical_equals_dominant": (
                "not-applicable" if self.anticanonical_equals_dominant is None else self.anticanonical_equals_dominant
            ),
            "nef_versus_supplied_curves": self.nef_versus_supplied_curves,
            "dynkin": self.dynkin,
            "notes": list(self.notes),
        }


def halphen_check(
    L: PicLattice,
    Phi: IsometryCandidate | None = None,
    components: Sequence[str] | None = None,
) -> HalphenReport:
    """Lattice-level checks for a generalized Halphen surface.

    ``components`` optionally names curves from the lattice curve list that
    make up an anticanonical divisor; their intersection matrix feeds the
    affine Dynkin recognizer.
    """
    from .dynkin import UNDETERMINED, dynkin_type

    G, K = L.gram, L.canonical_coords
    notes = []
    negK = [-x for x in K]
    equals = None
    if Phi is not None and classify(L, Phi).kind == QUADRATIC:
        equals = list(dominant_vector_quadratic(L, Phi).coords) == negK
    if L.curves:
        nef = "pass" if all(linalg.bilinear(G, negK, c.cls.coords) >= 0 for c in L.curves) else "fail"
    else:
        nef = "no-curve-data"
        notes.append("nef assumed: no curve data supplied")
    label = UNDETERMINED
    if components:
        cls = [L.curve(name).cls.coords for name in components]
        M = [[linalg.bilinear(G, a, b) for b in cls] for a in cls]
        label = dynkin_type(M).label
    return HalphenReport(len(G) == 10, linalg.bilinear(G, K, K) == 0, equals, nef, label, notes)
