"""Picard lattices Z^{1,r}: intersection form, canonical class, basis changes."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg


class LatticeError(ValueError):
    pass


class LatticeMismatch(LatticeError):
    pass


@dataclass(frozen=True)
class ClassVector:
    """Integer coordinates of a divisor class in a fixed lattice basis."""

    coords: tuple[int, ...]
    lattice_id: str

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "ClassVector"):
        if not isinstance(other, ClassVector):
            return NotImplemented
        if other.lattice_id != self.lattice_id:
            raise LatticeMismatch("class vectors belong to different lattices")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ClassVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.lattice_id)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ClassVector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.lattice_id)

    def __neg__(self):
        return ClassVector(tuple(-a for a in self.coords), self.lattice_id)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return ClassVector(tuple(k * a for a in self.coords), self.lattice_id)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class Curve:
    """User-supplied irreducible curve class with its declared self-intersection."""

    label: str
    cls: ClassVector
    self_intersection: int


def _lattice_id(gram, labels) -> str:
    h = hashlib.sha1(repr((tuple(map(tuple, gram)), tuple(labels))).encode())
    return h.hexdigest()[:12]


@dataclass(frozen=True, eq=False)
class PicLattice:
    """Unimodular lattice of signature (1, rank-1) with canonical and anchor classes.

    Construct through :func:`make_lattice`, :func:`make_geometric_lattice` or
    :func:`make_p1p1_lattice`; those validate the invariants.
    """

    gram: tuple[tuple[int, ...], ...]
    canonical_coords: tuple[int, ...]
    anchor_coords: tuple[int, ...]
    labels: tuple[str, ...]
    preset: str = "custom"
    blowups: int | None = None
    curves: tuple[Curve, ...] = ()
    bases: Mapping[str, tuple[tuple[int, ...], ...]] = field(default_factory=dict)
    geometric_anchor_coords: tuple[int, ...] | None = None
    lattice_id: str = ""

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def canonical(self) -> ClassVector:
        return ClassVector(self.canonical_coords, self.lattice_id)

    @property
    def anchor(self) -> ClassVector:
        return ClassVector(self.anchor_coords, self.lattice_id)

    def vector(self, coords: Iterable[int]) -> ClassVector:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise LatticeError(f"expected {self.rank} coordinates, got {len(coords)}")
        return ClassVector(coords, self.lattice_id)

    def basis_vector(self, key: int | str) -> ClassVector:
        i = self.labels.index(key) if isinstance(key, str) else key
        return self.vector(int(j == i) for j in range(self.rank))

    def combination(self, terms: Mapping[str, int]) -> ClassVector:
        """Class from a {label: coefficient} mapping."""
        coords = [0] * self.rank
        for label, c in terms.items():
            coords[self.labels.index(label)] += c
        return self.vector(coords)

    def curve(self, label: str) -> Curve:
        for c in self.curves:
            if c.label == label:
                return c
        raise KeyError(label)

    def pair(self, u: ClassVector, v: ClassVector) -> int:
        return pair(self, u, v)

    def describe(self, v: ClassVector) -> str:
        """Human-readable linear combination of basis labels."""
        parts = []
        for c, lab in zip(v.coords, self.labels):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            parts.append(f"{sign} {mag}{lab}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def pair(L: PicLattice, u: ClassVector, v: ClassVector) -> int:
    """Intersection number u^T G v."""
    for w in (u, v):
        if w.lattice_id != L.lattice_id:
            raise LatticeMismatch("vector does not belong to this lattice")
    return linalg.bilinear(L.gram, u.coords, v.coords)


def primitivize(L: PicLattice, v: ClassVector) -> ClassVector:
    if v.lattice_id != L.lattice_id:
        raise LatticeMismatch("vector does not belong to this lattice")
    if v.is_zero():
        raise LatticeError("zero vector cannot be primitivized")
    return L.vector(linalg.primitive(v.coords))


def make_lattice(
    gram: Sequence[Sequence[int]],
    canonical: Sequence[int],
    anchor: Sequence[int],
    labels: Sequence[str] | None = None,
    curves: Sequence[tuple[str, Sequence[int], int]] = (),
    bases: Mapping[str, Sequence[Sequence[int]]] | None = None,
    preset: str = "custom",
    blowups: int | None = None,
    geometric_anchor: Sequence[int] | None = None,
) -> PicLattice:
    """Validated lattice; curves are (label, coords, declared self-intersection)."""
    n = len(gram)
    if n == 0:
        raise LatticeError("rank must be positive")
    G = tuple(tuple(int(x) for x in row) for row in gram)
    if any(len(row) != n for row in G):
        raise LatticeError("gram matrix must be square")
    if any(G[i][j] != G[j][i] for i in range(n) for j in range(n)):
        raise LatticeError("gram matrix must be symmetric")
    d = linalg.det(G)
    if abs(d) != 1:
        raise LatticeError(f"gram matrix is not unimodular (det = {d})")
    pos, neg, zero = linalg.signature(G)
    if (pos, neg, zero) != (1, n - 1, 0):
        raise LatticeError(f"gram matrix has signature ({pos}, {neg}), expected (1, {n - 1})")
    if len(canonical) != n or len(anchor) != n:
        raise LatticeError("canonical and anchor must have rank coordinates")
    if labels is None:
        labels = [f"b{i}" for i in range(n)]
    labels = tuple(labels)
    if len(labels) != n or len(set(labels)) != n:
        raise LatticeError("labels must be distinct and match the rank")
    lid = _lattice_id(G, labels)
    K = tuple(int(x) for x in canonical)
    A = tuple(int(x) for x in anchor)
    if linalg.bilinear(G, A, A) <= 0:
        raise LatticeError("anchor must have positive self-intersection")
    if linalg.bilinear(G, A, K) >= 0:
        raise LatticeError("anchor must pair negatively with the canonical class")
    curve_objs = []
    for label, coords, self_int in curves:
        if len(coords) != n:
            raise LatticeError(f"curve {label}: wrong number of coordinates")
        cv = ClassVector(tuple(coords), lid)
        actual = linalg.bilinear(G, cv.coords, cv.coords)
        if actual != int(self_int):
            raise LatticeError(
                f"curve {label}: declared self-intersection {self_int} but class squares to {actual}"
            )
        curve_objs.append(Curve(label, cv, int(self_int)))
    basis_map = {}
    for name, cols in (bases or {}).items():
        cols = tuple(tuple(int(x) for x in col) for col in cols)
        if len(cols) != n or any(len(c) != n for c in cols):
            raise LatticeError(f"basis {name}: expected {n} vectors of length {n}")
        if abs(linalg.det(linalg.transpose(cols))) != 1:
            raise LatticeError(f"basis {name} is not unimodular")
        basis_map[name] = cols
    e0 = None
    if geometric_anchor is not None:
        e0 = tuple(int(x) for x in geometric_anchor)
        if len(e0) != n or linalg.bilinear(G, e0, e0) != 1 or linalg.bilinear(G, e0, K) != -3:
            raise LatticeError("geometric anchor must satisfy e0.e0 = 1 and e0.K = -3")
    return PicLattice(G, K, A, labels, preset, blowups, tuple(curve_objs), basis_map, e0, lid)


def make_geometric_lattice(r: int, labels: Sequence[str] | None = None) -> PicLattice:
    """Z^{1,r} with gram diag(1,-1,...,-1), K = -3e0 + e1 + ... + er, anchor e0."""
    if r < 0:
        raise LatticeError("number of blow-ups must be nonnegative")
    n = r + 1
    gram = [[0] * n for _ in range(n)]
    gram[0][0] = 1
    for i in range(1, n):
        gram[i][i] = -1
    K = [-3] + [1] * r
    A = [1] + [0] * r
    labels = labels or [f"e{i}" for i in range(n)]
    return make_lattice(gram, K, A, labels, preset="geometric", blowups=r)


def make_p1p1_lattice(b: int, labels: Sequence[str] | None = None, **kw) -> PicLattice:
    """Basis (Hx, Hy, E1..Eb) with Hx.Hy = 1, Hx^2 = Hy^2 = 0, Ei^2 = -1."""
    if b < 0:
        raise LatticeError("number of blow-ups must be nonnegative")
    n = b + 2
    gram = [[0] * n for _ in range(n)]
    gram[0][1] = gram[1][0] = 1
    for i in range(2, n):
        gram[i][i] = -1
    K = [-2, -2] + [1] * b
    A = [1, 1] + [0] * b
    labels = labels or ["Hx", "Hy"] + [f"E{i}" for i in range(1, b + 1)]
    return make_lattice(gram, K, A, labels, preset="p1p1", blowups=b, **kw)


def change_basis(L: PicLattice, M: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> PicLattice:
    """Lattice in the basis given by the columns of the unimodular matrix M.

    Columns of M are the new basis vectors written in the old coordinates,
    so old coordinates v correspond to new coordinates M^{-1} v.
    """
    if len(M) != L.rank or any(len(row) != L.rank for row in M):
        raise LatticeError("basis change must be a rank x rank matrix")
    if abs(linalg.det(M)) != 1:
        raise LatticeError("basis change is not unimodular")
    Minv = linalg.inverse_unimodular(M)
    gram = linalg.matmul(linalg.matmul(linalg.transpose(M), L.gram), M)
    K = linalg.matvec(Minv, L.canonical_coords)
    A = linalg.matvec(Minv, L.anchor_coords)
    labels = labels or [f"f{i}" for i in range(L.rank)]
    curves = [(c.label, linalg.matvec(Minv, c.cls.coords), c.self_intersection) for c in L.curves]
    bases = {
        name: linalg.transpose(linalg.matmul(Minv, linalg.transpose(cols)))
        for name, cols in L.bases.items()
    }
    try:
        e0 = linalg.matvec(Minv, geometric_anchor(L).coords)
    except LatticeError:
        e0 = None
    return make_lattice(gram, K, A, labels, curves, bases, geometric_anchor=e0)


def reexpress(L_old: PicLattice, L_new: PicLattice, M, v: ClassVector) -> ClassVector:
    """Coordinates of an old-basis vector in the basis change_basis(L_old, M) produced."""
    if v.lattice_id != L_old.lattice_id:
        raise LatticeMismatch("vector does not belong to the source lattice")
    return L_new.vector(linalg.solve_integer(M, v.coords))


def geometric_anchor(L: PicLattice) -> ClassVector:
    """A class e0 with e0^2 = 1 and e0.K = -3 usable as a geometric anchor.

    Geometric presets use the anchor itself.  For P1xP1 presets the formal
    choice Hx + Hy - Eb (last exceptional class) is returned; whether it is
    realized by an actual blow-down depends on point positions the lattice
    does not record.
    """
    if L.geometric_anchor_coords is not None:
        return L.vector(L.geometric_anchor_coords)
    A = L.anchor
    K = L.canonical
    if pair(L, A, A) == 1 and pair(L, A, K) == -3:
        return A
    if L.preset == "p1p1" and L.blowups:
        e0 = A - L.basis_vector(L.rank - 1)
    else:
        raise LatticeError("no geometric anchor available for this lattice")
    if pair(L, e0, e0) != 1 or pair(L, e0, K) != -3:
        raise LatticeError("constructed anchor is not a formal geometric class")
    return e0


def orthogonal_complement(L: PicLattice, vectors: Sequence[ClassVector]) -> list[list[int]]:
    """Z-basis of the sublattice of classes orthogonal to all given vectors."""
    rows = [linalg.matvec(L.gram, v.coords) for v in vectors]
    return linalg.integer_kernel(rows, L.rank)
