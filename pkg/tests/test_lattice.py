import pytest

from picdyn import linalg
from picdyn.lattice import (
    LatticeError,
    LatticeMismatch,
    change_basis,
    geometric_anchor,
    make_geometric_lattice,
    make_lattice,
    make_p1p1_lattice,
    orthogonal_complement,
    pair,
    primitivize,
    reexpress,
)

EX1_LABELS = ["Hx", "Hy"] + [f"C{i}" for i in range(1, 7)] + ["Ct1", "Ct2", "Ct3"]


def K2(L):
    return pair(L, L.canonical, L.canonical)


@pytest.mark.parametrize("r, k2", [(0, 9), (9, 0), (10, -1)])
def test_geometric_canonical_square(r, k2):
    L = make_geometric_lattice(r)
    assert L.rank == r + 1
    assert K2(L) == k2


def test_geometric_pairing_table():
    L = make_geometric_lattice(2)
    e0, e1, e2 = (L.basis_vector(i) for i in range(3))
    assert pair(L, e0, e0) == 1
    assert pair(L, e1, e1) == -1
    assert pair(L, e1, e2) == 0
    assert pair(L, L.anchor, L.canonical) == -3


@pytest.mark.parametrize("b, rank, k2", [(8, 10, 0), (9, 11, -1)])
def test_p1p1_preset(b, rank, k2):
    L = make_p1p1_lattice(b)
    assert L.rank == rank
    assert K2(L) == k2
    assert list(L.anchor) == [1, 1] + [0] * b


def test_dominant_vector_is_isotropic():
    L = make_p1p1_lattice(9, EX1_LABELS)
    v1 = L.combination({"Hx": 3, "Hy": 3, **{f"C{i}": -1 for i in range(1, 7)}, **{f"Ct{i}": -2 for i in range(1, 4)}})
    assert pair(L, v1, v1) == 0
    assert pair(L, v1, L.canonical) == 0


def d_basis(L):
    def c(d):
        return [d.get(lab, 0) for lab in EX1_LABELS]

    cols = [c({"Hx": 1, "C2": -1, "C4": -1, "C6": -1}), c({"Hy": 1, "C1": -1, "C3": -1, "C5": -1})]
    cols += [c({lab: 1}) for lab in EX1_LABELS[2:]]
    return linalg.transpose(cols)


def test_change_to_d_basis():
    L = make_p1p1_lattice(9, EX1_LABELS)
    M = d_basis(L)
    L2 = change_basis(L, M, ["D1", "D2"] + EX1_LABELS[2:])
    assert L2.gram[0][0] == -3
    assert L2.gram[0][1] == 1
    # adjunction for the rational (-3)-curves: K.D = -2 - D^2 = 1
    for name in ("D1", "D2"):
        assert pair(L2, L2.canonical, L2.basis_vector(name)) == 1
    assert K2(L2) == -1
    back = change_basis(L2, linalg.inverse_unimodular(M), EX1_LABELS)
    assert back.gram == L.gram
    assert back.canonical_coords == L.canonical_coords


def test_change_basis_identity():
    L = make_geometric_lattice(4)
    L2 = change_basis(L, linalg.identity(5), L.labels)
    assert L2.gram == L.gram and L2.canonical_coords == L.canonical_coords


def test_reexpress_preserves_pairing():
    L = make_p1p1_lattice(9, EX1_LABELS)
    M = d_basis(L)
    L2 = change_basis(L, M)
    u = L.combination({"Hx": 1, "C3": -1})
    v = L.combination({"Hy": 2, "Ct1": -1})
    u2, v2 = reexpress(L, L2, M, u), reexpress(L, L2, M, v)
    assert pair(L2, u2, v2) == pair(L, u, v)


def test_non_unimodular_basis_rejected():
    L = make_geometric_lattice(2)
    with pytest.raises(LatticeError):
        change_basis(L, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.mark.parametrize(
    "v, expected",
    [((2, -4, 6), (1, -2, 3)), ((1, 0, 0), (1, 0, 0))],
)
def test_primitivize(v, expected):
    L = make_geometric_lattice(2)
    assert primitivize(L, L.vector(v)).coords == expected


def test_primitivize_keeps_sign():
    L = make_geometric_lattice(1)
    assert primitivize(L, L.vector((-3, -3))).coords == (-1, -1)


def test_primitivize_zero():
    L = make_geometric_lattice(1)
    with pytest.raises(LatticeError):
        primitivize(L, L.vector((0, 0)))


def test_mismatched_lattices():
    A, B = make_geometric_lattice(2), make_p1p1_lattice(1)
    with pytest.raises(LatticeMismatch):
        pair(A, A.anchor, B.anchor)
    with pytest.raises(LatticeMismatch):
        A.anchor + B.anchor


@pytest.mark.parametrize(
    "gram, message",
    [
        ([[1, 0], [0, 1]], "signature"),
        ([[2, 0], [0, -1]], "unimodular"),
        ([[1, 1], [0, -1]], "symmetric"),
    ],
)
def test_invalid_gram(gram, message):
    with pytest.raises(LatticeError, match=message):
        make_lattice(gram, [-3, 1], [1, 0])


def test_anchor_conditions():
    G = make_geometric_lattice(1).gram
    with pytest.raises(LatticeError, match="anchor"):
        make_lattice(G, [-3, 1], [0, 1])


def test_curve_self_intersection_checked():
    G = make_geometric_lattice(1).gram
    with pytest.raises(LatticeError, match="declared"):
        make_lattice(G, [-3, 1], [1, 0], curves=[("E", [0, 1], -2)])


def test_geometric_anchor_for_p1p1():
    L = make_p1p1_lattice(3)
    e0 = geometric_anchor(L)
    assert pair(L, e0, e0) == 1
    assert pair(L, e0, L.canonical) == -3
    with pytest.raises(LatticeError):
        geometric_anchor(make_p1p1_lattice(0))


def test_orthogonal_complement():
    L = make_geometric_lattice(3)
    B = orthogonal_complement(L, [L.canonical])
    assert len(B) == 3
    for b in B:
        assert linalg.bilinear(L.gram, b, L.canonical_coords) == 0
    # the complement of K in Z^{1,3} is the A2 + A1 root lattice: determinant 6 up to sign
    assert abs(linalg.det(linalg.gram_of(L.gram, B))) == 6


def test_describe():
    L = make_p1p1_lattice(9, EX1_LABELS)
    v = L.combination({"Hx": 1, "Hy": 1, "Ct1": -1, "Ct2": -1, "Ct3": -1})
    assert L.describe(v) == "Hx + Hy - Ct1 - Ct2 - Ct3"
    assert L.describe(-L.anchor) == "-Hx - Hy"
