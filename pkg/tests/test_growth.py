import math
from fractions import Fraction

import flint
import pytest

from picdyn import growth, linalg
from picdyn.growth import (
    BOUNDED,
    EXPONENTIAL,
    QUADRATIC,
    NotExponential,
    NotQuadratic,
    classify,
    degree_sequence,
    exp_leading_coefficient,
    jordan_chain,
    p1p1_degree_sequence,
    quadratic_coefficient,
)
from picdyn.isometry import certify
from picdyn.lattice import make_geometric_lattice, pair

from conftest import LEHMER, coxeter_matrix


def test_ex1_is_quadratic(ex1):
    L, Phi = ex1
    rep = classify(L, Phi)
    assert rep.kind == QUADRATIC
    assert rep.entropy == 0.0
    assert rep.jordan_summary[0] == rep.jordan_summary[1] + 1 == rep.jordan_summary[2] + 2


def test_ex1_coefficient_matches_second_differences(ex1):
    # the periodic part has period dividing lcm(2, 3, 5) = 30, so
    # d(n+30) - 2 d(n) + d(n-30) = 2 * 30^2 * c exactly
    L, Phi = ex1
    c = quadratic_coefficient(L, Phi, L.anchor)
    d = degree_sequence(L, Phi, L.anchor, L.anchor, 120)
    for n in range(30, 90):
        assert d[n + 30] - 2 * d[n] + d[n - 30] == 1800 * c
    assert c == Fraction(3, 5)


def test_ex1_p1p1_degrees(ex1):
    L, Phi = ex1
    assert p1p1_degree_sequence(L, Phi, 6) == [1, 2, 3, 5, 7, 10, 14]


def test_coefficient_independent_of_chain(ex1):
    L, Phi = ex1
    values = {quadratic_coefficient(L, Phi, L.anchor, k) for k in range(4)}
    assert len(values) == 1


def test_jordan_chain_relations(ex1):
    L, Phi = ex1
    v1, v2, v3 = jordan_chain(L, Phi)
    M = Phi.matrix
    n = len(M)
    N = [[M[i][j] - (i == j) for j in range(n)] for i in range(n)]
    assert linalg.matvec(N, v3) == v2
    assert linalg.matvec(N, v2) == v1
    assert linalg.bilinear(L.gram, v1, v1) == 0
    assert linalg.bilinear(L.gram, v1, L.canonical_coords) == 0


def test_scaled_class_scales_coefficient(ex1):
    L, Phi = ex1
    c = quadratic_coefficient(L, Phi, L.anchor)
    assert quadratic_coefficient(L, Phi, L.anchor * 2) == 4 * c


def test_identity_is_bounded():
    L = make_geometric_lattice(9)
    Phi = certify(L, linalg.identity(10))
    rep = classify(L, Phi)
    assert rep.kind == BOUNDED
    with pytest.raises(NotQuadratic):
        quadratic_coefficient(L, Phi, L.anchor)
    with pytest.raises(NotExponential):
        exp_leading_coefficient(L, Phi, L.anchor)


def test_coxeter_is_salem(coxeter10):
    L, Phi = coxeter10
    rep = classify(L, Phi)
    assert rep.kind == EXPONENTIAL
    assert rep.number_type == "Salem"
    assert rep.lam.min_poly == flint.fmpz_poly(LEHMER)
    assert 1.176 < float(rep.lam) < 1.177
    assert rep.entropy == pytest.approx(math.log(1.17628081825991750654), abs=1e-12)


def test_coxeter_leading_coefficient(coxeter10):
    L, Phi = coxeter10
    coef = exp_leading_coefficient(L, Phi, L.anchor)
    lam = float(classify(L, Phi).lam)
    d = degree_sequence(L, Phi, L.anchor, L.anchor, 200)
    # the remaining eigenvalues lie on the unit circle apart from 1/lambda
    assert d[200] / lam**200 == pytest.approx(float(coef), rel=1e-3)
    assert coef.lo <= coef.hi


def test_rank_below_ten_is_bounded():
    # Coxeter element of the finite E8 group on Z^{1,8}
    L, M = coxeter_matrix(8)
    assert classify(L, certify(L, M)).kind == BOUNDED


def test_affine_coxeter_is_quadratic():
    L, M = coxeter_matrix(9)
    Phi = certify(L, M)
    assert classify(L, Phi).kind == QUADRATIC
    v1, _, _ = jordan_chain(L, Phi)
    # the dominant direction is proportional to -K on Z^{1,9}
    K = L.canonical_coords
    assert linalg.rank([v1, list(K)]) == 1


def test_report_dict(ex1):
    L, Phi = ex1
    d = classify(L, Phi).as_dict()
    assert d["kind"] == "Quadratic"
    assert d["entropy"] == "0"
    assert all(isinstance(c, str) for c in d["char_poly"])


def test_degree_sequence_matches_pairing(ex1):
    L, Phi = ex1
    v = L.anchor
    seq = degree_sequence(L, Phi, v, v, 3)
    w = v
    for n in range(4):
        assert seq[n] == pair(L, w, v)
        w = Phi.apply(w)


def test_growth_module_exports():
    assert growth.NOT_REALIZABLE == "NotRealizable"


def test_identity_r10_period_one():
    L = make_geometric_lattice(10)
    rep = classify(L, certify(L, linalg.identity(11)))
    assert rep.kind == BOUNDED and rep.period == 1


def test_identity_degree_sequence():
    L = make_geometric_lattice(4)
    Phi = certify(L, linalg.identity(5))
    assert degree_sequence(L, Phi, L.anchor, L.anchor, 5) == [1] * 6


def test_ex1_degrees_within_linear_band(ex1):
    L, Phi = ex1
    c = quadratic_coefficient(L, Phi, L.anchor)
    d = degree_sequence(L, Phi, L.anchor, L.anchor, 12)
    # the error term of a size-3 Jordan block is at most linear
    assert max(abs(d[n] - c * n * n) / n for n in range(1, 13)) <= 3
