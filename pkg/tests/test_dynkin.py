import random

import pytest

from picdyn.dynkin import UNDETERMINED, check_preconditions, dynkin_type, reference_diagram, reference_matrix
from picdyn import linalg

AFFINE = [("A", n) for n in (0, 1, 2, 3, 5, 8)] + [("D", n) for n in (4, 5, 8)] + [("E", n) for n in (6, 7, 8)]


def relabel(M, rng):
    n = len(M)
    p = list(range(n))
    rng.shuffle(p)
    return [[M[p[i]][p[j]] for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("kind, n", AFFINE)
def test_reference_has_positive_null_root(kind, n):
    M = reference_matrix(kind, n)
    _, _, marks = reference_diagram(kind, n)
    assert linalg.matvec(M, marks) == [0] * len(M)
    assert all(m > 0 for m in marks)


@pytest.mark.parametrize("kind, n", AFFINE)
def test_recognized_after_relabelling(kind, n):
    rng = random.Random(n)
    M = relabel(reference_matrix(kind, n), rng)
    assert dynkin_type(M).label == f"{kind}{n}^(1)"


def test_a0_single_nodal_curve():
    assert dynkin_type([[0]]).label == "A0^(1)"


def test_a1_notes_tangency():
    res = dynkin_type([[-2, 2], [2, -2]])
    assert res.label == "A1^(1)"
    assert res.notes


def test_e8_marks():
    _, _, marks = reference_diagram("E", 8)
    assert sorted(marks) == [1, 2, 2, 3, 3, 4, 4, 5, 6]


@pytest.mark.parametrize(
    "M",
    [
        [[-2, 1], [1, -2]],  # finite A2: definite
        [[-2, 1, 0], [1, -2, 2], [0, 2, -2]],  # not semidefinite
        [[-1]],
        [[-2, -1], [-1, -2]],
    ],
)
def test_invalid_configurations(M):
    res = dynkin_type(M)
    assert res.label == UNDETERMINED
    assert res.violations


def test_preconditions_asymmetric():
    assert check_preconditions([[-2, 1], [0, -2]]) == ["matrix is not symmetric"]
