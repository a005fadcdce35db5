import random
import sys

import pytest

from picdyn import fixtures, linalg
from picdyn.isometry import certify, reflection
from picdyn.lattice import make_geometric_lattice

LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]  # constant term first


def coxeter_matrix(r: int):
    """Product of the reflections in e0-e1-e2-e3 and e_i - e_{i+1} (i = 1..r-1)."""
    L = make_geometric_lattice(r)
    n = r + 1
    roots = [[1, -1, -1, -1] + [0] * (n - 4)]
    roots += [[0] * i + [1, -1] + [0] * (n - i - 2) for i in range(1, r)]
    M = linalg.identity(n)
    for a in roots:
        M = linalg.matmul(M, reflection(L.gram, a))
    return L, M


def random_weyl_word(rng: random.Random, r: int, length: int):
    """Random product of basis permutations and quadratic reflections on Z^{1,r}.

    The reflection in e0 - ei - ej - ek is the standard quadratic transformation
    centred at three of the blown-up points.
    """
    L = make_geometric_lattice(r)
    n = r + 1
    M = linalg.identity(n)
    for _ in range(length):
        if rng.random() < 0.5:
            perm = list(range(1, n))
            rng.shuffle(perm)
            P = [[0] * n for _ in range(n)]
            P[0][0] = 1
            for i, j in enumerate(perm, start=1):
                P[j][i] = 1
            G = P
        else:
            i, j, k = rng.sample(range(1, n), 3)
            alpha = [0] * n
            alpha[0] = 1
            alpha[i] = alpha[j] = alpha[k] = -1
            G = reflection(L.gram, alpha)
        M = linalg.matmul(M, G)
    return L, certify(L, M)


@pytest.fixture(scope="session")
def ex1():
    L = fixtures.load_lattice("paper-ex1")
    cand = fixtures.load_isometry("paper-ex1", L)
    return L, certify(L, cand.matrix, cand.motions)


@pytest.fixture(scope="session")
def coxeter10():
    L, M = coxeter_matrix(10)
    return L, certify(L, M)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
