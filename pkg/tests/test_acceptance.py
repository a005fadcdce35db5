"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary.  ``python3 tests/test_acceptance.py`` prints them directly.
"""

import random
import time

import flint
import networkx as nx
import pytest

from picdyn import fixtures, linalg
from picdyn.algebraic import NumberType, classify_number
from picdyn.dynkin import dynkin_type, reference_matrix
from picdyn.growth import BOUNDED, EXPONENTIAL, NOT_REALIZABLE, QUADRATIC, classify, p1p1_degree_sequence
from picdyn.io import verify_document
from picdyn.isometry import certify, char_poly
from picdyn.lattice import change_basis
from picdyn.minimize import dominant_vector_quadratic, exceptional_set, is_minimal, minimize
from picdyn.symbolic.laurent import CONFINED, Finite, Infinity, confine_test
from picdyn.symbolic.maps import iterate_degree_sequence

from conftest import random_weyl_word

RESULTS: list[str] = []

# pinned limits and tolerances
LIMIT_1, LIMIT_2, LIMIT_3, LIMIT_4, LIMIT_5, LIMIT_6 = 1.0, 120.0, 5.0, 30.0, 180.0, 300.0
GOLDEN = (3 + 5**0.5) / 2
RATIO_TOL = 0.05
SALEM_WINDOW = (1.17, 1.18)
PROPERTY_SAMPLES = 120

# patterns as printed in the source (bare infinity means a simple pole)
EX1_AT_3A = "{3a, ∞¹, a, ∞¹, -a, ∞¹, -3a}"
EX1_AT_MINUS_3A = "{-3a, -a, a, 3a}"
EX21_FIRST = ["3a_n+2α", "∞", "a_n", "∞", "-a_n-6α", "∞", "-3a_n-16α"]
EX21_SECOND = ["-3a_n+2α", "-a_n+3α", "a_n+6α", "3a_n+11α"]


def report(n: int, ok: bool, what: str, elapsed: float | None = None, limit: float | None = None) -> None:
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s"
        timing += f" < {limit:g}s]" if limit is not None else "]"
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}{timing}"
    RESULTS.append(line)
    print(line)


def test_criterion_1_ex1_growth():
    t = time.perf_counter()
    L = fixtures.load_lattice("paper-ex1")
    cand = fixtures.load_isometry("paper-ex1", L)
    verified = verify_document(L, cand).passed
    Phi = certify(L, cand.matrix, cand.motions)
    rep = classify(L, Phi)
    P = char_poly(Phi)
    q, r = divmod(P, flint.fmpz_poly([-1, 3, -3, 1]))
    cyclotomic_rest = r == 0 and all(f.is_cyclotomic() for f, _ in q.factor()[1])
    elapsed = time.perf_counter() - t
    ok = verified and rep.kind == QUADRATIC and rep.entropy == 0.0 and cyclotomic_rest and elapsed < LIMIT_1
    report(1, ok, f"verify={verified}, growth={rep.kind}, entropy={rep.entropy}, (t-1)^3 | char_poly with cyclotomic rest={cyclotomic_rest}", elapsed, LIMIT_1)
    assert ok


def test_criterion_2_oracle_equivalence():
    t = time.perf_counter()
    L = fixtures.load_lattice("paper-ex1")
    cand = fixtures.load_isometry("paper-ex1", L)
    Phi = certify(L, cand.matrix, cand.motions)
    lattice_seq = p1p1_degree_sequence(L, Phi, 6)[1:]
    symbolic_seq = iterate_degree_sequence(fixtures.load_mapping("paper-ex1"), 0, 6, "p1p1")
    elapsed = time.perf_counter() - t
    ok = lattice_seq == symbolic_seq and elapsed < LIMIT_2
    report(2, ok, f"lattice {lattice_seq} == symbolic {symbolic_seq}", elapsed, LIMIT_2)
    assert ok


def test_criterion_3_minimization():
    t = time.perf_counter()
    L = fixtures.load_lattice("paper-ex1")
    cand = fixtures.load_isometry("paper-ex1", L)
    Phi = certify(L, cand.matrix, cand.motions)
    plan = minimize(L, Phi)
    labels = [L.describe(E) for E in plan.exceptional_classes]
    L2 = plan.reduced_lattice
    k2 = L2.pair(L2.canonical, L2.canonical)
    pushed = plan.push(dominant_vector_quadratic(L, Phi)) == -L2.canonical
    minimal = is_minimal(L2, plan.reduced_isometry)
    elapsed = time.perf_counter() - t
    ok = (
        labels == ["Hx + Hy - Ct1 - Ct2 - Ct3"]
        and L2.rank == 10
        and k2 == 0
        and pushed
        and minimal is True
        and elapsed < LIMIT_3
    )
    report(3, ok, f"classes={labels}, rank={L2.rank}, K'^2={k2}, -K'=push(v1): {pushed}, is_minimal={minimal}", elapsed, LIMIT_3)
    assert ok


def _matches_bare(pattern, expected):
    """Compare with a listing that writes simple poles as a bare infinity."""
    if len(pattern.entries) != len(expected):
        return False
    for e, want in zip(pattern.entries, expected):
        if want == "∞":
            if e != Infinity(1):
                return False
        elif not isinstance(e, Finite) or e.render("math") != want:
            return False
    return True


def test_criterion_4_confinement():
    t = time.perf_counter()
    ex1 = fixtures.load_mapping("paper-ex1")
    ex21 = fixtures.load_mapping("paper-ex2.1")
    p = confine_test(ex1, "3a")
    q = confine_test(ex1, "-3a")
    r = confine_test(ex21, "3a_n + 2alpha")
    s = confine_test(ex21, "-3a_n + 2alpha")
    elapsed = time.perf_counter() - t
    exit_ok = p.exit_expression is not None and str(p.exit_expression) == "-w"
    checks = [
        p.verdict == CONFINED and p.steps == 7 and p.render() == EX1_AT_3A and exit_ok,
        q.verdict == CONFINED and q.render() == EX1_AT_MINUS_3A,
        r.verdict == CONFINED and _matches_bare(r, EX21_FIRST),
        s.verdict == CONFINED and _matches_bare(s, EX21_SECOND),
    ]
    ok = all(checks) and elapsed < LIMIT_4
    report(
        4,
        ok,
        f"3a -> {p.render()} in {p.steps} steps exit {p.exit_expression}; -3a -> {q.render()}; "
        f"ex2.1 -> {r.render()} and {s.render()}",
        elapsed,
        LIMIT_4,
    )
    assert ok


@pytest.fixture(scope="module")
def hv_degrees():
    t = time.perf_counter()
    seq = iterate_degree_sequence(fixtures.load_mapping("hietarinta-viallet"), 0, 6, "p2")
    return seq, time.perf_counter() - t


def test_criterion_5_exponential_pipeline(hv_degrees):
    seq, hv_time = hv_degrees
    t = time.perf_counter()
    ratios = [b / a for a, b in zip(seq, seq[1:])]
    final = ratios[-1]
    ratio_ok = abs(final - GOLDEN) / GOLDEN < RATIO_TOL
    tag = classify_number(flint.fmpz_poly([1, -3, 1]))
    L, Phi = _coxeter()
    rep = classify(L, Phi)
    lam_ok = rep.kind == EXPONENTIAL and rep.number_type == NumberType.SALEM.value
    lam_ok = lam_ok and rep.lam > SALEM_WINDOW[0] and rep.lam < SALEM_WINDOW[1]
    empty = exceptional_set(L, Phi) == []
    elapsed = hv_time + time.perf_counter() - t
    ok = ratio_ok and tag == NumberType.RECIPROCAL_QUADRATIC and lam_ok and empty and elapsed < LIMIT_5
    report(
        5,
        ok,
        f"HV p2 degrees {seq}, ratio d6/d5={final:.4f} vs {GOLDEN:.4f} (tol {RATIO_TOL:.0%}); "
        f"t^2-3t+1 -> {tag.value}; coxeter-e10 {rep.kind} {rep.number_type} lambda={float(rep.lam):.6f}, "
        f"exceptional set empty={empty}",
        elapsed,
        LIMIT_5,
    )
    assert ok


@pytest.mark.xfail(strict=True, reason="d2/d1 = d3/d2 = 3 differ from 2.618 by 14.6%; ratios only approach the limit")
def test_criterion_5_every_ratio_reading(hv_degrees):
    seq, _ = hv_degrees
    ratios = [b / a for a, b in zip(seq, seq[1:])]
    worst = max(abs(r - GOLDEN) / GOLDEN for r in ratios)
    verdict = "PASS" if worst < RATIO_TOL else "FAIL"
    line = f"INFO criterion 5 (every-ratio reading): ratios {[round(r, 4) for r in ratios]}, worst deviation {worst:.1%}: {verdict}"
    RESULTS.append(line)
    print(line)
    assert worst < RATIO_TOL


def _coxeter():
    L = fixtures.load_lattice("coxeter-e10")
    cand = fixtures.load_isometry("coxeter-e10", L)
    return L, certify(L, cand.matrix)


def _permuted(L, Phi, rng):
    n = L.rank
    perm = [0] + rng.sample(range(1, n), n - 1)
    M = [[int(perm[j] == i) for j in range(n)] for i in range(n)]
    L2 = change_basis(L, M)
    return L2, certify(L2, linalg.matmul(linalg.matmul(linalg.inverse_unimodular(M), Phi.matrix), M)), M


def test_criterion_6_property_suites():
    t = time.perf_counter()
    rng = random.Random(20240601)
    kinds = {BOUNDED, QUADRATIC, EXPONENTIAL, NOT_REALIZABLE}
    failures = {k: 0 for k in "abcde"}
    counts: dict[str, int] = {}
    for _ in range(PROPERTY_SAMPLES):
        L, Phi = random_weyl_word(rng, rng.randint(7, 13), rng.randint(1, 12))
        rep = classify(L, Phi)
        counts[rep.kind] = counts.get(rep.kind, 0) + 1
        failures["a"] += rep.kind not in kinds
        failures["b"] += (L.rank < 10 and rep.kind in (QUADRATIC, EXPONENTIAL)) or (L.rank == 10 and rep.kind == EXPONENTIAL)
        failures["c"] += classify(L, Phi.inverse()).kind != rep.kind
        if rep.kind == QUADRATIC:
            v1 = dominant_vector_quadratic(L, Phi)
            failures["d"] += L.pair(v1, v1) != 0 or L.pair(v1, L.canonical) != 0
        if rep.kind in (QUADRATIC, EXPONENTIAL):
            Es = exceptional_set(L, Phi)
            ortho = all(L.pair(E, F) == 0 for i, E in enumerate(Es) for F in Es[i + 1:])
            L2, Phi2, M = _permuted(L, Phi, rng)
            back = {tuple(linalg.matvec(M, E.coords)) for E in exceptional_set(L2, Phi2)}
            failures["e"] += not ortho or back != {E.coords for E in Es}
    elapsed = time.perf_counter() - t
    ok = not any(failures.values()) and elapsed < LIMIT_6
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    report(6, ok, f"{PROPERTY_SAMPLES} isometries ({summary}); failures {failures}", elapsed, LIMIT_6)
    assert ok


# affine Cartan data written out independently of the package's tables
A0_1 = [[0]]
A2_1 = [[-2, 1, 1], [1, -2, 1], [1, 1, -2]]
E8_1_EDGES = [(0, 8), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
E8_1_MARKS = [1, 2, 3, 4, 6, 5, 4, 3, 2]


def _e8_1():
    M = [[-2 if i == j else 0 for j in range(9)] for i in range(9)]
    for a, b in E8_1_EDGES:
        M[a][b] = M[b][a] = 1
    return M


def _same_up_to_relabelling(A, B):
    def graph(M):
        g = nx.Graph()
        for i, row in enumerate(M):
            g.add_node(i, d=row[i])
            g.add_edges_from((i, j, {"w": w}) for j, w in enumerate(row) if j > i and w)
        return g

    return nx.is_isomorphic(
        graph(A), graph(B), node_match=lambda a, b: a["d"] == b["d"], edge_match=lambda a, b: a["w"] == b["w"]
    )


def test_criterion_7_dynkin_labels():
    E8 = _e8_1()
    null_ok = linalg.matvec(E8, E8_1_MARKS) == [0] * 9
    cases = [("A0^(1)", A0_1, ("A", 0)), ("A2^(1)", A2_1, ("A", 2)), ("E8^(1)", E8, ("E", 8))]
    labels = []
    ok = null_ok
    for want, M, ref in cases:
        got = dynkin_type(M).label
        labels.append(got)
        ok = ok and got == want and _same_up_to_relabelling(reference_matrix(*ref), M)
    report(7, ok, f"labels {labels}; stored data agrees; E8^(1) null root verified={null_ok} "
                  "(full classification tables are covered by the property suites, not reproduced)")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
