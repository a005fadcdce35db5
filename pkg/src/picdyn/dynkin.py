"""Affine Dynkin type of an anticanonical component configuration."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import networkx as nx

from . import linalg

UNDETERMINED = "Undetermined"


@dataclass
class DynkinResult:
    label: str
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"label": self.label, "violations": list(self.violations), "notes": list(self.notes)}


@lru_cache(maxsize=1)
def _stored() -> dict:
    text = resources.files("picdyn").joinpath("data/affine_dynkin.json").read_text()
    return json.loads(text)["diagrams"]


def reference_diagram(kind: str, n: int | None = None) -> tuple[int, list[tuple[int, int, int]], list[int]]:
    """(node count, weighted edges, marks) of the affine diagram X_n^(1)."""
    if kind == "A":
        if n == 0:
            return 1, [], [1]
        if n == 1:
            return 2, [(0, 1, 2)], [1, 1]
        return n + 1, [(i, (i + 1) % (n + 1), 1) for i in range(n + 1)], [1] * (n + 1)
    if kind == "D":
        # chain 1..n-3; leaves 0 and n-2 on its first node, n-1 and n on its last
        chain = list(range(1, n - 2))
        nodes = n + 1
        edges = [(chain[i], chain[i + 1], 1) for i in range(len(chain) - 1)]
        first, last = chain[0], chain[-1]
        edges += [(0, first, 1), (n - 2, first, 1), (n - 1, last, 1), (n, last, 1)]
        marks = [0] * nodes
        for v in chain:
            marks[v] = 2
        for v in (0, n - 2, n - 1, n):
            marks[v] = 1
        return nodes, edges, marks
    d = _stored()[f"{kind}{n}"]
    return d["nodes"], [(a, b, 1) for a, b in d["edges"]], list(d["marks"])


def reference_matrix(kind: str, n: int | None = None) -> list[list[int]]:
    """Negated affine Cartan matrix (components' intersection matrix)."""
    size, edges, _ = reference_diagram(kind, n)
    if kind == "A" and n == 0:
        return [[0]]
    M = [[-2 if i == j else 0 for j in range(size)] for i in range(size)]
    for a, b, w in edges:
        M[a][b] += w
        M[b][a] += w
    return M


def _graph(M) -> nx.Graph:
    g = nx.Graph()
    n = len(M)
    for i in range(n):
        g.add_node(i, self_int=M[i][i])
    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j]:
                g.add_edge(i, j, weight=M[i][j])
    return g


def _candidates(size: int) -> list[tuple[str, str, int]]:
    out = []
    if size == 1:
        out.append(("A", "A0^(1)", 0))
    if size == 2:
        out.append(("A", "A1^(1)", 1))
    if size >= 3:
        out.append(("A", f"A{size - 1}^(1)", size - 1))
    if size >= 5:
        out.append(("D", f"D{size - 1}^(1)", size - 1))
    for k in (6, 7, 8):
        if size == k + 1:
            out.append(("E", f"E{k}^(1)", k))
    return out


def check_preconditions(M) -> list[str]:
    n = len(M)
    problems = []
    if n == 0 or any(len(r) != n for r in M):
        return ["matrix must be square and nonempty"]
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(n)):
        problems.append("matrix is not symmetric")
        return problems
    if any(M[i][i] not in (0, -2) for i in range(n)):
        problems.append("diagonal entries must be 0 or -2")
    if n > 1 and any(M[i][i] == 0 for i in range(n)):
        problems.append("a self-intersection 0 component is only allowed alone")
    if any(M[i][j] < 0 for i in range(n) for j in range(n) if i != j):
        problems.append("distinct components must meet nonnegatively")
    pos, neg, zero = linalg.signature(M)
    if pos:
        problems.append("matrix is not negative semidefinite")
    if zero != 1:
        problems.append(f"kernel has dimension {zero}, expected 1")
    else:
        ker = linalg.nullspace(M)[0]
        if all(x < 0 for x in ker):
            ker = [-x for x in ker]
        if not all(x > 0 for x in ker):
            problems.append("kernel is not spanned by a positive vector")
    return problems


def dynkin_type(M) -> DynkinResult:
    """Affine type label matched up to simultaneous row/column permutation."""
    M = [[int(x) for x in row] for row in M]
    problems = check_preconditions(M)
    if problems:
        return DynkinResult(UNDETERMINED, problems)
    g = _graph(M)
    for kind, label, n in _candidates(len(M)):
        R = reference_matrix(kind, n)
        h = _graph(R)
        if nx.is_isomorphic(
            g,
            h,
            node_match=lambda a, b: a["self_int"] == b["self_int"],
            edge_match=lambda a, b: a["weight"] == b["weight"],
        ):
            notes = []
            if label == "A1^(1)":
                notes.append("pairing 2: two transversal points or one tangency are indistinguishable")
            return DynkinResult(label, [], notes)
    return DynkinResult(UNDETERMINED, [], ["no affine diagram matches"])
