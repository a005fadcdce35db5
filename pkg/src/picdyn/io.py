"""JSON documents for lattices, isometries, mappings and component matrices.

Integers are written as decimal strings.  Readers accept strings or JSON
integers and report malformed input with a line number (syntax) or a field
path (schema).
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any

from . import linalg
from .isometry import IsometryCandidate, verify
from .lattice import LatticeError, PicLattice, make_geometric_lattice, make_lattice, make_p1p1_lattice
from .symbolic.maps import ParamRationalMap, make_map
from .symbolic.parser import ParseError

PRESETS = ("geometric", "p1p1", "custom")


class DocumentError(ValueError):
    """Malformed document; ``where`` is a field path or ``line N, column M``."""

    def __init__(self, where: str, message: str, source: str | None = None):
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{where}: {message}")
        self.where = where
        self.message = message
        self.source = source


@contextmanager
def _sourced(source: str | None):
    """Attach the document path to errors raised inside the block."""
    try:
        yield
    except DocumentError as exc:
        if source and exc.source is None:
            raise DocumentError(exc.where, exc.message, source) from None
        raise


# ---------------------------------------------------------------- primitives


def dumps(doc: Any) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str | None = None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg, source) from None


def load_file(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError("file", exc.strerror or str(exc), str(p)) from None
    return loads(text, str(p))


def int_str(n: int) -> str:
    return str(int(n))


def vec_str(v) -> list[str]:
    return [str(int(x)) for x in v]


def mat_str(M) -> list[list[str]]:
    return [vec_str(row) for row in M]


def _int(value, where: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(where, "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        s = value.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit() and body.isascii():
            return int(s)
    raise DocumentError(where, f"expected a decimal integer string, got {value!r}")


def _vec(value, where: str, length: int | None = None) -> list[int]:
    if not isinstance(value, list):
        raise DocumentError(where, "expected a list")
    out = [_int(x, f"{where}[{i}]") for i, x in enumerate(value)]
    if length is not None and len(out) != length:
        raise DocumentError(where, f"expected {length} entries, got {len(out)}")
    return out


def _mat(value, where: str, size: int | None = None) -> list[list[int]]:
    if not isinstance(value, list) or not value:
        raise DocumentError(where, "expected a nonempty list of rows")
    n = size if size is not None else len(value)
    if len(value) != n:
        raise DocumentError(where, f"expected {n} rows, got {len(value)}")
    return [_vec(row, f"{where}[{i}]", n) for i, row in enumerate(value)]


def _obj(doc, where: str = "document") -> dict:
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected a JSON object")
    return doc


def _str_list(value, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(where, "expected a list of strings")
    return list(value)


# ---------------------------------------------------------------- lattices


def lattice_to_doc(L: PicLattice) -> dict:
    doc: dict = {
        "rank": int_str(L.rank),
        "preset": L.preset,
        "labels": list(L.labels),
        "canonical": vec_str(L.canonical_coords),
        "anchor": vec_str(L.anchor_coords),
    }
    if L.preset in ("geometric", "p1p1"):
        doc["blowups"] = int_str(L.blowups)
    else:
        doc["gram"] = mat_str(L.gram)
    if L.curves:
        doc["curves"] = [
            {"label": c.label, "class": vec_str(c.cls.coords), "self_intersection": int_str(c.self_intersection)}
            for c in L.curves
        ]
    if L.bases:
        doc["bases"] = {name: mat_str(cols) for name, cols in L.bases.items()}
    if L.geometric_anchor_coords is not None and L.preset == "custom":
        doc["geometric_anchor"] = vec_str(L.geometric_anchor_coords)
    return doc


def lattice_from_doc(doc, source: str | None = None) -> PicLattice:
    with _sourced(source):
        return _lattice_from_doc(_obj(doc))


def _lattice_from_doc(doc: dict) -> PicLattice:
    preset = doc.get("preset", "custom")
    if preset not in PRESETS:
        raise DocumentError("preset", f"expected one of {', '.join(PRESETS)}")
    if "rank" not in doc:
        raise DocumentError("rank", "missing field")
    n = _int(doc["rank"], "rank")
    if n <= 0:
        raise DocumentError("rank", "must be positive")
    labels = _str_list(doc["labels"], "labels") if "labels" in doc else None
    if labels is not None and len(labels) != n:
        raise DocumentError("labels", f"expected {n} labels")
    curves = []
    for i, c in enumerate(doc.get("curves", [])):
        where = f"curves[{i}]"
        c = _obj(c, where)
        for key in ("label", "class", "self_intersection"):
            if key not in c:
                raise DocumentError(f"{where}.{key}", "missing field")
        if not isinstance(c["label"], str):
            raise DocumentError(f"{where}.label", "expected a string")
        curves.append((c["label"], _vec(c["class"], f"{where}.class", n), _int(c["self_intersection"], f"{where}.self_intersection")))
    bases = {}
    for name, cols in _obj(doc.get("bases", {}), "bases").items():
        bases[name] = _mat(cols, f"bases.{name}", n)
    geo = _vec(doc["geometric_anchor"], "geometric_anchor", n) if "geometric_anchor" in doc else None
    try:
        if preset == "custom":
            for key in ("gram", "canonical", "anchor"):
                if key not in doc:
                    raise DocumentError(key, "missing field (required for custom lattices)")
            return make_lattice(
                _mat(doc["gram"], "gram", n),
                _vec(doc["canonical"], "canonical", n),
                _vec(doc["anchor"], "anchor", n),
                labels,
                curves,
                bases,
                geometric_anchor=geo,
            )
        if "blowups" not in doc:
            raise DocumentError("blowups", "missing field (required for presets)")
        b = _int(doc["blowups"], "blowups")
        expected = b + 1 if preset == "geometric" else b + 2
        if expected != n:
            raise DocumentError("rank", f"preset {preset} with {b} blow-ups has rank {expected}")
        if preset == "geometric":
            L = make_geometric_lattice(b, labels)
            if curves or bases:
                L = make_lattice(L.gram, L.canonical_coords, L.anchor_coords, L.labels, curves, bases, "geometric", b)
        else:
            L = make_p1p1_lattice(b, labels, curves=curves, bases=bases)
        for key, coords in (("canonical", L.canonical_coords), ("anchor", L.anchor_coords)):
            if key in doc and _vec(doc[key], key, n) != list(coords):
                raise DocumentError(key, f"does not match the {preset} preset")
        return L
    except LatticeError as exc:
        raise DocumentError("lattice", str(exc)) from None


# ---------------------------------------------------------------- isometries


def isometry_to_doc(Phi: IsometryCandidate, basis: str = "standard") -> dict:
    M = Phi.matrix
    if basis != "standard":
        cols = Phi.lattice.bases[basis]
        P = linalg.transpose(cols)
        M = linalg.matmul(linalg.matmul(linalg.inverse_unimodular(P), M), P)
    doc = {"basis": basis, "matrix": mat_str(M)}
    if Phi.motions:
        doc["motions"] = [[a, b] for a, b in Phi.motions]
    return doc


def isometry_from_doc(doc, L: PicLattice, source: str | None = None) -> IsometryCandidate:
    """Unverified candidate in the lattice's standard coordinates."""
    with _sourced(source):
        doc = _obj(doc)
        if "matrix" not in doc:
            raise DocumentError("matrix", "missing field")
        M = _mat(doc["matrix"], "matrix", L.rank)
        basis = doc.get("basis", "standard")
        if basis != "standard":
            if basis not in L.bases:
                raise DocumentError("basis", f"lattice has no basis named {basis!r}")
            P = linalg.transpose(L.bases[basis])
            M = linalg.matmul(linalg.matmul(P, M), linalg.inverse_unimodular(P))
        motions = []
        for i, m in enumerate(doc.get("motions", [])):
            if not (isinstance(m, list) and len(m) == 2 and all(isinstance(s, str) for s in m)):
                raise DocumentError(f"motions[{i}]", "expected a [source, target] pair of curve labels")
            for s in m:
                if s not in {c.label for c in L.curves}:
                    raise DocumentError(f"motions[{i}]", f"unknown curve label {s!r}")
            motions.append(tuple(m))
    return IsometryCandidate(tuple(tuple(r) for r in M), L, None, tuple(motions))


def verify_document(L: PicLattice, Phi: IsometryCandidate):
    return verify(L, Phi.matrix, Phi.motions or None)


# ---------------------------------------------------------------- mappings


def mapping_to_doc(f: ParamRationalMap) -> dict:
    src = f.source_text
    return {
        "variables": list(src["variables"]),
        "parameters": list(src["parameters"]),
        "components": list(src["components"]),
        "step_rule": dict(src["step_rule"]),
        "form": src["form"],
    }


def mapping_from_doc(doc, source: str | None = None) -> ParamRationalMap:
    with _sourced(source):
        doc = _obj(doc)
        for key in ("variables", "components"):
            if key not in doc:
                raise DocumentError(key, "missing field")
        variables = _str_list(doc["variables"], "variables")
        parameters = _str_list(doc.get("parameters", []), "parameters")
        components = _str_list(doc["components"], "components")
        rule = _obj(doc.get("step_rule", {}), "step_rule")
        if not all(isinstance(v, str) for v in rule.values()):
            raise DocumentError("step_rule", "values must be expression strings")
        form = doc.get("form", "first_order")
        try:
            return make_map(variables, parameters, components, rule, form)
        except ParseError as exc:
            raise DocumentError("components", str(exc)) from None
        except ValueError as exc:
            raise DocumentError("mapping", str(exc)) from None


# ---------------------------------------------------------------- components


def components_to_doc(M, labels=None) -> dict:
    doc = {"matrix": mat_str(M)}
    if labels:
        doc["labels"] = list(labels)
    return doc


def components_from_doc(doc, source: str | None = None) -> tuple[list[list[int]], list[str] | None]:
    with _sourced(source):
        doc = _obj(doc)
        if "matrix" not in doc:
            raise DocumentError("matrix", "missing field")
        M = _mat(doc["matrix"], "matrix")
        labels = _str_list(doc["labels"], "labels") if "labels" in doc else None
        if labels is not None and len(labels) != len(M):
            raise DocumentError("labels", f"expected {len(M)} labels")
        return M, labels
