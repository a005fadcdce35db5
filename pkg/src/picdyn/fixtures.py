"""Shipped example documents."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import io

KINDS = ("lattice", "isometry", "mapping", "components")


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    documents: tuple[str, ...]
    degree_pair: tuple[str, str] | None = None
    singular_values: tuple[str, ...] = ()
    halphen_components: tuple[str, ...] = ()


CATALOG = {
    f.name: f
    for f in (
        Fixture(
            "paper-ex1",
            "x_{n+1} = ((x_n + 3a)x_{n-1} - 2a x_n)/(x_n - 3a) on P1xP1 blown up at 9 points",
            ("lattice", "isometry", "mapping"),
            ("Hx", "Hy"),
            ("3a", "-3a"),
        ),
        Fixture(
            "paper-ex2.1",
            "nonautonomous extension with a_{n+1} = a_n + alpha; same lattice action",
            ("lattice", "isometry", "mapping"),
            ("Hx", "Hy"),
            ("3a_n + 2alpha", "-3a_n + 2alpha"),
        ),
        Fixture(
            "hietarinta-viallet",
            "x_{n+1} + x_{n-1} = x_n + a/x_n^2 (mapping only)",
            ("mapping",),
        ),
        Fixture(
            "coxeter-e10",
            "Coxeter element of the E10 reflection group on the rank-11 geometric lattice",
            ("lattice", "isometry"),
        ),
        Fixture(
            "halphen-a2",
            "rank-10 geometric lattice with a triangle of (-2)-lines summing to -K",
            ("lattice", "components"),
            halphen_components=("L0", "L1", "L2"),
        ),
    )
}


class UnknownFixture(KeyError):
    pass


def get(name: str) -> Fixture:
    if name not in CATALOG:
        raise UnknownFixture(f"unknown fixture {name!r}; available: {', '.join(sorted(CATALOG))}")
    return CATALOG[name]


def document_text(name: str, kind: str) -> str:
    fx = get(name)
    if kind not in fx.documents:
        raise UnknownFixture(f"fixture {name!r} has no {kind} document")
    return resources.files("picdyn").joinpath("data", "fixtures", name, f"{kind}.json").read_text(encoding="utf-8")


def document(name: str, kind: str):
    return io.loads(document_text(name, kind), f"fixture:{name}/{kind}")


def export(name: str, directory: str | Path) -> list[Path]:
    """Write the canonical documents of a fixture; returns the written paths."""
    fx = get(name)
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for kind in fx.documents:
        p = out / f"{kind}.json"
        p.write_text(document_text(name, kind), encoding="utf-8")
        written.append(p)
    return written


def load_lattice(name: str):
    return io.lattice_from_doc(document(name, "lattice"), f"fixture:{name}/lattice")


def load_isometry(name: str, L=None):
    L = L if L is not None else load_lattice(name)
    return io.isometry_from_doc(document(name, "isometry"), L, f"fixture:{name}/isometry")


def load_mapping(name: str):
    return io.mapping_from_doc(document(name, "mapping"), f"fixture:{name}/mapping")


def load_components(name: str):
    return io.components_from_doc(document(name, "components"), f"fixture:{name}/components")
