"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__, fixtures, io
from .dynkin import dynkin_type
from .growth import QUADRATIC, classify, p1p1_degree_sequence, degree_sequence
from .isometry import IsometryCandidate, IsometryError, certify
from .lattice import LatticeError
from .minimize import (
    DEFAULT_CAP,
    MinimizeError,
    dominant_vector_quadratic,
    halphen_check,
    is_minimal,
    minimize,
)
from .shortvec import EnumerationCapExceeded
from .symbolic.laurent import (
    DEFAULT_MAX_STEPS,
    DEFAULT_TRUNCATION,
    MAX_TRUNCATION,
    PRECISION_EXCEEDED,
    NotSingular,
    confine_test,
)
from .symbolic.maps import ResourceCapExceeded, iterate_degree_sequence
from .symbolic.parser import ParseError
from .symbolic.ratfunc import DegenerateError

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

DEFAULT_DEGREES_N = 10
DEFAULT_ITERATE_N = 6
DEFAULT_MAX_TERMS = 5_000_000


class Failure(Exception):
    def __init__(self, code: int, message: str, result: dict | None = None):
        super().__init__(message)
        self.code = code
        self.result = result


# ---------------------------------------------------------------- output


def jsonable(x):
    """Integers become decimal strings, fractions "p/q"; containers recurse."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _text(x, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                # first entry shares the dash line, YAML style
                inner = _text(v, indent + 1)
                lines.append(f"{pad}- {inner[0].lstrip()}")
                lines.extend(inner[1:])
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(x)}")
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(e, (dict, list)) for e in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(e) for e in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    doc = jsonable(report)
    if fmt == "json":
        out.write(io.dumps(doc))
    else:
        out.write("\n".join(_text(doc)) + "\n")


# ---------------------------------------------------------------- inputs


def _doc(args, kind: str, required: bool = True):
    path = getattr(args, kind, None)
    if path:
        return io.load_file(path), path
    if args.fixture:
        fx = fixtures.get(args.fixture)
        if kind in fx.documents:
            return fixtures.document(args.fixture, kind), f"fixture:{args.fixture}/{kind}"
    if required:
        raise Failure(EXIT_INPUT, f"a {kind} document is required (--{kind} PATH or --fixture NAME)")
    return None, None


def _lattice(args):
    doc, src = _doc(args, "lattice")
    return io.lattice_from_doc(doc, src)


def _candidate(args, L) -> IsometryCandidate:
    doc, src = _doc(args, "isometry")
    return io.isometry_from_doc(doc, L, src)


def _certified(args):
    L = _lattice(args)
    cand = _candidate(args, L)
    report = io.verify_document(L, cand)
    if not report.passed:
        raise Failure(EXIT_VERIFY, "isometry verification failed", {"verification": report.as_dict()})
    return L, certify(L, cand.matrix, cand.motions or None)


def _mapping(args):
    doc, src = _doc(args, "mapping")
    return io.mapping_from_doc(doc, src)


def _inputs(args) -> dict:
    d = {}
    if getattr(args, "fixture", None):
        d["fixture"] = args.fixture
    for kind in fixtures.KINDS:
        if getattr(args, kind, None):
            d[kind] = getattr(args, kind)
    return d


_NOT_OPTIONS = {"command", "format", "fixture", *fixtures.KINDS}


def _header(args, defaults: dict) -> dict:
    options = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_OPTIONS and v is not None}
    return {
        "command": args.command,
        "version": __version__,
        "inputs": _inputs(args),
        "defaults": defaults,
        "options": options,
    }


def _class_entry(L, v) -> dict:
    return {"coords": list(v.coords), "label": L.describe(v)}


# ---------------------------------------------------------------- commands


def cmd_verify(args):
    L = _lattice(args)
    report = io.verify_document(L, _candidate(args, L))
    result = {"verification": report.as_dict()}
    if not report.passed:
        raise Failure(EXIT_VERIFY, "isometry verification failed", result)
    return {}, result


def cmd_growth(args):
    L, Phi = _certified(args)
    report = classify(L, Phi)
    return {}, {"growth": report.as_dict()}


def cmd_degrees(args):
    L, Phi = _certified(args)
    defaults = {"n": DEFAULT_DEGREES_N}
    result = {"anchor": degree_sequence(L, Phi, L.anchor, L.anchor, args.n)}
    pair = args.pair.split(",") if args.pair else None
    if pair is None and L.preset == "p1p1":
        pair = list(L.labels[:2])
        defaults["pair"] = ",".join(pair)
    if pair is not None:
        if len(pair) != 2 or any(p not in L.labels for p in pair):
            raise Failure(EXIT_INPUT, f"--pair must name two basis labels of the lattice, got {args.pair!r}")
        result["pair"] = pair
        result["p1p1"] = p1p1_degree_sequence(L, Phi, args.n, *pair)
    result["n"] = list(range(args.n + 1))
    return defaults, {"degrees": result}


def cmd_minimize(args):
    L, Phi = _certified(args)
    plan = minimize(L, Phi, args.cap)
    L2, Phi2 = plan.reduced_lattice, plan.reduced_isometry
    result = {
        "exceptional_classes": [_class_entry(L, E) for E in plan.exceptional_classes],
        "reduced_lattice": io.lattice_to_doc(L2),
        "reduced_isometry": io.isometry_to_doc(Phi2),
        "reduced_rank": L2.rank,
        "reduced_k_squared": L2.pair(L2.canonical, L2.canonical),
        "is_minimal": is_minimal(L2, Phi2, args.cap),
        "halphen": halphen_check(L2, Phi2).as_dict(),
    }
    if classify(L, Phi).kind == QUADRATIC:
        v1 = dominant_vector_quadratic(L, Phi)
        pv1 = plan.push(v1)
        result["dominant_vector"] = _class_entry(L, v1)
        result["pushforward_dominant_equals_minus_reduced_k"] = list(pv1.coords) == [-x for x in L2.canonical_coords]
    return {"cap": DEFAULT_CAP}, result


def cmd_halphen(args):
    L = _lattice(args)
    Phi = None
    if args.isometry or (args.fixture and "isometry" in fixtures.get(args.fixture).documents):
        L, Phi = _certified(args)
        if args.minimize:
            plan = minimize(L, Phi, args.cap)
            L, Phi = plan.reduced_lattice, plan.reduced_isometry
    comps = args.curves.split(",") if args.curves else None
    if comps is None and args.fixture:
        comps = list(fixtures.get(args.fixture).halphen_components) or None
    if comps:
        missing = [c for c in comps if c not in {cv.label for cv in L.curves}]
        if missing:
            raise Failure(EXIT_INPUT, f"unknown curve labels: {', '.join(missing)}")
    return {"cap": DEFAULT_CAP}, {"halphen": halphen_check(L, Phi, comps).as_dict()}


def cmd_dynkin(args):
    doc, src = _doc(args, "components")
    M, labels = io.components_from_doc(doc, src)
    result = dynkin_type(M).as_dict()
    if labels:
        result["components"] = labels
    return {}, {"dynkin": result}


def cmd_iterate(args):
    f = _mapping(args)
    defaults = {"n": DEFAULT_ITERATE_N, "convention": "p1p1", "start": 0, "max_terms": DEFAULT_MAX_TERMS}
    try:
        seq = iterate_degree_sequence(f, args.start, args.n, args.convention, args.max_terms)
    except ResourceCapExceeded as exc:
        raise Failure(EXIT_CAP, str(exc), {"partial": exc.partial}) from None
    result = {"convention": args.convention, "start": args.start, "n": list(range(1, args.n + 1)), "degrees": seq}
    return defaults, {"iterate": result}


def cmd_confine(args):
    f = _mapping(args)
    defaults = {"max_steps": DEFAULT_MAX_STEPS, "truncation": DEFAULT_TRUNCATION, "max_truncation": MAX_TRUNCATION}
    values = [args.at] if args.at else []
    if not values and args.fixture:
        values = list(fixtures.get(args.fixture).singular_values)
    if not values:
        raise Failure(EXIT_INPUT, "--at EXPR is required")
    patterns = []
    for s in values:
        try:
            p = confine_test(f, s, args.max_steps, args.truncation, max(args.truncation, MAX_TRUNCATION))
        except NotSingular as exc:
            raise Failure(EXIT_INPUT, f"{s}: {exc}") from None
        d = p.as_dict()
        d["singular_value"] = s
        patterns.append(d)
    result = {"patterns": patterns}
    if any(p["verdict"] == PRECISION_EXCEEDED for p in patterns):
        raise Failure(EXIT_CAP, "precision cap exceeded", result)
    return defaults, result


def cmd_fixtures(args):
    if args.action == "list":
        return {}, {
            "fixtures": [
                {"name": fx.name, "description": fx.description, "documents": list(fx.documents)}
                for fx in sorted(fixtures.CATALOG.values(), key=lambda f: f.name)
            ]
        }
    if not args.name or not args.dir:
        raise Failure(EXIT_INPUT, "usage: fixtures export NAME DIR")
    written = fixtures.export(args.name, args.dir)
    return {}, {"exported": [str(p) for p in written]}


COMMANDS = {
    "verify": cmd_verify,
    "growth": cmd_growth,
    "degrees": cmd_degrees,
    "minimize": cmd_minimize,
    "halphen": cmd_halphen,
    "dynkin": cmd_dynkin,
    "iterate": cmd_iterate,
    "confine": cmd_confine,
    "fixtures": cmd_fixtures,
}


# ---------------------------------------------------------------- parser


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="picdyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"picdyn {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def common(p, kinds):
        p.add_argument("--fixture", help="shipped fixture name (see `fixtures list`)")
        for kind in kinds:
            p.add_argument(f"--{kind}", metavar="PATH", help=f"{kind} document")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="check an isometry candidate against a lattice")
    common(p, ("lattice", "isometry"))
    p = sub.add_parser("growth", help="classify degree growth")
    common(p, ("lattice", "isometry"))
    p = sub.add_parser("degrees", help="degree sequence from the lattice action")
    common(p, ("lattice", "isometry"))
    p.add_argument("--n", type=_nonnegative, default=DEFAULT_DEGREES_N)
    p.add_argument("--pair", help="hx,hy basis labels for P1xP1 degrees")
    p = sub.add_parser("minimize", help="contract the exceptional set")
    common(p, ("lattice", "isometry"))
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="enumeration node cap")
    p = sub.add_parser("halphen", help="generalized Halphen checks")
    common(p, ("lattice", "isometry"))
    p.add_argument("--curves", help="comma-separated curve labels forming -K")
    p.add_argument("--minimize", action="store_true", help="minimize before checking")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    p = sub.add_parser("dynkin", help="affine Dynkin label of a component matrix")
    common(p, ("components",))
    p = sub.add_parser("iterate", help="symbolic iterate degrees")
    common(p, ("mapping",))
    p.add_argument("--n", type=_positive, default=DEFAULT_ITERATE_N)
    p.add_argument("--convention", choices=("p1p1", "p2", "bidegree"), default="p1p1")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--max-terms", type=_positive, default=DEFAULT_MAX_TERMS)
    p = sub.add_parser("confine", help="singularity confinement test")
    common(p, ("mapping",))
    p.add_argument("--at", help="singular value (expression in the parameters)")
    p.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    p.add_argument("--truncation", type=_positive, default=DEFAULT_TRUNCATION)
    p = sub.add_parser("fixtures", help="list or export shipped fixtures")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("name", nargs="?")
    p.add_argument("dir", nargs="?")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    code, result, message = EXIT_OK, None, None
    defaults: dict = {}
    try:
        defaults, result = COMMANDS[args.command](args)
    except Failure as exc:
        code, result, message = exc.code, exc.result, str(exc)
    except (io.DocumentError, ParseError, LatticeError, fixtures.UnknownFixture) as exc:
        code, message = EXIT_INPUT, str(exc).strip("'\"")
    except (EnumerationCapExceeded, ResourceCapExceeded) as exc:
        code, message = EXIT_CAP, str(exc)
    except (IsometryError, MinimizeError, DegenerateError, ValueError) as exc:
        code, message = EXIT_INPUT, str(exc)
    report = _header(args, defaults)
    report["exit_code"] = code
    if result is not None:
        report["result"] = result
    if message:
        report["error"] = message
        err.write(f"picdyn {args.command}: {message}\n")
    emit(report, args.format, out)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
