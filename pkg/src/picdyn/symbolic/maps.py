"""Plane rational maps over parametric coefficient fields and their iterate degrees."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..cancel import CancelToken, check
from .parser import parse_expression
from .ratfunc import DegenerateError, RationalFunction, context

AUX = "w"  # free initial symbol used by the confinement test

FIRST_ORDER = "first_order"
THREE_POINT = "three_point"


class ResourceCapExceeded(RuntimeError):
    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial


@dataclass(eq=False)
class ParamRationalMap:
    """(x, y) -> (X(x, y), Y(x, y)) with coefficients in Q(parameters).

    ``step_rule`` maps parameter names to their value at the next step
    (e.g. a -> a + alpha); it realizes a nonautonomous family phi_n.
    For three-point sources the stored components are (y, R(x, y)).
    """

    variables: tuple[str, str]
    parameters: tuple[str, ...]
    components: tuple[RationalFunction, RationalFunction]
    step_rule: Mapping[str, RationalFunction] = field(default_factory=dict)
    source_form: str = FIRST_ORDER
    source_text: dict = field(default_factory=dict)

    @property
    def ctx(self):
        return self.components[0].ctx

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.ctx.names())

    def rule(self) -> RationalFunction:
        """R with x_{n+1} = R(x_{n-1}, x_n) for three-point maps."""
        if self.source_form != THREE_POINT:
            raise ValueError("map is not in three-point form")
        return self.components[1]

    def at_step(self, k: int) -> "ParamRationalMap":
        """phi_k: parameters advanced k times by the step rule."""
        if not self.step_rule or k == 0:
            return self
        sub = shifted_parameters(self, k)
        comps = tuple(c.substitute(sub) for c in self.components)
        return ParamRationalMap(self.variables, self.parameters, comps, self.step_rule, self.source_form, self.source_text)

    def __call__(self, X: RationalFunction, Y: RationalFunction) -> tuple[RationalFunction, RationalFunction]:
        x, y = self.variables
        sub = {x: X, y: Y}
        return tuple(c.substitute(sub) for c in self.components)


def shifted_parameters(f: ParamRationalMap, k: int) -> dict[str, RationalFunction]:
    """Parameter values after k applications of the step rule."""
    ctx = f.ctx
    current = {p: RationalFunction.variable(ctx, p) for p in f.parameters}
    for _ in range(k):
        current = {p: (f.step_rule[p].substitute(current) if p in f.step_rule else current[p]) for p in f.parameters}
    return {p: v for p, v in current.items() if v != RationalFunction.variable(ctx, p)}


def make_map(
    variables: Sequence[str],
    parameters: Sequence[str],
    components: Sequence[str],
    step_rule: Mapping[str, str] | None = None,
    form: str = FIRST_ORDER,
) -> ParamRationalMap:
    """Build a map from expression strings.

    ``form == "three_point"`` takes a single component R and produces the map
    (x, y) -> (y, R(x, y)) where x plays x_{n-1} and y plays x_n.
    """
    variables = tuple(variables)
    parameters = tuple(parameters)
    if len(variables) != 2:
        raise ValueError("exactly two variables are required")
    names = variables + parameters
    if AUX in names:
        raise ValueError(f"the name {AUX!r} is reserved")
    if len(set(names)) != len(names):
        raise ValueError("variable and parameter names must be distinct")
    ctx = context(names + (AUX,))
    if form == THREE_POINT:
        if len(components) != 1:
            raise ValueError("three-point form takes exactly one component")
        comps = (RationalFunction.variable(ctx, variables[1]), parse_expression(components[0], ctx))
    elif form == FIRST_ORDER:
        if len(components) != 2:
            raise ValueError("first-order form takes exactly two components")
        comps = tuple(parse_expression(c, ctx) for c in components)
    else:
        raise ValueError(f"unknown form {form!r}")
    rule = {}
    for p, text in (step_rule or {}).items():
        if p not in parameters:
            raise ValueError(f"step rule for unknown parameter {p!r}")
        value = parse_expression(text, ctx)
        if not value.den.is_constant() or any(value.depends_on(v) for v in variables + (AUX,)):
            raise ValueError(f"step rule for {p!r} must be a polynomial in the parameters")
        rule[p] = value
    for c in comps:
        if c.depends_on(AUX):
            raise ValueError(f"components may not use the reserved name {AUX!r}")
    source = {
        "variables": list(variables),
        "parameters": list(parameters),
        "components": list(components),
        "step_rule": dict(step_rule or {}),
        "form": form,
    }
    return ParamRationalMap(variables, parameters, comps, rule, form, source)


def identity_map(variables=("x", "y"), parameters=()) -> ParamRationalMap:
    return make_map(variables, parameters, list(variables))


def compose_and_reduce(f: ParamRationalMap, g: ParamRationalMap, advance: bool = False) -> ParamRationalMap:
    """f o g with full cancellation.  With ``advance`` f is taken one step later
    (its parameters shifted by the step rule), as when chaining phi_{n+1} o phi_n."""
    if f.names != g.names:
        raise ValueError("maps must share variables and parameters")
    ff = f.at_step(1) if advance else f
    try:
        comps = ff(*g.components)
    except DegenerateError as exc:
        raise DegenerateError(f"degenerate composition: {exc}") from None
    return ParamRationalMap(f.variables, f.parameters, comps, g.step_rule, FIRST_ORDER)


def p1p1_degree(f: ParamRationalMap | Sequence[RationalFunction], variables=None) -> int:
    comps, vars_ = _components(f, variables)
    d = max(c.degree_in(vars_) for c in comps)
    if d == 0:
        raise DegenerateError("constant map")
    return d


def p2_degree(f: ParamRationalMap | Sequence[RationalFunction], variables=None) -> int:
    comps, vars_ = _components(f, variables)
    (p1, q1), (p2, q2) = [(c.num, c.den) for c in comps]
    g = q1.gcd(q2)
    L = q1 * (q2 // g)
    polys = [p1 * (L // q1), p2 * (L // q2), L]
    from .ratfunc import poly_degree_in

    d = max(poly_degree_in(p, vars_) for p in polys)
    if d == 0:
        raise DegenerateError("constant map")
    return d


def bidegree(f: ParamRationalMap | Sequence[RationalFunction], variables=None) -> list[list[int]]:
    """[[deg_x X, deg_y X], [deg_x Y, deg_y Y]]."""
    comps, (x, y) = _components(f, variables)
    return [[c.degree_in([x]), c.degree_in([y])] for c in comps]


def _components(f, variables):
    if isinstance(f, ParamRationalMap):
        return f.components, f.variables
    return tuple(f), tuple(variables or ("x", "y"))


DEGREE_FUNCS = {"p2": p2_degree, "p1p1": p1p1_degree, "bidegree": bidegree}


@dataclass
class IterationState:
    """Serializable checkpoint: the n-th iterate (X_n, Y_n) of the family."""

    n: int
    start: int
    components: tuple[RationalFunction, RationalFunction]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "start": self.start,
            "components": [[str(c.num), str(c.den)] for c in self.components],
        }

    @classmethod
    def from_dict(cls, f: ParamRationalMap, d: dict) -> "IterationState":
        comps = tuple(parse_expression(f"({a})/({b})", f.ctx) for a, b in d["components"])
        return cls(int(d["n"]), int(d["start"]), comps)


def iterate(
    f: ParamRationalMap,
    N: int,
    start: int = 0,
    max_terms: int = 5_000_000,
    cancel: CancelToken | None = None,
    state: IterationState | None = None,
):
    """Yield IterationState for n = 1..N: phi_{start+n-1} o ... o phi_start."""
    x, y = f.variables
    if state is None:
        state = IterationState(0, start, (RationalFunction.variable(f.ctx, x), RationalFunction.variable(f.ctx, y)))
    comps = state.components
    for n in range(state.n + 1, N + 1):
        check(cancel)
        step = f.at_step(start + n - 1)
        comps = step(*comps)
        size = sum(len(c.num.monoms()) + len(c.den.monoms()) for c in comps)
        state = IterationState(n, start, comps)
        yield state
        if size > max_terms:
            raise ResourceCapExceeded(f"iterate {n} has {size} terms (cap {max_terms})", [])


def iterate_degree_sequence(
    f: ParamRationalMap,
    start: int,
    N: int,
    convention: str = "p1p1",
    max_terms: int = 5_000_000,
    cancel: CancelToken | None = None,
) -> list:
    """Degrees of the iterates n = 1..N in the chosen convention."""
    if convention not in DEGREE_FUNCS:
        raise ValueError(f"unknown convention {convention!r}")
    deg = DEGREE_FUNCS[convention]
    out = []
    try:
        for st in iterate(f, N, start, max_terms, cancel):
            out.append(deg(st.components, f.variables))
    except ResourceCapExceeded as exc:
        raise ResourceCapExceeded(str(exc), out) from None
    return out
