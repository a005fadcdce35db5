"""Truncated Laurent series in epsilon and the singularity-confinement test."""

from __future__ import annotations

from dataclasses import dataclass, field

from .maps import AUX, THREE_POINT, ParamRationalMap
from .parser import parse_expression
from .ratfunc import RationalFunction, format_rf

DEFAULT_TRUNCATION = 16
MAX_TRUNCATION = 128
DEFAULT_MAX_STEPS = 20
START_TRUNCATION = 4


class PrecisionLoss(ArithmeticError):
    pass


class NotSingular(ValueError):
    pass


class LaurentSeries:
    """sum_i coeffs[i] eps^(valuation + i) + O(eps^(valuation + len(coeffs))).

    The leading coefficient is always a nonzero rational function.
    """

    __slots__ = ("valuation", "coeffs")

    def __init__(self, valuation: int, coeffs: list[RationalFunction]):
        k = 0
        while k < len(coeffs) and coeffs[k].is_zero():
            k += 1
        if k == len(coeffs):
            raise PrecisionLoss("all retained coefficients cancelled")
        self.valuation = valuation + k
        self.coeffs = coeffs[k:]

    @classmethod
    def constant(cls, c: RationalFunction, truncation: int) -> "LaurentSeries":
        zero = c * 0
        return cls(0, [c] + [zero] * (truncation - 1))

    @classmethod
    def epsilon(cls, ctx, truncation: int) -> "LaurentSeries":
        one = RationalFunction.constant(ctx, 1)
        return cls(1, [one] + [one * 0] * (truncation - 1))

    @property
    def truncation(self) -> int:
        return len(self.coeffs)

    @property
    def precision(self) -> int:
        """Absolute order of the error term."""
        return self.valuation + len(self.coeffs)

    def coefficient(self, k: int) -> RationalFunction:
        """Coefficient of eps^k (zero below the valuation)."""
        i = k - self.valuation
        if i < 0:
            return self.coeffs[0] * 0
        if i >= len(self.coeffs):
            raise PrecisionLoss(f"coefficient of eps^{k} is beyond the retained precision")
        return self.coeffs[i]

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        v = min(self.valuation, other.valuation)
        prec = min(self.precision, other.precision)
        out = []
        for k in range(v, prec):
            i, j = k - self.valuation, k - other.valuation
            if 0 <= i < len(self.coeffs):
                out.append(self.coeffs[i] + other.coeffs[j] if 0 <= j < len(other.coeffs) else self.coeffs[i])
            else:
                out.append(other.coeffs[j])
        return LaurentSeries(v, out)

    def __neg__(self):
        return LaurentSeries(self.valuation, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            if other.is_zero():
                raise PrecisionLoss("multiplication by an exact zero")
            return LaurentSeries(self.valuation, [c * other for c in self.coeffs])
        T = min(self.truncation, other.truncation)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(T):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return LaurentSeries(self.valuation + other.valuation, out)

    def inverse(self) -> "LaurentSeries":
        a = self.coeffs
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, len(a)):
            acc = a[1] * out[k - 1]
            for i in range(2, k + 1):
                acc = acc + a[i] * out[k - i]
            out.append(-(acc * inv0))
        return LaurentSeries(-self.valuation, out)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k: int):
        if k == 0:
            return LaurentSeries.constant(self.coeffs[0] ** 0, self.truncation)
        base = self if k > 0 else self.inverse()
        result = base
        for _ in range(abs(k) - 1):
            result = result * base
        return result

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs[:3])
        return f"LaurentSeries(v={self.valuation}, [{terms}, ...], T={self.truncation})"


def evaluate_polynomial(p, values: dict[int, LaurentSeries], truncation: int) -> LaurentSeries:
    """p with the variables at the given indices replaced by series."""
    ctx = p.context()
    idx = sorted(values)
    groups: dict = {}
    for monom, coeff in zip(p.monoms(), p.coeffs()):
        rest = list(monom)
        for i in idx:
            rest[i] = 0
        key = tuple(monom[i] for i in idx)
        groups.setdefault(key, {})[tuple(rest)] = int(coeff)
    one = ctx.from_dict({(0,) * ctx.nvars(): 1})
    powers: dict = {}
    total = None
    for key, terms in groups.items():
        c = RationalFunction(ctx.from_dict(terms), one)
        series = None
        for i, e in zip(idx, key):
            if e == 0:
                continue
            if (i, e) not in powers:
                powers[(i, e)] = values[i] ** e
            series = powers[(i, e)] if series is None else series * powers[(i, e)]
        term = LaurentSeries.constant(c, truncation) if series is None else series * c
        total = term if total is None else total + term
    return total


def evaluate_rational(f: RationalFunction, values: dict[str, LaurentSeries], truncation: int) -> LaurentSeries:
    names = f.ctx.names()
    vals = {names.index(k): v for k, v in values.items()}
    num = evaluate_polynomial(f.num, vals, truncation)
    den = evaluate_polynomial(f.den, vals, truncation)
    return num / den


@dataclass(frozen=True)
class Finite:
    value: RationalFunction

    def render(self, style: str = "math") -> str:
        return format_rf(self.value, style)


@dataclass(frozen=True)
class Infinity:
    order: int

    def render(self, style: str = "math") -> str:
        if style == "math":
            sup = str(self.order).translate(str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹"))
            return "∞" + sup
        return f"inf^{self.order}"


CONFINED = "Confined"
UNCONFINED = "Unconfined"
PRECISION_EXCEEDED = "PrecisionExceeded"


@dataclass
class SingularityPattern:
    entries: list
    verdict: str
    steps: int | None = None
    exit_expression: RationalFunction | None = None
    truncation: int = DEFAULT_TRUNCATION
    max_steps: int = DEFAULT_MAX_STEPS
    effective_truncation: int | None = None
    notes: list[str] = field(default_factory=list)

    def render(self, style: str = "math") -> str:
        return "{" + ", ".join(e.render(style) for e in self.entries) + "}"

    def as_dict(self) -> dict:
        d = {
            "entries": [
                {"finite": format_rf(e.value)} if isinstance(e, Finite) else {"infinity": e.order}
                for e in self.entries
            ],
            "pattern": self.render("math"),
            "verdict": self.verdict,
            "truncation": self.truncation,
            "max_steps": self.max_steps,
        }
        if self.effective_truncation is not None:
            d["effective_truncation"] = self.effective_truncation
        if self.steps is not None:
            d["steps"] = self.steps
        if self.exit_expression is not None:
            d["exit_expression"] = format_rf(self.exit_expression)
            d["exit_expression_math"] = format_rf(self.exit_expression, "math")
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def _entry(s: LaurentSeries):
    if s.valuation < 0:
        return Infinity(-s.valuation)
    return Finite(s.coefficient(0))


def _run(rule: ParamRationalMap, s0: RationalFunction, max_steps: int, T: int) -> SingularityPattern:
    x, y = rule.variables
    w = RationalFunction.variable(rule.ctx, AUX)
    prev = LaurentSeries.constant(w, T)
    cur = LaurentSeries.epsilon(rule.ctx, T)
    if not s0.is_zero():
        cur = LaurentSeries.constant(s0, T) + cur
    entries = [_entry(cur)]
    for k in range(1, max_steps + 1):
        nxt = evaluate_rational(rule.at_step(k - 1).rule(), {x: prev, y: cur}, T)
        if nxt.valuation == 0 and not nxt.coefficient(0).derivative(AUX).is_zero():
            return SingularityPattern(entries, CONFINED, k, nxt.coefficient(0), T, max_steps)
        entries.append(_entry(nxt))
        prev, cur = cur, nxt
    return SingularityPattern(entries, UNCONFINED, None, None, T, max_steps)


def is_singular(rule: ParamRationalMap, singular_value: RationalFunction) -> bool:
    """Does x_n = singular_value lose the initial data?

    True when the denominator of R vanishes identically there, or when
    R(x_{n-1}, singular_value) no longer depends on x_{n-1}.
    """
    x, y = rule.variables
    R = rule.rule()
    if RationalFunction(R.den).substitute({y: singular_value}).is_zero():
        return True
    return not R.substitute({y: singular_value}).depends_on(x)


def confine_test(
    rule: ParamRationalMap,
    singular_value: RationalFunction | str,
    max_steps: int = DEFAULT_MAX_STEPS,
    truncation: int = DEFAULT_TRUNCATION,
    max_truncation: int = MAX_TRUNCATION,
) -> SingularityPattern:
    """Follow x_{n-1} = w, x_n = s + eps through x_{n+1} = R(x_{n-1}, x_n).

    Entries record x_n, x_{n+1}, ... up to the step before recovery; the
    verdict is Confined at the first step whose value is finite at eps = 0
    with a leading coefficient depending on w.

    Retained coefficients are exact, so the pattern does not depend on the
    truncation as long as no precision is lost.  The run therefore starts
    at a few orders and doubles on loss, past ``truncation`` if needed, up
    to ``max_truncation``; the pattern equals the one obtained when
    starting at ``truncation``.
    """
    if rule.source_form != THREE_POINT:
        raise ValueError("confinement test needs a three-point rule")
    if truncation < 1 or max_steps < 1:
        raise ValueError("truncation and max_steps must be positive")
    if isinstance(singular_value, str):
        singular_value = parse_expression(singular_value, rule.ctx)
    for name in rule.variables + (AUX,):
        if singular_value.depends_on(name):
            raise ValueError("singular value may only involve parameters")
    if not is_singular(rule, singular_value):
        raise NotSingular("the singular value neither makes a denominator vanish nor drops the initial data")
    T = min(truncation, START_TRUNCATION)
    cap = max(truncation, max_truncation)
    while True:
        try:
            pattern = _run(rule, singular_value, max_steps, T)
        except (PrecisionLoss, ZeroDivisionError):
            if T >= cap:
                return SingularityPattern(
                    [],
                    PRECISION_EXCEEDED,
                    truncation=truncation,
                    max_steps=max_steps,
                    effective_truncation=T,
                    notes=[f"precision lost at {T} retained orders"],
                )
            T = min(2 * T, cap)
            continue
        pattern.truncation = truncation
        pattern.effective_truncation = T
        return pattern
