"""Reduced rational functions over Z in a fixed set of named variables."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import flint

GREEK = {
    "alpha": "α",
    "beta": "β",
    "gamma": "γ",
    "delta": "δ",
    "epsilon": "ε",
    "lambda": "λ",
    "mu": "μ",
    "nu": "ν",
}
GREEK_INV = {v: k for k, v in GREEK.items()}


class DegenerateError(ZeroDivisionError):
    pass


@lru_cache(maxsize=None)
def context(names: tuple[str, ...]) -> flint.fmpz_mpoly_ctx:
    return flint.fmpz_mpoly_ctx.get(names, "lex")


class RationalFunction:
    """num/den with gcd(num, den) = 1 and positive leading denominator coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: flint.fmpz_mpoly, den: flint.fmpz_mpoly | None = None, reduce: bool = True):
        ctx = num.context()
        if den is None:
            den = ctx.from_dict({(0,) * ctx.nvars(): 1})
        if den.is_zero():
            raise DegenerateError("zero denominator")
        if reduce:
            if num.is_zero():
                den = ctx.from_dict({(0,) * ctx.nvars(): 1})
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    # construction -----------------------------------------------------------

    @property
    def ctx(self) -> flint.fmpz_mpoly_ctx:
        return self.num.context()

    @classmethod
    def constant(cls, ctx, value) -> "RationalFunction":
        q = Fraction(value)
        zero = (0,) * ctx.nvars()
        return cls(ctx.from_dict({zero: q.numerator}), ctx.from_dict({zero: q.denominator}))

    @classmethod
    def variable(cls, ctx, name: str) -> "RationalFunction":
        names = ctx.names()
        if name not in names:
            raise KeyError(name)
        return cls(ctx.gens()[names.index(name)])

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction.constant(self.ctx, other)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise DegenerateError("division by zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num**k, self.den**k, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def derivative(self, name: str) -> "RationalFunction":
        i = self.ctx.names().index(name)
        n, d = self.num, self.den
        return RationalFunction(n.derivative(i) * d - n * d.derivative(i), d * d)

    def depends_on(self, name: str) -> bool:
        i = self.ctx.names().index(name)
        return self.num.degrees()[i] > 0 or self.den.degrees()[i] > 0

    # substitution -----------------------------------------------------------

    def substitute(self, mapping: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        """Replace named variables by rational functions, clearing denominators
        by homogenizing each substituted variable to its top degree."""
        names = self.ctx.names()
        idx = [(names.index(k), v) for k, v in mapping.items()]
        degs = [max(self.num.degrees()[i], self.den.degrees()[i]) for i, _ in idx]
        num = _homogenized(self.num, idx, degs)
        den = _homogenized(self.den, idx, degs)
        if den.is_zero():
            raise DegenerateError("substitution makes the denominator vanish")
        return RationalFunction(num, den)

    # degrees ----------------------------------------------------------------

    def degree_in(self, names: Sequence[str]) -> int:
        """max over num, den of the total degree in the given variables."""
        return max(poly_degree_in(self.num, names), poly_degree_in(self.den, names))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rf(self)


def poly_degree_in(p: flint.fmpz_mpoly, names: Sequence[str]) -> int:
    all_names = p.context().names()
    idx = [all_names.index(n) for n in names]
    if p.is_zero():
        return 0
    return int(max(sum(m[i] for i in idx) for m in p.monoms()))


def _homogenized(p: flint.fmpz_mpoly, idx, degs) -> flint.fmpz_mpoly:
    ctx = p.context()
    subst = [i for i, _ in idx]
    powers: dict = {}

    def power(kind, j, e):
        key = (kind, j, e)
        if key not in powers:
            rf = idx[j][1]
            base = rf.num if kind == 0 else rf.den
            powers[key] = base**e
        return powers[key]

    groups: dict = {}
    for monom, coeff in zip(p.monoms(), p.coeffs()):
        rest = list(monom)
        for i in subst:
            rest[i] = 0
        key = tuple(monom[i] for i in subst)
        groups.setdefault(key, {})[tuple(rest)] = int(coeff)
    total = ctx.from_dict({})
    for key, terms in groups.items():
        term = ctx.from_dict(terms)
        for j, e in enumerate(key):
            if e:
                term = term * power(0, j, e)
            if degs[j] - e:
                term = term * power(1, j, degs[j] - e)
        total = total + term
    return total


# ---------------------------------------------------------------- formatting


def _display_name(name: str, style: str) -> str:
    if style == "math":
        return GREEK.get(name, name)
    return name


def format_poly(p: flint.fmpz_mpoly, style: str = "plain") -> str:
    if p.is_zero():
        return "0"
    names = p.context().names()
    pieces = []
    for monom, coeff in zip(p.monoms(), p.coeffs()):
        c = int(coeff)
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(_display_name(name, style))
            elif e > 1:
                factors.append(f"{_display_name(name, style)}^{e}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if style == "math":
            body = ("" if mag == 1 and factors else str(mag)) + "".join(factors)
        else:
            body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
        pieces.append((sign, body))
    sep = "" if style == "math" else " "
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f"{sep}{sign}{sep}{body}"
    return out


def format_rf(f: RationalFunction, style: str = "plain") -> str:
    num = format_poly(f.num, style)
    if f.den.is_one():
        return num
    den = format_poly(f.den, style)
    wrap = lambda s, p: s if len(p.monoms()) == 1 and not s.startswith("-") else f"({s})"
    return f"{wrap(num, f.num)}/{wrap(den, f.den)}"
