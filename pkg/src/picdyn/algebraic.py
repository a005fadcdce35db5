"""Real algebraic numbers: Sturm isolation, number-type tags, exact field arithmetic.

Polynomials are python-flint ``fmpz_poly``/``fmpq_poly`` objects; coefficient
lists are constant term first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import flint

DEFAULT_WIDTH = Fraction(1, 10**12)


class PolynomialError(ValueError):
    pass


def as_fmpz_poly(p) -> flint.fmpz_poly:
    if isinstance(p, flint.fmpz_poly):
        return p
    if isinstance(p, flint.fmpq_poly):
        if p.denom() != 1:
            raise PolynomialError("polynomial must have integer coefficients")
        return flint.fmpz_poly([int(c) for c in p.numer().coeffs()])
    coeffs = list(p)
    for c in coeffs:
        if Fraction(c).denominator != 1:
            raise PolynomialError("polynomial must have integer coefficients")
    return flint.fmpz_poly([int(c) for c in coeffs])


def coeff_list(p) -> list[int]:
    """Coefficients, constant term first."""
    return [int(c) for c in p.coeffs()]


def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(x) -> Fraction:
    x = flint.fmpq(x)
    return Fraction(int(x.p), int(x.q))


def evaluate(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + int(c) if isinstance(c, flint.fmpz) else acc * x + _frac(c)
    return acc


# ---------------------------------------------------------------- Sturm chains


def sturm_sequence(p) -> list[flint.fmpq_poly]:
    p = flint.fmpq_poly(p)
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        _, r = divmod(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(seq, x: Fraction) -> int:
    return _sign_changes([evaluate(q, x) for q in seq])


def _sign_at_infinity(seq, positive: bool) -> int:
    vals = []
    for q in seq:
        if q.is_zero():
            continue
        lc = _frac(q.leading_coefficient())
        if not positive and q.degree() % 2 == 1:
            lc = -lc
        vals.append(lc)
    return _sign_changes(vals)


def count_real_roots(p, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in (lo, hi]; None means infinite."""
    seq = sturm_sequence(p)
    v_lo = _sign_at_infinity(seq, False) if lo is None else _sign_at(seq, Fraction(lo))
    v_hi = _sign_at_infinity(seq, True) if hi is None else _sign_at(seq, Fraction(hi))
    return v_lo - v_hi


def root_bound(p) -> Fraction:
    """Cauchy bound: every complex root has modulus below this."""
    cs = [_frac(c) for c in flint.fmpq_poly(p).coeffs()]
    lead = cs[-1]
    return 1 + max((abs(c / lead) for c in cs[:-1]), default=Fraction(0))


def isolate_real_roots(p) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one distinct real root.

    Rational roots hit exactly by a bisection point come back as (r, r).
    Intervals are sorted increasingly.
    """
    p = flint.fmpq_poly(p)
    if p.degree() < 1:
        return []
    seq = sturm_sequence(p)
    B = root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-B, B, _sign_at(seq, -B), _sign_at(seq, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            out.append((mid, mid))
            # count of (lo, mid] includes mid itself; split just around it
            eps = (hi - lo) / 8
            while count_real_roots(p, mid - eps, mid) != 1 or count_real_roots(p, mid, mid + eps) != 0:
                eps /= 2
            stack.append((lo, mid - eps, vlo, _sign_at(seq, mid - eps)))
            stack.append((mid + eps, hi, _sign_at(seq, mid + eps), vhi))
            continue
        vm = _sign_at(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort()
    return out


# ------------------------------------------------------------ algebraic numbers


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of an irreducible integer polynomial, pinned by (lo, hi]."""

    min_poly: flint.fmpz_poly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo != self.hi and count_real_roots(self.min_poly, self.lo, self.hi) != 1:
            raise PolynomialError("interval does not isolate exactly one root")

    @property
    def degree(self) -> int:
        return self.min_poly.degree()

    def refine(self, width: Fraction = DEFAULT_WIDTH) -> "AlgebraicNumber":
        lo, hi = self.lo, self.hi
        p = self.min_poly
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = evaluate(p, mid)
            if v == 0:
                return AlgebraicNumber(p, mid, mid)
            if count_real_roots(p, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        return AlgebraicNumber(p, lo, hi)

    def __float__(self):
        a = self.refine(Fraction(1, 2**60))
        return float((a.lo + a.hi) / 2)

    def compare(self, q: Fraction) -> int:
        """Sign of (self - q), exact."""
        q = Fraction(q)
        if evaluate(self.min_poly, q) == 0 and self.lo <= q <= self.hi and (self.lo == self.hi or q != self.lo):
            return 0
        a = self
        while True:
            if a.hi <= q and not (a.hi == q):
                return -1
            if a.lo >= q:
                return 1
            if a.hi == q:
                # root lies in (lo, q] and q is not a root
                return -1
            a = a.refine((a.hi - a.lo) / 4)

    def __gt__(self, q):
        return self.compare(q) > 0

    def __lt__(self, q):
        return self.compare(q) < 0


def largest_real_root(p) -> AlgebraicNumber:
    """Largest real root of p with the irreducible factor that carries it."""
    p = as_fmpz_poly(p)
    intervals = isolate_real_roots(p)
    if not intervals:
        raise PolynomialError("polynomial has no real roots")
    lo, hi = intervals[-1]
    for f, _ in p.factor()[1]:
        if f.degree() < 1:
            continue
        if lo == hi:
            if evaluate(f, lo) == 0:
                return AlgebraicNumber(_normalize(f), lo, hi)
        elif count_real_roots(f, lo, hi) == 1:
            return AlgebraicNumber(_normalize(f), lo, hi)
    raise PolynomialError("no factor carries the isolated root")  # pragma: no cover


def _normalize(f: flint.fmpz_poly) -> flint.fmpz_poly:
    c = f.content()
    f = flint.fmpz_poly([int(x) // int(c) for x in f.coeffs()])
    if f.leading_coefficient() < 0:
        f = -f
    return f


# --------------------------------------------------------------- cyclotomics


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> flint.fmpz_poly:
    return flint.fmpz_poly.cyclotomic(m)


def cyclotomic_orders_up_to(degree: int) -> list[int]:
    """All m with phi(m) <= degree (phi(m) >= sqrt(m/2) bounds the search)."""
    bound = 2 * degree * degree + 2
    return [m for m in range(1, bound + 1) if euler_phi(m) <= degree]


def strip_cyclotomic(p) -> tuple[flint.fmpz_poly, list[tuple[int, int]]]:
    """Divide out every cyclotomic factor; returns (residual, [(order, multiplicity)])."""
    p = as_fmpz_poly(p)
    found = []
    for m in cyclotomic_orders_up_to(max(p.degree(), 0)):
        c = cyclotomic(m)
        mult = 0
        while p.degree() >= c.degree():
            q, r = divmod(p, c)
            if not r.is_zero():
                break
            p = q
            mult += 1
        if mult:
            found.append((m, mult))
    return p, found


def is_cyclotomic(f) -> int:
    """Order m if f equals the m-th cyclotomic polynomial up to sign, else 0."""
    f = _normalize(as_fmpz_poly(f))
    for m in cyclotomic_orders_up_to(f.degree()):
        if euler_phi(m) == f.degree() and cyclotomic(m) == f:
            return m
    return 0


# ---------------------------------------------------------- number-type tags


class NumberType(str, enum.Enum):
    RECIPROCAL_QUADRATIC = "ReciprocalQuadratic"
    SALEM = "Salem"
    PISOT = "Pisot"
    ROOT_OF_UNITY = "RootOfUnity"
    OTHER = "Other"


def is_reciprocal(f) -> bool:
    cs = coeff_list(f)
    return cs == cs[::-1] or cs == [-c for c in cs[::-1]]


def trace_polynomial(f) -> flint.fmpq_poly:
    """g with f(t) = t^d g(t + 1/t) for a palindromic f of degree 2d."""
    cs = [Fraction(c) for c in coeff_list(f)]
    d = (len(cs) - 1) // 2
    # peel off the highest power of (t + 1/t) step by step
    rem = {k - d: c for k, c in enumerate(cs)}  # Laurent coefficients t^{-d..d}
    g = [Fraction(0)] * (d + 1)
    for k in range(d, -1, -1):
        c = rem.get(k, Fraction(0))
        g[k] = c
        if c == 0:
            continue
        # subtract c * (t + 1/t)^k
        for j in range(k + 1):
            e = k - 2 * j
            rem[e] = rem.get(e, Fraction(0)) - c * _binom(k, j)
    return flint.fmpq_poly([_fq(x) for x in g])


def _binom(n, k):
    from math import comb

    return comb(n, k)


def _certified_moduli(f) -> list[tuple[float, float]]:
    """Rigorous enclosures [lo, hi] of |z| for the complex roots of f."""
    prec = 64
    while True:
        out = []
        ok = True
        for z in flint.fmpz_poly(f).complex_roots():
            r = abs(z[0] if isinstance(z, tuple) else z)
            mid, rad = float(r.mid()), float(r.rad())
            out.append((mid - rad, mid + rad))
            if rad > 1e-6:
                ok = False
        if ok or prec > 4096:
            return out
        prec *= 2  # complex_roots refines internally; loop guards pathological cases


def classify_number(p) -> NumberType:
    """Type tag for the largest real root of a monic integer polynomial."""
    if isinstance(p, AlgebraicNumber):
        lam = p
    else:
        f = as_fmpz_poly(p)
        if f.degree() < 1:
            raise PolynomialError("constant polynomial")
        if abs(int(f.leading_coefficient())) != 1:
            raise PolynomialError("polynomial must be monic")
        lam = largest_real_root(f)
    f = lam.min_poly
    if is_cyclotomic(f):
        return NumberType.ROOT_OF_UNITY
    cs = coeff_list(f)
    if abs(cs[-1]) != 1:
        return NumberType.OTHER  # not an algebraic integer
    if f.degree() == 2 and cs[0] == 1 and cs[2] == 1:
        return NumberType.RECIPROCAL_QUADRATIC
    if is_reciprocal(f) and f.degree() % 2 == 0 and f.degree() >= 4 and cs == cs[::-1]:
        g = trace_polynomial(f)
        d = g.degree()
        total = count_real_roots(g)
        outside = count_real_roots(g, Fraction(2), None) + count_real_roots(g, None, Fraction(-2))
        if evaluate(g, Fraction(-2)) == 0:
            outside -= 1  # a root at -2 counts in (-inf, -2] but lies on the circle
        inside = count_real_roots(g, Fraction(-2), Fraction(2))
        if total == d and outside == 1 and inside == d - 1 and lam > 1:
            return NumberType.SALEM
        return NumberType.OTHER
    if lam > 1:
        mods = sorted(_certified_moduli(f), key=lambda m: m[1])
        # drop lambda itself: the largest modulus enclosure
        others = mods[:-1]
        if all(hi < 1 for _, hi in others):
            return NumberType.PISOT
    return NumberType.OTHER


# ----------------------------------------------------------- exact Q(lambda)


class NumberField:
    """Q(lambda) for a real algebraic number, with sign decisions by interval refinement."""

    def __init__(self, root: AlgebraicNumber):
        self.root = root
        self.modulus = flint.fmpq_poly(root.min_poly)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, flint.fmpq_poly):
            return FieldElement(self, value % self.modulus)
        return FieldElement(self, flint.fmpq_poly([_fq(value)]))

    @property
    def gen(self) -> "FieldElement":
        return self(flint.fmpq_poly([0, 1]))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)


class FieldElement:
    __slots__ = ("field", "poly")

    def __init__(self, field: NumberField, poly: flint.fmpq_poly):
        self.field = field
        self.poly = poly

    def _lift(self, other):
        if isinstance(other, FieldElement):
            return other.poly
        return flint.fmpq_poly([_fq(other)])

    def __add__(self, other):
        return FieldElement(self.field, self.poly + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.poly - self._lift(other))

    def __rsub__(self, other):
        return FieldElement(self.field, self._lift(other) - self.poly)

    def __neg__(self):
        return FieldElement(self.field, -self.poly)

    def __mul__(self, other):
        return FieldElement(self.field, (self.poly * self._lift(other)) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero in number field")
        g, s, _ = self.poly.xgcd(self.field.modulus)
        # g is a nonzero constant since the modulus is irreducible
        return FieldElement(self.field, (s / g.coeffs()[0]) % self.field.modulus)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            other = self.field(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self.poly))

    def coefficients(self) -> list[Fraction]:
        """Rational coordinates in the power basis 1, lambda, lambda^2, ..."""
        cs = [_frac(c) for c in self.poly.coeffs()]
        return cs + [Fraction(0)] * (self.field.root.degree - len(cs))

    def enclosure(self, width: Fraction = DEFAULT_WIDTH) -> tuple[Fraction, Fraction]:
        """Rational interval containing the real value, narrower than width when possible."""
        root = self.field.root
        while True:
            lo, hi = _interval_eval(self.poly, root.lo, root.hi)
            if hi - lo <= width or root.hi - root.lo < Fraction(1, 10**80):
                return lo, hi
            root = root.refine((root.hi - root.lo) / 16)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        root = self.field.root
        while True:
            lo, hi = _interval_eval(self.poly, root.lo, root.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            root = root.refine((root.hi - root.lo) / 16)

    def __float__(self):
        lo, hi = self.enclosure(Fraction(1, 10**15))
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"FieldElement({self.poly})"


def _interval_eval(p: flint.fmpq_poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    a, b = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs()):
        c = _frac(c)
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def field_vector_pair(gram: Sequence[Sequence[int]], u: Sequence, v: Sequence):
    """u^T G v for vectors with entries in a number field (or integers)."""
    total = None
    for i, ui in enumerate(u):
        row = gram[i]
        for j, vj in enumerate(v):
            g = row[j]
            if g == 0:
                continue
            term = ui * vj * g
            total = term if total is None else total + term
    return total


def field_nullspace(rows: list[list[FieldElement]], field: NumberField) -> list[list[FieldElement]]:
    """Basis of the kernel of a matrix over a number field, by exact elimination."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    A = [[field(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero() for _ in range(n)]
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis
