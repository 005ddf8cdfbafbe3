"""
Exact arithmetic in one symbolic variable.

Rationals are :class:`fractions.Fraction`.  Polynomials and rational functions
live in ``Q[s1]`` / ``Q(s1)``; the remaining equivariant parameters ``s2, s3``
and the extra weight ``m`` are bound to rationals by a :class:`ParamContext`,
and ``s4`` is always the affine function ``-s1 - s2 - s3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd as _gcd

Rat = Fraction


class ComputationAbort(Exception):
    """A computation reached a state it cannot continue from (exit code 3 in the CLI)."""


class HigherOrderPoleError(ComputationAbort):
    pass


class ZeroWeightError(ComputationAbort):
    pass


class GenericityError(ComputationAbort):
    pass


def parse_rat(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; ints and Fractions pass through."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    text = str(text).strip()
    if "/" in text:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def format_rat(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# polynomials


def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    """Dense polynomial in s1 with rational coefficients, ascending powers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs):
        # coeffs already Fractions and stripped
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def linear(cls, a, r):
        """The polynomial ``a*s1 + r``."""
        return cls((r, a))

    @classmethod
    def s1(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_rat(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("s1" if k == 1 else f"s1^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({format_rat(c)})*{mono}")
            else:
                terms.append(format_rat(c))
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return UniPoly._raw(_strip(res))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            if not c:
                return UniPoly()
            return UniPoly._raw(tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        res = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                res[i + j] += x * y
        return UniPoly._raw(_strip(res))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        dl = d[-1]
        if len(rem) < len(d):
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - len(d) + 1)
        for k in range(len(rem) - len(d), -1, -1):
            c = rem[k + len(d) - 1] / dl
            quot[k] = c
            if c:
                for j, y in enumerate(d):
                    rem[k + j] -= c * y
        return UniPoly._raw(_strip(quot)), UniPoly._raw(_strip(rem[: len(d) - 1]))

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return UniPoly._raw(tuple(c / lc for c in self.coeffs))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(_strip([k * c for k, c in enumerate(self.coeffs)][1:]))

    def valuation(self) -> int:
        """Order of vanishing at s1 = 0 (``-1`` for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def to_json(self):
        return [format_rat(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(parse_rat(c) for c in data)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (the gcd of two zero polynomials is zero)."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.monic()
    return a.monic()


# ---------------------------------------------------------------------------
# rational functions


class RatFn:
    """Reduced quotient ``num/den`` in Q(s1) with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num)
        if den is None:
            den = UniPoly.const(1)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if num.is_zero():
            self.num, self.den = num, UniPoly.const(1)
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lead()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def s1(cls):
        return cls._raw(UniPoly.s1(), UniPoly.const(1))

    @classmethod
    def linear(cls, a, r):
        return cls._raw(UniPoly.linear(a, r), UniPoly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFn({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __add__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        # a monic constant denominator is 1; no gcd can appear
        if self.den.degree == 0:
            return RatFn._raw(self.num * other.den + other.num, other.den)
        if other.den.degree == 0:
            return RatFn._raw(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        if g.degree == 0:
            return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)
        a, b = self.den // g, other.den // g
        return RatFn(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFn):
            other = RatFn(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFn(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFn):
            c = Fraction(other)
            if not c:
                return RatFn(0)
            return RatFn._raw(self.num * c, self.den)
        if self.is_zero() or other.is_zero():
            return RatFn(0)
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, other.den) if other.den.degree > 0 else None
        g2 = poly_gcd(other.num, self.den) if self.den.degree > 0 else None
        n1, d2 = (self.num // g1, other.den // g1) if g1 is not None and g1.degree > 0 else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if g2 is not None and g2.degree > 0 else (other.num, self.den)
        num, den = n1 * n2, d1 * d2
        lc = den.lead()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFn._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFn):
            c = Fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return RatFn._raw(self.num * (1 / c), self.den)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFn(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFn._raw(self.num ** k, self.den ** k)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at s1 = {format_rat(x)}")
        return self.num(x) / d

    def substitute_affine(self, a, b) -> "RatFn":
        """Return f(a*s1 + b)."""
        lin = UniPoly.linear(a, b)

        def comp(p):
            acc = UniPoly()
            for c in reversed(p.coeffs):
                acc = acc * lin + c
            return acc

        return RatFn(comp(self.num), comp(self.den))

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(UniPoly.from_json(data["num"]), UniPoly.from_json(data["den"]))


def reduce_fraction(num: UniPoly, den: UniPoly) -> RatFn:
    """Canonical reduced representative of ``num/den``."""
    return RatFn(num, den)


def laurent_at_zero(f: RatFn, terms: int):
    """Laurent expansion of f at s1 = 0.

    Returns ``(v, coeffs)`` with ``f = sum(coeffs[k] * s1**(v + k))`` for the
    first ``terms`` coefficients.  The zero function gives ``(0, [0]*terms)``.
    """
    if f.is_zero():
        return 0, [Fraction(0)] * terms
    k = f.den.valuation()
    d = f.den.coeffs[k:]
    n = f.num.coeffs
    # power series of num/d, where d[0] != 0
    out = []
    for i in range(terms):
        acc = n[i] if i < len(n) else Fraction(0)
        for j in range(1, min(i, len(d) - 1) + 1):
            acc -= d[j] * out[i - j]
        out.append(acc / d[0])
    return -k, out


def residue_at_zero(f: RatFn) -> Fraction:
    """Coefficient of s1^-1 at s1 = 0 for f with at most a simple pole there."""
    k = f.den.valuation()
    if k == 0 or f.is_zero():
        return Fraction(0)
    if k >= 2:
        raise HigherOrderPoleError("higher-order pole")
    # f = num / (s1 * d), d(0) != 0
    return f.num.coeffs[0] / f.den.coeffs[1] if f.num.coeffs else Fraction(0)


def pole_order_at(f: RatFn, x) -> int:
    """Order of the pole of f at s1 = x (0 if regular)."""
    x = Fraction(x)
    lin = UniPoly.linear(1, -x)
    order, den = 0, f.den
    while den.degree > 0:
        q, r = den.divmod(lin)
        if not r.is_zero():
            break
        order, den = order + 1, q
    return order


@dataclass(frozen=True)
class PoleReport:
    roots: frozenset
    nonrational_factor: bool


def pole_locations(f: RatFn) -> PoleReport:
    """Rational poles of f, plus a flag for irreducible factors of degree > 1."""
    if f.den.degree == 0:
        return PoleReport(frozenset(), False)
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                     for c in f.den.coeffs])), x, domain="QQ")
    _, factors = poly.factor_list()
    roots, nonrational = set(), False
    for fac, _mult in factors:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -b / a
            roots.add(Fraction(int(r.p), int(r.q)))
        else:
            nonrational = True
    return PoleReport(frozenset(roots), nonrational)


# ---------------------------------------------------------------------------
# evaluation context


@dataclass(frozen=True)
class ParamContext:
    """Rational values for (s2, s3, m); s1 stays symbolic unless ``s1`` is set.

    ``m_shift = (d1, d2, d3, d4)`` specializes the insertion weight to
    ``m + d1*s1 + d2*s2 + d3*s3 + d4*s4``, e.g. ``m = -s4`` is
    ``ParamContext(s2, s3, 0, m_shift=(0, 0, 0, -1))``.
    """

    s2: Fraction
    s3: Fraction
    m: Fraction
    genericity_bound: int = 20
    s1: Fraction | None = None
    m_shift: tuple = (0, 0, 0, 0)

    def __post_init__(self):
        for name in ("s2", "s3", "m"):
            object.__setattr__(self, name, parse_rat(getattr(self, name)))
        if self.s1 is not None:
            object.__setattr__(self, "s1", parse_rat(self.s1))
        object.__setattr__(self, "m_shift", tuple(int(d) for d in self.m_shift))

    @property
    def symbolic(self) -> bool:
        return self.s1 is None

    def linear(self, cm, c1, c2, c3, c4):
        """Reduce ``cm*m + sum ci*si`` to ``(a, r)`` meaning ``a*s1 + r``."""
        d1, d2, d3, d4 = self.m_shift
        c1, c2, c3, c4 = c1 + cm * d1, c2 + cm * d2, c3 + cm * d3, c4 + cm * d4
        a = c1 - c4
        r = (c2 - c4) * self.s2 + (c3 - c4) * self.s3 + cm * self.m
        return a, r

    def value(self, a, r):
        """Field element for ``a*s1 + r`` in this context's mode."""
        if self.s1 is None:
            return RatFn.linear(a, r)
        return a * self.s1 + r

    def field(self, x):
        """Coerce a rational into this context's coefficient field."""
        return RatFn(x) if self.s1 is None else Fraction(x)

    def var(self, i: int):
        """s_i as a field element (i in 1..4)."""
        coeffs = [0, 0, 0, 0]
        coeffs[i - 1] = 1
        return self.value(*self.linear(0, *coeffs))

    def m_value(self):
        return self.value(*self.linear(1, 0, 0, 0, 0))

    def with_s1(self, s1) -> "ParamContext":
        return ParamContext(self.s2, self.s3, self.m, self.genericity_bound, s1, self.m_shift)

    def with_m(self, m, m_shift=(0, 0, 0, 0)) -> "ParamContext":
        return ParamContext(self.s2, self.s3, m, self.genericity_bound, self.s1, m_shift)

    def scaled(self, lam) -> "ParamContext":
        lam = parse_rat(lam)
        s1 = None if self.s1 is None else self.s1 * lam
        return ParamContext(self.s2 * lam, self.s3 * lam, self.m * lam,
                            self.genericity_bound, s1, self.m_shift)

    def to_json(self):
        out = {"s2": format_rat(self.s2), "s3": format_rat(self.s3), "m": format_rat(self.m)}
        if self.s1 is not None:
            out["s1"] = format_rat(self.s1)
        if any(self.m_shift):
            out["m_shift"] = list(self.m_shift)
        return out

    def genericity_violation(self, check_m: bool = True):
        """First vanishing bounded integer combination, or None.

        Symbolic mode checks ``a*s2 + b*s3 (+ c*m)``; with s1 bound, the s1
        coefficient joins the search.  Coefficients range over
        ``|.| <= 2*B`` because ``d*(s2+s3)`` folds into the s2/s3 slots.
        """
        K = 2 * self.genericity_bound
        names = ["s2", "s3"] + (["m"] if check_m else []) + ([] if self.s1 is None else ["s1"])
        vals = [self.s2, self.s3] + ([self.m] if check_m else []) + ([] if self.s1 is None else [self.s1])
        if any(v == 0 for v in vals):
            i = next(i for i, v in enumerate(vals) if v == 0)
            return {names[i]: 1}
        return _find_relation(vals, names, K)


def _find_relation(vals, names, K):
    # Integer relation search, meet-in-the-middle over the two halves.
    den = 1
    for v in vals:
        den = den * v.denominator // _gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    half = len(ints) // 2
    left, right = ints[:half], ints[half:]
    rng = range(-K, K + 1)
    table = {}
    for cs in product(rng, repeat=len(left)):
        table.setdefault(sum(c * v for c, v in zip(cs, left)), cs)
    for cs in product(rng, repeat=len(right)):
        s = -sum(c * v for c, v in zip(cs, right))
        hit = table.get(s)
        if hit is None:
            continue
        full = hit + cs
        if any(full):
            return _primitive(names, full)
        # hit was the zero combination; any other left combination with the same sum?
        if s == 0 and left:
            for lc in product(rng, repeat=len(left)):
                if any(lc) and sum(c * v for c, v in zip(lc, left)) == 0:
                    return _primitive(names, lc + cs)
    return None


def _primitive(names, coeffs):
    g = 0
    for c in coeffs:
        g = _gcd(g, c)
    return {n: c // g for n, c in zip(names, coeffs) if c}


def e3_bar(ctx: ParamContext):
    """-(s1+s2)(s1+s3)(s2+s3), the CY specialization of e3(s1, s2, s3, s4)."""
    s1, s2, s3 = ctx.var(1), ctx.var(2), ctx.var(3)
    return -((s1 + s2) * (s1 + s3) * (s2 + s3))
