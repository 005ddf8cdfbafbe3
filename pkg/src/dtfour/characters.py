"""
Torus characters and their equivariant Euler classes.

A weight ``t1^c1 t2^c2 t3^c3 t4^c4 e^(cm m)`` is stored additively as the
integer vector ``(cm, c1, c2, c3, c4)``; its Euler class is the linear form
``cm*m + c1*s1 + ... + c4*s4`` (not its negative).  Characters are context
free.  The Calabi-Yau relation ``t1 t2 t3 t4 = 1`` is applied by
:meth:`Weight.cy_normal`, which eliminates t4; numbers only enter in
:func:`euler`.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

from .exact import ParamContext, RatFn, UniPoly, ZeroWeightError
from .partitions import PlanePartition, SolidPartition


class NotSelfDual(ValueError):
    pass


class Weight(NamedTuple):
    cm: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0
    c4: int = 0

    def __neg__(self):
        return Weight(*(-c for c in self))

    def __add__(self, other):
        return Weight(*(a + b for a, b in zip(self, other)))

    def cy_normal(self) -> "Weight":
        """Representative with c4 = 0 under t1 t2 t3 t4 = 1."""
        cm, c1, c2, c3, c4 = self
        return Weight(cm, c1 - c4, c2 - c4, c3 - c4, 0)

    def order_key(self):
        """(s1, s2, s3, m) coefficients of the CY-reduced form, for the canonical split."""
        cm, c1, c2, c3, _ = self.cy_normal()
        return (c1, c2, c3, cm)

    def is_positive(self) -> bool:
        return self.order_key() > (0, 0, 0, 0)

    def is_zero(self) -> bool:
        return not any(self)

    def __str__(self):
        return " + ".join(f"{c}*{v}" for c, v in zip(self, ("m", "s1", "s2", "s3", "s4")))


ZERO = Weight()


def t(c1=0, c2=0, c3=0, c4=0, cm=0) -> Weight:
    return Weight(cm, c1, c2, c3, c4)


class Character:
    """Finite virtual sum of weights with nonzero integer multiplicities."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            acc = Counter()
            for w in terms:
                acc[Weight(*w)] += 1
            terms = acc
        self._terms = {Weight(*w): c for w, c in terms.items() if c}

    def items(self):
        return self._terms.items()

    def __getitem__(self, w):
        return self._terms.get(Weight(*w), 0)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, Character) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"Character({dump(self)!r})"

    @property
    def rank(self) -> int:
        return sum(self._terms.values())

    def __add__(self, other):
        acc = Counter(self._terms)
        for w, c in other.items():
            acc[w] += c
        return Character(dict(acc))

    def __neg__(self):
        return Character({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Character({w: c * other for w, c in self._terms.items()})
        acc = Counter()
        for w1, c1 in self._terms.items():
            for w2, c2 in other.items():
                acc[w1 + w2] += c1 * c2
        return Character(dict(acc))

    __rmul__ = __mul__

    def shift(self, w: Weight) -> "Character":
        """Tensor with the one-dimensional character t^w."""
        return Character({v + w: c for v, c in self._terms.items()})

    def bar(self) -> "Character":
        return Character({-w: c for w, c in self._terms.items()})

    def cy_normal(self) -> "Character":
        acc = Counter()
        for w, c in self._terms.items():
            acc[w.cy_normal()] += c
        return Character(dict(acc))


def dump(X: Character) -> str:
    """Debug dump, one ``weight : mult`` per line, canonically sorted."""
    lines = []
    for w, c in sorted(X.items(), key=lambda wc: (wc[0].order_key(), tuple(wc[0]))):
        lines.append(f"{w.cm}*m + {w.c1}*s1 + {w.c2}*s2 + {w.c3}*s3 + {w.c4}*s4 : {c}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# fixed-point characters


def q_char(pi: SolidPartition) -> Character:
    """H^0(O_Z) at the fixed point pi: one weight t^(box - 1) per box."""
    return Character([t(i - 1, j - 1, k - 1, l - 1) for i, j, k, l in pi.boxes()])


def insertion_weights(pi: SolidPartition) -> list:
    """Weights of L_m^[n] at pi: m + (i-1)s1 + (j-1)s2 + (k-1)s3 + (l-1)s4."""
    return [t(i - 1, j - 1, k - 1, l - 1, cm=1) for i, j, k, l in pi.boxes()]


def _one_minus_product(axes) -> Character:
    # prod_{a in axes} (1 - t_a)
    acc = Counter()
    for sub in product((0, 1), repeat=len(axes)):
        w = [0, 0, 0, 0]
        for a, bit in zip(axes, sub):
            w[a] += bit
        acc[t(*w)] += (-1) ** sum(sub)
    return Character(dict(acc))


P4 = _one_minus_product((0, 1, 2, 3))
P123 = _one_minus_product((0, 1, 2))


@lru_cache(maxsize=None)
def tvir_4d(pi: SolidPartition) -> Character:
    """T^vir = Q + Qbar - Q Qbar P under t1 t2 t3 t4 = 1, in CY-normal form."""
    Q = q_char(pi)
    T = (Q + Q.bar() - Q * Q.bar() * P4).cy_normal()
    for w, c in T.items():
        if w.is_zero():
            raise ZeroWeightError("self-dual zero weight")
    return T


@lru_cache(maxsize=None)
def reference_root(pi: SolidPartition) -> Character:
    """The square root Q - Q Qbar (1-t1)(1-t2)(1-t3) of T^vir, CY-normalized."""
    Q = q_char(pi)
    return (Q - Q * Q.bar() * P123).cy_normal()


def vertex_3d(lam: PlanePartition) -> Character:
    """3-fold vertex V = Q - Qbar/(t1t2t3) + Q Qbar (1-t1)(1-t2)(1-t3)/(t1t2t3)."""
    Q = Character([t(i - 1, j - 1, k - 1) for i, j, k in lam.boxes()])
    inv = t(-1, -1, -1)
    V = Q - Q.bar().shift(inv) + (Q * Q.bar() * P123).shift(inv)
    if V[ZERO]:
        raise ZeroWeightError("zero weight in 3-fold vertex")
    return V


def square_root(T: Character) -> Character:
    """Canonical half of a self-dual character: keep the positive member of each pair."""
    T = T.cy_normal()
    if T[ZERO]:
        raise NotSelfDual("not self-dual: zero weight present")
    for w, c in T.items():
        if T[-w] != c:
            raise NotSelfDual(f"not self-dual: {w} has multiplicity {c}, dual has {T[-w]}")
    return Character({w: c for w, c in T.items() if w.is_positive()})


def split_flips(v: Character) -> int:
    """Total multiplicity of v on non-positive weights (dual pairs it takes 'the other way')."""
    return sum(c for w, c in v.cy_normal().items() if not w.is_positive())


# ---------------------------------------------------------------------------
# Euler classes


def euler_factors(X: Character, ctx: ParamContext):
    """Factored Euler class ``(scalar, {c: e})`` meaning ``scalar * prod (s1 + c)^e``.

    Symbolic mode only.  Returns ``(0, {})`` when a zero weight occurs with
    positive multiplicity.
    """
    scalar = Fraction(1)
    exps = Counter()
    zero_hit = False
    for w, mult in X.items():
        a, r = ctx.linear(*w)
        if a == 0:
            if r == 0:
                if mult < 0:
                    raise ZeroWeightError("division by zero weight - regenerate context")
                zero_hit = True
                continue
            scalar *= r ** mult
        else:
            scalar *= Fraction(a) ** mult
            exps[r / a] += mult
    if zero_hit:
        return Fraction(0), {}
    return scalar, {c: e for c, e in exps.items() if e}


def factored_to_ratfn(scalar, exps) -> RatFn:
    if not scalar:
        return RatFn(0)
    num, den = UniPoly.const(scalar), UniPoly.const(1)
    for c, e in sorted(exps.items()):
        lin = UniPoly.linear(1, c)
        if e > 0:
            num = num * lin ** e
        else:
            den = den * lin ** (-e)
    # distinct monic linear factors are coprime, so this is already reduced
    return RatFn._raw(num, den)


def euler(X: Character, ctx: ParamContext):
    """prod_w (linear form of w)^mult: a RatFn in s1, or a Fraction if s1 is bound."""
    if ctx.symbolic:
        return factored_to_ratfn(*euler_factors(X, ctx))
    acc = Fraction(1)
    zero_hit = False
    for w, mult in X.items():
        val = ctx.value(*ctx.linear(*w))
        if val == 0:
            if mult < 0:
                raise ZeroWeightError("division by zero weight - regenerate context")
            zero_hit = True
            continue
        acc *= val ** mult
    return Fraction(0) if zero_hit else acc
