"""Truncated power series in q over Q or Q(s1)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact import RatFn, format_rat, parse_rat


class OrderMismatch(ValueError):
    pass


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, RatFn) else not c


class QSeries:
    """Coefficients of q^0 .. q^order; every operation truncates at ``order``.

    Coefficients are either all Fractions or all RatFns.  Mixing a rational
    scalar into a RatFn series is fine; mixing two series of different order
    raises :class:`OrderMismatch`.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        zero = _zero_like(coeffs[0]) if coeffs else Fraction(0)
        coeffs = coeffs[: order + 1] + [zero] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, order: int, field=Fraction):
        return cls([field(1)] + [field(0)] * order, order)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"QSeries(order={self.order}, coeffs={list(self.coeffs)!r})"

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            body = format_rat(c) if isinstance(c, Fraction) else f"({c})"
            terms.append(body if n == 0 else f"{body}*q^{n}")
        return " + ".join(terms) if terms else "0"

    def _check(self, other):
        if not isinstance(other, QSeries):
            raise TypeError("expected QSeries")
        if other.order != self.order:
            raise OrderMismatch(f"order mismatch: {self.order} vs {other.order}")

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        self._check(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([a * other for a in self.coeffs], self.order)
        self._check(other)
        N = self.order
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(N + 1):
            acc = None
            for k in range(n + 1):
                if _is_zero(a[k]) or _is_zero(b[n - k]):
                    continue
                t = a[k] * b[n - k]
                acc = t if acc is None else acc + t
            out.append(_zero_like(a[0]) if acc is None else acc)
        return QSeries(out, N)

    def __rmul__(self, other):
        return QSeries([other * a for a in self.coeffs], self.order)

    def map(self, fn) -> "QSeries":
        return QSeries([fn(c) for c in self.coeffs], self.order)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise OrderMismatch("cannot extend a truncated series")
        return QSeries(self.coeffs[: order + 1], order)

    def evaluate(self, s1) -> "QSeries":
        """Evaluate every RatFn coefficient at s1 (rational coefficients pass through)."""
        return self.map(lambda c: c(s1) if isinstance(c, RatFn) else c)

    def to_json(self):
        return {"order": self.order, "coeffs": [_encode(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls([_decode(c) for c in data["coeffs"]], data["order"])


def _zero_like(c):
    return RatFn(0) if isinstance(c, RatFn) else Fraction(0)


def _one_like(c):
    return RatFn(1) if isinstance(c, RatFn) else Fraction(1)


def _encode(c):
    return c.to_json() if isinstance(c, RatFn) else format_rat(c)


def _decode(c):
    return RatFn.from_json(c) if isinstance(c, dict) else parse_rat(c)


def series_log(Z: QSeries) -> QSeries:
    """log Z for a series with constant term 1."""
    if Z[0] != 1:
        raise ValueError("log of non-unital series")
    N = Z.order
    zero = _zero_like(Z[0])
    # n*l_n = n*z_n - sum_{k=1}^{n-1} k*l_k*z_{n-k}
    L = [zero]
    for n in range(1, N + 1):
        acc = Z[n] * n
        for k in range(1, n):
            if _is_zero(L[k]) or _is_zero(Z[n - k]):
                continue
            acc = acc - L[k] * Z[n - k] * k
        L.append(acc * Fraction(1, n))
    return QSeries(L, N)


def series_exp(F: QSeries) -> QSeries:
    """exp F for a series with constant term 0."""
    if not _is_zero(F[0]):
        raise ValueError("exp of series with nonzero constant term")
    N = F.order
    G = [_one_like(F[0])]
    for n in range(1, N + 1):
        acc = None
        for k in range(1, n + 1):
            if _is_zero(F[k]) or _is_zero(G[n - k]):
                continue
            t = F[k] * G[n - k] * k
            acc = t if acc is None else acc + t
        G.append(_zero_like(F[0]) if acc is None else acc * Fraction(1, n))
    return QSeries(G, N)


@lru_cache(maxsize=None)
def sigma2(n: int) -> int:
    return sum(d * d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def _macmahon_coeffs(N: int):
    # Euler transform of a_k = k:  n*c_n = sum_{k=1}^n sigma2(k) c_{n-k}
    c = [1]
    for n in range(1, N + 1):
        c.append(sum(sigma2(k) * c[n - k] for k in range(1, n + 1)) // n)
    return tuple(c)


def macmahon(N: int) -> QSeries:
    """M(q) = prod_{n>=1} (1 - q^n)^(-n), truncated at q^N."""
    return QSeries([Fraction(c) for c in _macmahon_coeffs(N)], N)


def log_macmahon_neg(N: int) -> QSeries:
    """log M(-q): the q^n coefficient is (-1)^n sigma2(n)/n."""
    return QSeries([Fraction(0)] + [Fraction((-1) ** n * sigma2(n), n) for n in range(1, N + 1)], N)


def macmahon_power(E, N: int) -> QSeries:
    """M(-q)^E := exp(E * log M(-q)) for a field element E."""
    lm = log_macmahon_neg(N)
    if isinstance(E, RatFn):
        return series_exp(QSeries([E * c for c in lm.coeffs], N))
    E = Fraction(E)
    return series_exp(lm * E)


def convolve_check(Z: QSeries, Zminus: QSeries, Zplus: QSeries) -> bool:
    """Coefficientwise check of Z_n = sum_{a+b=n} Zminus_a * Zplus_b."""
    Z._check(Zminus)
    Z._check(Zplus)
    return Zminus * Zplus == Z
