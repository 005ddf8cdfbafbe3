"""
Closed-form MacMahon-power series: C^4 with tautological insertion, the
relative and rubber pieces of the blown-up geometry (X, D_inf), twisted line
bundles, and log Calabi-Yau local curves.

All exponents are field elements of the context (RatFn in s1, or Fraction
when s1 is bound), with ``s4 = -s1 - s2 - s3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import ComputationAbort, ParamContext, residue_at_zero
from .qseries import QSeries, convolve_check, macmahon_power, series_exp, series_log


class InvalidTopologicalData(ComputationAbort):
    pass


def _vars(ctx: ParamContext):
    return ctx.var(1), ctx.var(2), ctx.var(3), ctx.var(4)


def ck_exponent(ctx: ParamContext):
    """-m e3(s) / (s1 s2 s3 s4)."""
    s1, s2, s3, s4 = _vars(ctx)
    m = ctx.m_value()
    e3 = s2 * s3 * s4 + s1 * s3 * s4 + s1 * s2 * s4 + s1 * s2 * s3
    return -(m * e3) / (s1 * s2 * s3 * s4)


def ck_closed_form(n_max: int, ctx: ParamContext) -> QSeries:
    return macmahon_power(ck_exponent(ctx), n_max)


def no_insertion_exponent(ctx: ParamContext):
    """-(s1+s2)(s1+s3)(s2+s3) / (s1 s2 s3 (s1+s2+s3)), the q-coefficient in the exponential."""
    s1, s2, s3, _ = _vars(ctx)
    return -((s1 + s2) * (s1 + s3) * (s2 + s3)) / (s1 * s2 * s3 * (s1 + s2 + s3))


def no_insertion_closed(n_max: int, ctx: ParamContext, exponent=None) -> QSeries:
    """exp(c * q) with c the given q-coefficient (default: :func:`no_insertion_exponent`)."""
    c = no_insertion_exponent(ctx) if exponent is None else exponent
    zero = ctx.field(0)
    return series_exp(QSeries([zero, c], n_max))


def mnop_exponent(ctx: ParamContext):
    """ebar3 / (s1 s2 s3) with ebar3 = -(s1+s2)(s1+s3)(s2+s3)."""
    s1, s2, s3, _ = _vars(ctx)
    return -((s1 + s2) * (s1 + s3) * (s2 + s3)) / (s1 * s2 * s3)


def mnop_closed(n_max: int, ctx: ParamContext) -> QSeries:
    return macmahon_power(mnop_exponent(ctx), n_max)


def w_infinity_exponent(ctx: ParamContext):
    return ctx.m_value() / ctx.var(1)


def w_infinity(n_max: int, ctx: ParamContext) -> QSeries:
    """W_inf = M(-q)^(m/s1)."""
    return macmahon_power(w_infinity_exponent(ctx), n_max)


def z_rel_exponent(ctx: ParamContext):
    """-m (s2 s3 + s3 s4 + s2 s4) / (s2 s3 s4)."""
    _, s2, s3, s4 = _vars(ctx)
    return -(ctx.m_value() * (s2 * s3 + s3 * s4 + s2 * s4)) / (s2 * s3 * s4)


def z_rel_closed(n_max: int, ctx: ParamContext) -> QSeries:
    """Z(X, D_inf) for X = Tot(O(-1) + O + O) over P^1."""
    return macmahon_power(z_rel_exponent(ctx), n_max)


def _shift_m_by_s1(ctx: ParamContext, l: int) -> ParamContext:
    d1, d2, d3, d4 = ctx.m_shift
    return ctx.with_m(ctx.m, (d1 + l, d2, d3, d4))


def z_rel_twisted(l: int, n_max: int, ctx: ParamContext, route: str = "product") -> QSeries:
    """Z_{L[l]}(X, D_inf).

    ``route="product"``: Z(X, D_inf) * M(-q)^l.
    ``route="substitution"``: Z(C^4) * W_inf with m -> m + l*s1 in W_inf only.
    """
    if route == "product":
        return z_rel_closed(n_max, ctx) * macmahon_power(ctx.field(l), n_max)
    if route == "substitution":
        return ck_closed_form(n_max, ctx) * w_infinity(n_max, _shift_m_by_s1(ctx, l))
    raise ValueError(f"unknown route {route!r}")


def f_inf0_residue(Z: QSeries) -> QSeries:
    """F_{inf,0} = minus the s1 = 0 residue of log Z, coefficientwise (over Q)."""
    L = series_log(Z)
    return QSeries([Fraction(0)] + [-residue_at_zero(c) for c in L.coeffs[1:]], Z.order)


def w_from_f_inf0(F0: QSeries, ctx: ParamContext) -> QSeries:
    """1 + sum_l F_{inf,l} / s1^(l+1) with F_{inf,l} = F0^(l+1)/(l+1)!.

    F0 has no constant term, so only l < order contributes.
    """
    N = F0.order
    s1 = ctx.var(1)
    total = QSeries.one(N, ctx.field)
    power = QSeries.one(N, Fraction)
    for l in range(N):
        power = power * F0
        coef = ctx.field(Fraction(1, factorial(l + 1))) / s1 ** (l + 1)
        total = total + QSeries([coef * c for c in power.coeffs], N)
    return total


def w_from_exp(F0: QSeries, ctx: ParamContext) -> QSeries:
    """exp(F0 / s1)."""
    inv = 1 / ctx.var(1)
    return series_exp(QSeries([inv * c for c in F0.coeffs], F0.order))


# ---------------------------------------------------------------------------
# local curves


@dataclass(frozen=True)
class LocalCurveData:
    """Genus, degrees of L1, L2, L3, and of the insertion bundle L."""

    g: int
    l1: int
    l2: int
    l3: int
    l: int

    @property
    def r(self) -> int:
        """Number of relative fibers: l1 + l2 + l3 = 2g - 2 + r."""
        return self.l1 + self.l2 + self.l3 - (2 * self.g - 2)

    def validate(self):
        if self.g < 0 or self.r < 0:
            raise InvalidTopologicalData(
                f"invalid topological data (g={self.g}, r={self.r}) for {self.as_tuple()}")
        return self

    def as_tuple(self):
        return (self.g, self.l1, self.l2, self.l3, self.l)

    def __add__(self, other):
        return LocalCurveData(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __sub__(self, other):
        return LocalCurveData(*(a - b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __str__(self):
        return f"({self.g}; {self.l1}, {self.l2}, {self.l3}; {self.l})"


@dataclass(frozen=True)
class SplittingDatum:
    left: LocalCurveData
    right: LocalCurveData

    def validate_against(self, whole: LocalCurveData):
        self.left.validate()
        self.right.validate()
        if self.left + self.right != whole:
            raise InvalidTopologicalData(
                f"invalid split: {self.left} + {self.right} != {whole}")
        return self


def local_curve_exponent(data: LocalCurveData, ctx: ParamContext):
    """deg L - m (1/s2 + 1/s3 + 1/s4)(2 - 2g - r)."""
    data.validate()
    _, s2, s3, s4 = _vars(ctx)
    euler_char = 2 - 2 * data.g - data.r
    return ctx.field(data.l) - ctx.m_value() * (1 / s2 + 1 / s3 + 1 / s4) * euler_char


def local_curve_series(data: LocalCurveData, ctx: ParamContext, n_max: int) -> QSeries:
    return macmahon_power(local_curve_exponent(data, ctx), n_max)


def gluing_check(whole: LocalCurveData, split: SplittingDatum, ctx: ParamContext, N: int) -> bool:
    """Exponent additivity and series multiplicativity for one degeneration."""
    split.validate_against(whole.validate())
    E = local_curve_exponent(whole, ctx)
    Em = local_curve_exponent(split.left, ctx)
    Ep = local_curve_exponent(split.right, ctx)
    if E != Em + Ep:
        return False
    return convolve_check(macmahon_power(E, N), macmahon_power(Em, N), macmahon_power(Ep, N))


def relabel_context(ctx: ParamContext, cycle: int = 1) -> ParamContext:
    """Apply (s2, s3, s4) -> (s3, s4, s2) ``cycle`` times; needs s1 bound."""
    if ctx.symbolic:
        raise ValueError("relabeling s4 into s2/s3 needs a fully numeric context")
    s2, s3 = ctx.s2, ctx.s3
    for _ in range(cycle % 3):
        s4 = -ctx.s1 - s2 - s3
        s2, s3 = s3, s4
    return ParamContext(s2, s3, ctx.m, ctx.genericity_bound, ctx.s1, ctx.m_shift)
