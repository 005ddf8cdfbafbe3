"""
Localization sums over torus-fixed points.

The 4-fold vertex enters through a square root of the self-dual obstruction
character, and the per-fixed-point sign ``eps * (-1)^sigma(pi)`` is fitted
against the closed formula on sizes <= 2 only (:func:`calibrate_sign_rule`).
Sizes 3 and up are then a blind check.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product

from .characters import (
    Character,
    euler,
    euler_factors,
    insertion_weights,
    reference_root,
    split_flips,
    square_root,
    tvir_4d,
    vertex_3d,
)
from .exact import ComputationAbort, ParamContext, RatFn, UniPoly
from .formulas import ck_closed_form
from .partitions import SolidPartition, divisor_support, enumerate_plane, enumerate_solid
from .qseries import QSeries

log = logging.getLogger(__name__)


class SignFamilyError(ComputationAbort):
    pass


# ---------------------------------------------------------------------------
# sign statistics
#
# Boxes are 1-based (i, j, k, l) with l the height coordinate.


def _stat_size(pi):
    return pi.size


def _stat_raised(pi):
    return sum(1 for b in pi.boxes() if b[3] > 1)


def _stat_diag_il(pi):
    return sum(1 for b in pi.boxes() if b[0] == b[3])


def _stat_below_il(pi):
    return sum(1 for b in pi.boxes() if b[0] < b[3])


def _stat_transport(pi):
    # #{(a,a,a,b) : a < b} is the sign statistic attached to reference_root();
    # moving to the canonical split flips one sign per pair taken the other way.
    diagonal = sum(1 for i, j, k, l in pi.boxes() if i == j == k < l)
    return diagonal + split_flips(reference_root(pi))


STATISTICS = {
    "size": _stat_size,
    "raised": _stat_raised,
    "diag_il": _stat_diag_il,
    "below_il": _stat_below_il,
    "transport": _stat_transport,
}

# the first four form the base family; "transport" is the extension
BASE_FAMILY = ("size", "raised", "diag_il", "below_il")
EXTENDED_FAMILY = BASE_FAMILY + ("transport",)


@dataclass(frozen=True)
class SignRule:
    """sign(pi) = eps * (-1)^(sum of the active statistics of pi)."""

    stats: tuple = ()
    eps: int = 1
    flipped: frozenset = frozenset()
    record: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def identifier(self) -> str:
        body = "+".join(self.stats) if self.stats else "0"
        tag = f"eps={'+' if self.eps > 0 else '-'}1;sigma={body}"
        if self.flipped:
            tag += f";flipped={len(self.flipped)}"
        return tag

    def sigma(self, pi: SolidPartition) -> int:
        return sum(STATISTICS[name](pi) for name in self.stats)

    def sign(self, pi: SolidPartition) -> int:
        s = self.eps * (-1) ** self.sigma(pi)
        return -s if pi in self.flipped else s

    def corrupted(self, pi: SolidPartition) -> "SignRule":
        """Negative control: the same rule with the sign of ``pi`` reversed."""
        return SignRule(self.stats, self.eps, self.flipped ^ {pi}, dict(self.record))


def candidate_family(names=EXTENDED_FAMILY):
    for bits in product((0, 1), repeat=len(names)):
        stats = tuple(n for n, b in zip(names, bits) if b)
        for eps in (1, -1):
            yield SignRule(stats, eps)


# ---------------------------------------------------------------------------
# per-fixed-point contributions


@lru_cache(maxsize=None)
def vertex_root(pi: SolidPartition) -> Character:
    return square_root(tvir_4d(pi))


def _unsigned_factors(pi, ctx, insertion):
    scalar, exps = euler_factors(vertex_root(pi), ctx)
    if not scalar:
        raise ComputationAbort("division by zero weight - regenerate context")
    scalar, exps = 1 / scalar, Counter({c: -e for c, e in exps.items()})
    if insertion:
        for w in insertion_weights(pi):
            s, ex = euler_factors(Character({w: 1}), ctx)
            if not s:
                return Fraction(0), {}
            scalar *= s
            for c, e in ex.items():
                exps[c] += e
    return scalar, {c: e for c, e in exps.items() if e}


def _unsigned(pi, ctx, insertion):
    if ctx.symbolic:
        return _unsigned_factors(pi, ctx, insertion)
    val = 1 / euler(vertex_root(pi), ctx)
    if insertion:
        for w in insertion_weights(pi):
            val *= euler(Character({w: 1}), ctx)
    return val


def contribution_4d(pi: SolidPartition, ctx: ParamContext, rule: SignRule, insertion: bool = True):
    """sign(pi) * e(L_m^[n]|pi) / e(v_pi); RatFn in s1, or Fraction if s1 is bound."""
    val = _unsigned(pi, ctx, insertion)
    sgn = rule.sign(pi)
    if ctx.symbolic:
        scalar, exps = val
        return sum_factored([(sgn * scalar, exps)])
    return sgn * val


def _mul_linear(poly, q, p):
    # poly * (q*s1 + p), integer coefficients, ascending
    out = [0] * (len(poly) + 1)
    for i, a in enumerate(poly):
        out[i] += a * p
        out[i + 1] += a * q
    return out


def partial_sum(terms):
    """Unreduced sum of ``scalar * prod (s1 + c)^e`` terms.

    Returns ``(num, den_exp)`` meaning ``num / prod (s1 + c)^den_exp[c]``.
    Products run over integers, with ``s1 + p/q = (q*s1 + p)/q``.
    """
    terms = [(s, e) for s, e in terms if s]
    den_exp = Counter()
    for _, exps in terms:
        for c, e in exps.items():
            if e < 0:
                den_exp[c] = max(den_exp[c], -e)
    acc = []
    for scalar, exps in terms:
        poly, scale = [1], Fraction(scalar)
        for c in set(exps) | set(den_exp):
            k = exps.get(c, 0) + den_exp.get(c, 0)
            for _ in range(k):
                poly = _mul_linear(poly, c.denominator, c.numerator)
            scale /= c.denominator ** k
        acc += [Fraction(0)] * (len(poly) - len(acc))
        for i, a in enumerate(poly):
            if a:
                acc[i] += scale * a
    return UniPoly(acc), dict(den_exp)


def merge_partials(partials) -> RatFn:
    """Add unreduced partial sums and cancel common linear factors."""
    den_exp = Counter()
    for _, d in partials:
        for c, e in d.items():
            den_exp[c] = max(den_exp[c], e)
    num = UniPoly()
    for pnum, d in partials:
        for c in sorted(den_exp):
            k = den_exp[c] - d.get(c, 0)
            if k:
                pnum = pnum * UniPoly.linear(1, c) ** k
        num = num + pnum
    if num.is_zero():
        return RatFn(0)
    # the denominator is a product of known linear factors: cancel root by root
    for c in sorted(den_exp):
        lin = UniPoly.linear(1, c)
        while den_exp[c] and num(-c) == 0:
            num = num // lin
            den_exp[c] -= 1
    den = UniPoly.const(1)
    for c in sorted(den_exp):
        if den_exp[c]:
            den = den * UniPoly.linear(1, c) ** den_exp[c]
    return RatFn._raw(num, den)


def sum_factored(terms) -> RatFn:
    """Sum of ``scalar * prod (s1 + c)^e`` terms as a reduced RatFn."""
    return merge_partials([partial_sum(terms)])


def _signed_terms(parts, ctx, rule, insertion):
    out = []
    for pi in parts:
        scalar, exps = _unsigned(pi, ctx, insertion)
        out.append((rule.sign(pi) * scalar, exps))
    return out


def _coefficient(parts, ctx, rule, insertion):
    if ctx.symbolic:
        return sum_factored(_signed_terms(parts, ctx, rule, insertion))
    return sum((rule.sign(pi) * _unsigned(pi, ctx, insertion) for pi in parts), Fraction(0))


def _partial_job(args):
    parts, ctx, rule, insertion = args
    if ctx.symbolic:
        return partial_sum(_signed_terms(parts, ctx, rule, insertion))
    return _coefficient(parts, ctx, rule, insertion)


def default_jobs() -> int:
    env = os.environ.get("DTFOUR_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _chunks(seq, k):
    size = max(1, -(-len(seq) // k))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _series(n_max, ctx, rule, insertion, jobs, select=None):
    coeffs = [ctx.field(1)]
    for n in range(1, n_max + 1):
        parts = list(enumerate_solid(n))
        if select is not None:
            parts = [p for p in parts if select(p)]
        if jobs > 1 and len(parts) >= 4 * jobs:
            chunks = _chunks(parts, jobs)
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                pieces = list(pool.map(_partial_job, [(c, ctx, rule, insertion) for c in chunks]))
            # chunk order is fixed and the merge is exact, so the result is independent of jobs
            coeffs.append(merge_partials(pieces) if ctx.symbolic else sum(pieces, Fraction(0)))
        else:
            coeffs.append(_coefficient(parts, ctx, rule, insertion))
    return QSeries(coeffs, n_max)


def z_c4_localized(n_max: int, ctx: ParamContext, rule: SignRule, jobs: int = 1) -> QSeries:
    """1 + sum_n q^n sum_{|pi| = n} contribution_4d(pi)."""
    return _series(n_max, ctx, rule, True, jobs)


def z_c4_no_insertion(n_max: int, ctx: ParamContext, rule: SignRule, jobs: int = 1) -> QSeries:
    return _series(n_max, ctx, rule, False, jobs)


def z_c4_divisor_supported(n_max: int, ctx: ParamContext, rule: SignRule) -> QSeries:
    """The 4-fold sum restricted to partitions with all heights 1."""
    return _series(n_max, ctx, rule, True, 1, select=lambda p: divisor_support(p) is not None)


def z_c4_unsupported(n_max: int, ctx: ParamContext, rule: SignRule) -> QSeries:
    """The 4-fold sum over partitions with some height > 1."""
    return _series(n_max, ctx, rule, True, 1, select=lambda p: divisor_support(p) is None)


def contribution_3d(lam, ctx: ParamContext):
    """e(-V_lambda)."""
    return euler(-vertex_3d(lam), ctx)


def z_c3_localized(n_max: int, ctx: ParamContext) -> QSeries:
    """Degree-zero 3-fold vertex series: sum over plane partitions of e(-V)."""
    coeffs = [ctx.field(1)]
    for n in range(1, n_max + 1):
        total = ctx.field(0)
        for lam in enumerate_plane(n):
            total = total + contribution_3d(lam, ctx)
        coeffs.append(total)
    return QSeries(coeffs, n_max)


# ---------------------------------------------------------------------------
# calibration


def calibrate_sign_rule(n_cal: int, contexts, family=EXTENDED_FAMILY) -> SignRule:
    """Fit the sign rule on sizes <= n_cal against the closed formula.

    Every candidate in the family reproducing the closed-form coefficients for
    all n <= n_cal at every context survives.  The returned rule is the
    survivor with the fewest active statistics; ties are kept in
    ``record["selected"]`` and must agree in validation
    (:func:`validate_sign_rule`).
    """
    if n_cal > 2:
        raise ValueError("calibration uses sizes <= 2 only")
    contexts = list(contexts)
    if len(contexts) < 2:
        raise ValueError("calibration needs at least two contexts")
    data = []
    for ctx in contexts:
        target = ck_closed_form(n_cal, ctx)
        for n in range(1, n_cal + 1):
            parts = list(enumerate_solid(n))
            unsigned = [_unsigned(p, ctx, True) for p in parts]
            data.append((ctx, n, parts, unsigned, target[n]))

    survivors = []
    for rule in candidate_family(family):
        ok = True
        for ctx, _n, parts, unsigned, target in data:
            if ctx.symbolic:
                val = sum_factored([(rule.sign(p) * s, e) for p, (s, e) in zip(parts, unsigned)])
            else:
                val = sum((rule.sign(p) * u for p, u in zip(parts, unsigned)), Fraction(0))
            if val != target:
                ok = False
                break
        if ok:
            survivors.append(rule)
    if not survivors:
        raise SignFamilyError("sign family insufficient - extend family")
    fewest = min(len(r.stats) for r in survivors)
    selected = [r for r in survivors if len(r.stats) == fewest]
    record = {
        "n_cal": n_cal,
        "contexts": [c.to_json() for c in contexts],
        "family": list(family),
        "survivors": [r.identifier for r in survivors],
        "selected": [r.identifier for r in selected],
    }
    log.info("sign calibration: %d survivors, selected %s", len(survivors), record["selected"])
    chosen = selected[0]
    return SignRule(chosen.stats, chosen.eps, frozenset(), record)


def rule_from_identifier(identifier: str) -> SignRule:
    eps_part, sigma_part = identifier.split(";")[:2]
    eps = 1 if eps_part.endswith("+1") else -1
    body = sigma_part.split("=", 1)[1]
    stats = () if body == "0" else tuple(body.split("+"))
    return SignRule(stats, eps)


def validate_sign_rule(rule: SignRule, sizes, contexts) -> dict:
    """Blind check of ``rule`` and every other selected survivor on the given sizes.

    Returns ``{"agree": bool, "verdicts": {identifier: bool}}``; the selected
    survivors must all pass for ``agree`` to hold.
    """
    ids = list(rule.record.get("selected", []))
    if rule.identifier not in ids:
        ids.insert(0, rule.identifier)
    verdicts = {}
    n_max = max(sizes)
    for ident in ids:
        cand = rule if ident == rule.identifier else rule_from_identifier(ident)
        ok = True
        for ctx in contexts:
            target = ck_closed_form(n_max, ctx)
            for n in sizes:
                parts = list(enumerate_solid(n))
                if _coefficient(parts, ctx, cand, True) != target[n]:
                    ok = False
        verdicts[ident] = ok
    return {"agree": all(verdicts.values()), "verdicts": verdicts}
