"""
Acceptance criteria 1-9.  Each test records one PASS/FAIL line; the lines
are printed as each test runs and again in the terminal summary
(see conftest.py).  ``python tests/test_acceptance.py`` runs them without
pytest.
"""

import sys
import time
from fractions import Fraction

from dtfour.exact import pole_locations, pole_order_at
from dtfour.formulas import (
    LocalCurveData,
    ck_closed_form,
    f_inf0_residue,
    gluing_check,
    local_curve_exponent,
    local_curve_series,
    mnop_closed,
    no_insertion_closed,
    no_insertion_exponent,
    relabel_context,
    w_infinity,
    z_rel_closed,
    z_rel_twisted,
)
from dtfour.partitions import box_set, divisor_support, enumerate_plane, enumerate_solid, plane_oracle, solid_oracle
from dtfour.qseries import log_macmahon_neg, series_log, sigma2
from dtfour.verify import random_splitting, run_suite, sample_contexts
from dtfour.vertex import (
    calibrate_sign_rule,
    contribution_3d,
    contribution_4d,
    validate_sign_rule,
    z_c3_localized,
    z_c4_divisor_supported,
    z_c4_localized,
    z_c4_no_insertion,
)

SEED = 2024
RESULTS = {}


def record(k, ok, text):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {text}"
    RESULTS[k] = line
    print(line)
    return ok


def _contexts(salt, k=3, numeric=False):
    return sample_contexts(SEED, k, numeric=numeric, salt=salt)


def _rule():
    return calibrate_sign_rule(2, _contexts("calibration"))


def test_criterion_1_c4_series():
    t0 = time.perf_counter()
    rule = _rule()
    ctxs = _contexts("c1")
    ok = all(z_c4_localized(4, c, rule, jobs=1) == ck_closed_form(4, c) for c in ctxs)
    blind = validate_sign_rule(rule, (3, 4), ctxs)["agree"]
    dt = time.perf_counter() - t0
    ok = ok and blind and dt < 60
    record(1, ok, f"z_c4_localized == M(-q)^(-m e3/(s1s2s3s4)) for n<=4 at 3 contexts, "
                  f"rule {rule.identifier} fitted on n<=2, {dt:.1f}s single-threaded")
    assert ok


def test_criterion_2_mnop():
    rule = _rule()
    ctxs = _contexts("c2")
    three = all(z_c3_localized(4, c) == mnop_closed(4, c) for c in ctxs)
    reduction = True
    for c in ctxs:
        spec = c.with_m(0, (0, 0, 0, -1))
        reduction &= z_c4_divisor_supported(4, spec, rule) == z_c3_localized(4, c)
        for n in range(1, 5):
            for pi in enumerate_solid(n):
                val = contribution_4d(pi, spec, rule)
                lam = divisor_support(pi)
                reduction &= val.is_zero() if lam is None else val == contribution_3d(lam, c)
    ok = three and reduction
    record(2, ok, f"(a) 3-fold vertex == M(-q)^(ebar3/(s1s2s3)) n<=4: {three}; "
                  f"(b) m=-s4 reduction, per partition and summed: {reduction}")
    assert ok


def test_criterion_3_no_insertion():
    # the exponent exactly as stated: -(s1+s2)(s1+s3)(s2+s3)/(s1s2s3(s1+s2+s3))
    rule = _rule()
    ctxs = _contexts("c3")
    bad = []
    for c in ctxs:
        z = z_c4_no_insertion(3, c, rule)
        closed = no_insertion_closed(3, c, no_insertion_exponent(c))
        bad += [n for n in range(4) if z[n] != closed[n]]
    ok = not bad
    record(3, ok, "z_c4_no_insertion == exp[-(s1+s2)(s1+s3)(s2+s3)/(s1s2s3(s1+s2+s3)) q] for n<=3"
                  + ("" if ok else f"; mismatch at q^n for n in {sorted(set(bad))} "
                                   "(localization gives the opposite sign of the exponent, see README)"))
    assert ok


def test_no_insertion_opposite_sign():
    # companion to criterion 3: the series with the sign forced by the m -> infinity
    # limit of the tautological theorem matches at every order
    rule = _rule()
    for c in _contexts("c3"):
        assert z_c4_no_insertion(3, c, rule) == no_insertion_closed(3, c, -no_insertion_exponent(c))


def test_criterion_4_relative_chain():
    ctxs = _contexts("c4")
    rel = all(z_rel_closed(6, c) == ck_closed_form(6, c) * w_infinity(6, c) for c in ctxs)
    res = True
    for c in ctxs:
        F0 = f_inf0_residue(ck_closed_form(6, c))
        res &= F0 == log_macmahon_neg(6) * c.m
        res &= all(abs(F0[n]) == abs(c.m) * Fraction(sigma2(n), n) for n in range(1, 7))
    ok = rel and res
    record(4, ok, f"Z(X,D_inf) == Z(C^4) W_inf to q^6: {rel}; F_inf0 == m log M(-q), |coeff| = sigma2(n)/n: {res}")
    assert ok


def test_criterion_5_poles():
    ctxs = _contexts("c5")
    rel_ok, ck_ok = True, True
    for c in ctxs:
        allowed = {-c.s2, -c.s2 - c.s3}
        for coeff in series_log(z_rel_closed(6, c)).coeffs[1:]:
            rep = pole_locations(coeff)
            rel_ok &= pole_order_at(coeff, 0) == 0 and rep.roots <= allowed and not rep.nonrational_factor
        for coeff in series_log(ck_closed_form(6, c)).coeffs[1:]:
            ck_ok &= pole_order_at(coeff, 0) == 1
    ok = rel_ok and ck_ok
    record(5, ok, f"log Z(X,D_inf) regular at s1=0, poles in {{-s2, -s2-s3}}: {rel_ok}; "
                  f"log Z(C^4) simple pole at s1=0: {ck_ok}")
    assert ok


def test_criterion_6_twisted():
    ctxs = _contexts("c6")
    ok = all(z_rel_twisted(l, 4, c, "product") == z_rel_twisted(l, 4, c, "substitution")
             for c in ctxs for l in range(-2, 4))
    record(6, ok, "product route == m -> m + l s1 substitution route, l in -2..3, to q^4")
    assert ok


def test_criterion_7_local_curves():
    import random

    rng = random.Random(SEED)
    ctxs = _contexts("c7")
    splits = [random_splitting(rng, 3, 4) for _ in range(24)]
    glue = True
    for i, (whole, split) in enumerate(splits):
        c = ctxs[i % 3]
        glue &= local_curve_exponent(whole, c) == (local_curve_exponent(split.left, c)
                                                    + local_curve_exponent(split.right, c))
        glue &= gluing_check(whole, split, c, 6)
    cases = [LocalCurveData(0, -1, 0, 0, 0), LocalCurveData(0, 0, -1, 0, 0), LocalCurveData(0, 0, 0, -1, 0)]
    base = True
    for c in _contexts("c7", numeric=True):
        ref = z_rel_closed(6, c)
        base &= all(local_curve_series(d, relabel_context(c, k), 6) == ref for k, d in enumerate(cases))
    ok = glue and base
    record(7, ok, f"{len(splits)} random splittings (g<=3, |deg|<=4): additivity and convolution to q^6: {glue}; "
                  f"permuted base cases under relabeling: {base}")
    assert ok


def test_criterion_8_properties():
    rep = run_suite("symmetry", 4, 3, SEED, jobs=1)
    counts = all(
        {box_set(p) for p in enumerate_solid(n)} == solid_oracle(n)
        and {box_set(p) for p in enumerate_plane(n)} == plane_oracle(n)
        for n in range(7))
    seq = [sum(1 for _ in enumerate_solid(n)) for n in range(1, 7)], [sum(1 for _ in enumerate_plane(n)) for n in range(1, 7)]
    counts &= seq == ([1, 4, 10, 26, 59, 140], [1, 3, 6, 13, 24, 48])
    ok = rep.passed and counts
    names = ", ".join(f"{c.name.split('.', 1)[1]}={'ok' if c.verdict else 'FAIL'}" for c in rep.checks)
    record(8, ok, f"{names}; counts vs DFS oracle: {counts}")
    assert ok


def test_criterion_9_negative_controls():
    sign = run_suite("c4", 4, 3, SEED, perturb="sign", jobs=1)
    loc = next(c for c in sign.checks if c.name == "c4.localization-vs-closed")
    sign_ok = (not sign.passed and not loc.verdict and loc.witness["n"] == 3 and "partition" in loc.witness)
    expo = run_suite("all", 3, 2, SEED, perturb="exponent", jobs=1)
    failed = {c.name for c in expo.failures()}
    needed = {"c4.localization-vs-closed", "mnop.three-fold-vs-closed", "relative.z-rel=z-c4*w-inf",
              "relative.twisted-routes", "rubber.log-w-inf", "local-curve.exponents"}
    expo_ok = (not expo.passed and needed <= failed and all(c.witness for c in expo.failures()))
    ok = sign_ok and expo_ok
    record(9, ok, f"flipped size-3 sign -> FAIL with witness {loc.witness.get('partition')}: {sign_ok}; "
                  f"exponent +1 -> FAIL in {len(failed)} checks with witnesses: {expo_ok}")
    assert ok


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    sys.exit(0 if all("PASS" in line for line in RESULTS.values()) else 1)
