from fractions import Fraction

import pytest

from dtfour.exact import ParamContext
from dtfour.verify import sample_contexts
from dtfour.vertex import calibrate_sign_rule

# hand-picked generic contexts (no relation with coefficients up to 40)
GENERIC = [
    ("13/47", "29/61", "31/53"),
    ("-23/43", "41/67", "-7/59"),
    ("37/71", "59/83", "19/89"),
]


@pytest.fixture(scope="session")
def contexts():
    ctxs = [ParamContext(*c) for c in GENERIC]
    for c in ctxs:
        assert c.genericity_violation() is None
    return ctxs


@pytest.fixture(scope="session")
def ctx(contexts):
    return contexts[0]


@pytest.fixture(scope="session")
def numeric_ctx(contexts):
    c = contexts[0].with_s1(Fraction(17, 97))
    assert c.genericity_violation() is None
    return c


@pytest.fixture(scope="session")
def rule():
    return calibrate_sign_rule(2, sample_contexts(0, 3, salt="calibration"))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
