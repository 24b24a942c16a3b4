from fractions import Fraction

import pytest

from doubleore.presentation import build_double_extension, family_K
from doubleore.rewriting import make_rewrite_system

ALPHAS = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(3, 5)]


def k_system(alpha):
    return make_rewrite_system(build_double_extension(family_K(alpha)))


@pytest.fixture(params=ALPHAS, ids=lambda a: f"alpha={a}")
def alpha(request):
    return request.param


@pytest.fixture
def rs_K(alpha):
    return k_system(alpha)


@pytest.fixture(scope="session")
def rs_K1():
    return k_system(1)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
