import functools

import pytest

from hopf2 import bundle as bd
from hopf2 import cayley
from hopf2 import hopf as hp


@functools.lru_cache(maxsize=None)
def gn(n):
    return cayley.build_Gn(cayley.cayley_dickson_cochain(n))


@functools.lru_cache(maxsize=None)
def kgn(n):
    return hp.function_algebra(gn(n), name=f"k[G_{n}]")


@functools.lru_cache(maxsize=None)
def gn_bundle(n):
    return bd.gn_bundle(n)


@pytest.fixture(scope="session")
def G():
    return gn


@pytest.fixture(scope="session")
def kG():
    return kgn


@pytest.fixture(scope="session")
def bundles():
    return gn_bundle


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
