import itertools

import pytest

from leibniz_lattice.algebra import LeibnizAlgebra
from leibniz_lattice.verify import CatalogSpec, generate_catalog


def single_chain():
    """b v1 = v1 + v2, b v2 = v2 over GF(2); basis (b, v1, v2)."""
    return LeibnizAlgebra.from_entries(2, 3, {(0, 1): (0, 1, 1), (0, 2): (0, 0, 1)},
                                       labels=("b", "v1", "v2"))


def diamond(p=2):
    return LeibnizAlgebra.from_entries(p, 2, {(0, 1): (0, 1)}, labels=("b", "v"))


def all_vectors(p, n):
    return list(itertools.product(range(p), repeat=n))


@pytest.fixture(scope="session")
def gf2_dim3_catalog():
    return generate_catalog(CatalogSpec(2, 3, allow_large=True))


@pytest.fixture(scope="session")
def small_catalogs():
    """Exhaustive catalogs in dimensions 1 and 2 over GF(2) and GF(3)."""
    return {(p, n): generate_catalog(CatalogSpec(p, n)) for p in (2, 3) for n in (1, 2)}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
