import os
from pathlib import Path

import pytest

# one persistent cache for the whole test run; heavy lattices are shared
os.environ.setdefault("FORMAX_CACHE_DIR",
                      str(Path(__file__).resolve().parent.parent / ".formax-cache"))


@pytest.fixture(scope="session")
def service():
    from formax.cache import LatticeCache
    from formax.lattice import LatticeService

    return LatticeService(bound=65536, cache=LatticeCache())


@pytest.fixture(scope="session")
def corpus_groups():
    from formax.suites import build_corpus_groups

    return build_corpus_groups()


@pytest.fixture(scope="session")
def ctx(service, corpus_groups):
    from formax.formations import ClassContext

    return ClassContext(service, corpus_groups)


@pytest.fixture(scope="session")
def small_ctx(service):
    """Context whose corpus is a fast subset, for scan-dependent unit tests."""
    from formax.catalog import named_group
    from formax.formations import ClassContext

    names = ("cyclic(6)", "sym(4)", "alt(5)", "sym(5)", "psl2(7)", "alt(6)",
             "dihedral(16)", "product(alt(5),cyclic(2))", "psl2(11)")
    return ClassContext(service, [named_group(n) for n in names])
