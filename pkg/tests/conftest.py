import functools
import warnings

import pytest

from p3hull import build_graph


@functools.lru_cache(maxsize=None)
def _graph(family, q, n, k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_graph(family, q, n, k)


@pytest.fixture(scope="session")
def graph():
    """Memoized builder: ``graph("qkneser", 2, 4, 2)``."""
    return _graph
