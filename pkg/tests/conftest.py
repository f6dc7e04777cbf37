import numpy as np
import pytest
from hypothesis import settings

from unicyclic_energy.exhaustive import random_bipartite_unicyclic
from unicyclic_energy.graphs import Graph, cycle, p6, path, star

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def corpus():
    """Graphs every spectrum / polynomial invariant is checked on."""
    gs = [path(n) for n in (1, 2, 3, 5, 8)]
    gs += [cycle(n) for n in (3, 4, 5, 6, 9, 12, 17, 18, 19, 24, 40)]
    gs += [p6(n) for n in (7, 8, 10, 16, 18, 25, 40)]
    gs += [star(6), Graph(5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)))]
    rng = np.random.default_rng(20240607)
    gs += [random_bipartite_unicyclic(int(n), rng) for n in rng.integers(4, 30, size=12)]
    return gs


@pytest.fixture(scope="session")
def graph_corpus():
    return corpus()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
