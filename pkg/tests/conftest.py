import random

import pytest

from splitrel import Multigraph, TerminalPair, build


@pytest.fixture
def g1() -> Multigraph:
    """4-cycle 0-1-2-3 plus the chord {0, 2}; the running 4-vertex example."""
    return build(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def random_connected_multigraph(rng: random.Random, n: int, m: int) -> Multigraph:
    """Random connected multigraph: random spanning tree plus random extras."""
    assert m >= n - 1
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.append((u, v))
    return build(n, edges)


def random_graph_in(rng: random.Random, n_hi: int, m_hi: int, n_lo: int = 2) -> Multigraph:
    """Random connected multigraph with n in [n_lo, n_hi], m in [n-1, m_hi]."""
    n = rng.randint(n_lo, n_hi)
    m = rng.randint(n - 1, max(n - 1, m_hi))
    return random_connected_multigraph(rng, n, m)


def random_terminals(rng: random.Random, n: int) -> TerminalPair:
    s = rng.randrange(n)
    t = rng.randrange(n)
    while t == s:
        t = rng.randrange(n)
    return TerminalPair(s, t)
