"""Shared corpus builders for the test suite."""

import random

import pytest

from minmatch.generators import enumerate_connected_subcubic, gen_random_cubic
from minmatch.graph import Graph


def random_connected_subcubic(n: int, seed: int, deletions: int = 0) -> Graph:
    """Random connected cubic graph with up to `deletions` edges removed
    (connectivity preserved, removals skipped when they would disconnect)."""
    if n % 2:
        n += 1
    g = gen_random_cubic(max(n, 4), seed)
    rng = random.Random(seed * 31 + deletions)
    for _ in range(deletions):
        e = rng.choice(g.edges())
        g.remove_edge(*e)
        if not g.is_connected():
            g.add_edge(*e)
    return g


def bridged_pair(n_side: int, seed: int) -> Graph:
    """Two random cubic blobs joined by one bridge; min degree 2.

    Deletes one edge inside each blob and joins the freed endpoints, so the
    bridge endpoints have degree 3 and the graph stays subcubic.
    """
    g1 = gen_random_cubic(n_side, seed)
    g2 = gen_random_cubic(n_side, seed + 1)
    g = Graph()
    off = max(g1.vertices()) + 1
    for u, v in g1.edges():
        g.add_edge(u, v)
    for u, v in g2.edges():
        g.add_edge(u + off, v + off)
    a, b = g1.edges()[0]
    c, d = g2.edges()[0]
    g.remove_edge(a, b)
    g.remove_edge(c + off, d + off)
    g.add_edge(a, c + off)
    return g


@pytest.fixture(scope="session")
def corpus_n4():
    return list(enumerate_connected_subcubic(4))


@pytest.fixture(scope="session")
def corpus_n5():
    return list(enumerate_connected_subcubic(5))


@pytest.fixture(scope="session")
def corpus_n6():
    return list(enumerate_connected_subcubic(6))
