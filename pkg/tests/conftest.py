"""Shared fixtures: cached enumeration and random labeled trees."""

import heapq
import random

import pytest

from treebound import enumeration as en
from treebound import tree as tr

_CACHE: dict[int, list] = {}


def cached_trees(n: int) -> list:
    if n not in _CACHE:
        _CACHE[n] = list(en.enumerate_free_trees(n))
    return _CACHE[n]


@pytest.fixture(scope="session")
def all_trees():
    """Callable n -> list of all nonisomorphic trees, cached per session."""
    return cached_trees


def prufer_tree(n: int, rng: random.Random) -> tr.Tree:
    """Uniform random labeled tree on n vertices via a Prufer sequence."""
    if n == 1:
        return tr.build_tree(1, [])
    if n == 2:
        return tr.build_tree(2, [(1, 2)])
    seq = [rng.randrange(1, n + 1) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return tr.build_tree(n, edges)


@pytest.fixture
def random_tree():
    return prufer_tree
