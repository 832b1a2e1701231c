import itertools
from pathlib import Path

import numpy as np
import pytest

from qubo_forge import QuboModel

DATA = Path(__file__).resolve().parent.parent / "data"


def all_assignments(n):
    """Every 0/1 tuple of length n, in lexicographic order."""
    return list(itertools.product((0, 1), repeat=n))


def brute_force(energy_fn, n):
    """Minimum energy and every minimizing assignment, by plain enumeration."""
    values = {a: energy_fn(a) for a in all_assignments(n)}
    best = min(values.values())
    return best, sorted(a for a, v in values.items() if v == best)


def dense_energy(Q, x, c=0.0):
    """x^T Q x + c for a full (not necessarily triangular) matrix."""
    x = np.asarray(x, dtype=float)
    return float(x @ np.asarray(Q, dtype=float) @ x + c)


def random_int_qubo(rng, n, low=-10, high=10, density=1.0):
    linear = {i: float(rng.integers(low, high + 1)) for i in range(n)}
    quadratic = {
        (i, j): float(rng.integers(low, high + 1))
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    }
    return QuboModel.from_terms(
        n,
        [(i, i, v) for i, v in linear.items()] + [(i, j, v) for (i, j), v in quadratic.items()],
        float(rng.integers(low, high + 1)),
    )


def random_graph(rng, n, p=0.5):
    from qubo_forge import Graph

    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    from qubo_forge import Graph

    return Graph(3, ((0, 1), (1, 2), (0, 2)))
