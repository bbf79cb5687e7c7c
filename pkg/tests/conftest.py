import numpy as np
import pytest

from rfl.graphs import BipartiteGraph


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(20240901))


def random_graph(rng, n: int, prob: float) -> BipartiteGraph:
    picks = rng.random((n, n)) < prob
    rows = tuple(
        sum(1 << j for j in range(n) if picks[i, j]) for i in range(n)
    )
    return BipartiteGraph(n, rows)
