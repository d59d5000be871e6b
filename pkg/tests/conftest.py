import numpy as np
import pytest

from npcbary import Euclidean, Hyperbolic, MetricTree, SpdAffine, Sphere


def star_tree() -> MetricTree:
    return MetricTree(
        vertices=("a", "b", "c", "o"),
        edges=(("o", "a", 1.0), ("o", "b", 1.0), ("o", "c", 1.0)),
    )


def path_tree() -> MetricTree:
    return MetricTree(vertices=("a", "b", "c"), edges=(("a", "b", 1.0), ("b", "c", 2.0)))


def npc_spaces():
    return [Euclidean(2), Hyperbolic(-1.0), SpdAffine(3), star_tree()]


def all_spaces():
    return npc_spaces() + [Sphere(1.0)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
