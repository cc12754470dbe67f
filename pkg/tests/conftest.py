import pytest
from hypothesis import settings, strategies as st

from treebraid.catalog import (flipped_linear_binary, fork_caterpillar, linear_binary,
                               minimal_y, t0)
from treebraid.tree import build_tree, subdivide_for

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def plane_trees(draw, max_vertices=9):
    """Random rooted plane trees with a degree-one root, in T-order."""
    size = draw(st.integers(3, max_vertices))
    children = {0: [1]}
    for v in range(2, size):
        children.setdefault(draw(st.integers(1, v - 1)), []).append(v)
    for kids in children.values():
        kids[:] = draw(st.permutations(kids))
    tree, _ = build_tree(0, children)
    return tree


@st.composite
def sufficient_trees(draw, max_vertices=7, n_range=(2, 3)):
    tree = draw(plane_trees(max_vertices))
    n = draw(st.integers(*n_range))
    return subdivide_for(tree, n)[0], n


def sub(tree, n):
    return subdivide_for(tree, n)[0]


@pytest.fixture(scope="session")
def instances():
    """The small instance set shared by several test modules."""
    return {
        ("y", 2): sub(minimal_y(), 2),
        ("y", 3): sub(minimal_y(), 3),
        ("lb2", 3): sub(linear_binary(2), 3),
        ("t0", 3): sub(t0(), 3),
    }


@pytest.fixture(scope="session")
def weak_trees():
    return {"flip2": sub(flipped_linear_binary(2), 3), "fork": sub(fork_caterpillar(), 4)}
