"""Small named trees used throughout the tests and the CLI."""

from __future__ import annotations

from .tree import RootedPlaneTree, from_children


def minimal_y() -> RootedPlaneTree:
    """Root, one essential vertex, two leaves."""
    return from_children({0: [1], 1: [2, 3]})


def path(length: int) -> RootedPlaneTree:
    return from_children({v: [v + 1] for v in range(length)})


def t0() -> RootedPlaneTree:
    """Four essential vertices of degree 3.

    x1 = 1 carries a leaf and then x2 = 3; x2 branches to x3 = 4 (direction 1)
    and x4 = 7 (direction 2); x3 and x4 each carry two leaves.
    """
    return from_children({0: [1], 1: [2, 3], 3: [4, 7], 4: [5, 6], 7: [8, 9]})


def linear_binary(m: int) -> RootedPlaneTree:
    """Spine of m degree-3 vertices, each with its pendant leaf in direction 1."""
    kids, nxt, spine = {0: [1]}, 2, 1
    for i in range(m):
        leaf, cont = nxt, nxt + 1
        kids[spine] = [leaf, cont]
        spine, nxt = cont, nxt + 2
    return from_children(kids)


def flipped_linear_binary(m: int) -> RootedPlaneTree:
    """Like :func:`linear_binary` but the spine continues in direction 1."""
    kids, nxt, spine = {0: [1]}, 2, 1
    for i in range(m):
        cont, leaf = nxt, nxt + 1
        kids[spine] = [cont, leaf]
        spine, nxt = cont, nxt + 2
    return from_children(kids)


def fork_caterpillar() -> RootedPlaneTree:
    """A degree-4 vertex whose direction 1 carries a degree-3 vertex.

    This embedding breaks the binary-core normalization on purpose: products
    with r = 1 at the degree-4 vertex have two directions on the q side.
    """
    return from_children({0: [1], 1: [2, 5, 6], 2: [3, 4]})


NAMED = {
    "y": minimal_y,
    "t0": t0,
    "linear-binary-2": lambda: linear_binary(2),
    "linear-binary-3": lambda: linear_binary(3),
    "flipped-linear-2": lambda: flipped_linear_binary(2),
    "fork-caterpillar": fork_caterpillar,
}
