"""Rooted plane trees in T-order.

Vertex ids are the preorder of a depth-first walk from the root that always
takes the leftmost unexplored branch first.  With that labeling the subtree
below ``v`` is the contiguous id range ``[v, v + size(v))``, parents carry
smaller ids than children, and ``x[1] = x + 1`` whenever ``x`` has a child.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence


class TreeError(ValueError):
    """Raised for malformed tree input or out-of-range tree queries."""


@dataclass(frozen=True)
class RootedPlaneTree:
    parent: tuple[int, ...]  # parent[0] == -1
    children: tuple[tuple[int, ...], ...]
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(self.parent) != len(self.children) or not self.parent:
            raise TreeError("parent and children tables disagree")
        if self.parent[0] != -1:
            raise TreeError("vertex 0 must be the root")
        if len(self.children[0]) != 1:
            raise TreeError(f"root must have degree 1, got {len(self.children[0])}")
        # T-order check: preorder walk must reproduce the ids
        order = _preorder(self.children, 0)
        if order != list(range(len(self.parent))):
            raise TreeError("vertex ids are not in T-order")
        for v, kids in enumerate(self.children):
            for c in kids:
                if self.parent[c] != v:
                    raise TreeError(f"child {c} of {v} has parent {self.parent[c]}")

    @property
    def vertex_count(self) -> int:
        return len(self.parent)

    @cached_property
    def size(self) -> tuple[int, ...]:
        sz = [1] * self.vertex_count
        for v in range(self.vertex_count - 1, 0, -1):
            sz[self.parent[v]] += sz[v]
        return tuple(sz)

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (v != 0)

    @cached_property
    def essential(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if self.degree(v) >= 3)

    def edges(self) -> list[tuple[int, int]]:
        return [(self.parent[v], v) for v in range(1, self.vertex_count)]

    def adjacent(self, a: int, b: int) -> bool:
        return self.parent[a] == b or self.parent[b] == a

    def direction_vertex(self, x: int, ell: int) -> int:
        """Neighbor ``x[ell]``: direction 0 points to the root, 1.. follow planar order."""
        if not 0 <= x < self.vertex_count:
            raise TreeError(f"no vertex {x}")
        if ell == 0:
            if x == 0:
                raise TreeError("the root has no direction 0")
            return self.parent[x]
        kids = self.children[x]
        if not 1 <= ell <= len(kids):
            raise TreeError(f"direction {ell} out of range at vertex {x}")
        return kids[ell - 1]

    def in_subtree(self, v: int, top: int) -> bool:
        return top <= v < top + self.size[top]

    def direction_of(self, x: int, v: int) -> int:
        """The x-direction in which ``v`` lies (``v != x``)."""
        if v == x:
            raise TreeError("a vertex lies in no direction of itself")
        if not self.in_subtree(v, x):
            return 0
        for ell, c in enumerate(self.children[x], start=1):
            if self.in_subtree(v, c):
                return ell
        raise AssertionError("unreachable")

    def component_vertices(self, x: int, ell: int) -> range | list[int]:
        """Vertices of the component of T minus x in x-direction ``ell``."""
        if ell == 0:
            lo, hi = x, x + self.size[x]
            return [v for v in range(self.vertex_count) if not lo <= v < hi]
        c = self.direction_vertex(x, ell)
        return range(c, c + self.size[c])

    def children_map(self) -> dict[int, list[int]]:
        return {v: list(kids) for v, kids in enumerate(self.children)}

    def to_text(self) -> str:
        lines = ["root 0"]
        lines += [f"{v}: " + " ".join(map(str, kids)) for v, kids in enumerate(self.children) if kids]
        return "\n".join(lines) + "\n"


def _preorder(children: Sequence[Sequence[int]], root: int) -> list[int]:
    out, stack = [], [root]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(reversed(children[v]))
    return out


def build_tree(root: Hashable, children: Mapping[Hashable, Iterable[Hashable]]
               ) -> tuple[RootedPlaneTree, dict]:
    """Relabel a planar children map into T-order.

    Returns the tree and the map from input labels to T-order ids.
    """
    kids = {v: list(cs) for v, cs in children.items()}
    labels = set(kids) | {c for cs in kids.values() for c in cs} | {root}
    parent: dict = {}
    for v, cs in kids.items():
        for c in cs:
            if c == root or c in parent or c == v:
                raise TreeError(f"cyclic input: vertex {c!r} is reached twice")
            parent[c] = v
    if len(kids.get(root, [])) != 1:
        raise TreeError(f"root {root!r} must have degree 1, got {len(kids.get(root, []))}")

    relabel, stack = {}, [root]
    while stack:
        v = stack.pop()
        if v in relabel:
            raise TreeError(f"cyclic input at {v!r}")
        relabel[v] = len(relabel)
        stack.extend(reversed(kids.get(v, [])))
    missing = labels - set(relabel)
    if missing:
        raise TreeError(f"disconnected input: {sorted(map(str, missing))} unreachable from root")

    count = len(relabel)
    par = [-1] * count
    ch: list[tuple[int, ...]] = [()] * count
    for v, i in relabel.items():
        ch[i] = tuple(relabel[c] for c in kids.get(v, []))
        for c in ch[i]:
            par[c] = i
    return RootedPlaneTree(tuple(par), tuple(ch)), relabel


def from_children(children: Mapping[int, Sequence[int]]) -> RootedPlaneTree:
    """Convenience constructor for maps already rooted at 0."""
    tree, _ = build_tree(0, children)
    return tree


# -- subdivision --------------------------------------------------------------

def _segments(tree: RootedPlaneTree) -> list[list[int]]:
    """Maximal chains of edges whose interior vertices have degree 2.

    Each segment is listed by the lower endpoint of each edge (the edge
    ``(parent[v], v)`` is identified with ``v``), top edge first.
    """
    segs = []
    for v in range(1, tree.vertex_count):
        top = tree.parent[v]
        if top != 0 and tree.degree(top) == 2:
            continue  # not the first edge of a segment
        seg = [v]
        while tree.degree(seg[-1]) == 2:
            seg.append(tree.children[seg[-1]][0])
        segs.append(seg)
    return segs


def is_n_sufficient(tree: RootedPlaneTree, n: int) -> bool:
    return all(len(seg) >= n - 1 for seg in _segments(tree))


def subdivide_for(tree: RootedPlaneTree, n: int) -> tuple[RootedPlaneTree, dict[int, int]]:
    """Minimal subdivision making ``tree`` n-sufficient.

    Each deficient segment receives its missing vertices spread as evenly as
    possible over its edges.  Returns the new tree and old-id -> new-id map.
    """
    if n < 1:
        raise TreeError("n must be positive")
    extra = {}
    for seg in _segments(tree):
        need = max(0, n - 1 - len(seg))
        for j, v in enumerate(seg):
            extra[v] = need // len(seg) + (j < need % len(seg))
    if not any(extra.values()):
        return tree, {v: v for v in range(tree.vertex_count)}

    # new labels: ("o", v) for original vertices, ("s", v, j) for inserted ones
    kids: dict = {}
    for v in range(tree.vertex_count):
        out = []
        for c in tree.children[v]:
            chain = [("s", c, j) for j in range(extra[c])]
            prev = chain[0] if chain else ("o", c)
            out.append(prev)
            for nxt in chain[1:] + [("o", c)] if chain else []:
                kids[prev] = [nxt]
                prev = nxt
        kids[("o", v)] = out
    new, relabel = build_tree(("o", 0), kids)
    return new, {v: relabel[("o", v)] for v in range(tree.vertex_count)}


# -- essential-set decompositions ----------------------------------------------

@dataclass(frozen=True)
class Components:
    """Components of T minus an essential set ``xs``.

    Keys are ``(0, 1)`` for the root component and ``(i, ell)`` (i 1-based)
    for the component of T minus xs in x_i-direction ell.
    """
    xs: tuple[int, ...]
    vertices: dict[tuple[int, int], frozenset[int]]
    bounding: dict[tuple[int, int], frozenset[int]]

    def leaves(self, key: tuple[int, int]) -> frozenset[int]:
        """Bounding vertices other than the owning x_i."""
        i = key[0]
        if i == 0:
            return self.bounding[key]
        return self.bounding[key] - {self.xs[i - 1]}

    def leaf_indices(self, key: tuple[int, int]) -> tuple[int, ...]:
        pos = {x: j for j, x in enumerate(self.xs, start=1)}
        return tuple(sorted(pos[x] for x in self.leaves(key)))


def components(tree: RootedPlaneTree, xs: Sequence[int]) -> Components:
    xs = tuple(xs)
    memo = tree._memo.setdefault("components", {})
    if xs in memo:
        return memo[xs]
    if list(xs) != sorted(set(xs)):
        raise TreeError("essential vertices must be strictly ascending")
    for x in xs:
        if x not in tree.essential:
            raise TreeError(f"vertex {x} is not essential")
    index = {x: i for i, x in enumerate(xs, start=1)}

    def owner(v: int) -> tuple[int, int]:
        # first essential vertex met on the way up from v (exclusive)
        child = v
        u = tree.parent[v]
        while u != -1:
            if u in index:
                return index[u], tree.children[u].index(child) + 1
            child, u = u, tree.parent[u]
        return 0, 1

    verts: dict[tuple[int, int], set[int]] = {(0, 1): set()}
    for i, x in enumerate(xs, start=1):
        for ell in range(1, len(tree.children[x]) + 1):
            verts[(i, ell)] = set()
    for v in range(tree.vertex_count):
        if v not in index:
            verts[owner(v)].add(v)
    bound: dict[tuple[int, int], set[int]] = {key: set() for key in verts}
    for key in verts:
        if key[0]:
            bound[key].add(xs[key[0] - 1])
    for x in xs:
        bound[owner(x)].add(x)
    out = Components(xs, {k: frozenset(v) for k, v in verts.items()},
                     {k: frozenset(v) for k, v in bound.items()})
    memo[xs] = out
    return out


@dataclass(frozen=True)
class PrunedDecomposition:
    essential_set: tuple[int, ...]
    r: tuple[int, ...]
    components: dict[tuple[int, int], frozenset[int]]
    pruned_trees: dict[tuple[int, int], tuple[int, frozenset[int]]]  # key -> (root, vertices)
    pruned_leaves: dict[tuple[int, int], frozenset[int]]
    bounding: dict[tuple[int, int], frozenset[int]]


def pruned_decomposition(tree: RootedPlaneTree, xs: Sequence[int],
                         rs: Sequence[int]) -> PrunedDecomposition:
    comp = components(tree, xs)
    if len(rs) != len(comp.xs):
        raise TreeError("need one r per essential vertex")
    for x, r in zip(comp.xs, rs):
        if not 1 <= r <= tree.degree(x) - 2:
            raise TreeError(f"r={r} out of range at vertex {x}")
    trees = {(0, 1): (0, comp.vertices[(0, 1)])}
    for i, (x, r) in enumerate(zip(comp.xs, rs), start=1):
        for ell in range(1, tree.degree(x)):
            vs = comp.vertices[(i, ell)]
            if ell == r + 1:
                trees[(i, ell)] = (tree.direction_vertex(x, ell), vs)
            else:
                trees[(i, ell)] = (x, vs | {x})
    return PrunedDecomposition(
        essential_set=comp.xs,
        r=tuple(rs),
        components=dict(comp.vertices),
        pruned_trees=trees,
        pruned_leaves={key: comp.leaves(key) for key in comp.vertices},
        bounding=dict(comp.bounding),
    )


# -- binary cores ---------------------------------------------------------------

def _carrying_directions(tree: RootedPlaneTree, x: int) -> list[int]:
    ess = tree.essential
    out = []
    for ell, c in enumerate(tree.children[x], start=1):
        if any(tree.in_subtree(e, c) for e in ess):
            out.append(ell)
    return out


def is_binary_core(tree: RootedPlaneTree) -> bool:
    return all(len(_carrying_directions(tree, x)) <= 2 for x in tree.essential)


def satisfies_core_embedding(tree: RootedPlaneTree) -> bool:
    """No component in x-direction 1..d(x)-2 carries an essential vertex."""
    for x in tree.essential:
        d = tree.degree(x) - 1
        if any(ell <= d - 2 for ell in _carrying_directions(tree, x)):
            return False
    return True


def reembed_binary_core(tree: RootedPlaneTree) -> tuple[RootedPlaneTree, dict[int, int]]:
    """Move essential-carrying branches to the last directions, stably."""
    if not is_binary_core(tree):
        bad = [x for x in tree.essential if len(_carrying_directions(tree, x)) > 2]
        raise TreeError(f"not a binary core: vertex {bad[0]} has "
                        f"{len(_carrying_directions(tree, bad[0]))} essential branches")
    kids = {}
    for v in range(tree.vertex_count):
        carry = set(_carrying_directions(tree, v)) if v in tree.essential else set()
        plain = [c for ell, c in enumerate(tree.children[v], 1) if ell not in carry]
        heavy = [c for ell, c in enumerate(tree.children[v], 1) if ell in carry]
        kids[v] = plain + heavy
    return build_tree(0, kids)
