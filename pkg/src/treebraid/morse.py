"""The Farley-Sabalka gradient field on UD_nT and its gradient-path maps."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Iterator, NamedTuple, Sequence

from .cubes import (BudgetExceeded, Cochain, Cube, boundary, canonical, cofaces,
                    default_budget, occupied, require_sufficient)
from .tree import RootedPlaneTree, TreeError, components


class Kind(Enum):
    CRITICAL = "critical"
    REDUNDANT = "redundant"
    COLLAPSIBLE = "collapsible"


class IngredientKind(Enum):
    BLOCKED = "blocked"
    UNBLOCKED = "unblocked"
    ORDER_RESPECTING = "order-respecting"
    ORDER_DISRESPECTFUL = "order-disrespectful"


class Block(NamedTuple):
    x: int
    p: tuple[int, ...]
    q: tuple[int, ...]


@dataclass(frozen=True, order=True)
class CriticalCell:
    """Normal form {k | x1,p1,q1 | ... | xm,pm,qm} of a critical cube."""
    k: int
    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(Block(b[0], tuple(b[1]), tuple(b[2]))
                                                 for b in self.blocks))

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(b.x for b in self.blocks)

    @property
    def size(self) -> int:
        return self.k + self.m + sum(sum(b.p) + sum(b.q) for b in self.blocks)

    def sort_key(self):
        return (self.m, self.xs, tuple(len(b.p) for b in self.blocks), self.k,
                tuple((b.p, b.q) for b in self.blocks))

    def to_json(self) -> dict:
        return {"k": self.k, "blocks": [{"x": b.x, "p": list(b.p), "q": list(b.q)}
                                        for b in self.blocks]}

    def __str__(self):
        parts = [str(self.k)] + [f"{b.x},{b.p},{b.q}" for b in self.blocks]
        return "{" + " | ".join(parts) + "}"


def validate_critical(tree: RootedPlaneTree, cell: CriticalCell, n: int | None = None) -> None:
    xs = cell.xs
    if list(xs) != sorted(set(xs)):
        raise TreeError("blocks must have strictly ascending x")
    if cell.k < 0:
        raise TreeError("negative root stack")
    for b in cell.blocks:
        if b.x not in tree.essential:
            raise TreeError(f"vertex {b.x} is not essential")
        if not b.p or not b.q or len(b.p) + len(b.q) != tree.degree(b.x) - 1:
            raise TreeError(f"block at {b.x} needs r, s >= 1 with r + s = {tree.degree(b.x) - 1}")
        if min(b.p + b.q) < 0 or not any(b.p):
            raise TreeError(f"block at {b.x} needs non-negative stacks and p > 0")
    if n is not None and cell.size != n:
        raise TreeError(f"cell has {cell.size} ingredients, expected {n}")


# -- classification -------------------------------------------------------------------

def ingredient_status(tree: RootedPlaneTree, cube: Cube, ing: tuple[int, int]) -> IngredientKind:
    lo, hi = ing
    if lo == hi:
        if lo == 0 or tree.parent[lo] in occupied(cube):
            return IngredientKind.BLOCKED
        return IngredientKind.UNBLOCKED
    verts = {a for a, b in cube if a == b}
    if any(lo < z < hi and z in verts for z in tree.children[lo]):
        return IngredientKind.ORDER_DISRESPECTFUL
    return IngredientKind.ORDER_RESPECTING


def fs_status(tree: RootedPlaneTree, cube: Cube) -> tuple[Kind, Cube | None]:
    """Scan ingredients in T-order; the first non-critical one decides."""
    parent, children = tree.parent, tree.children
    occ = occupied(cube)
    verts = None
    for i, (lo, hi) in enumerate(cube):
        if lo == hi:
            if lo and parent[lo] not in occ:
                return Kind.REDUNDANT, cube[:i] + ((parent[lo], lo),) + cube[i + 1:]
        else:
            if verts is None:
                verts = {a for a, b in cube if a == b}
            if not any(lo < z < hi and z in verts for z in children[lo]):
                return Kind.COLLAPSIBLE, cube[:i] + ((hi, hi),) + cube[i + 1:]
    return Kind.CRITICAL, None


# -- critical cells in normal form ------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _block_fillings(tree: RootedPlaneTree, xs: Sequence[int], budget: int) -> Iterator[tuple[Block, ...]]:
    """Blocks for each x with all r splits and stacks summing to ``budget``."""
    if not xs:
        if budget == 0:
            yield ()
        return
    x, rest = xs[0], xs[1:]
    d = tree.degree(x) - 1
    for t in range(budget + 1):
        for stacks in _compositions(t, d):
            for r in range(1, d):
                if any(stacks[:r]):
                    blk = Block(x, stacks[:r], stacks[r:])
                    for tail in _block_fillings(tree, rest, budget - t):
                        yield (blk,) + tail


def enumerate_critical(tree: RootedPlaneTree, n: int, m: int) -> list[CriticalCell]:
    require_sufficient(tree, n)
    out = []
    for xs in combinations(tree.essential, m):
        for k in range(n - m + 1):
            for blocks in _block_fillings(tree, xs, n - m - k):
                out.append(CriticalCell(k, blocks))
    out.sort(key=CriticalCell.sort_key)
    return out


def _stack(tree: RootedPlaneTree, y: int, t: int) -> list[int]:
    out = []
    for j in range(t):
        v = y + j
        if v >= tree.vertex_count or (j and tree.parent[v] != v - 1):
            raise TreeError(f"stack S_{y}({t}) runs off the tree; subdivide further")
        out.append(v)
    return out


def to_orbit_cube(tree: RootedPlaneTree, cell: CriticalCell) -> Cube:
    validate_critical(tree, cell)
    ings = [(v, v) for v in _stack(tree, 0, cell.k)]
    for b in cell.blocks:
        r = len(b.p)
        xbar = tree.direction_vertex(b.x, r + 1)
        ings.append((b.x, xbar))
        for ell, t in enumerate(b.p + b.q, start=1):
            y = xbar + 1 if ell == r + 1 else tree.direction_vertex(b.x, ell)
            if t and ell == r + 1 and (y >= tree.vertex_count or tree.parent[y] != xbar):
                raise TreeError(f"stack after edge ({b.x},{xbar}) runs off the tree")
            ings += [(v, v) for v in _stack(tree, y, t)]
    seen = set()
    for lo, hi in ings:
        if lo in seen or hi in seen:
            raise TreeError(f"stacks of {cell} overlap; subdivide further")
        seen.update((lo, hi))
    return canonical(ings)


def from_orbit_cube(tree: RootedPlaneTree, cube: Cube) -> CriticalCell:
    """Read off the normal form of a critical orbit cube."""
    edges = sorted((lo, hi) for lo, hi in cube if lo != hi)
    xs = tuple(lo for lo, _ in edges)
    comp = components(tree, xs)
    where = {v: key for key, vs in comp.vertices.items() for v in vs}
    counts: dict[tuple[int, int], int] = {}
    for lo, hi in cube:
        if lo == hi:
            key = where[lo]
            counts[key] = counts.get(key, 0) + 1
    blocks = []
    for i, (x, y) in enumerate(edges, start=1):
        r = tree.direction_of(x, y) - 1
        t = [counts.get((i, ell), 0) for ell in range(1, tree.degree(x))]
        blocks.append(Block(x, tuple(t[:r]), tuple(t[r:])))
    return CriticalCell(counts.get((0, 1), 0), tuple(blocks))


# -- gradient paths ---------------------------------------------------------------------

def _incidence(face: Cube, cube: Cube) -> int:
    for f, s in boundary(cube):
        if f == face:
            return s
    return 0


class MorseModel:
    """Gradient-path maps on UD_nT with a shared status cache and cell budget."""

    def __init__(self, tree: RootedPlaneTree, n: int, budget: int | None = None):
        require_sufficient(tree, n)
        self.tree = tree
        self.n = n
        self.budget = default_budget() if budget is None else budget
        self._status: dict[Cube, tuple[Kind, Cube | None]] = {}

    def status(self, cube: Cube) -> tuple[Kind, Cube | None]:
        st = self._status.get(cube)
        if st is None:
            st = fs_status(self.tree, cube)
            self._status[cube] = st
            if len(self._status) > self.budget:
                raise BudgetExceeded("gradient-path traversal", len(self._status), self.budget)
        return st

    def cube(self, cell: CriticalCell | Cube) -> Cube:
        return to_orbit_cube(self.tree, cell) if isinstance(cell, CriticalCell) else cell

    def phi_bar(self, critical: CriticalCell | Cube) -> Cochain:
        """Sum over upper paths ending at the critical cube, by cell of origin."""
        A = self.cube(critical)
        reach = {A}
        todo = [A]
        while todo:
            a = todo.pop()
            for b in cofaces(self.tree, a):
                kind, partner = self.status(b)
                if kind is Kind.COLLAPSIBLE and partner != a and partner not in reach:
                    reach.add(partner)
                    todo.append(partner)

        value: dict[Cube, int] = {A: 1}

        def deps(a):
            b = self.status(a)[1]
            return [f for f, _ in boundary(b) if f != a and f in reach]

        def combine(a):
            b = self.status(a)[1]
            bd = boundary(b)
            iota_a = next(s for f, s in bd if f == a)
            return sum(-iota_a * s * value[f] for f, s in bd if f != a and f in reach)

        for a in reach:
            _postorder(a, value, deps, combine)
        return {a: v for a, v in value.items() if v}

    def phi_under(self, cochain: Cochain | Callable[[Cube], int], m: int,
                  criticals: Sequence[CriticalCell] | None = None) -> dict[CriticalCell, int]:
        """Evaluate a cochain of degree m along lower paths from each critical m-cube."""
        phi = cochain.get if isinstance(cochain, dict) else None
        get = (lambda c: phi(c, 0)) if phi else cochain
        if criticals is None:
            criticals = enumerate_critical(self.tree, self.n, m)
        value: dict[Cube, int] = {}

        def steps(c):
            out = []
            for d, s in boundary(c):
                kind, partner = self.status(d)
                if kind is Kind.REDUNDANT and partner != c:
                    out.append((partner, -s * _incidence(d, partner)))
            return out

        def deps(c):
            return [p for p, _ in steps(c)]

        def combine(c):
            return get(c) + sum(w * value[p] for p, w in steps(c))

        out = {}
        for cell in criticals:
            A = self.cube(cell)
            _postorder(A, value, deps, combine)
            if value[A]:
                out[cell if isinstance(cell, CriticalCell) else from_orbit_cube(self.tree, A)] = value[A]
        return out

    def morse_coboundary(self, critical: CriticalCell | Cube) -> dict[CriticalCell, int]:
        f = self.phi_bar(critical)
        out: dict[Cube, int] = {}
        for b, v in f.items():
            for B in cofaces(self.tree, b):
                if self.status(B)[0] is Kind.CRITICAL:
                    out[B] = out.get(B, 0) + _incidence(b, B) * v
        return {from_orbit_cube(self.tree, B): v for B, v in out.items() if v}


def _postorder(root, value: dict, deps, combine) -> None:
    """Fill ``value`` for ``root`` and everything it depends on (a DAG)."""
    if root in value:
        return
    stack = [(root, False)]
    while stack:
        node, ready = stack.pop()
        if node in value:
            continue
        if ready:
            value[node] = combine(node)
            continue
        stack.append((node, True))
        for d in deps(node):
            if d not in value:
                stack.append((d, False))


# -- closed-form representatives ---------------------------------------------------------

def cocycle_rep_1dim(tree: RootedPlaneTree, k: int, x: int, p: Sequence[int],
                     q: Sequence[int]) -> Cochain:
    """Unordered cochain whose pullback represents the class of {k | x,p,q}.

    Coefficient 1 on every cube made of the edge (x, x[r+1]) together with
    k vertices in x-direction 0, p_l vertices in direction l <= r and
    q_j vertices in direction r + j, avoiding the edge's endpoints.
    """
    r = len(p)
    xbar = tree.direction_vertex(x, r + 1)
    supplies = [[v for v in tree.component_vertices(x, 0)]]
    counts = [k]
    for ell, t in enumerate(list(p) + list(q), start=1):
        supplies.append([v for v in tree.component_vertices(x, ell) if v != xbar])
        counts.append(t)
    out: Cochain = {}
    for choice in _choose_all(supplies, counts):
        cube = canonical([(x, xbar)] + [(v, v) for v in choice])
        out[cube] = 1
    return out


def _choose_all(supplies, counts) -> Iterator[tuple[int, ...]]:
    if not supplies:
        yield ()
        return
    for head in combinations(supplies[0], counts[0]):
        for tail in _choose_all(supplies[1:], counts[1:]):
            yield head + tail
