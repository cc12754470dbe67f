"""Abrams' discrete configuration spaces D_nT (ordered) and UD_nT (unordered).

An ingredient is a pair ``(lo, hi)``: a vertex ``v`` is ``(v, v)`` and the edge
between a parent ``a`` and child ``b`` is ``(a, b)``.  The ordinal of an
ingredient is ``hi`` and its closure is ``{lo, hi}``.  An ordered cube is a
tuple of ingredients in coordinate order; an orbit cube is the same data
sorted by ordinal, which is the canonical representative of its Sigma_n orbit.

Cochains are plain dicts ``cube -> int`` without zero entries.  Two
orientation conventions exist for a cube: *product* (edges ordered by
coordinate) and *gradient* (edges ordered by their lower endpoint).  Orbit
cubes only carry the gradient orientation.
"""

from __future__ import annotations

import os
from itertools import combinations, permutations
from typing import Callable, Iterable, Iterator

from .tree import RootedPlaneTree, is_n_sufficient

Ingredient = tuple[int, int]
Cube = tuple[Ingredient, ...]
Cochain = dict[Cube, int]

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    return int(os.environ.get("TREEBRAID_BUDGET", DEFAULT_BUDGET))


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: {size} cells exceeds budget {budget}")
        self.size = size
        self.budget = budget


class NotSufficient(ValueError):
    pass


def Vertex(v: int) -> Ingredient:
    return (v, v)


def Edge(a: int, b: int) -> Ingredient:
    return (a, b) if a < b else (b, a)


def is_edge(ing: Ingredient) -> bool:
    return ing[0] != ing[1]


def dim(cube: Cube) -> int:
    return sum(lo != hi for lo, hi in cube)


def canonical(cube: Iterable[Ingredient]) -> Cube:
    return tuple(sorted(cube, key=lambda ing: ing[1]))


def occupied(cube: Cube) -> set[int]:
    out = set()
    for lo, hi in cube:
        out.add(lo)
        out.add(hi)
    return out


def is_cube(tree: RootedPlaneTree, cube: Cube) -> bool:
    seen = set()
    for lo, hi in cube:
        if lo != hi and tree.parent[hi] != lo:
            return False
        if lo in seen or hi in seen:
            return False
        seen.add(lo)
        seen.add(hi)
    return True


def require_sufficient(tree: RootedPlaneTree, n: int) -> None:
    if not is_n_sufficient(tree, n):
        raise NotSufficient(f"tree is not {n}-sufficiently subdivided; use subdivide_for first")


# -- enumeration ------------------------------------------------------------------

def iter_orbit_cells(tree: RootedPlaneTree, n: int, dimension: int) -> Iterator[Cube]:
    """Orbit cubes of the given dimension, by backtracking over ordinals."""
    parent = tree.parent
    N = tree.vertex_count
    cube: list[Ingredient] = []
    used: set[int] = set()

    def rec(start: int, edges_left: int):
        slots = n - len(cube)
        if slots == 0:
            if edges_left == 0:
                yield tuple(cube)
            return
        if edges_left > slots:
            return
        for v in range(start, N - slots + 1):
            if v in used:
                continue
            if slots > edges_left:
                used.add(v)
                cube.append((v, v))
                yield from rec(v + 1, edges_left)
                cube.pop()
                used.discard(v)
            if edges_left and v and parent[v] not in used:
                a = parent[v]
                used.add(v)
                used.add(a)
                cube.append((a, v))
                yield from rec(v + 1, edges_left - 1)
                cube.pop()
                used.discard(v)
                used.discard(a)

    yield from rec(0, dimension)


def enumerate_cells(tree: RootedPlaneTree, n: int, dimension: int, ordered: bool = False,
                    budget: int | None = None) -> list[Cube]:
    require_sufficient(tree, n)
    budget = default_budget() if budget is None else budget
    out = []
    for cell in iter_orbit_cells(tree, n, dimension):
        out.append(cell)
        if len(out) > budget:
            raise BudgetExceeded(f"UD_{n} cells of dimension {dimension}", len(out), budget)
    if not ordered:
        return out
    total = len(out) * _factorial(n)
    if total > budget:
        raise BudgetExceeded(f"D_{n} cells of dimension {dimension}", total, budget)
    return [perm for cell in out for perm in permutations(cell)]


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -- orientation and boundary -----------------------------------------------------

def orientation_sign(cube: Cube) -> int:
    """Sign relating product and gradient orientation of an ordered cube.

    Equals the parity of sorting the edges' lower endpoints from coordinate
    order into ascending order.  Orbit cubes are sorted by upper endpoint, so
    this can be -1 for them too; it is what converts between conventions.
    """
    los = [lo for lo, hi in cube if lo != hi]
    inv = 0
    for i in range(len(los)):
        for j in range(i + 1, len(los)):
            inv += los[i] > los[j]
    return -1 if inv & 1 else 1


def switch_orientation(cochain: Cochain) -> Cochain:
    """Re-express an ordered cochain in the other orientation convention."""
    return {c: v * orientation_sign(c) for c, v in cochain.items()}


def boundary(cube: Cube, gradient: bool = True, orbit: bool = True) -> list[tuple[Cube, int]]:
    """Signed faces: sum over r of (-1)^(r-1) (delta_2r - delta_2r-1).

    Edges are indexed in gradient order (by lower endpoint) or, with
    ``gradient=False``, in coordinate order.  ``delta_2r`` puts the upper
    endpoint in place of the r-th edge, ``delta_2r-1`` the lower one.  With
    ``orbit=True`` faces are returned canonicalized.
    """
    pos = [i for i, (lo, hi) in enumerate(cube) if lo != hi]
    if gradient:
        pos.sort(key=lambda i: cube[i][0])
    out = []
    for r, i in enumerate(pos):
        sign = -1 if r & 1 else 1
        lo, hi = cube[i]
        for end, s in ((hi, sign), (lo, -sign)):
            face = cube[:i] + ((end, end),) + cube[i + 1:]
            out.append((canonical(face) if orbit else face, s))
    return out


def cofaces(tree: RootedPlaneTree, cube: Cube, orbit: bool = True) -> list[Cube]:
    """Cubes having ``cube`` as a codimension-one face."""
    occ = occupied(cube)
    parent, children = tree.parent, tree.children
    out = []
    for i, (lo, hi) in enumerate(cube):
        if lo != hi:
            continue
        v = lo
        nbrs = [c for c in children[v] if c not in occ]
        if v and parent[v] not in occ:
            nbrs.append(parent[v])
        for w in nbrs:
            e = (v, w) if v < w else (w, v)
            new = cube[:i] + (e,) + cube[i + 1:]
            out.append(canonical(new) if orbit else new)
    return out


def coboundary(tree: RootedPlaneTree, cochain: Cochain, gradient: bool = True,
               orbit: bool = True) -> Cochain:
    out: Cochain = {}
    for f, val in cochain.items():
        for e in cofaces(tree, f, orbit):
            for face, s in boundary(e, gradient, orbit):
                if face == f:
                    out[e] = out.get(e, 0) + s * val
    return {c: v for c, v in out.items() if v}


# -- cup products -------------------------------------------------------------------

def cup_cubes(c: Cube, d: Cube) -> tuple[int, Cube] | None:
    """Product of duals of two ordered cubes (product orientation).

    Coordinatewise: edge times its upper endpoint is the edge, the lower
    endpoint times the edge is the edge, a vertex times itself is the vertex,
    anything else vanishes, as does a result whose closures overlap.
    """
    if len(c) != len(d):
        raise ValueError("cubes of different n")
    out = []
    eps = 0
    later_c = sum(lo != hi for lo, hi in c)
    for ci, di in zip(c, d):
        ce, de = ci[0] != ci[1], di[0] != di[1]
        later_c -= ce
        if ce and not de:
            if di[0] != ci[1]:
                return None
            out.append(ci)
        elif de and not ce:
            if ci[0] != di[0]:
                return None
            out.append(di)
        elif not ce and not de:
            if ci != di:
                return None
            out.append(ci)
        else:
            return None
        if de:
            eps += later_c
    if len(occupied(out)) != sum(1 + (lo != hi) for lo, hi in out):
        return None
    return (-1 if eps & 1 else 1), tuple(out)


def front_back(e: Cube, p: int) -> Iterator[tuple[int, Cube, Cube]]:
    """All (sign, c, d) with c of dimension p and c . d = sign * e."""
    pos = [i for i, (lo, hi) in enumerate(e) if lo != hi]
    for S in combinations(pos, p):
        Sset = set(S)
        c = list(e)
        d = list(e)
        eps = 0
        for i in pos:
            lo, hi = e[i]
            if i in Sset:
                d[i] = (hi, hi)
            else:
                c[i] = (lo, lo)
                eps += sum(1 for j in S if j > i)
        yield (-1 if eps & 1 else 1), tuple(c), tuple(d)


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Cup product of cochains on ordered cubes, product orientation."""
    out: Cochain = {}
    for c, x in a.items():
        for d, y in b.items():
            r = cup_cubes(c, d)
            if r is not None:
                s, e = r
                out[e] = out.get(e, 0) + s * x * y
    return {e: v for e, v in out.items() if v}


def orbit_cup_value(e: Cube, a: Callable[[Cube], int], b: Callable[[Cube], int], p: int) -> int:
    """Value on the orbit cube ``e`` of the product of two invariant cochains.

    ``a`` and ``b`` give values of unordered (gradient-oriented) cochains; the
    pulled-back cochains are Sigma_n invariant, so it suffices to evaluate the
    product on the ordered representative ``e`` itself.
    """
    total = 0
    for s, c, d in front_back(e, p):
        x = a(canonical(c))
        if not x:
            continue
        y = b(canonical(d))
        if y:
            total += s * orientation_sign(c) * orientation_sign(d) * x * y
    return total * orientation_sign(e)


def orbit_cup(tree: RootedPlaneTree, a: Cochain, b: Cochain) -> Cochain:
    """Unordered cochain c with pi*(c) = pi*(a) cup pi*(b)."""
    if not a or not b:
        return {}
    p = dim(next(iter(a)))
    q = dim(next(iter(b)))
    cands = set()
    children = tree.children
    for c in a:
        occ = occupied(c)
        slots = [i for i, (lo, hi) in enumerate(c) if lo == hi]
        for chosen in combinations(slots, q):
            options = [[(c[i][0], w) for w in children[c[i][0]] if w not in occ] for i in chosen]
            for pick in _product_distinct(options):
                new = list(c)
                for i, ing in zip(chosen, pick):
                    new[i] = ing
                cands.add(canonical(new))
    ga, gb = a.get, b.get
    out = {}
    for e in cands:
        v = orbit_cup_value(e, lambda x: ga(x, 0), lambda x: gb(x, 0), p)
        if v:
            out[e] = v
    return out


def _product_distinct(options: list[list[Ingredient]]) -> Iterator[tuple[Ingredient, ...]]:
    # choices must not share an upper endpoint
    def rec(i, used, acc):
        if i == len(options):
            yield tuple(acc)
            return
        for ing in options[i]:
            if ing[1] not in used:
                used.add(ing[1])
                acc.append(ing)
                yield from rec(i + 1, used, acc)
                acc.pop()
                used.discard(ing[1])
    yield from rec(0, set(), [])


def pi_star(cochain: Cochain) -> Cochain:
    """Pull back an unordered cochain to D_nT (gradient orientation, no signs)."""
    out = {}
    for c, v in cochain.items():
        for perm in permutations(c):
            out[perm] = v
    return out


# -- integral cohomology oracle --------------------------------------------------------

def boundary_matrix(tree: RootedPlaneTree, n: int, m: int,
                    cells: dict[int, list[Cube]]) -> list[dict[int, int]]:
    """Rows indexed by m-cells, columns by (m-1)-cells."""
    index = {c: i for i, c in enumerate(cells[m - 1])}
    rows = []
    for c in cells[m]:
        row: dict[int, int] = {}
        for face, s in boundary(c):
            j = index[face]
            row[j] = row.get(j, 0) + s
        rows.append({j: v for j, v in row.items() if v})
    return rows


def integral_cohomology(tree: RootedPlaneTree, n: int, budget: int | None = None) -> dict:
    """Ranks and torsion of H^*(UD_nT; Z) from Smith normal forms.

    Torsion of H^m is the torsion of coker of the coboundary into degree m,
    i.e. the non-unit invariant factors of the boundary out of degree m.
    """
    from .snf import invariant_factors

    require_sufficient(tree, n)
    budget = default_budget() if budget is None else budget
    cells: dict[int, list[Cube]] = {}
    total = 0
    for m in range(n + 1):
        cells[m] = enumerate_cells(tree, n, m, budget=budget)
        total += len(cells[m])
        if total > budget:
            raise BudgetExceeded(f"UD_{n} cells", total, budget)
    top = max((m for m in cells if cells[m]), default=0)
    factors = {m: invariant_factors(boundary_matrix(tree, n, m, cells), len(cells[m - 1]))
               for m in range(1, top + 1)}
    ranks, torsion = [], []
    for m in range(top + 1):
        rk_in = len(factors.get(m, []))
        rk_out = len(factors.get(m + 1, []))
        ranks.append(len(cells[m]) - rk_in - rk_out)
        torsion += [[m, f] for f in factors.get(m, []) if f > 1]
    return {"betti": ranks, "torsion": torsion, "cells": [len(cells[m]) for m in range(top + 1)]}
