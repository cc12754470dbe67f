"""Cup products in H*(B_nT) expressed in the basis of critical cells."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .cubes import Cochain, canonical
from .interaction import (Interaction, InteractionParams, InteractionVertex, classify_params,
                          enumerate_vnt, interaction_params, validate_vertex)
from .morse import Block, CriticalCell, _compositions, enumerate_critical, validate_critical
from .tree import (RootedPlaneTree, TreeError, components, is_binary_core,
                   satisfies_core_embedding)


class RingElement:
    """Integer combination of basis cells; zero coefficients are never stored."""

    def __init__(self, terms: dict[CriticalCell, int] | Iterable[tuple[CriticalCell, int]] = ()):
        self.terms: dict[CriticalCell, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for cell, c in items:
            self.add(cell, c)

    def add(self, cell: CriticalCell, c: int) -> None:
        v = self.terms.get(cell, 0) + c
        if v:
            self.terms[cell] = v
        else:
            self.terms.pop(cell, None)

    def __add__(self, other: RingElement) -> RingElement:
        out = RingElement(self.terms)
        for cell, c in other.terms.items():
            out.add(cell, c)
        return out

    def scaled(self, c: int) -> RingElement:
        return RingElement({cell: c * v for cell, v in self.terms.items()}) if c else RingElement()

    def __neg__(self) -> RingElement:
        return self.scaled(-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self.terms == other.terms
        if isinstance(other, dict):
            return self.terms == {k: v for k, v in other.items() if v}
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, cell: CriticalCell) -> int:
        return self.terms.get(cell, 0)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def mod(self, p: int) -> RingElement:
        """Coefficients reduced into 0..p-1 (p = 0 leaves them alone)."""
        if not p:
            return self
        return RingElement({cell: c % p for cell, c in self.terms.items()})

    def to_json(self) -> list[dict]:
        return [{"cell": cell.to_json(), "coeff": c} for cell, c in self.items()]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{cell}" for cell, c in self.items())


def unit(n: int) -> RingElement:
    return RingElement({CriticalCell(n, ()): 1})


def basis_of(v: InteractionVertex) -> CriticalCell:
    return CriticalCell(v.k, (Block(v.x, v.p, v.q),))


# -- changed generators -------------------------------------------------------------------

def rebase_trigger(v: InteractionVertex) -> bool:
    return len(v.q) == 1 and not any(v.p[:-1])


@dataclass(frozen=True)
class ChangedGenerator:
    vertex: InteractionVertex
    rebased: bool = False

    def __post_init__(self):
        if self.rebased and not rebase_trigger(self.vertex):
            raise TreeError(f"{self.vertex} cannot be rebased: needs p_1..p_(r-1) = 0 and s = 1")

    @classmethod
    def auto(cls, vertex: InteractionVertex, tree: RootedPlaneTree) -> ChangedGenerator:
        core = is_binary_core(tree) and satisfies_core_embedding(tree)
        return cls(vertex, core and rebase_trigger(vertex))

    def expansion(self) -> list[tuple[int, InteractionVertex]]:
        v = self.vertex
        if not self.rebased:
            return [(1, v)]
        r = len(v.p)
        out = []
        for tot in range(v.k + 1):
            for a in _compositions(tot, r):
                p = a[:-1] + (v.p[-1] + a[-1],)
                out.append((1, InteractionVertex(v.k - tot, v.x, p, v.q)))
        return out

    def to_json(self) -> dict:
        return dict(self.vertex.to_json(), rebased=self.rebased)


# -- factorization and strong products ----------------------------------------------------

def factorize_basis(tree: RootedPlaneTree, n: int, cell: CriticalCell) -> list[InteractionVertex]:
    """Unique factors whose interaction parameters reproduce ``cell``.

    Back-substitution from the largest essential vertex: the last block gives
    p_m and q_m directly, k_m follows from the ingredient count, and n - k_m
    is returned to whichever parameter has x_m among its pruned leaves.
    """
    validate_critical(tree, cell, n)
    xs = cell.xs
    comp = components(tree, xs)
    R0 = cell.k
    P = [list(b.p) for b in cell.blocks]
    Q = [list(b.q) for b in cell.blocks]
    home = {}
    for key in comp.vertices:
        for j in comp.leaf_indices(key):
            home[j] = key
    out = []
    for i in range(len(xs), 0, -1):
        p, q = tuple(P[i - 1]), tuple(Q[i - 1])
        k = n - 1 - sum(p) - sum(q)
        out.append(InteractionVertex(k, xs[i - 1], p, q))
        j, ell = home[i]
        if j == 0:
            R0 += n - k
        else:
            r = len(P[j - 1])
            if ell <= r:
                P[j - 1][ell - 1] += n - k
            else:
                Q[j - 1][ell - 1 - r] += n - k
    assert R0 == n or not xs, "inconsistent critical cell"
    return out[::-1]


def multiply_strong(tree: RootedPlaneTree, n: int, family: Sequence[InteractionVertex],
                    params: InteractionParams | None = None) -> CriticalCell:
    par = params or interaction_params(tree, n, family)
    if classify_params(par) is not Interaction.STRONG:
        raise ValueError("factors do not interact strongly")
    return CriticalCell(par.R0, tuple(Block(v.x, P, Q) for v, P, Q in zip(family, par.P, par.Q)))


def multiply_weak(tree: RootedPlaneTree, n: int, gen: InteractionVertex,
                  cell: CriticalCell) -> RingElement:
    """Product of a generator with a basis cell whose enlarged family is weak.

    Three sums: one over r_x-tuples a with 1 <= |a| <= R0 (sign -), and for
    each l < s_x one over (a, b) with |a| + b < R0 (sign +) and, when
    Q_{x,l+1} > 0, one over |a| + b <= R0 (sign -).
    """
    factors = factorize_basis(tree, n, cell)
    if cell.xs and gen.x >= cell.xs[0]:
        raise ValueError("generator vertex must precede the cell's vertices")
    family = [gen] + factors
    par = interaction_params(tree, n, family)
    if classify_params(par) is not Interaction.WEAK:
        raise ValueError("enlarged family does not interact weakly")
    if any(par.P[0]):
        raise AssertionError("weak interaction with P_x != 0")
    R0, Qx = par.R0, par.Q[0]
    r, s = len(gen.p), len(gen.q)
    rest = cell.blocks
    out = RingElement()

    def term(k, p, q, sign):
        out.add(CriticalCell(k, (Block(gen.x, tuple(p), tuple(q)),) + rest), sign)

    for tot in range(1, R0 + 1):
        for a in _compositions(tot, r):
            term(R0 - tot, a, Qx, -1)
    for ell in range(1, s):
        for tot in range(R0 + 1):
            for b in range(R0 + 1 - tot):
                for a in _compositions(tot, r):
                    head = a + (Qx[0] + b + 1,) + Qx[1:ell]
                    if tot + b < R0:
                        term(R0 - tot - b - 1, head, Qx[ell:], 1)
                    if Qx[ell] > 0:
                        term(R0 - tot - b, head, (Qx[ell] - 1,) + Qx[ell + 1:], -1)
    return out


def multiply_into(tree: RootedPlaneTree, n: int, gen: InteractionVertex,
                  cell: CriticalCell) -> RingElement:
    """gen times a basis cell, for gen.x below every vertex of the cell."""
    if gen.x in cell.xs:
        return RingElement()
    family = [gen] + factorize_basis(tree, n, cell)
    par = interaction_params(tree, n, family)
    kind = classify_params(par)
    if kind is Interaction.STRONG:
        return RingElement({multiply_strong(tree, n, family, par): 1})
    if kind is Interaction.WEAK:
        return multiply_weak(tree, n, gen, cell)
    return RingElement()


def _sort_sign(xs: Sequence[int]) -> int:
    inv = sum(1 for i, j in combinations(range(len(xs)), 2) if xs[i] > xs[j])
    return -1 if inv & 1 else 1


def evaluate_product(tree: RootedPlaneTree, n: int,
                     generators: Sequence[ChangedGenerator | InteractionVertex]) -> RingElement:
    gens = [g if isinstance(g, ChangedGenerator) else ChangedGenerator(g) for g in generators]
    for g in gens:
        validate_vertex(tree, g.vertex, n)
    if not gens:
        return unit(n)
    total = RingElement()
    for choice in product(*(g.expansion() for g in gens)):
        coef = 1
        raws = []
        for c, v in choice:
            coef *= c
            raws.append(v)
        xs = [v.x for v in raws]
        if len(set(xs)) != len(xs):
            continue
        sign = _sort_sign(xs)
        raws.sort(key=lambda v: v.x)
        elem = RingElement({basis_of(raws[-1]): 1})
        for g in reversed(raws[:-1]):
            nxt = RingElement()
            for cell, c in elem.terms.items():
                nxt = nxt + multiply_into(tree, n, g, cell).scaled(c)
            elem = nxt
            if not elem:
                break
        total = total + elem.scaled(coef * sign)
    return total


# -- block cocycles -----------------------------------------------------------------------

def product_cocycle_blocks(tree: RootedPlaneTree, n: int,
                           family: Sequence[InteractionVertex]) -> Cochain:
    """Unordered cochain representing the ascending product of ``family``.

    Coefficient 1 on every cube built from the edges (x_i, x_i[r_i + 1]) and
    vertex blocks of sizes R0, P, Q drawn from the matching components.
    """
    family = sorted(family, key=lambda v: v.x)
    par = interaction_params(tree, n, family)
    if classify_params(par) is Interaction.NONE:
        return {}
    xs = tuple(v.x for v in family)
    comp = components(tree, xs)
    edges = []
    supplies, sizes = [sorted(comp.vertices[(0, 1)])], [par.R0]
    for i, v in enumerate(family, start=1):
        xbar = tree.direction_vertex(v.x, v.r + 1)
        edges.append((v.x, xbar))
        for ell, t in enumerate(par.P[i - 1] + par.Q[i - 1], start=1):
            supplies.append(sorted(comp.vertices[(i, ell)] - {xbar}))
            sizes.append(t)
    out: Cochain = {}

    def rec(idx, acc):
        if idx == len(supplies):
            out[canonical(edges + [(u, u) for u in acc])] = 1
            return
        for pick in combinations(supplies[idx], sizes[idx]):
            rec(idx + 1, acc + list(pick))

    rec(0, [])
    return out


# -- binary cores -------------------------------------------------------------------------

def interaction_levels(tree: RootedPlaneTree, xs: Sequence[int]) -> list[frozenset[int]]:
    comp = components(tree, xs)
    index = {x: i for i, x in enumerate(comp.xs, start=1)}

    def below(x):
        i = index[x]
        d = tree.degree(x) - 1
        return comp.leaves((i, d - 1)) | comp.leaves((i, d))

    levels = []
    cur = comp.leaves((0, 1))
    while cur:
        levels.append(frozenset(cur))
        cur = frozenset().union(*(below(x) for x in cur))
    return levels


def _preorder_key(tree: RootedPlaneTree, cell: CriticalCell) -> tuple:
    blocks = {b.x: b for b in cell.blocks}
    key = [cell.k]
    for level in interaction_levels(tree, cell.xs):
        for x in sorted(level):
            key += list(blocks[x].p + blocks[x].q)
    return tuple(key)


def basis_preorder(tree: RootedPlaneTree, a: CriticalCell, b: CriticalCell) -> int | None:
    """-1, 0 or 1 comparing level by level; None when the cells are incomparable."""
    if a.xs != b.xs or [len(t.p) for t in a.blocks] != [len(t.p) for t in b.blocks]:
        return None
    ka, kb = _preorder_key(tree, a), _preorder_key(tree, b)
    return (ka > kb) - (ka < kb)


@dataclass
class Certificate:
    passed: bool
    checked: int
    matrix: dict[int, list[dict]]
    counterexamples: list[dict]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked,
                "matrix": {str(m): rows for m, rows in self.matrix.items()},
                "counterexamples": self.counterexamples}


def ordered_families(tree: RootedPlaneTree, n: int, m: int) -> Iterator[tuple[InteractionVertex, ...]]:
    by_x: dict[int, list[InteractionVertex]] = {}
    for v in enumerate_vnt(tree, n):
        by_x.setdefault(v.x, []).append(v)
    for xs in combinations(sorted(by_x), m):
        yield from product(*(by_x[x] for x in xs))


def exterior_face_ring_certificate(tree: RootedPlaneTree, n: int,
                                   max_m: int | None = None) -> Certificate:
    if not is_binary_core(tree):
        raise TreeError("tree does not have a binary core")
    if not satisfies_core_embedding(tree):
        raise TreeError("embedding not normalized; run reembed_binary_core first")
    top = len(tree.essential) if max_m is None else max_m
    matrix: dict[int, list[dict]] = {}
    bad: list[dict] = []
    checked = 0
    for m in range(1, top + 1):
        leads = []
        rows = []
        for fam in ordered_families(tree, n, m):
            checked += 1
            gens = [ChangedGenerator.auto(v, tree) for v in fam]
            prod = evaluate_product(tree, n, gens)
            kind = classify_params(interaction_params(tree, n, fam))
            if kind is not Interaction.STRONG:
                if prod:
                    bad.append({"family": [g.to_json() for g in gens], "kind": kind.value,
                                "product": prod.to_json(), "reason": "non-strong product is nonzero"})
                continue
            lead = multiply_strong(tree, n, fam)
            leads.append(lead)
            rows.append({"family": [g.to_json() for g in gens], "lead": lead.to_json(),
                         "product": prod.to_json()})
            if prod[lead] != 1:
                bad.append({"family": [g.to_json() for g in gens], "reason": "leading coefficient",
                            "product": prod.to_json()})
            for cell in prod.terms:
                if cell != lead and basis_preorder(tree, cell, lead) != -1:
                    bad.append({"family": [g.to_json() for g in gens], "cell": cell.to_json(),
                                "reason": "term not below the leading cell"})
        basis = enumerate_critical(tree, n, m)
        if len(set(leads)) != len(leads) or set(leads) != set(basis):
            bad.append({"m": m, "reason": "leading cells do not biject with the basis",
                        "leads": len(leads), "basis": len(basis)})
        matrix[m] = rows
    return Certificate(not bad, checked, matrix, bad)


def linearity_violation(tree: RootedPlaneTree) -> int | None:
    """First essential vertex breaking the spine-in-last-direction shape."""
    ess = tree.essential
    for x in ess:
        if tree.degree(x) != 3:
            return x
        leaf = tree.direction_vertex(x, 1)
        if any(tree.in_subtree(e, leaf) for e in ess):
            return x
    return None


def raag_presentation(tree: RootedPlaneTree, n: int) -> dict:
    bad = linearity_violation(tree)
    if bad is not None:
        raise TreeError(f"essential vertex {bad} breaks the linear binary shape")
    gens = enumerate_vnt(tree, n)
    rels = [(a, b) for a, b in combinations(gens, 2)
            if a.x < b.x and a.q[0] + b.k >= n]
    return {"generators": gens, "relations": rels}
