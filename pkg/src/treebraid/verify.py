"""Cross-checks between the closed formulas and the cubical model."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable

from .cubes import (BudgetExceeded, boundary, coboundary, cup, default_budget, enumerate_cells,
                    front_back, integral_cohomology)
from .interaction import (Interaction, classify_interaction, enumerate_vnt, is_face)
from .morse import MorseModel, enumerate_critical
from .oracle import Oracle
from .ring import evaluate_product, exterior_face_ring_certificate, factorize_basis, multiply_strong
from .tree import RootedPlaneTree, is_binary_core, satisfies_core_embedding


@dataclass
class Check:
    name: str
    passed: bool | None  # None: skipped
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        status = "skipped" if self.passed is None else ("pass" if self.passed else "fail")
        return {"check": self.name, "status": status, **self.detail}


def _cell_json(c):
    return [list(ing) for ing in c]


def check_boundary_squared(tree, n, budget) -> Check:
    count = 0
    for m in range(2, n + 1):
        for c in enumerate_cells(tree, n, m, budget=budget):
            acc: dict = {}
            for f, s in boundary(c):
                for g, t in boundary(f):
                    acc[g] = acc.get(g, 0) + s * t
            count += 1
            if any(acc.values()):
                return Check("boundary_squared", False, {"cell": _cell_json(c)})
    return Check("boundary_squared", True, {"cells": count})


def _faces_of(cube):
    return [cube[:i] + ((end, end),) + cube[i + 1:]
            for i, (lo, hi) in enumerate(cube) if lo != hi for end in (lo, hi)]


def leibniz_witness(tree, n, cup_fn: Callable = cup, samples: int = 200, seed: int = 0,
                    budget: int | None = None):
    """First pair of ordered cubes violating the Leibniz rule, or None.

    Pairs are drawn so that the rule has something to say: split a random
    cube e into front and back, then take a face of one of the two pieces.
    The coboundary of that piece then reaches e.
    """
    rnd = random.Random(seed)
    cells = [c for m in range(1, n + 1)
             for c in enumerate_cells(tree, n, m, ordered=True, budget=budget)]
    if not cells:
        return None

    def cob(x):
        return coboundary(tree, x, gradient=False, orbit=False)

    for _ in range(samples):
        e = rnd.choice(cells)
        k = sum(lo != hi for lo, hi in e)
        _, c, d = rnd.choice(list(front_back(e, rnd.randint(0, k))))
        options = [(f, d) for f in _faces_of(c)] + [(c, f) for f in _faces_of(d)]
        c, d = rnd.choice(options)
        p = sum(lo != hi for lo, hi in c)
        a, b = {c: 1}, {d: 1}
        lhs = cob(cup_fn(a, b))
        rhs = dict(cup_fn(cob(a), b))
        for key, v in cup_fn(a, cob(b)).items():
            rhs[key] = rhs.get(key, 0) + (-1) ** p * v
        if lhs != {key: v for key, v in rhs.items() if v}:
            return c, d
    return None


def check_leibniz(tree, n, budget, cup_fn=cup) -> Check:
    try:
        w = leibniz_witness(tree, n, cup_fn, budget=budget)
    except BudgetExceeded as exc:
        return Check("leibniz", None, {"reason": str(exc)})
    if w:
        return Check("leibniz", False, {"pair": [_cell_json(w[0]), _cell_json(w[1])]})
    return Check("leibniz", True)


def check_morse_coboundary(model: MorseModel) -> Check:
    count = 0
    for m in range(model.n + 1):
        for cell in enumerate_critical(model.tree, model.n, m):
            count += 1
            if model.morse_coboundary(cell):
                return Check("morse_coboundary", False, {"cell": cell.to_json()})
    return Check("morse_coboundary", True, {"cells": count})


def check_betti(tree, n, budget) -> list[Check]:
    h = integral_cohomology(tree, n, budget)
    crit = [len(enumerate_critical(tree, n, m)) for m in range(len(h["betti"]))]
    return [Check("critical_equals_betti", crit == h["betti"], {"betti": h["betti"], "critical": crit}),
            Check("torsion_free", not h["torsion"], {"torsion": h["torsion"]})]


def check_factorization(tree, n) -> Check:
    count = 0
    for m in range(1, len(tree.essential) + 1):
        for cell in enumerate_critical(tree, n, m):
            fac = factorize_basis(tree, n, cell)
            count += 1
            if multiply_strong(tree, n, fac) != cell or evaluate_product(tree, n, fac)[cell] != 1 \
                    or len(evaluate_product(tree, n, fac)) != 1:
                return Check("factorization", False, {"cell": cell.to_json()})
    return Check("factorization", True, {"cells": count})


def families(tree, n, max_size=3):
    by_x: dict = {}
    for v in enumerate_vnt(tree, n):
        by_x.setdefault(v.x, []).append(v)
    for size in range(1, max_size + 1):
        for xs in combinations(sorted(by_x), size):
            yield from product(*(by_x[x] for x in xs))


def check_trichotomy(tree, n, max_size=3) -> Check:
    count = 0
    for fam in families(tree, n, max_size):
        count += 1
        kind = classify_interaction(tree, n, fam)
        face = is_face(tree, n, fam)
        weakish = is_face(tree, n, fam, strict=False) and not face
        if (kind is Interaction.STRONG) != face or (kind is Interaction.WEAK) != weakish:
            return Check("trichotomy", False, {"family": [v.to_json() for v in fam],
                                               "kind": kind.value, "face": face})
    return Check("trichotomy", True, {"families": count})


def check_products(tree, n, oracle: str, budget, max_factors=3, seed=0) -> list[Check]:
    """Ordered pairs exhaustively, triples in one shuffled order each."""
    out = []
    O = Oracle.build(tree, n, budget)
    V = enumerate_vnt(tree, n)
    rnd = random.Random(seed)
    tasks = [list(p) for p in product(V, repeat=2)] if max_factors >= 2 else []
    if max_factors >= 3:
        for t in combinations(V, 3):
            t = list(t)
            rnd.shuffle(t)
            tasks.append(t)
    for which in ("cubical", "blocks"):
        if oracle not in (which, "both"):
            continue
        bad = None
        done = 0
        for fam in tasks:
            formula = evaluate_product(tree, n, fam)
            if which == "cubical":
                ref = O.product(fam)
            else:
                if len({v.x for v in fam}) < len(fam):
                    continue
                if [v.x for v in fam] != sorted(v.x for v in fam):
                    continue
                ref = O.blocks_product(fam)
            done += 1
            if formula != ref:
                bad = {"factors": [v.to_json() for v in fam], "formula": formula.to_json(),
                       "oracle": ref.to_json()}
                break
        out.append(Check(f"products_{which}", bad is None, bad or {"products": done}))
    return out


def check_certificate(tree, n) -> Check:
    if not (is_binary_core(tree) and satisfies_core_embedding(tree)):
        return Check("binary_core_certificate", None, {"reason": "tree is not a normalized binary core"})
    cert = exterior_face_ring_certificate(tree, n)
    return Check("binary_core_certificate", cert.passed,
                 {"families": cert.checked, "counterexamples": cert.counterexamples[:3]})


def run_checks(tree: RootedPlaneTree, n: int, oracle: str = "both",
               budget: int | None = None) -> list[Check]:
    """Run every check in order.

    If the budget runs out the report stops there, ending with a check named
    ``budget`` whose ``passed`` is None.
    """
    budget = default_budget() if budget is None else budget
    steps = [
        lambda: check_boundary_squared(tree, n, budget),
        lambda: check_leibniz(tree, n, budget),
        lambda: check_morse_coboundary(MorseModel(tree, n, budget)),
        lambda: check_betti(tree, n, budget),
        lambda: check_factorization(tree, n),
        lambda: check_trichotomy(tree, n),
    ]
    if oracle != "none":
        steps.append(lambda: check_products(tree, n, oracle, budget))
    steps.append(lambda: check_certificate(tree, n))
    checks: list[Check] = []
    for step in steps:
        try:
            res = step()
        except BudgetExceeded as exc:
            checks.append(Check("budget", None, {"reason": str(exc)}))
            break
        checks.extend(res if isinstance(res, list) else [res])
    return checks


def budget_hit(checks: list[Check]) -> bool:
    return bool(checks) and checks[-1].name == "budget"
