import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import sub, sufficient_trees
from treebraid.catalog import flipped_linear_binary, fork_caterpillar, linear_binary, t0
from treebraid.cubes import enumerate_cells, orbit_cup
from treebraid.interaction import (Interaction, InteractionVertex as V, classify_interaction,
                                   enumerate_vnt, knt_faces)
from treebraid.morse import CriticalCell, enumerate_critical
from treebraid.oracle import Oracle
from treebraid.ring import (ChangedGenerator, RingElement, evaluate_product,
                            exterior_face_ring_certificate, factorize_basis, multiply_strong,
                            raag_presentation, unit)
from treebraid.tree import TreeError
from treebraid.verify import check_products


def test_ring_element_algebra():
    a, b = CriticalCell(1, ()), CriticalCell(2, ())
    x = RingElement({a: 2, b: -1})
    assert x + (-x) == 0
    assert (x + x)[a] == 4
    assert x.mod(3) == {a: 2, b: 2}
    assert RingElement({a: 0}) == 0
    assert not RingElement()


@given(sufficient_trees(max_vertices=9, n_range=(2, 4)))
def test_factorization_round_trip(inst):
    tree, n = inst
    for m in range(1, len(tree.essential) + 1):
        for cell in enumerate_critical(tree, n, m):
            fac = factorize_basis(tree, n, cell)
            assert classify_interaction(tree, n, fac) is Interaction.STRONG
            assert multiply_strong(tree, n, fac) == cell
            assert evaluate_product(tree, n, fac) == {cell: 1}


@given(sufficient_trees(max_vertices=9, n_range=(2, 4)), st.randoms(use_true_random=False))
def test_graded_anticommutativity(inst, rnd):
    tree, n = inst
    verts = enumerate_vnt(tree, n)
    if not verts:
        return
    for _ in range(10):
        a, b = rnd.choice(verts), rnd.choice(verts)
        assert evaluate_product(tree, n, [a, b]) == -evaluate_product(tree, n, [b, a])
        assert evaluate_product(tree, n, [a, a]) == 0


def test_empty_product_is_unit():
    tree = sub(linear_binary(2), 3)
    assert evaluate_product(tree, 3, []) == unit(3)
    assert Oracle.build(tree, 3).product([]) == unit(3)


@given(sufficient_trees(max_vertices=7), st.randoms(use_true_random=False))
def test_cochain_cup_is_associative(inst, rnd):
    tree, n = inst
    cells = enumerate_cells(tree, n, 1)
    if not cells:
        return
    a, b, c = ({x: rnd.choice([-1, 1, 2]) for x in rnd.sample(cells, min(3, len(cells)))}
               for _ in range(3))
    assert orbit_cup(tree, orbit_cup(tree, a, b), c) == orbit_cup(tree, a, orbit_cup(tree, b, c))


@pytest.mark.parametrize("tree,n", [
    (flipped_linear_binary(2), 3),
    (flipped_linear_binary(2), 4),
    (fork_caterpillar(), 4),
    (linear_binary(2), 3),
])
def test_products_match_oracle(tree, n):
    tree = sub(tree, n)
    for check in check_products(tree, n, "both", budget=10**6):
        assert check.passed, check.detail


def test_left_and_right_association_agree():
    """Triples through the oracle with the cup folded from the left."""
    tree, n = sub(flipped_linear_binary(3), 3), 3
    O = Oracle.build(tree, n)
    verts = enumerate_vnt(tree, n)
    rnd = random.Random(7)
    for a, b, c in rnd.sample(list(combinations(verts, 3)), 15):
        left = orbit_cup(tree, orbit_cup(tree, O.representative(a), O.representative(b)),
                         O.representative(c))
        assert O.push(left, 3) == evaluate_product(tree, n, [a, b, c])


def test_weak_products_are_exercised():
    tree, n = sub(fork_caterpillar(), 4), 4
    kinds = {}
    for a, b in combinations(enumerate_vnt(tree, n), 2):
        if a.x != b.x:
            kind = classify_interaction(tree, n, sorted([a, b], key=lambda v: v.x))
            kinds.setdefault(kind, []).append(bool(evaluate_product(tree, n, [a, b])))
    assert set(kinds) == set(Interaction)
    assert any(kinds[Interaction.WEAK]) and not all(kinds[Interaction.WEAK])
    assert not any(kinds[Interaction.NONE])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_binary_core_certificate(n):
    cert = exterior_face_ring_certificate(sub(linear_binary(2), n), n)
    assert cert.passed, cert.counterexamples[:2]


def test_certificate_rejects_unnormalized_embedding():
    with pytest.raises(TreeError):
        exterior_face_ring_certificate(sub(fork_caterpillar(), 3), 3)


def test_rebasing_guard():
    tree = sub(fork_caterpillar(), 3)
    x = tree.essential[0]
    assert ChangedGenerator(V(0, x, (0, 1), (1,)), rebased=True).expansion() == [
        (1, V(0, x, (0, 1), (1,)))]
    with pytest.raises(TreeError):
        ChangedGenerator(V(0, x, (1,), (0, 1)), rebased=True)
    with pytest.raises(TreeError):
        ChangedGenerator(V(0, x, (1, 1), (0,)), rebased=True)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
def test_raag_presentation(m, n):
    tree = sub(linear_binary(m), n)
    pres = raag_presentation(tree, n)
    faces = knt_faces(tree, n, 1)
    assert pres["generators"] == enumerate_vnt(tree, n)
    edges = {frozenset(f) for f in faces[1]} if len(faces) > 1 else set()
    assert {frozenset(r) for r in pres["relations"]} == edges


def test_raag_presentation_needs_linear_tree():
    with pytest.raises(TreeError):
        raag_presentation(sub(t0(), 2), 2)


@pytest.mark.slow
def test_six_strand_triple_against_oracle():
    tree, n = sub(flipped_linear_binary(3), 6), 6
    xs = tree.essential
    fam = [V(0, xs[0], (5,), (0,)), V(3, xs[1], (2,), (0,)), V(4, xs[2], (1,), (0,))]
    assert classify_interaction(tree, n, fam) is Interaction.WEAK
    formula = evaluate_product(tree, n, fam)
    assert formula
    assert Oracle.build(tree, n, 10**7).product(fam) == formula
