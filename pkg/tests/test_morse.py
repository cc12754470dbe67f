from graphlib import CycleError, TopologicalSorter

import pytest
from hypothesis import given

from conftest import sufficient_trees
from treebraid.cubes import boundary, canonical, cofaces, enumerate_cells
from treebraid.interaction import enumerate_vnt
from treebraid.morse import (CriticalCell, Kind, MorseModel, _incidence, cocycle_rep_1dim,
                             enumerate_critical, from_orbit_cube, fs_status, to_orbit_cube)
from treebraid.ring import basis_of


@given(sufficient_trees(max_vertices=7))
def test_matching_is_an_involution(inst):
    tree, n = inst
    for m in range(n + 1):
        for c in enumerate_cells(tree, n, m):
            kind, partner = fs_status(tree, c)
            if kind is Kind.CRITICAL:
                continue
            partner = canonical(partner)
            back = fs_status(tree, partner)
            expected = Kind.COLLAPSIBLE if kind is Kind.REDUNDANT else Kind.REDUNDANT
            assert back[0] is expected and canonical(back[1]) == c
            if kind is Kind.REDUNDANT:
                assert partner in cofaces(tree, c)
                assert abs(_incidence(c, partner)) == 1


@given(sufficient_trees(max_vertices=7))
def test_modified_hasse_diagram_is_acyclic(inst):
    tree, n = inst
    model = MorseModel(tree, n)
    for m in range(n):
        graph = {}
        for c in enumerate_cells(tree, n, m):
            kind, up = model.status(c)
            if kind is Kind.REDUNDANT:
                graph[c] = [f for f, _ in boundary(up) if f != c
                            and model.status(f)[0] is Kind.REDUNDANT]
        try:
            tuple(TopologicalSorter(graph).static_order())
        except CycleError as exc:  # pragma: no cover
            pytest.fail(f"cycle {exc.args[1]}")


@given(sufficient_trees(max_vertices=8))
def test_critical_cells_match_brute_force(inst):
    tree, n = inst
    for m in range(n + 1):
        brute = {c for c in enumerate_cells(tree, n, m) if fs_status(tree, c)[0] is Kind.CRITICAL}
        cells = enumerate_critical(tree, n, m)
        assert {to_orbit_cube(tree, c) for c in cells} == brute
        assert len(cells) == len(brute)
        assert all(from_orbit_cube(tree, to_orbit_cube(tree, c)) == c for c in cells)


def test_morse_maps(instances):
    for (name, n), tree in instances.items():
        model = MorseModel(tree, n)
        for m in range(n + 1):
            crit = enumerate_critical(tree, n, m)
            for cell in crit:
                assert model.morse_coboundary(cell) == {}
                assert model.phi_under(model.phi_bar(cell), m, crit) == {cell: 1}


def test_unit_cell():
    assert CriticalCell(3, ()).m == 0


@given(sufficient_trees(max_vertices=8))
def test_closed_form_one_cocycles(inst):
    tree, n = inst
    model = MorseModel(tree, n)
    for v in enumerate_vnt(tree, n)[:6]:
        assert cocycle_rep_1dim(tree, v.k, v.x, v.p, v.q) == model.phi_bar(basis_of(v))
