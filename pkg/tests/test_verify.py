from treebraid.catalog import linear_binary, minimal_y
from treebraid.cubes import cup_cubes
from treebraid.tree import subdivide_for
from treebraid.verify import check_leibniz, run_checks


def unsigned_cup(a, b):
    """Cup product with every sign dropped: a deliberately broken convention."""
    out = {}
    for c, x in a.items():
        for d, y in b.items():
            r = cup_cubes(c, d)
            if r is not None:
                out[r[1]] = out.get(r[1], 0) + x * y
    return {e: v for e, v in out.items() if v}


def test_minimal_y_passes():
    tree, _ = subdivide_for(minimal_y(), 2)
    checks = run_checks(tree, 2)
    assert all(c.passed is not False for c in checks)


def test_linear_binary_passes_with_certificate():
    tree, _ = subdivide_for(linear_binary(2), 3)
    checks = {c.name: c for c in run_checks(tree, 3)}
    assert all(c.passed for c in checks.values())
    assert checks["binary_core_certificate"].passed


def test_corrupted_signs_fail_leibniz():
    tree, _ = subdivide_for(linear_binary(2), 3)
    check = check_leibniz(tree, 3, 10**6, cup_fn=unsigned_cup)
    assert check.passed is False
    assert len(check.detail["pair"]) == 2
