from fractions import Fraction

import pytest

from superor.algebra import Gen
from superor.cohomology import (
    Cocycle, WindowTooSmall, coboundary, cocycle_check, constraint_triples, explicit_cocycles,
    independence_check, closed_form_check, normalize_by_coboundary, same_class_span, solve_h2,
)
from superor.linalg import RowReducer

L0, W0 = Gen("L", 0), Gen("W", 0)


@pytest.mark.parametrize("eps2", [0, 1])
def test_explicit_cocycles_small_window(eps2):
    cs = explicit_cocycles(eps2)
    assert len(cs) == (4 if eps2 == 0 else 2)
    assert all(cocycle_check(c, 4).passed for c in cs)
    assert independence_check(cs, 5).passed


def test_coboundaries_are_cocycles_but_trivial():
    f = {Gen("L", 2): Fraction(1), Gen("W", -2): Fraction(3), Gen("G", 1): Fraction(-2)}
    psi = coboundary(1, f, 5)
    assert cocycle_check(psi, 4).passed
    assert not independence_check([psi], 5).passed


def test_w0_coboundary_vanishes():
    # W_0 never appears in a bracket of the centreless algebra, so psi_f with f(W_0) = 1 is zero
    psi = coboundary(1, {W0: Fraction(1)}, 6)
    assert psi.table(6) == {}
    beta2 = explicit_cocycles(1)[1]
    assert independence_check([beta2, psi], 6).failures == [{"dependent": ["coboundary"]}]


def test_non_cocycle_is_detected():
    bad = Cocycle(1, 5, fn=lambda x, y: 1 if (x.family, y.family) == ("L", "L") and x.mode2 + y.mode2 == 0 else 0,
                  name="bad")
    assert not cocycle_check(bad, 3).passed


@pytest.mark.parametrize("eps2,want", [(0, 4), (1, 2)])
def test_h2_small_windows(eps2, want):
    for n in (4, 5):
        res = solve_h2(eps2, n)
        assert res.dimension == want
        assert res.normalized_dimension == want
        assert same_class_span(res.basis, explicit_cocycles(eps2), n)
        for c in res.basis:
            assert closed_form_check(c, n).passed


def test_h2_window_guard():
    with pytest.raises(ValueError):
        solve_h2(0, 3)


def test_table_window_guard():
    c = Cocycle(0, 4, {})
    with pytest.raises(WindowTooSmall):
        c(Gen("L", 20), Gen("L", -20))
    with pytest.raises(WindowTooSmall):
        cocycle_check(c, 6)


def test_normalization_kills_l0_column():
    f = {Gen("L", 4): Fraction(1), Gen("G", -2): Fraction(5)}
    c = Cocycle(0, 5, fn=lambda x, y: explicit_cocycles(0)[2](x, y) + coboundary(0, f, 5)(x, y))
    n = normalize_by_coboundary(c)
    for m in range(-4, 5):
        if m:
            for fam in ("L", "W", "G"):
                assert n(L0, Gen(fam, 2 * m)) == 0


def test_ordered_and_unordered_constraints_have_equal_rank():
    # the unordered triples already span the constraints coming from all orderings
    from superor.cohomology import _jacobi_row

    from superor.algebra import sbar
    alg = sbar(1)
    a, b = RowReducer(), RowReducer()
    for t in constraint_triples(1, 4):
        a.add(_jacobi_row(alg, *t))
    for t in constraint_triples(1, 4, ordered=True):
        b.add(_jacobi_row(alg, *t))
    assert a.rank == b.rank
    assert all(a.contains(r) for r in b.basis())
