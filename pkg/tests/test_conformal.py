from fractions import Fraction

import pytest

from superor.algebra import Gen
from superor.conformal import (
    S_CONFORMAL, SVIR_CONFORMAL, annihilation_bracket, annihilation_skew_check, annihilation_table,
    conformal_axiom_check, extended_bracket, get_conformal, jth_product, lambda_bracket, relabel,
    relabel_to_sbar0, unlabel,
)

Lc, Wc, Gc = {("L", 0): 1}, {("W", 0): 1}, {("G", 0): 1}


def test_generator_lambda_brackets():
    assert lambda_bracket(Lc, Lc) == {0: {("L", 1): 1}, 1: {("L", 0): 2}}
    assert lambda_bracket(Lc, Wc) == {0: {("W", 1): 1}}
    assert lambda_bracket(Lc, Gc) == {0: {("G", 1): 1}, 1: {("G", 0): 1}}
    assert lambda_bracket(Gc, Gc) == {0: {("W", 1): 1}}
    assert lambda_bracket(Wc, Wc) == {}
    assert lambda_bracket(Wc, Gc) == {}


def test_reversed_pairs_by_skew_symmetry():
    # [G_lambda L] = -[L_{-lambda-d} G] = lambda G
    assert lambda_bracket(Gc, Lc) == {1: {("G", 0): 1}}
    # [W_lambda L] = -[L_{-lambda-d} W] = -d W
    assert lambda_bracket(Wc, Lc) == {0: {("W", 1): -1}}


def test_derivative_sesquilinearity():
    # [d L_lambda L] = -lambda [L_lambda L]
    dl = {("L", 1): 1}
    assert lambda_bracket(dl, Lc) == {1: {("L", 1): -1}, 2: {("L", 0): -2}}
    # [L_lambda d L] = (d + lambda)[L_lambda L]
    got = lambda_bracket(Lc, dl)
    assert got == {0: {("L", 2): 1}, 1: {("L", 1): 3}, 2: {("L", 0): 2}}


def test_jth_products():
    assert jth_product(Lc, Lc, 0) == {("L", 1): 1}
    assert jth_product(Lc, Lc, 1) == {("L", 0): 2}
    assert jth_product(Lc, Lc, 2) == {}


@pytest.mark.parametrize("alg", [S_CONFORMAL, SVIR_CONFORMAL], ids=["S", "SVir"])
def test_axioms(alg):
    assert conformal_axiom_check(1, alg).passed


def test_annihilation_examples():
    assert annihilation_bracket("L", 0, "W", 2) == {("W", 1): Fraction(-2)}
    assert annihilation_bracket("L", 1, "L", 1) == {}
    # L_(2) -> L_{-1}, L_(0) -> L_1 and [L_{-1}, L_1] = 2 L_0 with L_0 <- L_(1)
    assert annihilation_bracket("L", 2, "L", 0) == {("L", 1): Fraction(2)}


def test_relabel_round_trip():
    for g in ("L", "W", "G"):
        for k in range(-4, 5):
            assert unlabel(relabel(g, k)) == (g, k)
    assert relabel("L", 0) == Gen("L", 2)
    assert relabel("W", 0) == Gen("W", -2)
    assert relabel("G", 0) == Gen("G", 0)
    assert relabel("G", 0, SVIR_CONFORMAL) == Gen("G", -1)


def test_relabel_small_windows():
    assert relabel_to_sbar0(4).passed
    assert relabel_to_sbar0(4, nonnegative_only=True).passed
    assert relabel_to_sbar0(4, SVIR_CONFORMAL).passed
    assert annihilation_skew_check(4).passed


def test_extended_derivation():
    assert extended_bracket("d", ("L", 2)) == {("L", 1): Fraction(-2)}
    assert extended_bracket(("G", 3), "d") == {("G", 2): Fraction(3)}
    assert extended_bracket("d", ("W", 0)) == {}
    # d acts as ad L_(0)
    for g in ("L", "W", "G"):
        for n in range(1, 4):
            assert extended_bracket("d", (g, n)) == {k: v for k, v in annihilation_bracket("L", 0, g, n).items()}


def test_table_shape():
    rows = annihilation_table(1)
    assert len(rows) == 9 * 4
    assert all(set(r) == {"a", "m", "b", "n", "result"} for r in rows)


def test_unknown_preset():
    with pytest.raises(ValueError):
        get_conformal("nope")
