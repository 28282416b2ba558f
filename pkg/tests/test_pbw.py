import random
from fractions import Fraction

import pytest

from superor.algebra import Gen
from superor.modules import verma
from superor.pbw import (
    ExponentVector, lex_greater, principal_greater, principal_max, revlex_greater, triple,
)


def test_exponent_vector_basics():
    i = ExponentVector([2, 0, 1])
    assert i.weight() == 2 * 1 + 1 * 3
    assert i.degree_count() == 3
    assert i.max_pos() == 3 and i.min_pos() == 1
    assert i.prime() == ExponentVector([2])
    assert i.double_prime() == ExponentVector([1, 0, 1])
    assert i.to_list() == [2, 0, 1]
    with pytest.raises(ValueError):
        ExponentVector([2], binary=True)


def test_lex_and_revlex():
    a, b = ExponentVector([0, 1]), ExponentVector([5])
    assert lex_greater(a, b)  # highest position decides
    assert revlex_greater(b, a)  # lowest position decides


def test_principal_order_examples():
    # k dominates j dominates i
    assert principal_greater(triple(k=[1]), triple(i=[9, 9], j=[1, 1]))
    assert principal_greater(triple(j=[0, 1]), triple(j=[1]))  # weight first
    assert principal_greater(triple(i=[0, 1]), triple(i=[2]))
    assert principal_max([triple(i=[1]), triple(j=[1]), triple()]) == triple(j=[1])


def test_verma_engine_straightening():
    M = verma(1, 2, 3, 3)
    eng = M.engine
    # L_1 L_{-1} v = [L_1, L_{-1}] v = -2 L_0 v = -2 h1 v
    v = eng.vector((Gen("L", 2), Gen("L", -2)))
    assert v == {((), 0): Fraction(-2)}
    # G_{1/2} G_{-1/2} v = [G_{1/2}, G_{-1/2}] v = C2 v = 0
    assert eng.vector((Gen("G", 1), Gen("G", -1))) == {}
    # odd letters square to half their bracket: G_{-1/2}^2 = [G_{-1/2}, G_{-1/2}]/2 = -W_{-1}/2
    assert eng.vector((Gen("G", -1), Gen("G", -1))) == {((Gen("W", -2),), 0): Fraction(-1, 2)}


def test_normal_words_and_random_schedule():
    M = verma(0, 1, 0, 3)
    eng = M.engine
    words = eng.words(Fraction(3, 2))
    assert all(eng.is_normal(w) for w in words)
    rng = random.Random(5)
    for w in words:
        shuffled = list(w)
        rng.shuffle(shuffled)
        assert eng.vector(tuple(shuffled)) == eng.straighten_random(tuple(shuffled), 0, random.Random(1))
