import random
from fractions import Fraction

import pytest

from oracles import pbw_count
from superor.algebra import Gen
from superor.modules import (
    ConditionViolation, DegenerateInput, FiniteModule, InvalidWhittakerData, QuotientAlgebra, TdAlgebra,
    WhittakerData, build_induced, build_whittaker, claim1_reduce, derived_series, find_singular_vectors,
    generated_submodule, l0_eigenvalue, normal_form_transition, pbw_level_dims_oracle, restrictedness_probe,
    same_span, simplicity_probe, top_space, validate_module, verma,
)

G_HALF = Gen("G", -1)


@pytest.fixture(scope="module")
def whit():
    return build_whittaker(WhittakerData(1, {Gen("W", 2): Fraction(1)}), 4)


def test_oracles_agree():
    assert pbw_level_dims_oracle(8) == pbw_count(8)


def test_td_algebra_closed():
    for d in range(3):
        assert TdAlgebra(d).closure_check(5).passed


def test_quotient_algebra_and_derived_series():
    q = QuotientAlgebra(0, 0)
    assert q.ideal_check(6).passed
    assert derived_series(q) == [4, 1, 0]
    assert derived_series(QuotientAlgebra(2, 1))[-1] == 0


def test_validate_module():
    q = QuotientAlgebra(0, 0)
    assert validate_module(FiniteModule.one_dim(2, 3, 1, 0), q).passed
    assert validate_module(FiniteModule(2, [0, 0], Fraction(0), Fraction(0)), q).passed
    assert not validate_module(FiniteModule.one_dim(2, 3, 1, 4), q).passed
    # wrong parity: an odd generator acting inside an even space
    bad = FiniteModule(2, [0, 0], Fraction(0), Fraction(0), {Gen("G", 1): [[0, 1], [0, 0]]})
    assert not validate_module(bad, QuotientAlgebra(0, 1)).passed


def test_json_round_trip():
    V = FiniteModule.one_dim(Fraction(1, 2), 3, 0, 0, parity=1)
    assert FiniteModule.from_json(V.to_json()) == V
    with pytest.raises(ValueError):
        FiniteModule.from_json({"dim": 1, "actions": {"L_0": [[1, 2]]}})


def test_verma_levels_and_grading():
    M = verma(Fraction(3, 2), 1, 2, 2)
    assert M.level_dims() == [1, 1, 2, 3, 6]
    assert not M.certified
    for w in M.weights():
        for b in M.basis(exact=w):
            assert l0_eigenvalue(M, {b: Fraction(1)}) == Fraction(3, 2) - w


def test_weight_bound_zero_is_v():
    V = FiniteModule.one_dim(1, 1, 0, 0)
    M = build_induced(V, 0, 0, 0)
    assert M.level_dims() == [1]


def test_verma_singular_vectors():
    M = verma(0, 0, 0, 2)
    assert find_singular_vectors(M, 0) == [{((), 0): Fraction(1)}]
    sv = find_singular_vectors(M, Fraction(1, 2))
    assert sv == [{((G_HALF,), 0): Fraction(1)}]
    u = sv[0]
    for m in range(1, 4):
        assert M.act(Gen("W", 2 * m), u) == {}
        assert M.act(Gen("G", 2 * m - 1), u) == {}
    dims = generated_submodule(M, u)
    assert Fraction(0) not in dims  # proper submodule
    assert dims[Fraction(1, 2)] == 1


def test_verma_probe_not_certified():
    M = verma(1, 1, 1, 2)
    assert not simplicity_probe(M, 5).passed
    with pytest.raises(ConditionViolation):
        claim1_reduce(M, {((G_HALF,), 0): Fraction(1)})


def test_whittaker_data_validation():
    with pytest.raises(InvalidWhittakerData):
        WhittakerData(1, {Gen("W", 0): Fraction(1)}).validate()  # W_0 not in S^(1)
    with pytest.raises(InvalidWhittakerData):
        WhittakerData(1, {Gen("L", 4): Fraction(1)}).validate()  # psi(W_1) = 0
    with pytest.raises(InvalidWhittakerData):
        WhittakerData(1, {Gen("W", 2): Fraction(1), Gen("W", 4): Fraction(1)}).validate()
    WhittakerData(2, {Gen("W", 6): Fraction(1), Gen("L", 8): Fraction(5)}).validate()


def test_whittaker_conditions(whit):
    assert whit.certified
    assert whit.conditions["a"]["holds"] and whit.conditions["b"]["holds"] and whit.conditions["i"]["holds"]
    assert whit.level_dims()[:5] == [1, 1, 2, 3, 6]


def test_claim1_examples(whit):
    w = ((), 0)
    st = claim1_reduce(whit, {((Gen("L", -2),), 0): Fraction(1)})
    assert st.case == "k" and st.generator == Gen("W", 4) and st.ok
    assert st.image == {w: Fraction(-1)}
    st = claim1_reduce(whit, {((Gen("W", -4),), 0): Fraction(1)})
    assert st.case == "i" and st.ok and st.image == {w: Fraction(1)}
    st = claim1_reduce(whit, {((Gen("G", -1),), 0): Fraction(1)})
    assert st.case == "j" and st.ok
    with pytest.raises(DegenerateInput):
        claim1_reduce(whit, {w: Fraction(1)})
    with pytest.raises(DegenerateInput):
        claim1_reduce(whit, {})


def test_top_space_and_probe(whit):
    ts = top_space(whit, 1, 1, 2)
    vb = [{b: Fraction(1)} for b in whit.v_part_basis()]
    assert same_span(whit, ts, vb)
    assert simplicity_probe(whit, 10, seed=3).passed


def test_restrictedness(whit):
    r = restrictedness_probe(whit, whit.generator())
    # L_0 w, W_1 w and G_{1/2} w are nonzero; L_1, W_2, G_{3/2} kill w
    assert r["r"] == [1, 2, 2]
    assert r["within_bound"]
    M = verma(1, 1, 1, 2)
    assert restrictedness_probe(M, M.generator())["r"] == [1, 1, 1]
    with pytest.raises(DegenerateInput):
        restrictedness_probe(M, {})


def test_normal_form_transition(whit):
    out = normal_form_transition(whit, 3)
    assert out["rank"] == out["dim"] == out["other_dim"]
    M = verma(0, 0, 0, 2)
    out = normal_form_transition(M, 2)
    assert out["rank"] == out["dim"] == 13


def test_random_vectors_reduce(whit):
    from superor.modules import random_vector
    rng = random.Random(11)
    for _ in range(10):
        v = random_vector(whit, rng)
        steps = 0
        while not whit.in_v_part(v):
            st = claim1_reduce(whit, v)
            assert st.ok
            v = st.image
            steps += 1
        assert v
