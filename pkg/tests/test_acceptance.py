"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import os
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))

from oracles import pbw_count, s_basis, s_bracket  # noqa: E402
from superor import cohomology, conformal, modules  # noqa: E402
from superor.algebra import PRESETS, Gen, S, get_algebra, phi_embedding_check, super_jacobi_check, super_skew_check  # noqa: E402

# time limits in seconds
LIMIT_BRACKET = 1.0
LIMIT_IDENTITIES = 30.0
LIMIT_H2 = 120.0
LIMIT_VERMA = 10.0
LIMIT_WHITTAKER = 60.0

VERMA_PARAMS = [(0, 0, 0), (1, 2, 3), (Fraction(1, 2), -1, Fraction(7, 3)), (-3, Fraction(5, 4), 0), (10, 0, -2)]


def _whittaker(bound=4):
    return modules.build_whittaker(modules.WhittakerData(1, {Gen("W", 2): Fraction(1)}), bound)


def crit_1():
    t0 = time.perf_counter()
    basis = s_basis(10)
    bad = 0
    for a in basis:
        for b in basis:
            want = s_bracket(a, b)
            x, y = Gen(a[0], int(2 * a[1])), Gen(b[0], int(2 * b[1]))
            got = {(g.family, g.mode): c for g, c in S.bracket_gens(x, y).items()}
            if got != want:
                bad += 1
    dt = time.perf_counter() - t0
    return bad == 0 and dt < LIMIT_BRACKET, f"{len(basis) ** 2} pairs, {bad} mismatches, {dt:.2f}s (limit {LIMIT_BRACKET}s)"


def crit_2():
    t0 = time.perf_counter()
    failed = []
    for name in sorted(PRESETS):
        alg = get_algebra(name)
        for rep in (super_skew_check(alg, 8), super_jacobi_check(alg, 8)):
            if not rep.passed:
                failed.append(rep.name)
    dt = time.perf_counter() - t0
    return not failed and dt < LIMIT_IDENTITIES, f"{len(PRESETS)} presets, failed={failed}, {dt:.1f}s (limit {LIMIT_IDENTITIES}s)"


def crit_3():
    rep = conformal.relabel_to_sbar0(8)
    return rep.passed, f"{rep.checked} pairs compared, {len(rep.failures)} failures"


def crit_4():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for eps2 in (0, 1):
        cs = cohomology.explicit_cocycles(eps2)
        checks = [cohomology.cocycle_check(c, 8) for c in cs]
        ind = cohomology.independence_check(cs, 8)
        ok = ok and all(r.passed for r in checks) and ind.passed
        parts.append(f"eps={'0' if eps2 == 0 else '1/2'}: cocycles {sum(r.passed for r in checks)}/{len(cs)}, independent={ind.passed}")
    dims = {}
    for eps2, want in ((0, 4), (1, 2)):
        for n in (6, 8, 10):
            d = cohomology.solve_h2(eps2, n).dimension
            dims[(eps2, n)] = d
            ok = ok and d == want
    dt = time.perf_counter() - t0
    ok = ok and dt < LIMIT_H2
    parts.append("dims " + " ".join(f"{'0' if e == 0 else '1/2'}@{n}={d}" for (e, n), d in sorted(dims.items())))
    parts.append(f"{dt:.1f}s (limit {LIMIT_H2:.0f}s)")
    return ok, "; ".join(parts)


def crit_5():
    rep = phi_embedding_check(5)
    return rep.passed, f"{rep.checked} pairs, injective={rep.details['injective_on_basis']}"


def crit_6():
    t0 = time.perf_counter()
    oracle = pbw_count(4)
    ok = oracle == [1, 1, 2, 3, 6]
    notes = []
    g = ((Gen("G", -1),), 0)
    for h1, h2, c1 in VERMA_PARAMS:
        M = modules.verma(h1, h2, c1, 2)
        dims = M.level_dims()
        sv = modules.find_singular_vectors(M, Fraction(1, 2))
        span_ok = len(sv) == 1 and set(sv[0]) == {g}
        ev = modules.l0_eigenvalue(M, sv[0]) if sv else None
        good = dims == oracle and span_ok and ev == Fraction(h1) - Fraction(1, 2)
        ok = ok and good
        notes.append(f"({h1},{h2},{c1}):{'ok' if good else dims}")
    dt = time.perf_counter() - t0
    ok = ok and dt < LIMIT_VERMA
    return ok, f"dims {oracle}; " + " ".join(notes) + f"; {dt:.1f}s (limit {LIMIT_VERMA:.0f}s)"


def crit_7():
    t0 = time.perf_counter()
    M = _whittaker(4)
    rng = random.Random(2024)
    steps = bad = 0
    for _ in range(50):
        v = modules.random_vector(M, rng)
        while not M.in_v_part(v):
            st = modules.claim1_reduce(M, v)
            steps += 1
            if not st.ok:
                bad += 1
                break
            v = st.image
    probe = modules.simplicity_probe(M, 50, seed=7)
    dt = time.perf_counter() - t0
    ok = M.certified and bad == 0 and probe.passed and dt < LIMIT_WHITTAKER
    return ok, (f"certified={M.certified}; {steps} reduction steps on 50 vectors, {bad} degree mismatches; "
                f"probe {probe.checked - len(probe.failures)}/{probe.checked} reached V; {dt:.1f}s (limit {LIMIT_WHITTAKER:.0f}s)")


def crit_8():
    M = _whittaker(4)
    ts = modules.top_space(M, 1, 1, 2)
    vb = [{b: Fraction(1)} for b in M.v_part_basis()]
    same = modules.same_span(M, ts, vb)
    return same and len(ts) == len(vb), f"dim top_space={len(ts)}, dim 1(x)V={len(vb)}, same span={same} (weight <= 4)"


def crit_9():
    mods = {
        "verma": modules.verma(1, 2, 3, 3),
        "whittaker": _whittaker(4),
        "whittaker_L2": modules.build_whittaker(
            modules.WhittakerData(1, {Gen("W", 2): Fraction(3), Gen("L", 4): Fraction(2)}, Fraction(1), Fraction(2)), 3),
    }
    ok = True
    notes = []
    for name, M in mods.items():
        rng = random.Random(9)
        worst = 0
        for _ in range(20):
            v = modules.random_vector(M, rng, outer_only=False)
            r = modules.restrictedness_probe(M, v)
            finite = max(r["r"]) <= r["cutoff"] and r["within_bound"]
            ok = ok and finite
            worst = max(worst, max(r["r"]))
        notes.append(f"{name}: max r={worst}")
    return ok, "; ".join(notes)


def crit_10():
    out = []
    for d in range(4):
        for t in range(4):
            out.append(modules.derived_series(modules.QuotientAlgebra(d, t))[-1] == 0)
    return all(out), f"{sum(out)}/16 pairs (d,t) reach 0"


def crit_11():
    rejected = 0
    cases = [(0, 0, 0, 1), (1, 2, 3, 4), (0, 5, 0, Fraction(-1, 3)), (2, 0, 1, 7)]
    for h1, h2, c1, c2 in cases:
        V = modules.FiniteModule.one_dim(h1, h2, c1, c2)
        if not modules.validate_module(V, modules.QuotientAlgebra(0, 0)).passed:
            rejected += 1
    control = modules.validate_module(modules.FiniteModule.one_dim(1, 2, 3, 0), modules.QuotientAlgebra(0, 0)).passed
    return rejected == len(cases) and control, f"rejected {rejected}/{len(cases)} with c2 != 0; c2 = 0 control accepted={control}"


CRITERIA = [
    (1, "bracket fidelity", crit_1),
    (2, "identity suite", crit_2),
    (3, "annihilation derivation", crit_3),
    (4, "second cohomology", crit_4),
    (5, "phi embedding", crit_5),
    (6, "Verma module", crit_6),
    (7, "simplicity machinery", crit_7),
    (8, "top space", crit_8),
    (9, "restrictedness", crit_9),
    (10, "solvability", crit_10),
    (11, "negative control", crit_11),
]


def _line(n, title, ok, detail):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} {title} -- {detail}"


def _run(n, acceptance_log):
    _, title, fn = CRITERIA[n - 1]
    ok, detail = fn()
    line = _line(n, title, ok, detail)
    acceptance_log.append(line)
    print(line)
    assert ok, line


def test_criterion_01_bracket_fidelity(acceptance_log):
    _run(1, acceptance_log)


def test_criterion_02_identity_suite(acceptance_log):
    _run(2, acceptance_log)


def test_criterion_03_annihilation(acceptance_log):
    _run(3, acceptance_log)


def test_criterion_04_cohomology(acceptance_log):
    _run(4, acceptance_log)


def test_criterion_05_phi(acceptance_log):
    _run(5, acceptance_log)


def test_criterion_06_verma(acceptance_log):
    _run(6, acceptance_log)


def test_criterion_07_simplicity(acceptance_log):
    _run(7, acceptance_log)


def test_criterion_08_top_space(acceptance_log):
    _run(8, acceptance_log)


def test_criterion_09_restrictedness(acceptance_log):
    _run(9, acceptance_log)


def test_criterion_10_solvability(acceptance_log):
    _run(10, acceptance_log)


def test_criterion_11_negative_control(acceptance_log):
    _run(11, acceptance_log)


if __name__ == "__main__":
    failed = 0
    for n, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(n, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
