"""Command-line front end.

Every verb prints one JSON document (sorted keys) or a plain-text rendering.
Exit status: 0 when the requested checks pass, 1 on a mathematical failure,
2 on bad input or a window/bound violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cohomology, conformal, modules
from .algebra import (
    PRESETS, Gen, gen_sort_key, get_algebra, parse_gen, phi_embedding_check,
    super_jacobi_check, super_skew_check,
)
from .pbw import ExponentTriple, WindowError, format_word
from .scalars import format_rational, parse_rational


class Failure(Exception):
    """Carries a payload for a mathematical failure (exit 1)."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


def mode_json(mode2: int):
    # integers as numbers, half-integers as "m/2" strings
    if mode2 % 2 == 0:
        return mode2 // 2
    return f"{mode2}/2"


def terms_json(terms: dict) -> list:
    return [
        {"gen": g.family, "mode": mode_json(g.mode2), "coeff": format_rational(c)}
        for g, c in sorted(terms.items(), key=lambda kv: gen_sort_key(kv[0]))
    ]


def vector_json(vec: dict) -> list:
    return [
        {"word": format_word(w), "v": j, "coeff": format_rational(c)}
        for (w, j), c in sorted(vec.items(), key=lambda kv: (len(kv[0][0]), format_word(kv[0][0]), kv[0][1]))
    ]


def _rat(s: str) -> Fraction:
    try:
        return parse_rational(s)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _eps2(s: str) -> int:
    s = s.strip()
    if s in ("0",):
        return 0
    if s in ("1/2", "12", "half"):
        return 1
    raise argparse.ArgumentTypeError("epsilon must be 0 or 1/2")


# ---------------------------------------------------------------- module selection


def _build_module(args):
    if args.kind == "verma":
        return modules.verma(args.h1, args.h2, args.c1, args.weight_bound or 2)
    data = modules.WhittakerData.from_strings(args.k, args.psi or ["W_1=1"], args.wc1, args.wc2,
                                              1 if args.parity == "odd" else 0)
    return modules.build_whittaker(data, args.weight_bound or 4)


def _parse_vector(M, terms):
    """Terms "coeff:word", word = space separated generators (any order)."""
    vec: dict = {}
    for term in terms:
        if ":" in term:
            c, word = term.split(":", 1)
            c = parse_rational(c)
        else:
            c, word = Fraction(1), term
        gens = tuple(parse_gen(tok) for tok in word.split()) if word.strip() not in ("", "1") else ()
        for g in gens:
            get_algebra("S").check_gen(g)
        for k, v in M.engine.vector(gens).items():
            nv = vec.get(k, 0) + c * v
            if nv:
                vec[k] = nv
            else:
                vec.pop(k, None)
    return vec


# ---------------------------------------------------------------- verbs


def cmd_bracket(args):
    alg = get_algebra(args.alg)
    x, y = parse_gen(args.x), parse_gen(args.y)
    alg.check_gen(x)
    alg.check_gen(y)
    return {"result": terms_json(alg.bracket_gens(x, y))}, True


def cmd_jacobi(args):
    names = sorted(PRESETS) if args.alg == "all" else [args.alg]
    window = args.window if args.window is not None else 8
    reports = []
    for n in names:
        alg = get_algebra(n)
        reports.append(super_skew_check(alg, window).to_json())
        reports.append(super_jacobi_check(alg, window).to_json())
    if args.conformal:
        for name in sorted(conformal.CONFORMAL_PRESETS):
            reports.append(conformal.conformal_axiom_check(args.max_deg, conformal.get_conformal(name)).to_json())
    ok = all(r["passed"] for r in reports)
    return {"window": window, "reports": reports, "passed": ok}, ok


def cmd_annihilation(args):
    alg = conformal.get_conformal(args.preset)
    window = args.window if args.window is not None else 8
    rep = conformal.relabel_to_sbar0(window, alg)
    skew = conformal.annihilation_skew_check(args.max_n, alg)
    out = {
        "preset": alg.name,
        "target": alg.target,
        "table": conformal.annihilation_table(args.max_n, alg),
        "relabel": rep.to_json(),
        "skew": skew.to_json(),
        "passed": rep.passed and skew.passed,
    }
    return out, out["passed"]


def cmd_phi(args):
    window = args.window if args.window is not None else 5
    rep = phi_embedding_check(window)
    return rep.to_json(), rep.passed


def cmd_h2(args):
    window = args.window if args.window is not None else 8
    res = cohomology.solve_h2(args.epsilon, window)
    out = res.to_json()
    ok = res.normalized_dimension == res.dimension
    if args.explicit:
        ex = cohomology.explicit_cocycles(args.epsilon)
        checks = [cohomology.cocycle_check(c, min(window, 8)).to_json() for c in ex]
        ind = cohomology.independence_check(ex, window)
        span = cohomology.same_class_span(res.basis, ex, window)
        out["explicit"] = {"checks": checks, "independence": ind.to_json(), "spans_h2": span}
        ok = ok and ind.passed and span and all(c["passed"] for c in checks)
    return out, ok


def cmd_verma(args):
    bound = Fraction(args.max_level)
    M = modules.verma(args.h1, args.h2, args.c1, bound)
    dims = M.level_dims()
    oracle = modules.pbw_level_dims_oracle(int(2 * bound))
    if args.dims:
        return dims, dims == oracle
    out = M.to_json()
    out["oracle_dims"] = oracle
    out["l0_grading"] = all(
        modules.l0_eigenvalue(M, {b: Fraction(1)}) == args.h1 - w for w in M.weights() for b in M.basis(exact=w)
    )
    return out, dims == oracle and out["l0_grading"]


def cmd_singular(args):
    level = args.level
    M = modules.verma(args.h1, args.h2, args.c1, max(args.weight_bound or 0, level))
    sv = modules.find_singular_vectors(M, level)
    items = []
    for u in sv:
        ev = modules.l0_eigenvalue(M, u)
        items.append({"vector": vector_json(u), "l0_eigenvalue": format_rational(ev) if ev is not None else None})
    out = {"level": format_rational(level), "dimension": len(sv), "singular_vectors": items}
    if args.submodule and sv:
        M2 = modules.verma(args.h1, args.h2, args.c1, args.weight_bound or max(level, 2))
        dims = modules.generated_submodule(M2, sv[0])
        out["generated_submodule"] = {
            "dims": {format_rational(w): n for w, n in dims.items()},
            "module_dims": {format_rational(w): len(M2.basis(exact=w)) for w in M2.weights()},
            "contains_weight_h1": Fraction(0) in dims,
        }
    return out, True


def _read_json(path):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return json.loads(text)


def cmd_induce(args):
    V = modules.FiniteModule.from_json(_read_json(args.module))
    q = modules.QuotientAlgebra(args.d, args.t)
    rep = modules.validate_module(V, q)
    if not rep.passed:
        raise Failure({"validation": rep.to_json()})
    M = modules.build_induced(V, args.d, args.t, args.weight_bound if args.weight_bound is not None else 2)
    out = M.to_json()
    out["validation"] = rep.to_json()
    return out, True


def cmd_whittaker(args):
    args.kind = "whittaker"
    M = _build_module(args)
    out = M.to_json()
    probe = modules.simplicity_probe(M, args.samples, args.seed)
    ts = modules.top_space(M, M.t, M.t, M.t + M.d)
    vb = [{b: Fraction(1)} for b in M.v_part_basis()]
    out["simplicity_probe"] = probe.to_json()
    out["top_space"] = {"abc": [M.t, M.t, M.t + M.d], "dim": len(ts), "v_part_dim": len(vb),
                        "equals_v_part": modules.same_span(M, ts, vb)}
    ok = M.certified and probe.passed and out["top_space"]["equals_v_part"]
    return out, ok


def cmd_claim1(args):
    M = _build_module(args)
    chains = []
    if args.term:
        vecs = [_parse_vector(M, args.term)]
    else:
        import random
        rng = random.Random(args.seed)
        vecs = [modules.random_vector(M, rng) for _ in range(args.samples)]
    ok = True
    for v in vecs:
        steps = []
        cur = v
        while not M.in_v_part(cur):
            st = modules.claim1_reduce(M, cur, force=args.force)
            steps.append(st.to_json())
            if not st.ok:
                ok = False
                break
            cur = st.image
        chains.append({"vector": vector_json(v), "steps": steps, "reached_v": bool(cur) and M.in_v_part(cur)})
        ok = ok and chains[-1]["reached_v"]
    return {"kind": M.kind, "certified": M.certified, "seed": args.seed, "chains": chains, "passed": ok}, ok


def cmd_top_space(args):
    M = _build_module(args)
    a = args.a if args.a is not None else M.t
    b = args.b if args.b is not None else M.t
    c = args.c if args.c is not None else M.t + M.d
    ts = modules.top_space(M, a, b, c)
    vb = [{x: Fraction(1)} for x in M.v_part_basis()]
    same = modules.same_span(M, ts, vb)
    out = {"kind": M.kind, "abc": [a, b, c], "dim": len(ts), "v_part_dim": len(vb), "equals_v_part": same,
           "basis": [vector_json(v) for v in ts] if args.show else None,
           "scope": f"weight <= {format_rational(M.weight_bound)}"}
    return out, True


def cmd_restricted(args):
    M = _build_module(args)
    if args.term:
        vecs = [_parse_vector(M, args.term)]
    else:
        import random
        rng = random.Random(args.seed)
        vecs = [modules.random_vector(M, rng, outer_only=False) for _ in range(args.samples)]
    results = []
    for v in vecs:
        r = modules.restrictedness_probe(M, v)
        r["vector"] = vector_json(v)
        results.append(r)
    ok = all(r["within_bound"] and max(r["r"]) <= r["cutoff"] for r in results)
    return {"kind": M.kind, "seed": args.seed, "results": results, "passed": ok}, ok


def cmd_derived(args):
    pairs = [(d, t) for d in range(args.d + 1) for t in range(args.t + 1)] if args.all else [(args.d, args.t)]
    out = []
    for d, t in pairs:
        q = modules.QuotientAlgebra(d, t)
        dims = modules.derived_series(q)
        out.append({"d": d, "t": t, "dims": dims, "solvable": dims[-1] == 0,
                    "ideal": q.ideal_check(6).passed})
    ok = all(r["solvable"] and r["ideal"] for r in out)
    return {"series": out, "passed": ok}, ok


# ---------------------------------------------------------------- parser


def _common(p):
    p.add_argument("--seed", type=int, default=0, help="seed for sampled probes")
    p.add_argument("--window", type=int, default=None, help="mode window")
    p.add_argument("--weight-bound", type=_rat, default=None, help="materialization bound for modules")
    p.add_argument("--format", choices=("json", "text"), default="json")


def _module_flags(p, kinds=("verma", "whittaker"), default="whittaker"):
    p.add_argument("--kind", choices=kinds, default=default)
    p.add_argument("--h1", type=_rat, default=Fraction(1))
    p.add_argument("--h2", type=_rat, default=Fraction(1))
    p.add_argument("--c1", type=_rat, default=Fraction(0))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--psi", action="append", help="Whittaker value, e.g. W_1=1 (repeatable)")
    p.add_argument("--wc1", default="0", help="C1 value on the Whittaker vector")
    p.add_argument("--wc2", default="0", help="C2 value on the Whittaker vector")
    p.add_argument("--parity", choices=("even", "odd"), default="even")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superor", description="Exact computations for the super extended Ovsienko-Roger algebra.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bracket", help="bracket of two generators")
    _common(p)
    p.add_argument("--alg", default="S", choices=sorted(PRESETS))
    p.add_argument("--x", required=True, help="generator, e.g. L:2 or G:-1/2")
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jacobi-check", help="skew-symmetry and Jacobi identity on a window")
    _common(p)
    p.add_argument("--alg", default="all", choices=["all"] + sorted(PRESETS))
    p.add_argument("--conformal", action="store_true", help="also check the lambda-bracket axioms")
    p.add_argument("--max-deg", type=int, default=1)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("annihilation", help="annihilation superalgebra table and relabeling check")
    _common(p)
    p.add_argument("--preset", default="S", choices=sorted(conformal.CONFORMAL_PRESETS))
    p.add_argument("--max-n", type=int, default=3)
    p.set_defaults(func=cmd_annihilation)

    p = sub.add_parser("phi-check", help="embedding of the NS algebra into the Ramond one")
    _common(p)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("h2", help="windowed second cohomology")
    _common(p)
    p.add_argument("--epsilon", type=_eps2, required=True, help="0 or 1/2")
    p.add_argument("--explicit", action="store_true", help="also check the explicit cocycles")
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("verma", help="Verma module level dimensions")
    _common(p)
    p.add_argument("--h1", type=_rat, default=Fraction(0))
    p.add_argument("--h2", type=_rat, default=Fraction(0))
    p.add_argument("--c1", type=_rat, default=Fraction(0))
    p.add_argument("--max-level", type=_rat, default=Fraction(2))
    p.add_argument("--dims", action="store_true", help="print only the list of level dimensions")
    p.set_defaults(func=cmd_verma)

    p = sub.add_parser("singular", help="singular vectors of a Verma module")
    _common(p)
    p.add_argument("--h1", type=_rat, default=Fraction(0))
    p.add_argument("--h2", type=_rat, default=Fraction(0))
    p.add_argument("--c1", type=_rat, default=Fraction(0))
    p.add_argument("--level", type=_rat, default=Fraction(1, 2))
    p.add_argument("--submodule", action="store_true", help="report the submodule generated by the first one")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("induce", help="validate a finite q(d,t)-module and induce it")
    _common(p)
    p.add_argument("--module", required=True, help="FiniteModule JSON file, or - for stdin")
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--t", type=int, default=0)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("whittaker", help="build a Whittaker module and run the probes")
    _common(p)
    _module_flags(p, kinds=("whittaker",))
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_whittaker)

    p = sub.add_parser("claim1", help="iterated degree reduction")
    _common(p)
    _module_flags(p)
    p.add_argument("--term", action="append", help='vector term "coeff:word", e.g. "1:L_-1"')
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--force", action="store_true", help="run even if conditions (a)/(b) fail")
    p.set_defaults(func=cmd_claim1)

    p = sub.add_parser("top-space", help="joint kernel of the high modes")
    _common(p)
    _module_flags(p)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--show", action="store_true")
    p.set_defaults(func=cmd_top_space)

    p = sub.add_parser("restricted-probe", help="least annihilating window of vectors")
    _common(p)
    _module_flags(p)
    p.add_argument("--term", action="append")
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_restricted)

    p = sub.add_parser("derived-series", help="derived series of q(d,t)")
    _common(p)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--all", action="store_true", help="every (d', t') with d' <= d, t' <= t")
    p.set_defaults(func=cmd_derived)
    return ap


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return pad + " ".join(str(x) for x in obj)
        return "\n".join(_text(x, indent) + ("\n" + pad + "-" if i < len(obj) - 1 else "") for i, x in enumerate(obj))
    return pad + str(obj)


def emit(obj, fmt: str) -> None:
    if fmt == "text":
        print(_text(obj))
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    fmt = getattr(args, "format", "json")
    try:
        payload, ok = args.func(args)
    except Failure as f:
        emit(f.payload, fmt)
        return 1
    except modules.ConditionViolation as e:
        emit({"error": "condition_violation", "message": str(e)}, fmt)
        return 1
    except json.JSONDecodeError as e:
        emit({"error": "malformed_json", "message": f"line {e.lineno} column {e.colno}: {e.msg}"}, fmt)
        return 2
    except (ValueError, KeyError, OSError, WindowError, cohomology.WindowTooSmall) as e:
        emit({"error": type(e).__name__, "message": str(e)}, fmt)
        return 2
    emit(payload, fmt)
    return 0 if ok else 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
