"""Lambda-bracket calculus and the annihilation superalgebra.

Elements of C[d]L + C[d]W + C[d]G are dicts ``(gen, d_power) -> coeff``.
Inside the calculus every coefficient is itself a polynomial in two formal
variables (lambda, mu), stored as ``{(i, j): Fraction}`` for lambda^i mu^j.
That is enough for the Jacobi identity, which needs at most two spectral
variables at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial

from .algebra import Gen, Report, get_algebra
from .scalars import format_rational


# ---------------------------------------------------------------- scalar polynomials in (lambda, mu)

LAM = {(1, 0): Fraction(1)}
MU = {(0, 1): Fraction(1)}
LAM_MU = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
ONE = {(0, 0): Fraction(1)}


def _sp_add(a: dict, b: dict, s=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + s * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _sp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            nv = out.get(key, 0) + u * v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


def _sp_pow(a: dict, n: int) -> dict:
    out = ONE
    for _ in range(n):
        out = _sp_mul(out, a)
    return out


def _sp_scale(a: dict, c) -> dict:
    return {k: v * c for k, v in a.items()} if c else {}


# ---------------------------------------------------------------- presets


@dataclass(frozen=True)
class ConformalAlgebra:
    """Generators, parities and the lambda-bracket of generators.

    ``table[(a, b)]`` lists terms (gen, d_power, lambda_power, coeff) of
    [a_lambda b] for the pairs given; missing reversed pairs come from skew
    symmetry, everything else is zero.
    """

    name: str
    gens: tuple
    odd: frozenset
    table: dict = field(compare=False)
    target: str = ""
    shift: dict = field(default_factory=dict, compare=False)
    flip: bool = False

    def parity(self, a: str) -> int:
        return 1 if a in self.odd else 0


S_CONFORMAL = ConformalAlgebra(
    "S", ("L", "W", "G"), frozenset({"G"}),
    {
        ("L", "L"): [("L", 1, 0, 1), ("L", 0, 1, 2)],
        ("L", "W"): [("W", 1, 0, 1)],
        ("L", "G"): [("G", 1, 0, 1), ("G", 0, 1, 1)],
        ("G", "G"): [("W", 1, 0, 1)],
        ("W", "W"): [],
        ("W", "G"): [],
    },
    target="Sbar0",
    # a_(k) -> a_{s - k} after the shift-and-flip relabeling (mode2 units)
    shift={"L": 2, "W": -2, "G": 0},
    flip=True,
)

SVIR_CONFORMAL = ConformalAlgebra(
    "SVir", ("L", "G"), frozenset({"G"}),
    {
        ("L", "L"): [("L", 1, 0, 1), ("L", 0, 1, 2)],
        ("L", "G"): [("G", 1, 0, 1), ("G", 0, 1, Fraction(3, 2))],
        ("G", "G"): [("L", 0, 0, 2)],
    },
    target="SVir12",
    # a_(k) -> a_{k + s}
    shift={"L": -2, "G": -1},
    flip=False,
)

CONFORMAL_PRESETS = {"S": S_CONFORMAL, "SVir": SVIR_CONFORMAL}


def get_conformal(name: str) -> ConformalAlgebra:
    try:
        return CONFORMAL_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown conformal preset {name!r}; choose from {sorted(CONFORMAL_PRESETS)}")


# ---------------------------------------------------------------- elements


def element(*terms) -> dict:
    """element(("L", 0, 1), ("G", 2, -1)) = L - d^2 G, with polynomial coefficients."""
    out: dict = {}
    for g, p, c in terms:
        _el_add_term(out, (g, p), {(0, 0): Fraction(c)})
    return out


def _el_add_term(out: dict, key, sp: dict) -> None:
    if not sp:
        return
    new = _sp_add(out.get(key, {}), sp)
    if new:
        out[key] = new
    else:
        out.pop(key, None)


def _el_add(a: dict, b: dict, s=1) -> dict:
    out = {k: dict(v) for k, v in a.items()}
    for k, v in b.items():
        _el_add_term(out, k, _sp_scale(v, s))
    return out


def _skew_substitute(el: dict) -> dict:
    """lambda^j d^e g  ->  (-lambda - d)^j d^e g, with mu untouched."""
    out: dict = {}
    for (g, e), sp in el.items():
        for (j, k), c in sp.items():
            # (-lambda - d)^j = (-1)^j sum_i C(j,i) lambda^{j-i} d^i
            sgn = -1 if j % 2 else 1
            for i in range(j + 1):
                _el_add_term(out, (g, e + i), {(j - i, k): sgn * comb(j, i) * c})
    return out


def _generator_bracket(alg: ConformalAlgebra, a: str, b: str) -> dict:
    """[a_lambda b] as an element with coefficients in lambda."""
    if (a, b) in alg.table:
        out: dict = {}
        for g, e, j, c in alg.table[(a, b)]:
            _el_add_term(out, (g, e), {(j, 0): Fraction(c)})
        return out
    if (b, a) in alg.table:
        # [a_lambda b] = -(-1)^{|a||b|} [b_{-lambda-d} a]
        s = 1 if (alg.parity(a) and alg.parity(b)) else -1
        return _el_add({}, _skew_substitute(_generator_bracket(alg, b, a)), s)
    return {}


def _bracket_nu(alg: ConformalAlgebra, x: dict, y: dict, nu: dict) -> dict:
    """[x_nu y] where nu is a linear form in (lambda, mu); coefficients of x, y are constants."""
    out: dict = {}
    for ((g, p), cx), ((h, q), cy) in product(x.items(), y.items()):
        base = _generator_bracket(alg, g, h)
        if not base:
            continue
        cxy = _sp_mul(cx, cy)
        # d^p on the left gives (-nu)^p
        left = _sp_pow(_sp_scale(nu, -1), p)
        for (k, e), sp in base.items():
            # sp is a polynomial in lambda only: lambda^j -> nu^j
            nu_part: dict = {}
            for (j, _), c in sp.items():
                nu_part = _sp_add(nu_part, _sp_scale(_sp_pow(nu, j), c))
            pre = _sp_mul(_sp_mul(cxy, left), nu_part)
            # d^q on the right gives (d + nu)^q
            for i in range(q + 1):
                term = _sp_mul(pre, _sp_scale(_sp_pow(nu, q - i), comb(q, i)))
                _el_add_term(out, (k, e + i), term)
    return out


# ---------------------------------------------------------------- public operations


def conformal_element(terms) -> dict:
    """Build from ``{(gen, d_power): coeff}``."""
    return {k: {(0, 0): Fraction(v)} for k, v in terms.items() if v}


def lambda_bracket(x: dict, y: dict, alg: ConformalAlgebra = S_CONFORMAL) -> dict:
    """[x_lambda y] as ``{lambda_power: {(gen, d_power): coeff}}``.

    ``x`` and ``y`` are ``{(gen, d_power): coeff}``.
    """
    el = _bracket_nu(alg, conformal_element(x), conformal_element(y), LAM)
    out: dict = {}
    for key, sp in el.items():
        for (j, _), c in sp.items():
            out.setdefault(j, {})[key] = c
    return out


def jth_product(x: dict, y: dict, j: int, alg: ConformalAlgebra = S_CONFORMAL) -> dict:
    """x_(j) y = j! * (lambda^j coefficient of [x_lambda y])."""
    if j < 0:
        raise ValueError("j must be non-negative")
    coeff = lambda_bracket(x, y, alg).get(j, {})
    return {k: v * factorial(j) for k, v in coeff.items()}


def format_element(el: dict) -> str:
    if not el:
        return "0"
    parts = []
    for (g, p), c in sorted(el.items()):
        d = "" if p == 0 else ("d" if p == 1 else f"d^{p}")
        parts.append(f"{format_rational(c)}*{d}{g}" if d else f"{format_rational(c)}*{g}")
    return " + ".join(parts)


def lambda_to_json(lp: dict) -> list:
    return [
        {"lambda_power": j, "gen": g, "d_power": p, "coeff": format_rational(c)}
        for j in sorted(lp)
        for (g, p), c in sorted(lp[j].items())
    ]


def conformal_axiom_check(max_deg: int = 1, alg: ConformalAlgebra = S_CONFORMAL) -> Report:
    """Skew-symmetry and Jacobi identity with lambda, mu formal.

    Test elements are d^p a for generators a and p <= max_deg.
    """
    elems = [(a, p) for a in alg.gens for p in range(max_deg + 1)]
    fails = []
    n = 0
    for (a, p), (b, q) in product(elems, repeat=2):
        n += 1
        x, y = element((a, p, 1)), element((b, q, 1))
        lhs = _bracket_nu(alg, x, y, LAM)
        s = 1 if (alg.parity(a) and alg.parity(b)) else -1
        rhs = _el_add({}, _skew_substitute(_bracket_nu(alg, y, x, LAM)), s)
        if lhs != rhs:
            fails.append({"skew": [f"d^{p}{a}", f"d^{q}{b}"]})
    for (a, p), (b, q), (c, r) in product(elems, repeat=3):
        n += 1
        x, y, z = element((a, p, 1)), element((b, q, 1)), element((c, r, 1))
        # [x_l [y_m z]] = [[x_l y]_{l+m} z] + (-1)^{|x||y|} [y_m [x_l z]]
        lhs = _bracket_nu(alg, x, _bracket_nu(alg, y, z, MU), LAM)
        t1 = _bracket_nu(alg, _bracket_nu(alg, x, y, LAM), z, LAM_MU)
        t2 = _bracket_nu(alg, y, _bracket_nu(alg, x, z, LAM), MU)
        s = -1 if (alg.parity(a) and alg.parity(b)) else 1
        if _el_add(_el_add(lhs, t1, -1), t2, -s):
            fails.append({"jacobi": [f"d^{p}{a}", f"d^{q}{b}", f"d^{r}{c}"]})
    return Report(f"conformal_axioms[{alg.name}]", not fails, n, fails[:20], {"max_deg": max_deg})


# ---------------------------------------------------------------- annihilation superalgebra


def _gen_binom(m: int, j: int) -> Fraction:
    """m choose j for any integer m."""
    num = 1
    for i in range(j):
        num *= m - i
    return Fraction(num, factorial(j))


def _falling(k: int, p: int) -> int:
    out = 1
    for i in range(p):
        out *= k - i
    return out


def annihilation_bracket(a: str, m: int, b: str, n: int, alg: ConformalAlgebra = S_CONFORMAL) -> dict:
    """[a_(m), b_(n)] as ``{(gen, k): coeff}`` meaning gen_(k).

    The sum over j is finite because j-th products vanish for large j.  The
    formula is evaluated for any integers m, n (generalized binomials), which
    gives the full loop algebra rather than only its non-negative part.
    """
    br = lambda_bracket({(a, 0): 1}, {(b, 0): 1}, alg)
    out: dict = {}
    for j, el in br.items():
        coef = _gen_binom(m, j) * factorial(j)
        if not coef:
            continue
        for (g, p), c in el.items():
            # (d^p g)_(k) = (-1)^p k(k-1)...(k-p+1) g_(k-p)
            k = m + n - j
            v = coef * c * (-1) ** p * _falling(k, p)
            if v:
                key = (g, k - p)
                nv = out.get(key, 0) + v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key)
    return out


def relabel(g: str, k: int, alg: ConformalAlgebra = S_CONFORMAL) -> Gen:
    """Mode-algebra generator corresponding to g_(k)."""
    s = alg.shift[g]
    return Gen(g, s - 2 * k) if alg.flip else Gen(g, 2 * k + s)


def unlabel(x: Gen, alg: ConformalAlgebra = S_CONFORMAL):
    """Inverse of ``relabel``: (gen, k)."""
    s = alg.shift[x.family]
    num = (s - x.mode2) if alg.flip else (x.mode2 - s)
    if num % 2:
        raise ValueError(f"{x} is not in the image of the relabeling")
    return x.family, num // 2


def relabel_to_sbar0(window: int = 8, alg: ConformalAlgebra = S_CONFORMAL, nonnegative_only: bool = False) -> Report:
    """Compare relabeled annihilation brackets with the mode-algebra preset.

    All pairs of generators with |mode| <= window are compared; with
    ``nonnegative_only`` only coefficients a_(n), n >= 0, are used.
    """
    target = get_algebra(alg.target)
    basis = [g for g in target.basis(window, include_central=False) if g.family in alg.gens]
    fails = []
    n = 0
    for x, y in product(basis, repeat=2):
        a, m = unlabel(x, alg)
        b, k = unlabel(y, alg)
        if nonnegative_only and (m < 0 or k < 0):
            continue
        n += 1
        ann = annihilation_bracket(a, m, b, k, alg)
        got = {relabel(g, j, alg): c for (g, j), c in ann.items()}
        want = dict(target.bracket_gens(x, y))
        if got != want:
            fails.append({
                "x": str(x), "y": str(y),
                "annihilation": {str(g): format_rational(c) for g, c in got.items()},
                "preset": {str(g): format_rational(c) for g, c in want.items()},
            })
    return Report(
        f"relabel[{alg.name}->{alg.target}]", not fails, n, fails[:20],
        {"window": window, "nonnegative_only": nonnegative_only},
    )


def annihilation_skew_check(max_n: int = 6, alg: ConformalAlgebra = S_CONFORMAL) -> Report:
    """[a_(m), b_(n)] = -(-1)^{|a||b|} [b_(n), a_(m)] for 0 <= m, n <= max_n."""
    fails = []
    cnt = 0
    for a, b in product(alg.gens, repeat=2):
        for m, n in product(range(max_n + 1), repeat=2):
            cnt += 1
            s = 1 if (alg.parity(a) and alg.parity(b)) else -1
            lhs = annihilation_bracket(a, m, b, n, alg)
            rhs = {k: s * v for k, v in annihilation_bracket(b, n, a, m, alg).items()}
            if lhs != rhs:
                fails.append({"a": f"{a}_({m})", "b": f"{b}_({n})"})
    return Report(f"annihilation_skew[{alg.name}]", not fails, cnt, fails[:20])


def extended_bracket(x, y, alg: ConformalAlgebra = S_CONFORMAL) -> dict:
    """Bracket on C d + Lie(R).  Elements are "d" or (gen, n)."""
    if x == "d" and y == "d":
        return {}
    if x == "d":
        g, n = y
        return {(g, n - 1): Fraction(-n)} if n else {}
    if y == "d":
        return {k: -v for k, v in extended_bracket(y, x, alg).items()}
    return annihilation_bracket(x[0], x[1], y[0], y[1], alg)


def annihilation_table(max_n: int = 3, alg: ConformalAlgebra = S_CONFORMAL) -> list:
    rows = []
    for a, b in product(alg.gens, repeat=2):
        for m, n in product(range(max_n + 1), repeat=2):
            br = annihilation_bracket(a, m, b, n, alg)
            rows.append({
                "a": a, "m": m, "b": b, "n": n,
                "result": [
                    {"gen": g, "n": k, "coeff": format_rational(c)} for (g, k), c in sorted(br.items())
                ],
            })
    return rows
