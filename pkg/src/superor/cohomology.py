"""Scalar 2-cocycles on the centreless algebras Sbar0 / Sbar12.

A cocycle is stored on canonical generator pairs (x <= y in the generator sort
order); the other order is recovered from super skew-symmetry.  Windowed
tables live on the *pair window* of size N: pairs (x, y) with |deg x|,
|deg y| and |deg x + deg y| all at most N, so that every bracket of a stored
pair is again a generator of the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable

from .algebra import Algebra, Gen, Report, gen_sort_key, sbar
from .linalg import RowReducer, nullspace
from .scalars import format_rational


class WindowTooSmall(ValueError):
    pass


def _eps_label(eps2: int) -> str:
    return "1/2" if eps2 else "0"


def canonical_pair(x: Gen, y: Gen):
    """(pair, sign) with value(x, y) = sign * value(pair); sign 0 for an even diagonal."""
    alg_odd = x.family == "G" and y.family == "G"
    if gen_sort_key(x) <= gen_sort_key(y):
        if x == y and not alg_odd:
            return (x, y), 0
        return (x, y), 1
    # psi(x, y) = -(-1)^{|x||y|} psi(y, x)
    return (y, x), (1 if alg_odd else -1)


def in_pair_window(x: Gen, y: Gen, window: int) -> bool:
    w2 = 2 * window
    return abs(x.mode2) <= w2 and abs(y.mode2) <= w2 and abs(x.mode2 + y.mode2) <= w2


@dataclass
class Cocycle:
    """Bilinear form on generator pairs.

    Either a closed form ``fn`` (valid on every pair) or a table over the pair
    window of size ``window``.
    """

    eps2: int
    window: int
    values: dict = field(default_factory=dict)
    fn: Callable | None = None
    name: str = ""

    @property
    def algebra(self) -> Algebra:
        return sbar(self.eps2)

    def __call__(self, x: Gen, y: Gen) -> Fraction:
        pair, sign = canonical_pair(x, y)
        if sign == 0:
            return Fraction(0)
        if self.fn is not None:
            return sign * Fraction(self.fn(*pair))
        if not in_pair_window(x, y, self.window):
            raise WindowTooSmall(f"pair ({x}, {y}) lies outside window {self.window}")
        return sign * self.values.get(pair, Fraction(0))

    def table(self, window: int | None = None) -> dict:
        """Nonzero values on canonical pairs of the pair window."""
        window = self.window if window is None else window
        if self.fn is None and window > self.window:
            raise WindowTooSmall(f"table requested at {window} > {self.window}")
        out = {}
        for pair in pair_unknowns(self.eps2, window):
            v = self(*pair)
            if v:
                out[pair] = v
        return out

    def restrict(self, window: int) -> "Cocycle":
        return Cocycle(self.eps2, window, self.table(window), name=self.name)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        w = min(self.window, other.window)
        vals = {}
        for p in pair_unknowns(self.eps2, w):
            v = self(*p) - other(*p)
            if v:
                vals[p] = v
        return Cocycle(self.eps2, w, vals)

    def to_json(self) -> dict:
        return {
            "epsilon": _eps_label(self.eps2),
            "window": self.window,
            "name": self.name,
            "values": [
                {"x": str(x), "y": str(y), "value": format_rational(v)}
                for (x, y), v in sorted(
                    self.table().items(),
                    key=lambda kv: (gen_sort_key(kv[0][0]), gen_sort_key(kv[0][1])),
                )
            ],
        }


def pair_unknowns(eps2: int, window: int) -> list:
    """Canonical pairs of the pair window that are not forced to vanish."""
    basis = sbar(eps2).basis(window, include_central=False)
    out = []
    for x, y in combinations_with_replacement(sorted(basis, key=gen_sort_key), 2):
        if not in_pair_window(x, y, window):
            continue
        _, sign = canonical_pair(x, y)
        if sign:
            out.append((x, y))
    return out


# ---------------------------------------------------------------- explicit cocycles


def _d(x: Gen, y: Gen) -> int:
    return 1 if x.mode2 + y.mode2 == 0 else 0


def _alpha1(x, y):
    if x.family == "L" and y.family == "L" and _d(x, y):
        m = x.mode
        return (m**3 - m) / 12
    return 0


def _alpha2(x, y):
    if _d(x, y) and ((x.family, y.family) in (("L", "W"), ("G", "G"))):
        return 1
    return 0


def _alpha3(x, y):
    if x.family == "L" and y.family == "G" and _d(x, y):
        m = x.mode
        return m * m + m
    return 0


def _alpha4(x, y):
    if x.family == "W" and y.family == "G" and _d(x, y):
        return 1
    return 0


def explicit_cocycles(eps2: int, window: int = 8) -> list:
    """alpha_1..alpha_4 (Ramond) or beta_1, beta_2 (Neveu-Schwarz) as closed forms."""
    if eps2 == 0:
        named = [("alpha1", _alpha1), ("alpha2", _alpha2), ("alpha3", _alpha3), ("alpha4", _alpha4)]
    else:
        named = [("beta1", _alpha1), ("beta2", _alpha2)]
    return [Cocycle(eps2, window, fn=f, name=n) for n, f in named]


def coboundary(eps2: int, f: dict, window: int) -> Cocycle:
    """psi_f(x, y) = f([x, y]) for a linear functional f given on generators."""
    alg = sbar(eps2)

    def fn(x, y):
        return sum((c * Fraction(f.get(g, 0)) for g, c in alg.bracket_gens(x, y).items()), Fraction(0))

    return Cocycle(eps2, window, fn=fn, name="coboundary")


# ---------------------------------------------------------------- checks


def _triple_pairs_in_window(x: Gen, y: Gen, z: Gen, window: int) -> bool:
    w2 = 2 * window
    a, b, c = x.mode2, y.mode2, z.mode2
    return abs(a + b) <= w2 and abs(b + c) <= w2 and abs(a + c) <= w2 and abs(a + b + c) <= w2


def _jacobi_row(alg: Algebra, x: Gen, y: Gen, z: Gen) -> dict:
    """Coefficients over canonical pairs of psi(x,[y,z]) - psi([x,y],z) - (-1)^{|x||y|} psi(y,[x,z])."""
    row: dict = {}

    def put(u, v, c):
        pair, sign = canonical_pair(u, v)
        if sign:
            row[pair] = row.get(pair, 0) + sign * c

    for g, c in alg.bracket_gens(y, z).items():
        put(x, g, c)
    for g, c in alg.bracket_gens(x, y).items():
        put(g, z, -c)
    s = -1 if (alg.parity(x) and alg.parity(y)) else 1
    for g, c in alg.bracket_gens(x, z).items():
        put(y, g, -s * c)
    return {k: v for k, v in row.items() if v}


def constraint_triples(eps2: int, window: int, ordered: bool = False):
    alg = sbar(eps2)
    basis = sorted(alg.basis(window, include_central=False), key=gen_sort_key)
    it = product(basis, repeat=3) if ordered else combinations_with_replacement(basis, 3)
    for x, y, z in it:
        if _triple_pairs_in_window(x, y, z, window):
            yield x, y, z


def cocycle_check(c: Cocycle, window: int) -> Report:
    """Check the cocycle identity on all triples of the window.

    Skew-symmetry holds by construction since values live on canonical pairs.
    Table cocycles are only tested on triples whose pairs stay in the pair window.
    """
    if c.fn is None and window > c.window:
        raise WindowTooSmall(f"cocycle table has window {c.window} < {window}")
    alg = c.algebra
    basis = alg.basis(window, include_central=False)
    fails = []
    n = 0
    for x, y, z in product(basis, repeat=3):
        if c.fn is None and not _triple_pairs_in_window(x, y, z, window):
            continue
        n += 1
        lhs = sum((k * c(x, g) for g, k in alg.bracket_gens(y, z).items()), Fraction(0))
        t1 = sum((k * c(g, z) for g, k in alg.bracket_gens(x, y).items()), Fraction(0))
        t2 = sum((k * c(y, g) for g, k in alg.bracket_gens(x, z).items()), Fraction(0))
        s = -1 if (alg.parity(x) and alg.parity(y)) else 1
        if lhs != t1 + s * t2:
            fails.append({"triple": [str(x), str(y), str(z)]})
            if len(fails) >= 20:
                break
    name = f"cocycle[{c.name or 'table'}]"
    return Report(name, not fails, n, fails, {"window": window, "epsilon": _eps_label(c.eps2)})


def normalizing_functional(c: Cocycle, window: int) -> dict:
    """The functional f used to strip a coboundary off ``c``.

    f(X_n) = c(L_0, X_n)/n for n != 0; in the Ramond case f(G_0) = c(L_{-1}, G_1);
    f(L_0) = -c(L_1, L_{-1})/2 removes the linear L-L term.
    """
    alg = c.algebra
    f = {}
    for g in alg.basis(window, include_central=False):
        if g.mode2 != 0:
            v = c(Gen("L", 0), g)
            if v:
                f[g] = v / g.mode
    if c.eps2 == 0 and window >= 1:
        v = c(Gen("L", -2), Gen("G", 2))
        if v:
            f[Gen("G", 0)] = v
    if window >= 1:
        v = c(Gen("L", 2), Gen("L", -2))
        if v:
            f[Gen("L", 0)] = -v / 2
    return f


def normalize_by_coboundary(c: Cocycle) -> Cocycle:
    """Subtract psi_f so that the result vanishes on (L_0, X_n), n != 0."""
    alg = c.algebra
    if c.fn is not None:
        cache: dict = {}

        def fval(g):
            if g not in cache:
                if g.mode2 != 0:
                    cache[g] = c(Gen("L", 0), g) / g.mode
                elif g == Gen("G", 0):
                    cache[g] = c(Gen("L", -2), Gen("G", 2))
                elif g == Gen("L", 0):
                    cache[g] = -c(Gen("L", 2), Gen("L", -2)) / 2
                else:
                    cache[g] = Fraction(0)
            return cache[g]

        def fn(x, y):
            cf = sum((k * fval(g) for g, k in alg.bracket_gens(x, y).items()), Fraction(0))
            return c(x, y) - cf

        return Cocycle(c.eps2, c.window, fn=fn, name=(c.name + "_bar") if c.name else "")
    f = normalizing_functional(c, c.window)
    vals = {}
    for pair in pair_unknowns(c.eps2, c.window):
        x, y = pair
        cf = sum((k * f.get(g, 0) for g, k in alg.bracket_gens(x, y).items()), Fraction(0))
        v = c(x, y) - cf
        if v:
            vals[pair] = v
    return Cocycle(c.eps2, c.window, vals, name=(c.name + "_bar") if c.name else "")


def _coboundary_rows(eps2: int, window: int, unknowns: list) -> list:
    """One row per generator g of the window: the form (x, y) -> coefficient of g in [x, y]."""
    alg = sbar(eps2)
    rows: dict = {}
    for pair in unknowns:
        for g, k in alg.bracket_gens(*pair).items():
            rows.setdefault(g, {})[pair] = k
    return [rows[g] for g in sorted(rows, key=gen_sort_key)]


def independence_check(cs: list, window: int) -> Report:
    """No nonzero combination of ``cs`` is a coboundary on the pair window."""
    if not cs:
        return Report("independence", True, 0)
    eps2 = cs[0].eps2
    unknowns = pair_unknowns(eps2, window)
    col = {p: i for i, p in enumerate(unknowns)}
    rr = RowReducer()
    for row in _coboundary_rows(eps2, window, unknowns):
        rr.add({col[p]: v for p, v in row.items()})
    b_rank = rr.rank
    dependent = []
    for c in cs:
        if not rr.add({col[p]: v for p, v in c.table(window).items()}):
            dependent.append(c.name or "?")
    ok = not dependent
    return Report(
        "independence", ok, len(cs), [{"dependent": dependent}] if dependent else [],
        {"window": window, "coboundary_rank": b_rank, "rank_with_cocycles": rr.rank},
    )


def same_class_span(cs: list, ds: list, window: int) -> bool:
    """span(cs) + B == span(ds) + B on the pair window."""
    eps2 = cs[0].eps2
    unknowns = pair_unknowns(eps2, window)
    col = {p: i for i, p in enumerate(unknowns)}

    def reducer(extra):
        rr = RowReducer()
        for row in _coboundary_rows(eps2, window, unknowns):
            rr.add({col[p]: v for p, v in row.items()})
        for c in extra:
            rr.add({col[p]: v for p, v in c.table(window).items()})
        return rr

    a, b = reducer(cs), reducer(ds)
    return a.rank == b.rank and all(b.contains(r) for r in a.basis())


@dataclass
class H2Result:
    eps2: int
    window: int
    dimension: int
    cocycle_dim: int
    coboundary_dim: int
    by_degree: dict
    basis: list
    normalized_dimension: int | None = None

    def to_json(self) -> dict:
        return {
            "epsilon": _eps_label(self.eps2),
            "window": self.window,
            "dimension": self.dimension,
            "cocycle_dimension": self.cocycle_dim,
            "coboundary_dimension": self.coboundary_dim,
            "normalized_dimension": self.normalized_dimension,
            "by_degree": {format_rational(Fraction(k, 2)): v for k, v in sorted(self.by_degree.items())},
            "basis": [c.to_json() for c in self.basis],
        }


def solve_h2(eps2: int, window: int, normalized_route: bool = True) -> H2Result:
    """Windowed dimension of H^2 with trivial coefficients.

    Unknowns are the canonical pair values of the pair window; a cocycle
    identity is imposed for a triple only when all pairs it touches lie in the
    window.  The quotient is by the windowed coboundaries.  With
    ``normalized_route`` the computation is repeated on the normalized
    unknowns (values on (L_0, X_n), n != 0, set to zero; only mode-0
    coboundaries quotiented) and both counts are reported.
    """
    if window < 4:
        raise ValueError("window must be >= 4")
    alg = sbar(eps2)
    unknowns = pair_unknowns(eps2, window)
    by_deg: dict = {}
    for p in unknowns:
        by_deg.setdefault(p[0].mode2 + p[1].mode2, []).append(p)
    reducers = {s: RowReducer() for s in by_deg}
    for x, y, z in constraint_triples(eps2, window):
        row = _jacobi_row(alg, x, y, z)
        if row:
            reducers[x.mode2 + y.mode2 + z.mode2].add(row)
    cob = _coboundary_rows(eps2, window, unknowns)

    basis = []
    degree_dims = {}
    z_total = b_total = 0
    for s in sorted(by_deg):
        cols = by_deg[s]
        z = nullspace(list(reducers[s].pivots.values()), cols)
        rr = RowReducer()
        for row in cob:
            if row and (next(iter(row))[0].mode2 + next(iter(row))[1].mode2) == s:
                rr.add(row)
        b_dim = rr.rank
        z_total += len(z)
        b_total += b_dim
        degree_dims[s] = len(z) - b_dim
        for vec in z:
            if rr.add(vec):
                basis.append(Cocycle(eps2, window, dict(vec)))
    dim = z_total - b_total
    basis = [_rescale(normalize_by_coboundary(c)) for c in basis]
    for i, c in enumerate(basis):
        c.name = f"h2_{i + 1}"
    res = H2Result(eps2, window, dim, z_total, b_total, {k: v for k, v in degree_dims.items() if v}, basis)
    if normalized_route:
        res.normalized_dimension = _solve_h2_normalized(eps2, window, unknowns, reducers)
    return res


def _rescale(c: Cocycle) -> Cocycle:
    # first nonzero value (in pair order) becomes 1, up to the sign of the pair
    vals = c.values
    if not vals:
        return c
    key = min(vals, key=lambda p: (gen_sort_key(p[0]), gen_sort_key(p[1])))
    k = vals[key]
    if k < 0:
        k = -k
    return Cocycle(c.eps2, c.window, {p: v / k for p, v in vals.items()})


def _solve_h2_normalized(eps2: int, window: int, unknowns: list, reducers: dict) -> int:
    """Same count on the normalized unknowns: pin (L_0, X_n) to zero, quotient by mode-0 coboundaries."""
    alg = sbar(eps2)
    total = 0
    l0 = Gen("L", 0)
    by_deg: dict = {}
    for p in unknowns:
        by_deg.setdefault(p[0].mode2 + p[1].mode2, []).append(p)
    mode0 = [g for g in alg.basis(window, include_central=False) if g.mode2 == 0]
    for s, cols in by_deg.items():
        rows = list(reducers[s].pivots.values())
        for p in cols:
            x, y = p
            if (x == l0 and y.mode2 != 0) or (y == l0 and x.mode2 != 0):
                rows.append({p: Fraction(1)})
        z = nullspace(rows, cols)
        rr = RowReducer()
        if s == 0:
            for g in mode0:
                row = {}
                for p in cols:
                    k = alg.bracket_gens(*p).get(g)
                    if k:
                        row[p] = k
                rr.add(row)
        total += len(z) - rr.rank
    return total


def closed_form_check(c: Cocycle, window: int) -> Report:
    """A normalized cocycle must have the closed forms
    (m^3-m)/12 c1, c3 on L-W and G-G, (m^2+m) c4 on L-G, c5 on W-G, 0 on W-W
    and vanish off degree zero."""
    l, w, g = (lambda m: Gen("L", 2 * m)), (lambda m: Gen("W", 2 * m)), (lambda m: Gen("G", m))
    c1 = 2 * c(l(2), l(-2))
    c3 = c(l(0), w(0))
    if c.eps2 == 0:
        c4 = c(l(1), g(-2)) / 2
        c5 = c(w(0), g(0))
    else:
        c4 = c5 = Fraction(0)
    consts = {"c1": c1, "c3": c3, "c4": c4, "c5": c5}
    fails = []
    n = 0
    for x, y in pair_unknowns(c.eps2, window):
        n += 1
        got = c(x, y)
        d = x.mode2 + y.mode2 == 0
        fam = (x.family, y.family)
        if not d:
            want = 0
        elif fam == ("L", "L"):
            want = (x.mode**3 - x.mode) / 12 * c1
        elif fam in (("L", "W"), ("G", "G")):
            want = c3
        elif fam == ("L", "G"):
            want = (x.mode**2 + x.mode) * c4
        elif fam == ("W", "G"):
            want = c5
        else:
            want = 0
        if got != want:
            fails.append({"pair": [str(x), str(y)], "got": str(got), "want": str(want)})
    return Report(
        "closed_forms", not fails, n, fails[:20],
        {k: format_rational(v) for k, v in consts.items()},
    )
