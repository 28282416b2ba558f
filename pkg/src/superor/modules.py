"""Coefficient modules, induced modules and the probes run on them.

Everything acts through :class:`superor.pbw.InducedEngine`.  Weight spaces
are materialized up to a caller-supplied bound, and every statement made about
a module holds *within that bound*.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import S, Gen, Report, gen_sort_key, parse_gen
from .linalg import RowReducer, matrix_rank, nullspace
from .pbw import (
    DEFAULT_ORDER, ExponentTriple, ExponentVector, InducedEngine, WindowError,
    format_word, principal_max, vec_axpy,
)
from .scalars import format_rational, parse_rational


class ConditionViolation(ValueError):
    pass


class NonModuleAction(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class InvalidWhittakerData(ValueError):
    pass


def _l(m):
    return Gen("L", 2 * m)


def _w(m):
    return Gen("W", 2 * m)


def _g(r2):
    # G with doubled mode r2
    return Gen("G", r2)


C1, C2 = Gen("C1"), Gen("C2")


# ---------------------------------------------------------------- subalgebras


@dataclass(frozen=True)
class TdAlgebra:
    """T_d: L_i (i >= 0), W_{i-d} (i >= 0), G_{i-1/2} (i >= 1), C1, C2."""

    d: int

    def contains(self, g: Gen) -> bool:
        if g.is_central:
            return g.family in ("C1", "C2")
        if g.family == "L":
            return g.mode2 >= 0
        if g.family == "W":
            return g.mode2 >= -2 * self.d
        return g.mode2 >= 1

    def closure_check(self, window: int = 6) -> Report:
        gens = [g for g in S.basis(window) if self.contains(g)]
        fails = []
        for x, y in product(gens, repeat=2):
            for h in S.bracket_gens(x, y):
                if not self.contains(h):
                    fails.append({"x": str(x), "y": str(y), "escapes": str(h)})
        return Report(f"T_{self.d} closure", not fails, len(gens) ** 2, fails[:20], {"window": window})


def in_s_r(g: Gen, r1: int, r2: int, r3: int) -> bool:
    """Membership in S^(r1,r2,r3) = sum_{i>=r1} L_i + sum_{i>=r2} W_i + sum_{i>=r3, i!=0} G_{i-1/2}."""
    if g.is_central:
        return False
    if g.family == "L":
        return g.mode2 >= 2 * r1
    if g.family == "W":
        return g.mode2 >= 2 * r2
    i2 = g.mode2 + 1  # 2i
    return i2 >= 2 * r3 and i2 != 0


@dataclass(frozen=True)
class QuotientAlgebra:
    """q^(d,t) = T_d / S^(t+d+1, t+1, t+1)."""

    d: int
    t: int

    @property
    def thresholds(self):
        return (self.t + self.d + 1, self.t + 1, self.t + 1)

    def basis(self, include_central: bool = True) -> list:
        out = [_l(i) for i in range(0, self.t + self.d + 1)]
        out += [_w(i) for i in range(-self.d, self.t + 1)]
        out += [_g(2 * i - 1) for i in range(1, self.t + 1)]
        if include_central:
            out += [C1, C2]
        return out

    def in_ideal(self, g: Gen) -> bool:
        return in_s_r(g, *self.thresholds)

    def bracket(self, x: Gen, y: Gen) -> dict:
        return {h: c for h, c in S.bracket_gens(x, y).items() if not self.in_ideal(h)}

    def ideal_check(self, window: int = 8) -> Report:
        td = TdAlgebra(self.d)
        gens = [g for g in S.basis(window) if td.contains(g)]
        ideal = [g for g in gens if self.in_ideal(g)]
        fails = []
        for x, y in product(gens, ideal):
            for h in S.bracket_gens(x, y):
                if not self.in_ideal(h):
                    fails.append({"x": str(x), "y": str(y), "escapes": str(h)})
        return Report(f"q({self.d},{self.t}) ideal", not fails, len(gens) * len(ideal), fails[:20])


def derived_series(q: QuotientAlgebra, max_steps: int = 20) -> list:
    """Dimensions of q, [q,q], [[q,q],[q,q]], ... until zero or stable."""
    idx = {g: i for i, g in enumerate(q.basis())}
    span = [{i: Fraction(1)} for i in range(len(idx))]
    dims = [len(span)]
    inv = {i: g for g, i in idx.items()}
    for _ in range(max_steps):
        if not span:
            break
        rr = RowReducer()
        for a, b in product(span, repeat=2):
            # bracket of two vectors
            out: dict = {}
            for i, ca in a.items():
                for j, cb in b.items():
                    for h, c in q.bracket(inv[i], inv[j]).items():
                        k = idx[h]
                        out[k] = out.get(k, 0) + ca * cb * c
            rr.add({k: v for k, v in out.items() if v})
        new = rr.basis()
        if len(new) == len(span):
            break
        span = new
        dims.append(len(span))
    return dims


# ---------------------------------------------------------------- finite modules


def _zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


@dataclass
class FiniteModule:
    """Finite-dimensional q^(d,t)-module.  Missing generators act as zero."""

    dim: int
    parities: list
    c1: Fraction
    c2: Fraction
    actions: dict = field(default_factory=dict)

    def matrix(self, g: Gen):
        if g == C1:
            return [[self.c1 if i == j else Fraction(0) for j in range(self.dim)] for i in range(self.dim)]
        if g == C2:
            return [[self.c2 if i == j else Fraction(0) for j in range(self.dim)] for i in range(self.dim)]
        return self.actions.get(g) or _zero(self.dim)

    def column(self, g: Gen, j: int) -> dict:
        if g == C1:
            return {j: self.c1} if self.c1 else {}
        if g == C2:
            return {j: self.c2} if self.c2 else {}
        m = self.actions.get(g)
        if m is None:
            return {}
        return {i: m[i][j] for i in range(self.dim) if m[i][j]}

    @classmethod
    def one_dim(cls, h1=0, h2=0, c1=0, c2=0, parity=0):
        acts = {}
        if h1:
            acts[_l(0)] = [[Fraction(h1)]]
        if h2:
            acts[_w(0)] = [[Fraction(h2)]]
        return cls(1, [parity], Fraction(c1), Fraction(c2), acts)

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteModule":
        dim = int(obj["dim"])
        par = [1 if p in ("odd", 1) else 0 for p in obj.get("parities", ["even"] * dim)]
        if len(par) != dim:
            raise ValueError("parities length must equal dim")
        acts = {}
        for name, mat in obj.get("actions", {}).items():
            g = parse_gen(name)
            if g.is_central:
                raise ValueError("central elements are given by c1, c2")
            m = [[parse_rational(str(x)) for x in row] for row in mat]
            if len(m) != dim or any(len(r) != dim for r in m):
                raise ValueError(f"matrix for {name} must be {dim}x{dim}")
            acts[g] = m
        return cls(dim, par, parse_rational(str(obj.get("c1", "0"))), parse_rational(str(obj.get("c2", "0"))), acts)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "parities": ["odd" if p else "even" for p in self.parities],
            "c1": format_rational(self.c1),
            "c2": format_rational(self.c2),
            "actions": {
                str(g): [[format_rational(x) for x in row] for row in m]
                for g, m in sorted(self.actions.items(), key=lambda kv: gen_sort_key(kv[0]))
            },
        }

    def parity_flip(self) -> "FiniteModule":
        return FiniteModule(self.dim, [1 - p for p in self.parities], self.c1, self.c2, dict(self.actions))


def _mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def validate_module(V: FiniteModule, q: QuotientAlgebra) -> Report:
    """x(yv) - (-1)^{|x||y|} y(xv) = [x,y]v for every pair of basis elements of q, plus parity."""
    basis = q.basis()
    fails = []
    for g in V.actions:
        if g not in basis:
            fails.append({"unknown_generator": str(g)})
    n = V.dim
    for g in basis:
        m = V.matrix(g)
        for i, j in product(range(n), repeat=2):
            if m[i][j] and V.parities[i] != (V.parities[j] + S.parity(g)) % 2:
                fails.append({"parity": str(g), "entry": [i, j]})
                break
    checked = 0
    for x, y in product(basis, repeat=2):
        checked += 1
        mx, my = V.matrix(x), V.matrix(y)
        s = -1 if (S.parity(x) and S.parity(y)) else 1
        xy, yx = _mat_mul(mx, my), _mat_mul(my, mx)
        want = _zero(n)
        for h, c in q.bracket(x, y).items():
            mh = V.matrix(h)
            for i, j in product(range(n), repeat=2):
                want[i][j] += c * mh[i][j]
        lhs = [[xy[i][j] - s * yx[i][j] for j in range(n)] for i in range(n)]
        if lhs != want:
            fails.append({"pair": [str(x), str(y)]})
    return Report(f"module over q({q.d},{q.t})", not fails, checked, fails[:20], {"dim": n})


# ---------------------------------------------------------------- induced modules


def _vec_json(vec: dict) -> list:
    return [
        {"word": format_word(w), "v": j, "coeff": format_rational(c)}
        for (w, j), c in sorted(vec.items(), key=lambda kv: (len(kv[0][0]), format_word(kv[0][0]), kv[0][1]))
    ]


class InducedModule:
    """A materialized induced module with its conditions report."""

    def __init__(self, engine: InducedEngine, d: int, t: int, weight_bound, kind: str,
                 conditions: dict, certified: bool, meta: dict | None = None):
        self.engine = engine
        self.d = d
        self.t = t
        self.weight_bound = Fraction(weight_bound)
        self.kind = kind
        self.conditions = conditions
        self.certified = certified
        self.meta = meta or {}

    # -- spaces

    def weights(self) -> list:
        out = []
        w = Fraction(0)
        while w <= self.weight_bound:
            out.append(w)
            w += Fraction(1, 2)
        return out

    def basis(self, exact=None, bound=None) -> list:
        bound = self.weight_bound if bound is None else bound
        return self.engine.basis(bound, exact)

    def v_part_basis(self, bound=None) -> list:
        bound = self.weight_bound if bound is None else bound
        return self.engine.basis(bound, inner_only=True)

    def level_dims(self) -> list:
        return [len(self.basis(exact=w)) for w in self.weights()]

    def act(self, g: Gen, vec: dict) -> dict:
        return self.engine.act(g, vec)

    def generator(self, j: int = 0) -> dict:
        return {((), j): Fraction(1)}

    def weight_of(self, vec: dict) -> Fraction:
        return self.engine.max_weight(vec)

    def cutoff(self) -> int:
        return int(self.weight_bound) + int(self.engine.kappa) + self.t + self.d + 2

    # -- degree bookkeeping

    def split_word(self, word):
        inner = self.engine.inner
        k = 0
        while k < len(word) and not inner(word[k]):
            k += 1
        return word[:k], word[k:]

    def triple_of(self, outer) -> ExponentTriple:
        i, j, k = {}, {}, {}
        for g in outer:
            if g.family == "W":
                s = -self.d - g.mode2 // 2
                i[s] = i.get(s, 0) + 1
            elif g.family == "G":
                s = (1 - g.mode2) // 2
                j[s] = j.get(s, 0) + 1
            else:
                s = -g.mode2 // 2
                k[s] = k.get(s, 0) + 1
        return ExponentTriple(ExponentVector(i), ExponentVector(j, binary=True), ExponentVector(k))

    def support(self, vec: dict) -> dict:
        out: dict = {}
        for (w, jj), c in vec.items():
            outer, inner = self.split_word(w)
            out.setdefault(self.triple_of(outer), {})[(inner, jj)] = c
        return out

    def deg(self, vec: dict):
        """Principal-order maximum of the support; None for the zero vector."""
        if not vec:
            return None
        return principal_max(self.support(vec))

    def in_v_part(self, vec: dict) -> bool:
        return all(not self.split_word(w)[0] for w, _ in vec)

    # -- coordinates

    def coords(self, vec: dict, basis: list) -> list:
        idx = {b: i for i, b in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for k, c in vec.items():
            if k not in idx:
                raise WindowError(f"term {format_word(k[0])} is outside the materialized basis")
            out[idx[k]] = c
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "t": self.t,
            "weight_bound": format_rational(self.weight_bound),
            "certified": self.certified,
            "conditions": self.conditions,
            "level_dims": self.level_dims(),
            "weights": [format_rational(w) for w in self.weights()],
            **self.meta,
        }


def build_induced(V: FiniteModule, d: int, t: int, weight_bound, order=DEFAULT_ORDER,
                  strict: bool = False, validate: bool = True) -> InducedModule:
    """Ind(V) = U(S) (x)_{U(T_d)} V for a q^(d,t)-module V."""
    q = QuotientAlgebra(d, t)
    if validate:
        rep = validate_module(V, q)
        if not rep.passed:
            raise NonModuleAction(f"not a q({d},{t})-module: {rep.failures[:3]}")
    td = TdAlgebra(d)
    qbasis = set(q.basis(include_central=False))

    def b_action(g, j):
        if g in qbasis:
            return V.column(g, j)
        return {}

    def central(g):
        return {"C1": V.c1, "C2": V.c2}.get(g.family, 0)

    eng = InducedEngine(td.contains, b_action, central, V.dim, kappa=0, order=order, v_parities=V.parities)
    cond = finite_conditions(V, d, t)
    certified = cond["a"]["holds"] and cond["b"]["holds"]
    if strict and not certified:
        raise ConditionViolation(f"conditions (a)/(b) fail: {cond}")
    return InducedModule(eng, d, t, weight_bound, "finite", cond, certified, {"module": V.to_json()})


def finite_conditions(V: FiniteModule, d: int, t: int) -> dict:
    if t > 0:
        r = matrix_rank(V.matrix(_w(t)))
        a = {"holds": r == V.dim, "detail": f"rank W_{t} = {r} of {V.dim}"}
    else:
        a = {"holds": V.c2 != 0, "detail": f"c2 = {format_rational(V.c2)}"}
    # generators beyond the quotient act as zero by construction
    q = QuotientAlgebra(d, t)
    b_fail = [str(g) for g in V.actions if q.in_ideal(g) and any(x for row in V.actions[g] for x in row)]
    b = {"holds": not b_fail, "detail": "W_i (i>t), L_j (j>t+d) act as zero" if not b_fail else b_fail}
    # a finite V never satisfies (a): tr[L_0, W_0] = 0 forces c2 = 0, and W_t (t>0) shifts L_0-eigenvalues
    return {"a": a, "b": b, "scope": "exact (finite V)"}


def verma(h1, h2, c1, weight_bound=2, order=DEFAULT_ORDER) -> InducedModule:
    """M(h1, h2, c1): induced from the 1-dim T_0-module with C2 = 0."""
    V = FiniteModule.one_dim(h1, h2, c1, 0)
    M = build_induced(V, 0, 0, weight_bound, order=order)
    M.kind = "verma"
    M.meta.update({"h1": format_rational(Fraction(h1)), "h2": format_rational(Fraction(h2)),
                   "c1": format_rational(Fraction(c1))})
    return M


def pbw_level_dims_oracle(max_level2: int) -> list:
    """Coefficients of prod_{m>=1} (1+q^{m-1/2}) (1-q^m)^{-2} in powers q^{n/2}, n <= max_level2."""
    n = max_level2
    poly = [0] * (n + 1)
    poly[0] = 1
    # fermions G_{-(2m-1)/2}: exponent 2m-1 in half units
    for e in range(1, n + 1, 2):
        new = poly[:]
        for i in range(n + 1 - e):
            new[i + e] += poly[i]
        poly = new
    # two bosons (L, W) at every integer level: exponent 2m
    for _ in range(2):
        for e in range(2, n + 1, 2):
            for i in range(e, n + 1):
                poly[i] += poly[i - e]
    return poly


# ---------------------------------------------------------------- Whittaker modules


@dataclass
class WhittakerData:
    k: int
    psi: dict
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    parity: int = 0

    def in_sk(self, g: Gen) -> bool:
        if g.is_central:
            return True
        if g.family in ("L", "W"):
            return g.mode2 >= 2 * self.k
        return g.mode2 >= 2 * self.k + 1

    def value(self, g: Gen) -> Fraction:
        if g == C1:
            return Fraction(self.c1)
        if g == C2:
            return Fraction(self.c2)
        return Fraction(self.psi.get(g, 0))

    def validate(self) -> None:
        k = self.k
        if k < 1:
            raise InvalidWhittakerData("k must be a positive integer")
        for g, v in self.psi.items():
            if g.is_central:
                raise InvalidWhittakerData("central values are given by c1, c2")
            if not self.in_sk(g):
                raise InvalidWhittakerData(f"{g} is not in S^({k})")
            if not v:
                continue
            if g.family == "G":
                raise InvalidWhittakerData(f"psi({g}) must vanish on odd elements")
            if g.family == "L" and g.mode2 >= 2 * (2 * k + 1):
                raise InvalidWhittakerData(f"psi({g}) must vanish for L_m, m >= {2 * k + 1}")
            if g.family == "W" and g.mode2 >= 2 * (2 * k):
                raise InvalidWhittakerData(f"psi({g}) must vanish for W_n, n >= {2 * k}")
        if not self.value(_w(2 * k - 1)):
            raise InvalidWhittakerData(f"psi(W_{2 * k - 1}) must be nonzero")
        # homomorphism: psi vanishes on every bracket inside S^(k) (small window is enough,
        # brackets of S^(k) only reach the vanishing range checked above)
        gens = [g for g in S.basis(4 * k + 2) if self.in_sk(g) and not g.is_central]
        for x, y in product(gens, repeat=2):
            val = sum((c * self.value(h) for h, c in S.bracket_gens(x, y).items()), Fraction(0))
            if val:
                raise InvalidWhittakerData(f"psi([{x}, {y}]) = {val} != 0")

    @classmethod
    def from_strings(cls, k: int, items, c1="0", c2="0", parity=0) -> "WhittakerData":
        psi = {}
        for item in items:
            name, val = item.split("=")
            psi[parse_gen(name)] = parse_rational(val)
        return cls(k, psi, parse_rational(str(c1)), parse_rational(str(c2)), parity)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "psi": {str(g): format_rational(v) for g, v in sorted(self.psi.items(), key=lambda kv: gen_sort_key(kv[0])) if v},
            "c1": format_rational(self.c1),
            "c2": format_rational(self.c2),
            "parity": "odd" if self.parity else "even",
        }


def build_whittaker(data: WhittakerData, weight_bound=4, order=DEFAULT_ORDER) -> InducedModule:
    """Ind(V_psi) with t = 2k-1, d = 1.

    V_psi = U(T_1) (x)_{U(S^(k))} C w is realized through its PBW basis: the
    letters of T_1 outside S^(k) are sorted to the right of every letter
    outside T_1, so U(S) (x)_{U(S^(k))} C w is the same module.  Letter weight
    is k - mode.
    """
    data.validate()
    k = data.k
    t1 = TdAlgebra(1)

    def b_action(g, j):
        v = data.value(g)
        return {0: v} if v else {}

    def central(g):
        return data.value(g)

    eng = InducedEngine(data.in_sk, b_action, central, 1, inner=t1.contains, kappa=k,
                        order=order, v_parities=[data.parity])
    M = InducedModule(eng, 1, 2 * k - 1, weight_bound, "whittaker", {}, False, {"whittaker": data.to_json()})
    M.conditions = whittaker_conditions(M)
    M.certified = M.conditions["a"]["holds"] and M.conditions["b"]["holds"]
    return M


def _operator_matrix(M: InducedModule, g: Gen, basis: list, target: list | None = None):
    """Rows: target coordinates; raises if an image leaves ``target``."""
    target = basis if target is None else target
    cols = [M.coords(M.act(g, {b: Fraction(1)}), target) for b in basis]
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(target))]


def whittaker_conditions(M: InducedModule) -> dict:
    """Conditions (a), (b) and consequence (i), tested on the V-part within the weight bound."""
    vb = M.v_part_basis()
    t, d = M.t, M.d
    wt = _w(t)
    try:
        mat = _operator_matrix(M, wt, vb)
        r = matrix_rank(mat)
        a = {"holds": r == len(vb), "detail": f"rank W_{t} = {r} on V-part of dim {len(vb)}"}
    except WindowError as e:
        a = {"holds": False, "detail": str(e)}
    cut = M.cutoff()
    bad = []
    for i in range(t + 1, cut + 1):
        for b in vb:
            if M.act(_w(i), {b: Fraction(1)}):
                bad.append(f"W_{i}")
                break
    for j in range(t + d + 1, cut + 1):
        for b in vb:
            if M.act(_l(j), {b: Fraction(1)}):
                bad.append(f"L_{j}")
                break
    b_ = {"holds": not bad, "detail": bad or f"W_i (t<i<={cut}) and L_j (t+d<j<={cut}) vanish on V-part"}
    gbad = []
    for i in range(t + 1, cut + 1):
        for b in vb:
            if M.act(_g(2 * i - 1), {b: Fraction(1)}):
                gbad.append(f"G_{i}-1/2")
                break
    return {"a": a, "b": b_, "i": {"holds": not gbad, "detail": gbad or "G_{i-1/2} V = 0 for i > t"},
            "scope": f"V-part up to weight {format_rational(M.weight_bound)}", "v_part_dim": len(vb)}


# ---------------------------------------------------------------- singular vectors


def positive_generators(max_mode) -> list:
    out = []
    m2 = 1
    while m2 <= 2 * max_mode:
        if m2 % 2:
            out.append(_g(m2))
        else:
            out += [Gen("L", m2), Gen("W", m2)]
        m2 += 1
    return out


def find_singular_vectors(M: InducedModule, level) -> list:
    """Basis of {u in the level space : S_+ u = 0}."""
    level = Fraction(level)
    if level > M.weight_bound:
        raise WindowError(f"level {level} exceeds bound {M.weight_bound}")
    basis = M.basis(exact=level)
    rows: dict = {}
    for g in positive_generators(level + 1):
        for idx, b in enumerate(basis):
            for key, c in M.act(g, {b: Fraction(1)}).items():
                rows.setdefault((g, key), {})[idx] = c
    null = nullspace(list(rows.values()), range(len(basis)))
    return [{basis[i]: c for i, c in vec.items()} for vec in null]


def l0_eigenvalue(M: InducedModule, vec: dict):
    """lambda with L_0 vec = lambda vec, or None."""
    img = M.act(_l(0), vec)
    key = next(iter(vec))
    lam = img.get(key, Fraction(0)) / vec[key]
    if img == {k: lam * c for k, c in vec.items() if lam * c}:
        return lam
    return None


def generated_submodule(M: InducedModule, u: dict, max_mode=None) -> dict:
    """Dimensions, per weight, of U(S) u inside the materialized part."""
    bound = M.weight_bound
    max_mode = int(bound) + 2 if max_mode is None else max_mode
    gens = [g for g in S.basis(max_mode, include_central=False)]
    spans: dict = {}
    queue = [u]
    keyidx: dict = {}

    def add(vec):
        w = M.weight_of(vec)
        if w > bound:
            return False
        rr = spans.setdefault(w, RowReducer())
        row = {}
        for k, c in vec.items():
            if k not in keyidx:
                keyidx[k] = len(keyidx)
            row[keyidx[k]] = c
        return rr.add(row)

    add(u)
    while queue:
        x = queue.pop()
        for g in gens:
            y = M.act(g, x)
            if y and M.weight_of(y) <= bound and add(y):
                queue.append(y)
    return {w: spans[w].rank for w in sorted(spans)}


# ---------------------------------------------------------------- degree reduction and probes


@dataclass
class Claim1Step:
    case: str
    generator: Gen
    before: ExponentTriple
    expected: ExponentTriple
    got: ExponentTriple | None
    image: dict

    @property
    def ok(self) -> bool:
        return self.got is not None and self.got == self.expected

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "generator": str(self.generator),
            "deg_before": self.before.to_json(),
            "expected": self.expected.to_json(),
            "got": self.got.to_json() if self.got is not None else None,
            "ok": self.ok,
        }


def claim1_reduce(M: InducedModule, v: dict, force: bool = False) -> Claim1Step:
    """One degree-lowering step.

    k != 0: apply W_{k^ + t}; else j != 0: apply G_{j^ + t - 1/2}; else apply
    L_{i_check + t + d}, where k^, j^ are the smallest and i_check the largest
    support positions.
    """
    if not v:
        raise DegenerateInput("v = 0 has no degree")
    if M.in_v_part(v):
        raise DegenerateInput("v lies in the coefficient space")
    if not M.certified and not force:
        raise ConditionViolation("conditions (a)/(b) do not hold for this module")
    before = M.deg(v)
    i, j, k = before.i, before.j, before.k
    t, d = M.t, M.d
    if k:
        g = _w(k.min_pos() + t)
        exp = ExponentTriple(i, j, k.double_prime())
        case = "k"
    elif j:
        g = _g(2 * (j.min_pos() + t) - 1)
        exp = ExponentTriple(i, j.double_prime(), ExponentVector())
        case = "j"
    else:
        g = _l(i.max_pos() + t + d)
        exp = ExponentTriple(i.prime(), ExponentVector(binary=True), ExponentVector())
        case = "i"
    img = M.act(g, v)
    return Claim1Step(case, g, before, exp, M.deg(img), img)


def random_vector(M: InducedModule, rng: random.Random, max_terms: int = 3, outer_only: bool = True) -> dict:
    basis = [b for b in M.basis() if not outer_only or M.split_word(b[0])[0]]
    n = rng.randint(1, max_terms)
    vec: dict = {}
    for b in rng.sample(basis, min(n, len(basis))):
        c = 0
        while not c:
            c = rng.randint(-3, 3)
        vec[b] = Fraction(c)
    return vec


def simplicity_probe(M: InducedModule, samples: int = 50, seed: int = 0) -> Report:
    """Iterate claim1_reduce from random vectors until a nonzero element of V appears."""
    rng = random.Random(seed)
    if not M.certified:
        return Report("simplicity_probe", False, 0, [{"not_certified": M.conditions}], {"seed": seed})
    fails = []
    steps_hist = []
    for s in range(samples):
        v = random_vector(M, rng)
        start = M.deg(v)
        budget = start.i.degree_count() + start.j.degree_count() + start.k.degree_count()
        steps = 0
        cur = v
        while not M.in_v_part(cur):
            st = claim1_reduce(M, cur)
            steps += 1
            if not st.ok:
                fails.append({"sample": s, "step": st.to_json()})
                break
            cur = st.image
            if steps > budget:
                fails.append({"sample": s, "exceeded": budget})
                break
        else:
            if not cur:
                fails.append({"sample": s, "reached": "0"})
            elif steps != budget:
                fails.append({"sample": s, "steps": steps, "budget": budget})
        steps_hist.append(steps)
    return Report("simplicity_probe", not fails, samples, fails[:20],
                  {"seed": seed, "samples": samples, "max_steps": max(steps_hist, default=0),
                   "scope": f"weight <= {format_rational(M.weight_bound)}"})


def top_space(M: InducedModule, a: int, b: int, c: int) -> list:
    """Vectors of the materialized space killed by W_i (i>a), G_{j-1/2} (j>b, j>=1), L_k (k>c)."""
    basis = M.basis()
    cut = M.cutoff()
    ops = [_w(i) for i in range(a + 1, cut + 1)]
    ops += [_g(2 * j - 1) for j in range(max(b + 1, 1), cut + 1)]
    ops += [_l(k) for k in range(c + 1, cut + 1)]
    rows: dict = {}
    for g in ops:
        for idx, bv in enumerate(basis):
            for key, coef in M.act(g, {bv: Fraction(1)}).items():
                rows.setdefault((g, key), {})[idx] = coef
    null = nullspace(list(rows.values()), range(len(basis)))
    return [{basis[i]: x for i, x in vec.items()} for vec in null]


def same_span(M: InducedModule, xs: list, ys: list) -> bool:
    keys: dict = {}

    def row(v):
        out = {}
        for k, c in v.items():
            if k not in keys:
                keys[k] = len(keys)
            out[keys[k]] = c
        return out

    a, b = RowReducer(), RowReducer()
    for x in xs:
        a.add(row(x))
    for y in ys:
        b.add(row(y))
    return a.rank == b.rank and all(b.contains(r) for r in a.basis())


def restrictedness_probe(M: InducedModule, v: dict) -> dict:
    """Least (r1, r2, r3) with S^(r1,r2,r3) v = 0 among modes up to the cutoff.

    r3 is reported as at least 1: the index i = 0 never enters S^(r1,r2,r3),
    so r3 = 0 and r3 = 1 describe the same subalgebra.
    """
    if not v:
        raise DegenerateInput("v = 0")
    cut = M.cutoff()

    def least(make, lo):
        r = cut + 1
        for i in range(cut, lo - 1, -1):
            if M.act(make(i), v):
                break
            r = i
        return r

    r1 = least(_l, 0)
    r2 = least(_w, -M.d - int(M.weight_bound) - 2)
    r3 = least(lambda i: _g(2 * i - 1), 1)
    r2 = max(r2, 0)
    r0 = (M.t + M.d + 1, M.t + 1, M.t + 1)
    dg = M.deg(v)
    outer_w = dg.i.weight() + dg.j.weight() + dg.k.weight()
    n_bound = sum(r0) + outer_w
    return {
        "r": [r1, r2, r3],
        "window_bound": n_bound,
        "within_bound": max(r1, r2, r3) <= n_bound + 1,
        "cutoff": cut,
    }


# ---------------------------------------------------------------- two normal forms


def normal_form_transition(M: InducedModule, weight, other_order=("L", "W", "G")) -> dict:
    """Rewrite the ``other_order`` basis of weight <= ``weight`` into M's normal form.

    The span up to a given weight is compared rather than a single weight
    space: a Whittaker functional lowers weight, so weight is only a filtration.
    Full rank means both families are bases of the same space.
    """
    eng = M.engine
    weight = Fraction(weight)
    twin = InducedEngine(eng.in_b, eng.b_action, eng.central, eng.v_dim, inner=eng.inner,
                         kappa=eng.kappa, order=other_order, alg=eng.alg, v_parities=eng.v_parities)
    other = twin.basis(weight)
    mine = M.basis(bound=weight)
    mat = [M.coords(eng.vector(w, j), mine) for w, j in other]
    return {"weight": format_rational(weight), "dim": len(mine), "other_dim": len(other),
            "rank": matrix_rank(mat), "order": "".join(other_order)}
