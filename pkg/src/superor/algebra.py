"""Structure constants of the super extended Ovsienko-Roger algebra and its relatives.

Modes are stored doubled (``mode2 = 2*m``) so that integer and half-integer
lattices share one exact integer representation.  Every preset is a closed
form rule on pairs of basis generators; nothing is tabulated, so brackets of
generators with large modes never fall off a table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, NamedTuple

from .scalars import QSqrt2, format_scalar, parse_scalar, INV_SQRT2

FAMILIES = ("L", "W", "G", "C1", "C2", "C3", "C4")
CENTRAL = frozenset({"C1", "C2", "C3", "C4"})


class IndexLatticeViolation(ValueError):
    pass


class Gen(NamedTuple):
    family: str
    mode2: int = 0

    @property
    def mode(self) -> Fraction:
        return Fraction(self.mode2, 2)

    @property
    def is_central(self) -> bool:
        return self.family in CENTRAL

    def __str__(self):
        if self.is_central:
            return self.family
        return f"{self.family}_{format_mode(self.mode2)}"


def format_mode(mode2: int) -> str:
    if mode2 % 2 == 0:
        return str(mode2 // 2)
    return f"{mode2}/2"


def parse_mode(s) -> int:
    """Return the doubled mode of "3", "-1/2", 3 or Fraction(-1, 2)."""
    m = Fraction(s) if not isinstance(s, str) else Fraction(s.strip())
    if (2 * m).denominator != 1:
        raise IndexLatticeViolation(f"mode {s!r} is not a half-integer")
    return int(2 * m)


def parse_gen(text: str) -> Gen:
    """Parse "L:2", "G:-1/2", "W_3" or "C1"."""
    text = text.strip()
    if text in CENTRAL:
        return Gen(text, 0)
    for sep in (":", "_"):
        if sep in text:
            fam, mode = text.split(sep, 1)
            break
    else:
        fam, mode = text[0], text[1:]
    fam = fam.strip()
    if fam not in FAMILIES:
        raise ValueError(f"unknown generator family {fam!r}")
    return Gen(fam, parse_mode(mode))


def L(m) -> Gen:
    return Gen("L", parse_mode(m))


def W(m) -> Gen:
    return Gen("W", parse_mode(m))


def G(r) -> Gen:
    return Gen("G", parse_mode(r))


C1, C2, C3, C4 = (Gen(f"C{i}", 0) for i in range(1, 5))


class SuperVector:
    """Finite linear combination of generators; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                if c:
                    clean[g] = clean.get(g, 0) + c
                    if not clean[g]:
                        del clean[g]
        self.terms = clean

    @classmethod
    def gen(cls, g: Gen, coeff=1) -> "SuperVector":
        return cls({g: Fraction(coeff) if isinstance(coeff, int) else coeff})

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: gen_sort_key(kv[0])))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, g):
        return self.terms.get(g, 0)

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return SuperVector(out)

    def __neg__(self):
        return SuperVector({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SuperVector":
        if not s:
            return SuperVector()
        return SuperVector({g: s * c for g, c in self.terms.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SuperVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({format_scalar(c)})*{g}" for g, c in self)

    def to_json(self) -> list:
        return [
            {"family": g.family, "mode": g.mode2, "coeff": format_scalar(c)}
            for g, c in self
        ]

    @classmethod
    def from_json(cls, data: list) -> "SuperVector":
        terms = {}
        for item in data:
            g = Gen(item["family"], int(item["mode"]))
            terms[g] = terms.get(g, 0) + parse_scalar(item["coeff"])
        return cls(terms)


_FAMILY_RANK = {f: i for i, f in enumerate(FAMILIES)}


def gen_sort_key(g: Gen):
    return (_FAMILY_RANK[g.family], g.mode2)


def _delta(x: int) -> int:
    return 1 if x == 0 else 0


# Each rule maps (x, y) -> dict of generator -> Fraction for the ordered pair.
# Rules are written for a canonical family order; the reverse order follows
# from super skew-symmetry.


def _rule_S(x: Gen, y: Gen, with_centre: bool, stilde: bool):
    fx, fy = x.family, y.family
    m, n = x.mode, y.mode
    d = _delta(x.mode2 + y.mode2)
    out = {}
    if fx == "L" and fy == "L":
        out[Gen("L", x.mode2 + y.mode2)] = n - m
        if with_centre and d:
            out[C1] = (m**3 - m) / 12
    elif fx == "L" and fy == "W":
        out[Gen("W", x.mode2 + y.mode2)] = m + n
        if with_centre and d:
            out[C2] = Fraction(1)
    elif fx == "L" and fy == "G":
        out[Gen("G", x.mode2 + y.mode2)] = n
        if stilde and d:
            out[C3] = m * m + m
    elif fx == "G" and fy == "G":
        out[Gen("W", x.mode2 + y.mode2)] = m + n
        if with_centre and d:
            out[C2] = Fraction(1)
    elif fx == "W" and fy == "G":
        if stilde and d:
            out[C4] = Fraction(1)
    return out


def _rule_L1(x: Gen, y: Gen):
    fx, fy = x.family, y.family
    m, n = x.mode, y.mode
    d = _delta(x.mode2 + y.mode2)
    out = {}
    if fx == "L" and fy == "L":
        out[Gen("L", x.mode2 + y.mode2)] = n - m
        if d:
            out[C1] = (m**3 - m) / 12
    elif fx == "L" and fy == "W":
        out[Gen("W", x.mode2 + y.mode2)] = m + n
        if d:
            if m:
                out[C2] = m
            out[C3] = Fraction(1)
    return out


def _rule_SVir(x: Gen, y: Gen):
    fx, fy = x.family, y.family
    m, n = x.mode, y.mode
    out = {}
    if fx == "L" and fy == "L":
        out[Gen("L", x.mode2 + y.mode2)] = m - n
    elif fx == "L" and fy == "G":
        out[Gen("G", x.mode2 + y.mode2)] = m / 2 - n
    elif fx == "G" and fy == "G":
        out[Gen("L", x.mode2 + y.mode2)] = Fraction(2)
    return out


@dataclass(frozen=True)
class Algebra:
    """A named preset: index lattice, central generators, parities and bracket rule."""

    name: str
    families: tuple
    centrals: tuple
    g_half_integer: bool
    odd_families: frozenset
    rule: Callable = field(compare=False, repr=False)
    description: str = ""

    def parity(self, g: Gen) -> int:
        return 1 if g.family in self.odd_families else 0

    def check_gen(self, g: Gen) -> None:
        if g.family not in self.families:
            raise IndexLatticeViolation(f"{g} is not a generator of {self.name}")
        if g.is_central:
            if g.mode2 != 0:
                raise IndexLatticeViolation(f"central {g.family} carries mode 0")
        elif g.family == "G":
            if (g.mode2 % 2 == 1) != self.g_half_integer:
                lattice = "Z+1/2" if self.g_half_integer else "Z"
                raise IndexLatticeViolation(
                    f"{g} has mode outside {lattice} in {self.name}"
                )
        elif g.mode2 % 2:
            raise IndexLatticeViolation(f"{g} must have an integer mode in {self.name}")

    def bracket_gens(self, x: Gen, y: Gen) -> dict:
        self.check_gen(x)
        self.check_gen(y)
        return _cached_bracket(self.name, x, y)

    def bracket(self, x: SuperVector, y: SuperVector) -> SuperVector:
        out: dict = {}
        for gx, cx in x.terms.items():
            for gy, cy in y.terms.items():
                for g, c in self.bracket_gens(gx, gy).items():
                    v = out.get(g, 0) + cx * cy * c
                    if v:
                        out[g] = v
                    else:
                        out.pop(g, None)
        return SuperVector(out)

    def basis(self, window: int, include_central: bool = True) -> list:
        """Basis generators with |mode| <= window."""
        out = []
        for fam in self.families:
            if fam in CENTRAL:
                continue
            if fam == "G" and self.g_half_integer:
                modes2 = range(-2 * window + 1, 2 * window, 2)
            else:
                modes2 = range(-2 * window, 2 * window + 1, 2)
            out.extend(Gen(fam, m2) for m2 in modes2)
        if include_central:
            out.extend(Gen(c, 0) for c in self.centrals)
        return out

    def is_homogeneous(self, v: SuperVector) -> bool:
        return len({self.parity(g) for g in v.terms}) <= 1

    def vector_parity(self, v: SuperVector):
        """Parity of a homogeneous vector; None for 0 (any parity fits)."""
        ps = {self.parity(g) for g in v.terms}
        if len(ps) > 1:
            raise ValueError("inhomogeneous vector has no parity")
        return ps.pop() if ps else None


_RULES: dict = {}
PRESETS: dict = {}


def _canonical(x: Gen, y: Gen) -> bool:
    return _FAMILY_RANK[x.family] <= _FAMILY_RANK[y.family]


@lru_cache(maxsize=None)
def _cached_bracket(name: str, x: Gen, y: Gen) -> dict:
    alg = PRESETS[name]
    if x.is_central or y.is_central:
        return {}
    if x.family == y.family or _canonical(x, y):
        raw = alg.rule(x, y)
    else:
        sign = -1 if (alg.parity(x) and alg.parity(y)) else 1
        raw = {g: -sign * c for g, c in alg.rule(y, x).items()}
        # [x,y] = -(-1)^{|x||y|} [y,x]
    return {g: Fraction(c) for g, c in raw.items() if c}


def _register(alg: Algebra) -> Algebra:
    PRESETS[alg.name] = alg
    return alg


def _stilde_rule(x, y):
    return _rule_S(x, y, with_centre=True, stilde=True)


def _s_rule(x, y):
    return _rule_S(x, y, with_centre=True, stilde=False)


def _sbar_rule(x, y):
    return _rule_S(x, y, with_centre=False, stilde=False)


S = _register(Algebra(
    "S", ("L", "W", "G", "C1", "C2"), ("C1", "C2"), True, frozenset({"G"}),
    _s_rule, "super extended Ovsienko-Roger algebra",
))
SBAR0 = _register(Algebra(
    "Sbar0", ("L", "W", "G"), (), False, frozenset({"G"}), _sbar_rule,
    "centreless algebra, Ramond type",
))
SBAR12 = _register(Algebra(
    "Sbar12", ("L", "W", "G"), (), True, frozenset({"G"}), _sbar_rule,
    "centreless algebra, Neveu-Schwarz type",
))
STILDE0 = _register(Algebra(
    "Stilde0", ("L", "W", "G", "C1", "C2", "C3", "C4"), ("C1", "C2", "C3", "C4"),
    False, frozenset({"G", "C3", "C4"}), _stilde_rule,
    "four-fold central extension, Ramond type",
))
STILDE12 = _register(Algebra(
    "Stilde12", ("L", "W", "G", "C1", "C2", "C3", "C4"), ("C1", "C2", "C3", "C4"),
    True, frozenset({"G", "C3", "C4"}), _stilde_rule,
    "central extension, Neveu-Schwarz type",
))
L1 = _register(Algebra(
    "L1", ("L", "W", "C1", "C2", "C3"), ("C1", "C2", "C3"), False, frozenset(),
    _rule_L1, "lambda=1 Ovsienko-Roger algebra",
))
SVIR0 = _register(Algebra(
    "SVir0", ("L", "G"), (), False, frozenset({"G"}), _rule_SVir,
    "centreless Ramond algebra",
))
SVIR12 = _register(Algebra(
    "SVir12", ("L", "G"), (), True, frozenset({"G"}), _rule_SVir,
    "centreless Neveu-Schwarz algebra",
))


def get_algebra(name: str) -> Algebra:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown algebra preset {name!r}; choose from {sorted(PRESETS)}")


def sbar(eps2: int) -> Algebra:
    """Centreless algebra; ``eps2`` is twice epsilon (0 or 1)."""
    return SBAR12 if eps2 else SBAR0


def bracket(x, y, alg: Algebra = S) -> SuperVector:
    if isinstance(x, Gen):
        x = SuperVector.gen(x)
    if isinstance(y, Gen):
        y = SuperVector.gen(y)
    return alg.bracket(x, y)


def grading_degree(g: Gen) -> Fraction:
    return Fraction(0) if g.is_central else g.mode


# ---------------------------------------------------------------- checks


@dataclass
class Report:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:20],
            "details": self.details,
        }


def _sign(alg: Algebra, x: Gen, y: Gen) -> int:
    return -1 if (alg.parity(x) and alg.parity(y)) else 1


def super_skew_check(alg: Algebra, window: int) -> Report:
    if window < 1:
        raise ValueError("window must be >= 1")
    basis = alg.basis(window)
    fails = []
    n = 0
    for x, y in product(basis, repeat=2):
        n += 1
        lhs = bracket(x, y, alg)
        rhs = bracket(y, x, alg).scale(-_sign(alg, x, y))
        if lhs != rhs:
            fails.append({"x": str(x), "y": str(y), "xy": repr(lhs), "yx": repr(rhs)})
    return Report(f"super_skew[{alg.name}]", not fails, n, fails, {"window": window})


def _apply_left(alg: Algebra, x: Gen, v: dict) -> dict:
    out: dict = {}
    name = alg.name
    for g, c in v.items():
        for h, d in _cached_bracket(name, x, g).items():
            out[h] = out.get(h, 0) + c * d
    return out


def _apply_right(alg: Algebra, v: dict, z: Gen) -> dict:
    out: dict = {}
    name = alg.name
    for g, c in v.items():
        for h, d in _cached_bracket(name, g, z).items():
            out[h] = out.get(h, 0) + c * d
    return out


def jacobi_defect(alg: Algebra, x: Gen, y: Gen, z: Gen) -> dict:
    """[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]] as a generator -> coefficient map."""
    name = alg.name
    lhs = _apply_left(alg, x, _cached_bracket(name, y, z))
    t1 = _apply_right(alg, _cached_bracket(name, x, y), z)
    t2 = _apply_left(alg, y, _cached_bracket(name, x, z))
    if not (lhs or t1 or t2):
        return {}
    s = _sign(alg, x, y)
    out = dict(lhs)
    for h, c in t1.items():
        out[h] = out.get(h, 0) - c
    for h, c in t2.items():
        out[h] = out.get(h, 0) - s * c
    return {h: c for h, c in out.items() if c}


def super_jacobi_check(alg: Algebra, window: int) -> Report:
    if window < 1:
        raise ValueError("window must be >= 1")
    basis = alg.basis(window, include_central=False)
    fails = []
    n = 0
    for x, y, z in product(basis, repeat=3):
        n += 1
        d = jacobi_defect(alg, x, y, z)
        if d:
            fails.append({"triple": [str(x), str(y), str(z)], "defect": repr(SuperVector(d))})
    return Report(f"super_jacobi[{alg.name}]", not fails, n, fails, {"window": window})


def centrality_check(alg: Algebra, window: int) -> Report:
    fails = []
    n = 0
    for c in alg.centrals:
        for x in alg.basis(window):
            n += 2
            if bracket(Gen(c, 0), x, alg) or bracket(x, Gen(c, 0), alg):
                fails.append({"central": c, "x": str(x)})
    return Report(f"centrality[{alg.name}]", not fails, n, fails, {"window": window})


def grading_parity_check(alg: Algebra, window: int) -> Report:
    """Brackets add degrees and parities on all basis pairs."""
    fails = []
    n = 0
    for x, y in product(alg.basis(window, include_central=False), repeat=2):
        n += 1
        target_deg = grading_degree(x) + grading_degree(y)
        target_par = (alg.parity(x) + alg.parity(y)) % 2
        for g in bracket(x, y, alg).terms:
            if g.is_central:
                ok = target_deg == 0
            else:
                ok = grading_degree(g) == target_deg
            if not ok or alg.parity(g) != target_par:
                fails.append({"x": str(x), "y": str(y), "term": str(g)})
    return Report(f"grading_parity[{alg.name}]", not fails, n, fails, {"window": window})


# ---------------------------------------------------------------- phi embedding


def phi(g: Gen) -> SuperVector:
    """Embedding of the Neveu-Schwarz centreless algebra into the Ramond one."""
    if g.family == "L":
        return SuperVector({Gen("L", 2 * g.mode2): QSqrt2(Fraction(1, 2))})
    if g.family == "W":
        return SuperVector({Gen("W", 2 * g.mode2): QSqrt2(1)})
    if g.family == "G":
        if g.mode2 % 2 == 0:
            raise IndexLatticeViolation(f"{g} is not in the Neveu-Schwarz lattice")
        return SuperVector({Gen("G", 2 * g.mode2): INV_SQRT2})
    raise IndexLatticeViolation(f"phi is not defined on {g}")


def phi_vector(v: SuperVector) -> SuperVector:
    out = SuperVector()
    for g, c in v.terms.items():
        out = out + phi(g).scale(c)
    return out


def phi_embedding_check(window: int) -> Report:
    src, dst = SBAR12, SBAR0
    basis = src.basis(window)
    fails = []
    n = 0
    for x, y in product(basis, repeat=2):
        n += 1
        lhs = phi_vector(src.bracket(SuperVector.gen(x, QSqrt2(1)), SuperVector.gen(y, QSqrt2(1))))
        rhs = dst.bracket(phi(x), phi(y))
        if lhs != rhs:
            fails.append({"x": str(x), "y": str(y), "phi_xy": repr(lhs), "phix_phiy": repr(rhs)})
    images = [next(iter(phi(g).terms)) for g in basis]
    injective = len(set(images)) == len(images)
    if not injective:
        fails.append({"injectivity": "image indices collide"})
    return Report("phi_embedding", not fails, n, fails, {"window": window, "injective_on_basis": injective})
