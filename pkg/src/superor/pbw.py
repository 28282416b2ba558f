"""Exponent vectors, the total orders on them, and PBW straightening.

An induced module here is U(S) (x)_{U(B)} V0 for a subalgebra B of S spanned
by generators, acting on a finite-dimensional V0.  Generators outside B are
*letters*; a normal word is a weakly increasing sequence of letters (sorted by
``letter_key``) with no repeated odd letter.  Vectors are dicts
``(word, vidx) -> Fraction``.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import S, Algebra, Gen, gen_sort_key

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class WindowError(ValueError):
    """A vector has terms beyond the materialized weight bound."""


# ---------------------------------------------------------------- exponent vectors


class ExponentVector:
    """Finitely supported (..., i_2, i_1); ``binary`` restricts entries to 0/1."""

    __slots__ = ("entries", "binary")

    def __init__(self, entries=None, binary: bool = False):
        if isinstance(entries, (list, tuple)):
            # given as (i_1, i_2, ...)
            entries = {s + 1: e for s, e in enumerate(entries)}
        ent = {int(s): int(e) for s, e in (entries or {}).items() if e}
        for s, e in ent.items():
            if s < 1 or e < 0:
                raise ValueError(f"bad entry i_{s} = {e}")
            if binary and e > 1:
                raise ValueError(f"binary vector has i_{s} = {e}")
        self.entries = ent
        self.binary = binary

    @classmethod
    def e(cls, p: int, binary: bool = False) -> "ExponentVector":
        return cls({p: 1}, binary)

    def __getitem__(self, s: int) -> int:
        return self.entries.get(s, 0)

    def __add__(self, other):
        out = dict(self.entries)
        for s, e in other.entries.items():
            out[s] = out.get(s, 0) + e
        return ExponentVector(out, self.binary and other.binary)

    def __sub__(self, other):
        out = dict(self.entries)
        for s, e in other.entries.items():
            out[s] = out.get(s, 0) - e
        return ExponentVector(out, self.binary)

    def __eq__(self, other):
        return isinstance(other, ExponentVector) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        if not self.entries:
            return "0"
        return " + ".join(f"{e}e{s}" if e != 1 else f"e{s}" for s, e in sorted(self.entries.items(), reverse=True))

    @property
    def top(self) -> int:
        return max(self.entries) if self.entries else 0

    def weight(self) -> int:
        return sum(s * e for s, e in self.entries.items())

    def degree_count(self) -> int:
        return sum(self.entries.values())

    def max_pos(self) -> int:
        return max(self.entries)

    def min_pos(self) -> int:
        return min(self.entries)

    def prime(self) -> "ExponentVector":
        """i' = i - e_p, p the largest position in the support."""
        return self - ExponentVector.e(self.max_pos())

    def double_prime(self) -> "ExponentVector":
        """i'' = i - e_q, q the smallest position in the support."""
        return self - ExponentVector.e(self.min_pos())

    def to_list(self) -> list:
        return [self[s] for s in range(1, self.top + 1)]


def weight(i: ExponentVector) -> int:
    return i.weight()


def degree_count(i: ExponentVector) -> int:
    return i.degree_count()


def lex_greater(j: ExponentVector, i: ExponentVector) -> bool:
    """j > i: the highest differing position has j_r > i_r."""
    for r in range(max(j.top, i.top), 0, -1):
        if j[r] != i[r]:
            return j[r] > i[r]
    return False


def revlex_greater(j: ExponentVector, i: ExponentVector) -> bool:
    """j succ i: the lowest differing position has j_r > i_r."""
    for r in range(1, max(j.top, i.top) + 1):
        if j[r] != i[r]:
            return j[r] > i[r]
    return False


def _weighted_greater(a: ExponentVector, b: ExponentVector) -> bool:
    # (a, w(a)) succ (b, w(b)): weight first, then reverse lexicographic
    wa, wb = a.weight(), b.weight()
    if wa != wb:
        return wa > wb
    return revlex_greater(a, b)


@dataclass(frozen=True)
class ExponentTriple:
    i: ExponentVector
    j: ExponentVector
    k: ExponentVector

    def __repr__(self):
        return f"({self.i!r}, {self.j!r}, {self.k!r})"

    def is_zero(self) -> bool:
        return not (self.i or self.j or self.k)

    def to_json(self) -> dict:
        return {"i": self.i.to_list(), "j": self.j.to_list(), "k": self.k.to_list()}


def principal_greater(a: ExponentTriple, b: ExponentTriple) -> bool:
    if a.k != b.k:
        return _weighted_greater(a.k, b.k)
    if a.j != b.j:
        return _weighted_greater(a.j, b.j)
    return lex_greater(a.i, b.i)


def triple(i=None, j=None, k=None) -> ExponentTriple:
    return ExponentTriple(ExponentVector(i), ExponentVector(j, binary=True), ExponentVector(k))


def principal_max(triples):
    best = None
    for t in triples:
        if best is None or principal_greater(t, best):
            best = t
    return best


# ---------------------------------------------------------------- vectors


def vec_add(out: dict, key, c) -> None:
    nv = out.get(key, 0) + c
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


def vec_axpy(out: dict, c, other: dict) -> None:
    if not c:
        return
    for k, v in other.items():
        vec_add(out, k, c * v)


def vec_scale(c, v: dict) -> dict:
    return {k: c * x for k, x in v.items()} if c else {}


def format_word(word) -> str:
    return " ".join(str(g) for g in word) if word else "1"


# ---------------------------------------------------------------- the engine

DEFAULT_ORDER = ("W", "G", "L")


class InducedEngine:
    """Straightening for U(alg) (x)_{U(B)} V0.

    in_b(g)        -- g (non-central) lies in B
    b_action(g, j) -- dict i -> coeff, the action of g in B on basis vector j
    central(g)     -- scalar by which a central generator acts
    inner(g)       -- letter belongs to the coefficient part (sorted to the right)
    kappa          -- letter weight is kappa - mode
    order          -- family order of the normal form, left to right
    """

    def __init__(self, in_b: Callable, b_action: Callable, central: Callable, v_dim: int = 1,
                 inner: Callable | None = None, kappa=0, order=DEFAULT_ORDER, alg: Algebra = S,
                 v_parities=None):
        self.alg = alg
        self.in_b = in_b
        self.b_action = b_action
        self.central = central
        self.v_dim = v_dim
        self.v_parities = list(v_parities) if v_parities is not None else [0] * v_dim
        self.inner = inner or (lambda g: False)
        self.kappa = Fraction(kappa)
        self.order = tuple(order)
        self._rank = {f: i for i, f in enumerate(self.order)}
        self._memo: dict = {}

    # -- letters

    def is_letter(self, g: Gen) -> bool:
        return not g.is_central and not self.in_b(g)

    def letter_key(self, g: Gen):
        return (1 if self.inner(g) else 0, self._rank[g.family], g.mode2)

    def letter_weight(self, g: Gen) -> Fraction:
        return self.kappa - g.mode

    def word_weight(self, word) -> Fraction:
        return sum((self.letter_weight(g) for g in word), Fraction(0))

    def is_normal(self, word) -> bool:
        for a, b in zip(word, word[1:]):
            ka, kb = self.letter_key(a), self.letter_key(b)
            if ka > kb or (a == b and self.alg.parity(a)):
                return False
        return all(self.is_letter(g) for g in word)

    def letters_up_to(self, bound) -> list:
        bound = Fraction(bound)
        lo = 2 * (self.kappa - bound)
        hi = 2 * self.kappa
        out = []
        for fam in self.order:
            for m2 in range(int(lo) - 1, int(hi) + 2):
                g = Gen(fam, m2)
                try:
                    self.alg.check_gen(g)
                except ValueError:
                    continue
                if self.is_letter(g) and 0 < self.letter_weight(g) <= bound:
                    out.append(g)
        for g in out:
            if self.letter_weight(g) <= 0:
                raise ValueError("letters must have positive weight")
        return sorted(out, key=self.letter_key)

    def words(self, bound, exact=None, inner_only=False) -> list:
        """Normal words of weight <= bound (or == exact)."""
        bound = Fraction(bound)
        letters = self.letters_up_to(bound)
        if inner_only:
            letters = [g for g in letters if self.inner(g)]
        out = []

        def rec(start, word, w):
            if exact is None or w == exact:
                out.append(tuple(word))
            for idx in range(start, len(letters)):
                g = letters[idx]
                nw = w + self.letter_weight(g)
                if nw > bound:
                    continue
                nxt = idx + 1 if self.alg.parity(g) else idx
                word.append(g)
                rec(nxt, word, nw)
                word.pop()

        rec(0, [], Fraction(0))
        if exact is not None:
            out = [w for w in out if self.word_weight(w) == exact]
        return sorted(out, key=lambda w: (self.word_weight(w), len(w), [self.letter_key(g) for g in w]))

    def basis(self, bound, exact=None, inner_only=False) -> list:
        return [(w, j) for w in self.words(bound, exact, inner_only) for j in range(self.v_dim)]

    # -- parity

    def parity_of(self, key) -> int:
        word, j = key
        return (sum(self.alg.parity(g) for g in word) + self.v_parities[j]) % 2

    # -- action

    def act_gen(self, g: Gen, word: tuple, j: int) -> dict:
        key = (g, word, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._act(g, word, j)
        self._memo[key] = res
        return res

    def _act(self, g: Gen, word: tuple, j: int) -> dict:
        alg = self.alg
        if g.is_central:
            c = self.central(g)
            return {(word, j): Fraction(c)} if c else {}
        letter = self.is_letter(g)
        if not word:
            if letter:
                return {((g,), j): Fraction(1)}
            return {((), i): Fraction(c) for i, c in self.b_action(g, j).items() if c}
        x, rest = word[0], word[1:]
        if letter:
            kg, kx = self.letter_key(g), self.letter_key(x)
            if g == x and alg.parity(g):
                # g g = [g, g] / 2 for odd g
                out: dict = {}
                for h, c in alg.bracket_gens(g, g).items():
                    vec_axpy(out, c / 2, self.act_gen(h, rest, j))
                return out
            if kg <= kx:
                return {((g,) + word, j): Fraction(1)}
        # g x rest = (-1)^{|g||x|} x (g rest) + [g, x] rest
        out = {}
        s = -1 if (alg.parity(g) and alg.parity(x)) else 1
        for (w2, j2), c in self.act_gen(g, rest, j).items():
            vec_axpy(out, s * c, self.act_gen(x, w2, j2))
        for h, c in alg.bracket_gens(g, x).items():
            vec_axpy(out, c, self.act_gen(h, rest, j))
        return out

    def act(self, g: Gen, vec: dict) -> dict:
        out: dict = {}
        for (w, j), c in vec.items():
            vec_axpy(out, c, self.act_gen(g, w, j))
        return out

    def act_vector(self, x, vec: dict) -> dict:
        """Action of an algebra element given as {Gen: coeff}."""
        out: dict = {}
        for g, c in x.items():
            vec_axpy(out, c, self.act(g, vec))
        return out

    def apply_word(self, word, vec: dict) -> dict:
        """Apply an arbitrary sequence of generators, rightmost first."""
        for g in reversed(tuple(word)):
            vec = self.act(g, vec)
        return vec

    def vector(self, word=(), j: int = 0, coeff=1) -> dict:
        """The vector g_1 ... g_n (x) v_j computed by straightening (word need not be normal)."""
        return self.apply_word(word, {((), j): Fraction(coeff)})

    # -- bookkeeping

    def max_weight(self, vec: dict) -> Fraction:
        return max((self.word_weight(w) for w, _ in vec), default=Fraction(0))

    def check_within(self, vec: dict, bound) -> None:
        for w, _ in vec:
            if self.word_weight(w) > bound:
                raise WindowError(f"term {format_word(w)} has weight {self.word_weight(w)} > bound {bound}")

    # -- independent oracle

    def straighten_random(self, word, j: int = 0, rng: random.Random | None = None, coeff=1) -> dict:
        """Rewrite g_1 ... g_n (x) v_j to normal form by random local moves.

        Each step picks a random reducible spot in a random term: an
        out-of-order adjacent pair, a repeated odd letter, a central element,
        or a B-element sitting directly on v.  No memoization is used.
        """
        rng = rng or random.Random(0)
        alg = self.alg
        pending = {(tuple(word), j): Fraction(coeff)}
        done: dict = {}
        while pending:
            key = rng.choice(list(pending))
            c = pending.pop(key)
            w, jj = key
            spots = []
            for p, g in enumerate(w):
                if g.is_central:
                    spots.append(("central", p))
            if w and not self.is_letter(w[-1]) and not w[-1].is_central:
                spots.append(("apply", len(w) - 1))
            for p in range(len(w) - 1):
                a, b = w[p], w[p + 1]
                if a.is_central or b.is_central:
                    continue
                la, lb = self.is_letter(a), self.is_letter(b)
                if not la and lb:
                    spots.append(("swap", p))
                elif la and lb:
                    ka, kb = self.letter_key(a), self.letter_key(b)
                    if ka > kb:
                        spots.append(("swap", p))
                    elif a == b and alg.parity(a):
                        spots.append(("square", p))
            if not spots:
                # all letters sorted, and no B-element left (it would be an "apply" spot
                # or a swap spot), so the word is normal
                vec_add(done, key, c)
                continue
            kind, p = rng.choice(spots)
            new: dict = {}
            if kind == "central":
                z = Fraction(self.central(w[p]))
                if z:
                    new[(w[:p] + w[p + 1:], jj)] = c * z
            elif kind == "apply":
                for i, a in self.b_action(w[-1], jj).items():
                    if a:
                        new[(w[:-1], i)] = c * a
            elif kind == "square":
                g = w[p]
                for h, a in alg.bracket_gens(g, g).items():
                    vec_add(new, (w[:p] + (h,) + w[p + 2:], jj), c * a / 2)
            else:
                a, b = w[p], w[p + 1]
                s = -1 if (alg.parity(a) and alg.parity(b)) else 1
                vec_add(new, (w[:p] + (b, a) + w[p + 2:], jj), s * c)
                for h, k in alg.bracket_gens(a, b).items():
                    vec_add(new, (w[:p] + (h,) + w[p + 2:], jj), c * k)
            for k2, v2 in new.items():
                vec_add(pending, k2, v2)
        return done
