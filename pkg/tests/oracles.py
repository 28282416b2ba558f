"""Independent oracles used by the tests.

Nothing here imports the package: the bracket table and the PBW counts are
written out directly so they can serve as a cross-check.
"""

from fractions import Fraction
from itertools import product

ODD = {"G"}


def s_bracket(a, b):
    """[a, b] in S for a = (family, mode) with Fraction modes; returns {(family, mode): coeff}."""
    (fa, ma), (fb, mb) = a, b
    out = {}

    def put(fam, mode, c):
        if c:
            key = (fam, Fraction(mode))
            out[key] = out.get(key, 0) + Fraction(c)

    if fa in ("C1", "C2") or fb in ("C1", "C2"):
        return {}
    delta = 1 if ma + mb == 0 else 0
    if fa == "L" and fb == "L":
        put("L", ma + mb, mb - ma)
        put("C1", 0, delta * (ma**3 - ma) / 12)
    elif fa == "L" and fb == "W":
        put("W", ma + mb, ma + mb)
        put("C2", 0, delta)
    elif fa == "L" and fb == "G":
        put("G", ma + mb, mb)
    elif fa == "G" and fb == "G":
        put("W", ma + mb, ma + mb)
        put("C2", 0, delta)
    elif (fa, fb) in (("W", "W"), ("W", "G"), ("G", "W")):
        return {}
    else:
        # reversed order: [a, b] = -(-1)^{|a||b|} [b, a]
        sign = 1 if (fa in ODD and fb in ODD) else -1
        return {k: sign * v for k, v in s_bracket(b, a).items()}
    return {k: v for k, v in out.items() if v}


def s_basis(window):
    """Basis of S with |mode| <= window, as (family, Fraction mode)."""
    out = []
    for m in range(-window, window + 1):
        out.append(("L", Fraction(m)))
        out.append(("W", Fraction(m)))
    for r2 in range(-2 * window, 2 * window + 1):
        if r2 % 2:
            out.append(("G", Fraction(r2, 2)))
    out += [("C1", Fraction(0)), ("C2", Fraction(0))]
    return out


def pbw_count(max_level2):
    """Number of PBW monomials in L_{-m}, W_{-m} (m >= 1) and distinct G_{-r} (r >= 1/2),
    counted by brute force over partitions, at every level n/2 <= max_level2/2."""
    letters = [("L", e) for e in range(2, max_level2 + 1, 2)]
    letters += [("W", e) for e in range(2, max_level2 + 1, 2)]
    letters += [("G", e) for e in range(1, max_level2 + 1, 2)]
    counts = [0] * (max_level2 + 1)
    # bosons may repeat, fermions appear at most once
    caps = [max_level2 // e if f != "G" else 1 for f, e in letters]
    for exps in product(*[range(c + 1) for c in caps]):
        lvl = sum(n * e for n, (_, e) in zip(exps, letters))
        if lvl <= max_level2:
            counts[lvl] += 1
    return counts
