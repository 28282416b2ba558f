"""Level dimensions and singular vectors of Verma modules M(h1, h2, c1)."""

import argparse
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from superor.modules import (
    find_singular_vectors, generated_submodule, l0_eigenvalue, pbw_level_dims_oracle, verma,
)
from superor.pbw import format_word
from superor.scalars import format_rational, parse_rational


@dataclass
class Config:
    params: list = field(default_factory=lambda: [("0", "0", "0"), ("1", "2", "3"), ("1/2", "-1", "7/3")])
    max_level: str = "2"


def run(cfg: Config) -> list:
    out = []
    bound = parse_rational(cfg.max_level)
    for h1, h2, c1 in cfg.params:
        M = verma(parse_rational(h1), parse_rational(h2), parse_rational(c1), bound)
        levels = {}
        for w in M.weights():
            sv = find_singular_vectors(M, w)
            levels[format_rational(w)] = [
                {"vector": {format_word(k[0]): format_rational(c) for k, c in u.items()},
                 "l0": format_rational(l0_eigenvalue(M, u))}
                for u in sv
            ]
        half = find_singular_vectors(M, Fraction(1, 2))
        sub = generated_submodule(M, half[0]) if half else {}
        out.append({
            "h1": h1, "h2": h2, "c1": c1,
            "dims": M.level_dims(),
            "oracle": pbw_level_dims_oracle(int(2 * bound)),
            "singular": levels,
            "submodule_of_G_-1/2_v": {format_rational(w): n for w, n in sub.items()},
        })
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--param", action="append", nargs=3, metavar=("H1", "H2", "C1"))
    ap.add_argument("--max-level", default="2")
    args = ap.parse_args()
    cfg = Config(params=[tuple(p) for p in args.param] if args.param else Config().params, max_level=args.max_level)
    print(json.dumps({"config": asdict(cfg), "modules": run(cfg)}, indent=1))


if __name__ == "__main__":
    main()
