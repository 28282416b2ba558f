"""Whittaker module Ind(V_psi): conditions, degree reductions, top space and restrictedness."""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from superor.modules import (
    WhittakerData, build_whittaker, claim1_reduce, normal_form_transition, random_vector,
    restrictedness_probe, same_span, simplicity_probe, top_space,
)


@dataclass
class Config:
    k: int = 1
    psi: list = field(default_factory=lambda: ["W_1=1"])
    c1: str = "0"
    c2: str = "0"
    weight_bound: int = 4
    samples: int = 50
    seed: int = 0


def run(cfg: Config) -> dict:
    t0 = time.perf_counter()
    M = build_whittaker(WhittakerData.from_strings(cfg.k, cfg.psi, cfg.c1, cfg.c2), cfg.weight_bound)
    rng = random.Random(cfg.seed)
    steps = []
    for _ in range(cfg.samples):
        v = random_vector(M, rng)
        n = 0
        while not M.in_v_part(v):
            st = claim1_reduce(M, v, force=True)
            if not st.ok:
                n = -1
                break
            v = st.image
            n += 1
        steps.append(n)
    ts = top_space(M, M.t, M.t, M.t + M.d)
    vb = [{b: Fraction(1)} for b in M.v_part_basis()]
    rs = [restrictedness_probe(M, random_vector(M, rng, outer_only=False))["r"] for _ in range(20)]
    return {
        "certified": M.certified,
        "conditions": M.conditions,
        "level_dims": M.level_dims(),
        "claim1_steps": steps,
        "simplicity_probe": simplicity_probe(M, cfg.samples, cfg.seed).passed,
        "top_space_dim": len(ts),
        "v_part_dim": len(vb),
        "top_space_is_v": same_span(M, ts, vb),
        "restricted_r": rs,
        "normal_form_transition": normal_form_transition(M, min(cfg.weight_bound, 3)),
        "seconds": round(time.perf_counter() - t0, 2),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    d = Config()
    ap.add_argument("--k", type=int, default=d.k)
    ap.add_argument("--psi", action="append")
    ap.add_argument("--c1", default=d.c1)
    ap.add_argument("--c2", default=d.c2)
    ap.add_argument("--weight-bound", type=int, default=d.weight_bound)
    ap.add_argument("--samples", type=int, default=d.samples)
    ap.add_argument("--seed", type=int, default=d.seed)
    args = ap.parse_args()
    cfg = Config(args.k, args.psi or d.psi, args.c1, args.c2, args.weight_bound, args.samples, args.seed)
    print(json.dumps({"config": asdict(cfg), "result": run(cfg)}, indent=1))


if __name__ == "__main__":
    main()
