"""Survey of join equations: vanishing on samples, degree, weight.

Runs every certificate case used by the acceptance suite plus the
propagated catalog examples, and prints one row per equation.

    python3 scripts/certificate_survey.py --samples 100 --max-q 2
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from linrig.acceptance import certificate_cases, generic_matrix
from linrig.catalog import EXAMPLES
from linrig.joins import sample_join_point
from linrig.minorpoly import evaluate_poly, is_weight_vector, propagate


@dataclass
class Config:
    samples: int = 100
    max_q: int = 2
    max_n: int = 6
    seed: int = 0


def zeros(P, n, r, S, samples, seed):
    return sum(evaluate_poly(P, sample_join_point(n, r, S, seed + t)) == 0 for t in range(samples))


def main(cfg: Config) -> int:
    rows = list(certificate_cases())
    for ex in EXAMPLES.values():
        for q in range(1, cfg.max_q + 1):
            if ex.n + q <= cfg.max_n:
                rows.append((f"{ex.name}_q{q}", propagate(ex.poly, q), ex.n + q, ex.r + q,
                             ex.support.with_n(ex.n + q)))
    print(f"{'equation':24} {'n':>2} {'r':>2} {'s':>3} {'deg':>4} {'terms':>5} weight  zeros  generic")
    bad = 0
    for k, (label, P, n, r, S) in enumerate(rows):
        z = zeros(P, n, r, S, cfg.samples, cfg.seed)
        g = evaluate_poly(P, generic_matrix(n, k)) != 0
        bad += z != cfg.samples or not g
        print(f"{label:24} {n:>2} {r:>2} {S.s:>3} {P.degree:>4} {len(P.terms):>5} "
              f"{'yes' if is_weight_vector(P) else 'no':>6} {z:>4}/{cfg.samples} {'nonzero' if g else 'ZERO'}")
    print(f"# {len(rows)} equations, {bad} with a nonzero sample or a zero generic value")
    return 0 if not bad else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--max-q", type=int, default=Config.max_q)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.samples, a.max_q, a.max_n, a.seed)))
