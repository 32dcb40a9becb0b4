"""Degree table for joins of sigma_r with scattered supports.

Writes the CSV (n, r, s, degree, routes) and the closed-form check
D(n, k, u) = d(n, n-k, k^2-u) wherever a scattered support of that size fits.

    python3 scripts/degree_table.py --max-n 10 --out degrees.csv
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from linrig.degrees import deg_closed_Dku, deg_join, degree_csv


@dataclass
class Config:
    max_n: int = 10
    out: str | None = None


def closed_form_rows(max_n: int):
    for k in range(2, max_n + 1):
        for u in (1, 2):
            for n in range(max(k + 1, k * k - u), max_n + 1):
                if k * k - u > n:
                    continue
                yield n, k, u, deg_closed_Dku(n, k, u), deg_join(n, n - k, k * k - u)


def main(cfg: Config) -> int:
    text, ok = degree_csv(cfg.max_n)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    print(f"# recursion and alternating sum agree everywhere: {ok}")
    bad = 0
    for n, k, u, closed, rec in closed_form_rows(cfg.max_n):
        bad += closed != rec
        print(f"# D({n},{k},{u}) = {closed}  recursion {rec}")
    print(f"# closed-form mismatches: {bad}")
    return 0 if ok and not bad else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--out")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.max_n, a.out)))
