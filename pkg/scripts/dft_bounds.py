"""Upper bounds on the rigidity of DFT matrices and the DFT curve.

For n = 4m the normalized DFT has eigenvalues 1, -1, i, -i; the largest
multiplicity k gives DFT_n in R[n, n-k, n].  For primes p the point M(w_p)
of the DFT curve is brought to rank one with p^2 - 3p + 3 changes.  The
butterfly circuit sizes are listed next to the naive n^2.

    python3 scripts/dft_bounds.py --sizes 4 8 16 --primes 2 3 5 7
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from linrig.circuits import dft_circuit, size
from linrig.cyclotomic import root_of_unity
from linrig.families import dft
from linrig.rigidity import cdft_upper, eigen_upper


@dataclass
class Config:
    sizes: list[int] = field(default_factory=lambda: [4, 8, 16])
    primes: list[int] = field(default_factory=lambda: [2, 3, 5, 7])
    max_k: int = 5


def normalized_dft(n: int):
    """DFT_n / sqrt(n) when sqrt(n) is rational, else DFT_n with scaled candidates."""
    r = int(round(n ** 0.5))
    if r * r == n:
        return dft(n).scale(Fraction(1, r)), 1
    return dft(n), None


def main(cfg: Config) -> int:
    print("eigenvalue bounds")
    for n in cfg.sizes:
        if n % 4:
            print(f"  n={n}: skipped, need n divisible by 4")
            continue
        M, scale = normalized_dft(n)
        i = root_of_unity(n) ** (n // 4)
        if scale is None:
            # eigenvalues of DFT_n are sqrt(n) times fourth roots of unity; with
            # sqrt(n) irrational use DFT_n^2 = n P and report its +-n multiplicities
            M2 = M @ M
            res = eigen_upper(M2, [n, -n])
            print(f"  n={n}: DFT^2 multiplicities {res.multiplicities} (split of +-1 and +-i)")
            continue
        res = eigen_upper(M, [1, -1, i, -i])
        b = res.bound
        print(f"  n={n}: multiplicities {res.multiplicities}; DFT in R[{n},{b.r},{b.upper}]"
              f"{' (k^2 > n)' if res.nontrivial else ''}")
    print("DFT curve, rank one")
    for p in cfg.primes:
        _, b = cdft_upper(p)
        print(f"  p={p}: {b.upper} changes (p^2 - 3p + 3 = {p * p - 3 * p + 3})")
    print("butterfly circuits")
    for k in range(1, cfg.max_k + 1):
        n = 2 ** k
        print(f"  n={n}: size {size(dft_circuit(k))} vs naive {n * n}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="*", default=Config().sizes)
    ap.add_argument("--primes", type=int, nargs="*", default=Config().primes)
    ap.add_argument("--max-k", type=int, default=Config.max_k)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.sizes, a.primes, a.max_k)))
