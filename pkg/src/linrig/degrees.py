"""Degrees of sigma_r and of the joins J(sigma_r, L^S) for scattered S.

d(n, r, s) is the degree of a component of R[n, r, s] whose S has no two
entries on a common row or column.  Two independent routes are provided
for each quantity so they can be cross-checked.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

__all__ = [
    "barnes_tb",
    "deg_sigma",
    "deg_sigma_product",
    "deg_sigma_barnes",
    "deg_join",
    "deg_join_recursive",
    "deg_join_alternating",
    "deg_closed_Dku",
    "count_components_r1",
    "expected_dim",
    "is_hypersurface",
    "degree_table",
    "degree_csv",
    "RouteDisagreement",
]


class RouteDisagreement(ArithmeticError):
    """Two computation routes returned different values."""


@lru_cache(maxsize=None)
def barnes_tb(k: int) -> int:
    """tb(k) = prod_{i=1}^{k-1} i!  (the Barnes G-function at k+1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = 1
    for i in range(1, k):
        out *= factorial(i)
    return out


def deg_sigma_product(n: int, r: int) -> int:
    """prod_{i=0}^{n-r-1} (n+i)! i! / ((r+i)! (n-r+i)!)."""
    num = den = 1
    for i in range(n - r):
        num *= factorial(n + i) * factorial(i)
        den *= factorial(r + i) * factorial(n - r + i)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def deg_sigma_barnes(n: int, r: int) -> int:
    """tb(r) tb(2n-r) tb(n-r)^2 / (tb(n)^2 tb(2n-2r))."""
    num = barnes_tb(r) * barnes_tb(2 * n - r) * barnes_tb(n - r) ** 2
    den = barnes_tb(n) ** 2 * barnes_tb(2 * n - 2 * r)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


@lru_cache(maxsize=None)
def deg_sigma(n: int, r: int, check: bool = True) -> int:
    """Degree of the variety of n x n matrices of rank <= r."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    if r == n:
        return 1  # the whole space
    a = deg_sigma_product(n, r)
    if check:
        b = deg_sigma_barnes(n, r)
        if a != b:
            raise RouteDisagreement(f"deg_sigma({n},{r}): product {a} != Barnes {b}")
    return a


def _d0(n: int, r: int) -> int:
    # conventions closing the recursion: d(., 0, .) = 1, d(., r<0, .) = 0
    if r < 0:
        return 0
    if r == 0:
        return 1
    return deg_sigma(n, r)


@lru_cache(maxsize=None)
def deg_join_recursive(n: int, r: int, s: int) -> int:
    """d(n, r, s) = d(n, r, 0) - sum_{j=1}^{s} d(n-1, r-1, s-j)."""
    if r < 0:
        return 0
    if r == 0:
        return 1
    if s == 0:
        return _d0(n, r)
    return _d0(n, r) - sum(deg_join_recursive(n - 1, r - 1, s - j) for j in range(1, s + 1))


def deg_join_alternating(n: int, r: int, s: int) -> int:
    """sum_{m=0}^{s} C(s, m) (-1)^m d(n-m, r-m, 0)."""
    return sum(comb(s, m) * (-1) ** m * _d0(n - m, r - m) for m in range(s + 1))


def deg_join(n: int, r: int, s: int) -> int:
    """Degree of J(sigma_r, L^S) for |S| = s entries in distinct rows and columns."""
    if r < 1:
        raise ValueError("need r >= 1")
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n for a scattered support, got s={s}")
    if r > n:
        raise ValueError("need r <= n")
    a = deg_join_recursive(n, r, s)
    b = deg_join_alternating(n, r, s)
    if a != b:
        raise RouteDisagreement(f"deg_join({n},{r},{s}): recursion {a} != alternating sum {b}")
    return a


def deg_closed_Dku(n: int, k: int, u: int) -> int:
    """Closed forms for d(n, n-k, k^2-u), u in {1, 2}."""
    if u not in (1, 2):
        raise ValueError("u must be 1 or 2")
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}")
    if k * k - u > n or k * k - u < 0:
        raise ValueError(f"no scattered support of size {k * k - u} in a {n}x{n} matrix")
    pre = Fraction(factorial(k * k) * barnes_tb(k) ** 2, barnes_tb(2 * k))
    if u == 1:
        val = pre * (n - Fraction(k * k - 1, 2))
    else:
        val = pre * (Fraction(n * n, 2) - Fraction((k * k - 2) * n, 2)
                     + Fraction(3 * k ** 4 - 11 * k * k + 8, 24))
    if val.denominator != 1:
        raise ArithmeticError(f"closed form not integral: {val}")
    return int(val)


def count_components_r1(n: int) -> tuple[int, dict[int, int]]:
    """Number of components of R[n, 1, n^2 - 2n], total and by degree k."""
    if n < 2:
        raise ValueError("need n >= 2")
    per = {k: comb(n, k) ** 2 * factorial(k) * factorial(k - 1) // 2 for k in range(2, n + 1)}
    return sum(per.values()), per


def expected_dim(n: int, r: int, s: int) -> int:
    return min(r * (2 * n - r) + s, n * n)


def is_hypersurface(n: int, r: int, s: int) -> bool:
    return s == (n - r) ** 2 - 1


def degree_table(max_n: int):
    """Rows (n, r, s, degree, routes agree) for 1 <= r < n <= max_n, 0 <= s <= n."""
    for n in range(2, max_n + 1):
        for r in range(1, n):
            for s in range(n + 1):
                a = deg_join_recursive(n, r, s)
                b = deg_join_alternating(n, r, s)
                yield n, r, s, a, a == b


def degree_csv(max_n: int) -> tuple[str, bool]:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r", "s", "degree", "routes"])
    ok = True
    for n, r, s, d, agree in degree_table(max_n):
        ok &= agree
        w.writerow([n, r, s, d, "agree" if agree else "DISAGREE"])
    return buf.getvalue(), ok
