"""Structured matrix families: DFT, Cauchy, Vandermonde, Sylvester, the DFT
curve, and butterfly products, with their closed forms and defining
equations."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic, root_of_unity
from .matrix import Matrix, det

__all__ = [
    "CauchyParams",
    "VandermondeParams",
    "dft",
    "cauchy",
    "cauchy_det",
    "cauchy_from_border",
    "cauchy_ideal_residual",
    "vandermonde",
    "vandermonde_ideal_residuals",
    "sylvester",
    "dft_curve",
    "m_w",
    "butterfly_support",
    "dft_layers",
    "butterfly_sample",
    "random_rational",
    "butterfly_jacobian_rank",
]


def random_rational(rng: random.Random, bound: int = 7) -> Fraction:
    """Nonzero p/q with p, q drawn from [-bound, bound] minus zero."""
    vals = [v for v in range(-bound, bound + 1) if v]
    return Fraction(rng.choice(vals), rng.choice(vals))


# ---------------------------------------------------------------- DFT

def dft(n: int) -> Matrix:
    """DFT_n with entries w_n^((i-1)(j-1)), over Q(w_n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    w = root_of_unity(n)
    powers = [w ** k for k in range(n)]
    return Matrix.from_function(n, n, lambda i, j: powers[(i * j) % n], conductor=n)


# ---------------------------------------------------------------- Cauchy

@dataclass(frozen=True)
class CauchyParams:
    x: tuple[Fraction, ...]
    z: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))
        object.__setattr__(self, "z", tuple(Fraction(v) for v in self.z))
        if len(self.x) != len(self.z):
            raise ValueError("x and z must have equal length")
        for i, a in enumerate(self.x):
            for j, b in enumerate(self.z):
                if a + b == 0:
                    raise ValueError(f"x^{i + 1} + z_{j + 1} = 0; Cauchy entry undefined")

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def random(cls, n: int, seed: int = 0) -> CauchyParams:
        """Distinct x's, distinct z's, all x^i + z_j nonzero and x^i != -z_j."""
        rng = random.Random(seed)
        while True:
            x = rng.sample(range(1, 8 * n + 8), n)
            z = rng.sample(range(1, 8 * n + 8), n)
            xs = [Fraction(v, rng.randint(1, 5)) for v in x]
            zs = [Fraction(v, rng.randint(1, 5)) for v in z]
            if len(set(xs)) == n and len(set(zs)) == n:
                return cls(tuple(xs), tuple(zs))


def cauchy(p: CauchyParams) -> Matrix:
    return Matrix.from_function(p.n, p.n, lambda i, j: 1 / (p.x[i] + p.z[j]))


def cauchy_det(p: CauchyParams) -> Fraction:
    """Closed-form determinant prod_{i<j}(x^i-x^j)(z_i-z_j) / prod_{i,j}(x^i+z_j)."""
    num = Fraction(1)
    n = p.n
    for i in range(n):
        for j in range(i + 1, n):
            num *= (p.x[i] - p.x[j]) * (p.z[i] - p.z[j])
    den = Fraction(1)
    for a in p.x:
        for b in p.z:
            den *= a + b
    return num / den


def cauchy_from_border(first_row: Sequence, first_col: Sequence) -> Matrix:
    """Fill a Cauchy-variety matrix from its first row and column.

    ``first_row[0]`` and ``first_col[0]`` are both the (1,1) entry and must agree.
    """
    row = [Fraction(v) for v in first_row]
    col = [Fraction(v) for v in first_col]
    if not row or not col or row[0] != col[0]:
        raise ValueError("border must share a consistent (1,1) entry")
    if any(v == 0 for v in row + col):
        raise ZeroDivisionError("border entries must be nonzero")
    a11 = row[0]

    def entry(i, j):
        if i == 0:
            return row[j]
        if j == 0:
            return col[i]
        s = 1 / col[i] + 1 / row[j] - 1 / a11
        if s == 0:
            raise ZeroDivisionError(f"reciprocal sum vanishes at ({i + 1},{j + 1})")
        return 1 / s

    return Matrix.from_function(len(col), len(row), entry)


def cauchy_ideal_residual(M: Matrix, i1: int, i2: int, j1: int, j2: int):
    """Cubic obtained from 1/y11 + 1/y22 - 1/y12 - 1/y21 = 0 by clearing denominators.

    Indices are 1-based; yab means the entry in row i_a, column j_b.
    """
    if i1 == i2 or j1 == j2:
        raise ValueError("need distinct rows and distinct columns")
    y11 = M[i1 - 1, j1 - 1]
    y12 = M[i1 - 1, j2 - 1]
    y21 = M[i2 - 1, j1 - 1]
    y22 = M[i2 - 1, j2 - 1]
    return y22 * y12 * y21 + y11 * y12 * y21 - y11 * y22 * y21 - y11 * y22 * y12


# ---------------------------------------------------------------- Vandermonde

@dataclass(frozen=True)
class VandermondeParams:
    """y_0 (the homogenizing coordinate) followed by y_1..y_n."""

    y: tuple

    @property
    def n(self) -> int:
        return len(self.y) - 1

    @classmethod
    def random(cls, n: int, seed: int = 0) -> VandermondeParams:
        # distinct positive nodes: every minor is then nonzero (total positivity)
        rng = random.Random(seed)
        while True:
            vals = rng.sample(range(1, 9 * n + 1), n)
            ys = [Fraction(v, rng.randint(1, 4)) for v in vals]
            if len(set(ys)) == n:
                return cls((Fraction(1),) + tuple(ys))


def vandermonde(p: VandermondeParams | Sequence) -> Matrix:
    """Entry (i, j) = y_0^(n-i) * y_j^(i-1), 1-based i, j."""
    y = tuple(p.y if isinstance(p, VandermondeParams) else p)
    n = len(y) - 1
    if n < 1:
        raise ValueError("need y_0 and at least one y_j")
    cond = next((v.m for v in y if isinstance(v, Cyclotomic)), None)
    return Matrix.from_function(n, n, lambda i, j: y[0] ** (n - 1 - i) * y[j + 1] ** i, cond)


def vandermonde_ideal_residuals(M: Matrix) -> list:
    """Values of the Vandermonde-variety generators at M.

    Per column j the quadrics x^i_j x^k_j - x^{i+1}_j x^{k-1}_j (i + 1 < k),
    then the linears x^1_1 - x^1_j for j = 2..n.
    """
    n = M.nrows
    out = []
    for j in range(M.ncols):
        for i in range(n):
            for k in range(i + 2, n):
                out.append(M[i, j] * M[k, j] - M[i + 1, j] * M[k - 1, j])
    for j in range(1, M.ncols):
        out.append(M[0, 0] - M[0, j])
    return out


# ---------------------------------------------------------------- Sylvester

def sylvester(k: int) -> Matrix:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rows = [[1, 1], [1, -1]]
    for _ in range(k - 1):
        rows = [r + r for r in rows] + [r + [-v for v in r] for r in rows]
    return Matrix(rows)


# ---------------------------------------------------------------- DFT curve

def dft_curve(x, w, n: int) -> Matrix:
    """Point (x, w) of the DFT curve: entry (i, j) = x^(n-1-e) w^e, e = (i-1)(j-1) mod n."""
    cond = next((v.m for v in (x, w) if isinstance(v, Cyclotomic)), None)

    def entry(i, j):
        e = (i * j) % n
        return _pow0(x, n - 1 - e) * _pow0(w, e)

    return Matrix.from_function(n, n, entry, cond)


def _pow0(v, k: int):
    # 0^0 = 1
    if k == 0:
        return Fraction(1) if not isinstance(v, Cyclotomic) else Cyclotomic.one(v.m)
    return v ** k


def m_w(w) -> Matrix:
    """The 5x5 matrix M(w): rows w^((i-1)(j-1) mod 5)."""
    return dft_curve(Fraction(1), w, 5)


# ---------------------------------------------------------------- butterflies

def _bitrev(i: int, k: int) -> int:
    out = 0
    for _ in range(k):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def dft_layers(k: int) -> list[Matrix]:
    """Sparse factors S_1..S_k with S_1 ... S_k = DFT_{2^k}.

    Radix-2 decimation in time: DFT_n = B_k ... B_1 R, where B_s applies the
    size-2^s butterflies with twiddles and R is the bit reversal.  R is
    multiplied into B_1, which only permutes its columns, so every layer
    keeps exactly 2n nonzero entries.  Layers are returned in product order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 1 << k
    w = root_of_unity(n)
    zero = Cyclotomic.zero(n)
    one = Cyclotomic.one(n)
    butterflies = []
    for s in range(1, k + 1):
        size = 1 << s
        half = size >> 1
        tw_step = n // size
        rows = [[zero] * n for _ in range(n)]
        for base in range(0, n, size):
            for t in range(half):
                tw = w ** (t * tw_step)
                top, bot = base + t, base + t + half
                rows[top][top] = one
                rows[top][bot] = tw
                rows[bot][top] = one
                rows[bot][bot] = -tw
        butterflies.append(rows)
    # B_1 R: column c of B_1 R is column bitrev(c) of B_1
    b1 = butterflies[0]
    butterflies[0] = [[row[_bitrev(c, k)] for c in range(n)] for row in b1]
    return [Matrix(rows, n) for rows in reversed(butterflies)]


def butterfly_support(k: int) -> list[list[tuple[int, int]]]:
    """0-based support of each DFT layer, in product order."""
    return [L.support() for L in dft_layers(k)]


def butterfly_sample(k: int, seed: int = 0, labels=None) -> tuple[list[Matrix], Matrix]:
    """Random layers on the butterfly support and their exact product.

    With ``labels`` set to a scalar, every supported entry takes that value
    instead of a random nonzero rational.
    """
    n = 1 << k
    rng = random.Random(seed)
    layers = []
    for supp in butterfly_support(k):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, j in supp:
            rows[i][j] = random_rational(rng) if labels is None else Fraction(labels)
        layers.append(Matrix(rows))
    prod = layers[0]
    for L in layers[1:]:
        prod = prod @ L
    return layers, prod


def butterfly_jacobian_rank(k: int, seed: int = 0) -> int:
    """Rank of the differential of (S_1, ..., S_k) -> S_1 ... S_k at a seeded
    point, the parameters being the entries on the butterfly support.

    The derivative in the (a, b) entry of S_t is the outer product of column a
    of S_1 ... S_{t-1} with row b of S_{t+1} ... S_k.
    """
    from .matrix import rank

    layers, _ = butterfly_sample(k, seed)
    n = 1 << k
    eye = Matrix.identity(n)
    left = [eye]
    for L in layers:
        left.append(left[-1] @ L)
    right = [eye]
    for L in reversed(layers):
        right.append(L @ right[-1])
    right.reverse()  # right[t] = S_{t+1} ... S_k (0-based layers t..k-1)
    cols = []
    for t, L in enumerate(layers):
        P, Q = left[t], right[t + 1]
        for a, b in L.support():
            cols.append([P[i, a] * Q[b, j] for i in range(n) for j in range(n)])
    # rows of ``cols`` are the Jacobian's columns; rank is transpose-invariant
    return rank(Matrix(cols))
