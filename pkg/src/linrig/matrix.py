"""Dense exact matrices over Q or a cyclotomic field.

Row/column positions are 0-based in the Python API (``M[i, j]``); index
sets passed to :func:`minor` and friends are 1-based, matching the usual
``M^I_J`` notation.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from math import lcm
from numbers import Rational
from typing import Callable, Iterable, Sequence

from .cyclotomic import Cyclotomic, coerce, euler_phi

__all__ = [
    "Matrix",
    "index_set",
    "complement",
    "rank",
    "det",
    "minor",
    "complementary_minor",
    "all_minors_nonzero",
    "solve",
    "matrix_to_json",
    "matrix_from_json",
    "dumps",
    "loads",
]


def _norm(v):
    if isinstance(v, Cyclotomic):
        return v
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"unsupported matrix entry {v!r}")


class Matrix:
    """Immutable n x m matrix of exact scalars of one kind."""

    __slots__ = ("nrows", "ncols", "rows", "conductor")

    def __init__(self, rows: Iterable[Iterable], conductor: int | None = None):
        data = [tuple(_norm(v) for v in row) for row in rows]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        cond = conductor
        for r in data:
            for v in r:
                if isinstance(v, Cyclotomic):
                    if cond is None:
                        cond = v.m
                    elif v.m != cond:
                        raise ValueError(f"mixed conductors {cond} and {v.m}")
        if cond is not None:
            data = [
                tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(cond, v) for v in r)
                for r in data
            ]
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(data)
        self.conductor = cond

    # constructors
    @classmethod
    def identity(cls, n: int, conductor: int | None = None) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], conductor)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, conductor: int | None = None) -> Matrix:
        return cls([[0] * (n if m is None else m) for _ in range(n)], conductor)

    @classmethod
    def from_function(cls, n: int, m: int, f: Callable[[int, int], object],
                      conductor: int | None = None) -> Matrix:
        return cls([[f(i, j) for j in range(m)] for i in range(n)], conductor)

    # basic protocol
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def kind(self) -> str:
        return "rational" if self.conductor is None else "cyclotomic"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, v in enumerate(r):
                yield i, j, v

    def nnz(self) -> int:
        return sum(1 for _, _, v in self.entries() if v != 0)

    def support(self) -> list[tuple[int, int]]:
        """0-based positions of nonzero entries, row-major."""
        return [(i, j) for i, j, v in self.entries() if v != 0]

    # arithmetic
    def _check_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                      self.conductor or other.conductor)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                      self.conductor or other.conductor)

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], self.conductor)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, self.conductor or other.conductor)

    def scale(self, c) -> Matrix:
        return Matrix([[c * a for a in r] for r in self.rows],
                      self.conductor or getattr(c, "m", None))

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.rows)) if self.rows else [], self.conductor)

    T = property(transpose)

    def conjugate(self) -> Matrix:
        if self.conductor is None:
            return self
        return Matrix([[a.conjugate() for a in r] for r in self.rows], self.conductor)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        """0-based row and column selections."""
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.conductor)

    def with_entries(self, changes: dict[tuple[int, int], object]) -> Matrix:
        data = [list(r) for r in self.rows]
        for (i, j), v in changes.items():
            data[i][j] = v
        return Matrix(data, self.conductor)

    def coerce(self, m: int) -> Matrix:
        if self.conductor is None:
            return Matrix(self.rows, m)
        return Matrix([[coerce(a, m) for a in r] for r in self.rows], m)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )


# ---------------------------------------------------------------- index sets

def index_set(idx: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a 1-based index set: strictly increasing, within [1, n]."""
    t = tuple(idx)
    if any(not isinstance(i, int) for i in t):
        raise TypeError(f"indices must be ints: {t}")
    if any(b <= a for a, b in zip(t, t[1:])):
        raise ValueError(f"index set must be strictly increasing: {t}")
    if t and (t[0] < 1 or t[-1] > n):
        raise ValueError(f"index out of range 1..{n}: {t}")
    return t


def complement(idx: Iterable[int], n: int) -> tuple[int, ...]:
    s = set(idx)
    return tuple(i for i in range(1, n + 1) if i not in s)


# ---------------------------------------------------------------- elimination

def _integer_rows(M: Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row of a rational matrix to integers; returns rows and the
    product of the scale factors."""
    out = []
    scale = Fraction(1)
    for r in M.rows:
        d = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * d) for v in r])
        scale *= d
    return out, scale


def _bareiss(a: list[list], exact_div: Callable) -> tuple[int, int, list[list]]:
    """In-place fraction-free elimination with first-nonzero pivoting.

    Returns (rank, permutation sign, reduced rows).
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    r = 0
    sign = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
            sign = -sign
        piv = a[r][c]
        div = exact_div(prev)
        rowr = a[r]
        for i in range(r + 1, nrows):
            rowi = a[i]
            f = rowi[c]
            for j in range(c + 1, ncols):
                rowi[j] = div(piv * rowi[j] - f * rowr[j])
            rowi[c] = 0
        prev = piv
        r += 1
    return r, sign, a


def _int_div(d):
    if d == 1:
        return lambda x: x

    def f(x):
        q, rem = divmod(x, d)
        assert rem == 0, "Bareiss division was not exact"
        return q
    return f


def _field_div(d):
    if isinstance(d, int) and d == 1:
        return lambda x: x
    inv = 1 / d
    return lambda x: x * inv


def rank(M: Matrix) -> int:
    """Exact rank by Bareiss elimination."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if M.conductor is None:
        rows, _ = _integer_rows(M)
        return _bareiss(rows, _int_div)[0]
    return _bareiss([list(r) for r in M.rows], _field_div)[0]


def _det_small(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return None


def det(M: Matrix):
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    small = _det_small(M.rows)
    if small is not None:
        return small
    n = M.nrows
    if M.conductor is None:
        rows, scale = _integer_rows(M)
        r, sign, red = _bareiss(rows, _int_div)
        if r < n:
            return Fraction(0)
        return Fraction(sign * red[-1][-1]) / scale
    r, sign, red = _bareiss([list(x) for x in M.rows], _field_div)
    if r < n:
        return Cyclotomic.zero(M.conductor)
    return red[-1][-1] * sign


def minor(M: Matrix, I: Sequence[int], J: Sequence[int]):
    """Determinant of the submatrix on 1-based rows I and columns J."""
    I = index_set(I, M.nrows)
    J = index_set(J, M.ncols)
    if len(I) != len(J):
        raise ValueError(f"minor needs |I| = |J|, got {len(I)} and {len(J)}")
    sub = [[M.rows[i - 1][j - 1] for j in J] for i in I]
    small = _det_small(sub)
    if small is not None:
        if not sub and M.conductor is not None:
            return Cyclotomic.one(M.conductor)
        return small
    return det(Matrix(sub, M.conductor))


def complementary_minor(M: Matrix, I: Sequence[int], J: Sequence[int]):
    """Delta^I_J: the minor on the complements of I and J."""
    if M.nrows != M.ncols:
        raise ValueError("complementary minors need a square matrix")
    n = M.nrows
    I = index_set(I, n)
    J = index_set(J, n)
    if len(I) != len(J):
        raise ValueError(f"|I| = {len(I)} but |J| = {len(J)}")
    return minor(M, complement(I, n), complement(J, n))


def all_minors_nonzero(M: Matrix, r: int) -> bool:
    """True iff every r x r minor of M is nonzero (exhaustive)."""
    if not 1 <= r <= min(M.nrows, M.ncols):
        raise ValueError(f"minor size {r} out of range for {M.shape}")
    for I in combinations(range(1, M.nrows + 1), r):
        for J in combinations(range(1, M.ncols + 1), r):
            if minor(M, I, J) == 0:
                return False
    return True


def solve(A: Matrix, b: Sequence) -> list | None:
    """One exact solution x of A x = b, or None when inconsistent.

    Free variables are set to zero.  Plain Gauss-Jordan over the field.
    """
    n, m = A.shape
    aug = [list(A.rows[i]) + [_norm(b[i]) if not isinstance(b[i], Cyclotomic) else b[i]]
           for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[p], aug[r] = aug[r], aug[p]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    if any(aug[i][m] != 0 for i in range(r, n)):
        return None
    zero = Fraction(0) if A.conductor is None else Cyclotomic.zero(A.conductor)
    x = [zero] * m
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][m]
    return x


# ---------------------------------------------------------------- JSON

def _scalar_to_json(v):
    if isinstance(v, Cyclotomic):
        return [str(c) for c in v.coeffs]
    return str(v)


def _scalar_from_json(x, conductor: int | None):
    if conductor is None:
        if not isinstance(x, (str, int)):
            raise ValueError(f"rational scalar must be a string, got {x!r}")
        return Fraction(x)
    if isinstance(x, list):
        return Cyclotomic(conductor, [Fraction(c) for c in x])
    raise ValueError(f"cyclotomic scalar must be a list of {euler_phi(conductor)} strings")


def matrix_to_json(M: Matrix) -> dict:
    d = {"n": M.nrows, "m": M.ncols, "scalar": M.kind}
    if M.conductor is not None:
        d["conductor"] = M.conductor
    d["entries"] = [[_scalar_to_json(v) for v in r] for r in M.rows]
    return d


def matrix_from_json(d: dict) -> Matrix:
    try:
        n, m, kind, entries = d["n"], d["m"], d["scalar"], d["entries"]
    except KeyError as e:
        raise ValueError(f"matrix JSON missing key {e}") from None
    if kind not in ("rational", "cyclotomic"):
        raise ValueError(f"unknown scalar kind {kind!r}")
    cond = d.get("conductor") if kind == "cyclotomic" else None
    if kind == "cyclotomic" and not isinstance(cond, int):
        raise ValueError("cyclotomic matrix JSON needs an integer conductor")
    if len(entries) != n or any(len(r) != m for r in entries):
        raise ValueError("entries do not match declared shape")
    M = Matrix([[_scalar_from_json(x, cond) for x in r] for r in entries], cond)
    if n == 0:
        M.ncols = m
    return M


def dumps(M: Matrix) -> str:
    return json.dumps(matrix_to_json(M))


def loads(s: str) -> Matrix:
    return matrix_from_json(json.loads(s))
