"""Supports, sampled points of joins J(sigma_r, L^S), and their dimension."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .families import random_rational
from .matrix import Matrix, rank

__all__ = [
    "Support",
    "JoinDimension",
    "parse_support",
    "sample_join_point",
    "sample_low_rank",
    "join_dimension",
    "expected_join_dim",
]


@dataclass(frozen=True)
class Support:
    """A set S of 1-based positions in an n x n matrix."""

    n: int
    positions: frozenset

    def __init__(self, n: int, positions: Iterable[tuple[int, int]] = ()):
        pos = [tuple(p) for p in positions]
        for i, j in pos:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"position ({i},{j}) outside a {n}x{n} matrix")
        if len(set(pos)) != len(pos):
            raise ValueError("repeated position in support")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "positions", frozenset(pos))

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(sorted(self.positions))

    def __contains__(self, p):
        return tuple(p) in self.positions

    @property
    def s(self) -> int:
        return len(self.positions)

    def complement(self) -> Support:
        return Support(self.n, [(i, j) for i in range(1, self.n + 1)
                                for j in range(1, self.n + 1) if (i, j) not in self.positions])

    def row_counts(self) -> list[int]:
        c = [0] * self.n
        for i, _ in self.positions:
            c[i - 1] += 1
        return c

    def col_counts(self) -> list[int]:
        c = [0] * self.n
        for _, j in self.positions:
            c[j - 1] += 1
        return c

    def is_scattered(self) -> bool:
        """No two positions share a row or a column."""
        return max(self.row_counts() + self.col_counts() + [0]) <= 1

    def with_n(self, n: int) -> Support:
        return Support(n, self.positions)

    def __str__(self):
        return ";".join(f"{i},{j}" for i, j in self)

    @classmethod
    def diagonal(cls, n: int, s: int | None = None) -> Support:
        return cls(n, [(i, i) for i in range(1, (n if s is None else s) + 1)])


def parse_support(text: str, n: int) -> Support:
    """Parse "1,1;2,2;3,3" (1-based row,col pairs)."""
    text = text.strip()
    if not text:
        return Support(n)
    pos = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad support entry {chunk!r}; expected 'row,col'")
        pos.append((int(parts[0]), int(parts[1])))
    return Support(n, pos)


def sample_low_rank(n: int, r: int, rng: random.Random, bound: int = 7) -> tuple[list, list]:
    C = [[random_rational(rng, bound) for _ in range(r)] for _ in range(n)]
    D = [[random_rational(rng, bound) for _ in range(n)] for _ in range(r)]
    return C, D


def sample_join_point(n: int, r: int, S: Support, seed: int = 0) -> Matrix:
    """C D + sum_{(i,j) in S} e_ij E_ij with seeded small rationals."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if S.n != n:
        raise ValueError(f"support is for n={S.n}, not {n}")
    rng = random.Random(seed)
    C, D = sample_low_rank(n, r, rng)
    rows = [[sum((C[a][k] * D[k][b] for k in range(r)), Fraction(0)) for b in range(n)]
            for a in range(n)]
    for i, j in S:
        rows[i - 1][j - 1] += random_rational(rng)
    return Matrix(rows)


JACOBIAN_BOUND = 10_007


def expected_join_dim(n: int, r: int, s: int) -> int:
    return min(r * (2 * n - r) + s, n * n)


@dataclass(frozen=True)
class JoinDimension:
    rank: int
    expected: int

    @property
    def defective(self) -> bool:
        return self.rank < self.expected


def join_dimension(n: int, r: int, S: Support, seed: int = 0) -> JoinDimension:
    """Rank of the Jacobian of (C, D, e) -> C D + sum e E at a seeded point.

    This is the dimension of the affine cone over J(sigma_r, L^S) for all but
    a measure-zero set of seeds, and a lower bound always.  The point is drawn
    from a wide range of rationals: with tiny entries accidental vanishing
    minors (and so a spurious rank drop) are common.
    """
    if S.n != n:
        raise ValueError(f"support is for n={S.n}, not {n}")
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}")
    rng = random.Random(seed)
    C, D = sample_low_rank(n, r, rng, JACOBIAN_BOUND)
    pos = list(S)
    ncols = 2 * n * r + len(pos)
    jac = []
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * ncols
            # d/dC[a][k] = D[k][b]; d/dD[k][b] = C[a][k]
            for k in range(r):
                row[a * r + k] = D[k][b]
                row[n * r + k * n + b] = C[a][k]
            for t, (i, j) in enumerate(pos):
                if (i - 1, j - 1) == (a, b):
                    row[2 * n * r + t] = Fraction(1)
            jac.append(row)
    rk = rank(Matrix(jac)) if ncols else 0
    return JoinDimension(rk, expected_join_dim(n, r, len(pos)))
