"""Explicit equations vanishing on joins J(sigma_r, L^S).

Every family here is built from the same observation: on a point A + E
with rank(A) <= r and E supported on S, a size-(r+1) minor that meets S in
a single position x0 equals (cofactor sign) * e_x0 * (the r-minor obtained
by deleting x0's row and column).  Combining two or three such minors with
the right signs cancels the unknown e's.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial
from typing import Sequence

from .joins import Support
from .matrix import complement, index_set
from .minorpoly import ENTRY, MinorPolynomial, from_m_terms

__all__ = [
    "cofactor_sign",
    "gen_two_minor",
    "gen_three_entry",
    "gen_three_minor",
    "cycle_binomial",
    "nm2_equation",
    "nm2_equations",
    "avoiding_minors",
    "minor_polynomial",
    "Cycle",
    "classify_r1_component",
    "enumerate_cycles",
    "cycle_count",
    "reduce_support",
    "NOT_A_HYPERSURFACE",
    "NOT_A_COMPONENT",
]

NOT_A_HYPERSURFACE = "not a hypersurface"
NOT_A_COMPONENT = "not a component"


def cofactor_sign(I: Sequence[int], J: Sequence[int], pos: tuple[int, int]) -> int:
    """Sign of the cofactor of entry ``pos`` inside the submatrix I x J."""
    a = list(I).index(pos[0])
    b = list(J).index(pos[1])
    return -1 if (a + b) % 2 else 1


def _block(I, J) -> set:
    return {(i, j) for i in I for j in J}


def _drop(I, x) -> tuple:
    return tuple(v for v in I if v not in set(x))


def _sets(n, *pairs):
    out = []
    for I, J in pairs:
        out.append((index_set(I, n), index_set(J, n)))
    return out


def _check_meets(S: set, I, J, expected: set, what: str):
    hit = _block(I, J) & S
    if hit != expected:
        raise ValueError(
            f"{what} meets S in {sorted(hit)}, expected exactly {sorted(expected)}")


# ---------------------------------------------------------------- families

def gen_two_minor(I, J, K, L, x0: tuple[int, int], S: Support) -> MinorPolynomial:
    """eps_K M^I_J M^{K'}_{L'} - eps_I M^K_L M^{I'}_{J'}, degree 2r+1.

    I x J and K x L are size-(r+1) blocks that each meet S only in x0; primes
    delete x0's row and column, and eps is x0's cofactor sign in each block.
    """
    n = S.n
    (I, J), (K, L) = _sets(n, (I, J), (K, L))
    if len(I) != len(J) or len(K) != len(L) or len(I) != len(K):
        raise ValueError("both blocks must be square of the same size")
    if (I, J) == (K, L):
        raise ValueError("the two blocks must differ")
    x0 = tuple(x0)
    if x0 not in S:
        raise ValueError(f"x0={x0} is not in S")
    Sset = set(S.positions)
    _check_meets(Sset, I, J, {x0}, "block (I,J)")
    _check_meets(Sset, K, L, {x0}, "block (K,L)")
    eI = cofactor_sign(I, J, x0)
    eK = cofactor_sign(K, L, x0)
    Ip, Jp = _drop(I, [x0[0]]), _drop(J, [x0[1]])
    Kp, Lp = _drop(K, [x0[0]]), _drop(L, [x0[1]])
    return from_m_terms(n, [
        (eK, [(I, J), (Kp, Lp)]),
        (-eI, [(K, L), (Ip, Jp)]),
    ], name="s1")


def gen_three_entry(I, J, K, L, entries: Sequence[tuple[int, int]], n: int | None = None,
                    ) -> MinorPolynomial:
    """Three entries x1, x2, x3 with distinct rows and columns inside one
    size-(r+2) block R x C = I x J, degree 2r+1.

    With A = M^{R-i3}_{C-j2}, B = M^{R-i1,i2}_{C-j1,j3}, C' = M^{R-i2}_{C-j3} and
    D = M^{R-i1,i3}_{C-j1,j2} the equation is eps_C' A B - eps_A C' D, where
    the eps are x1's cofactor signs.  The block (K, L) must coincide with
    (I, J); two different blocks do not give an identity on the join.
    """
    n = max(list(I) + list(J) + [0]) if n is None else n
    (I, J), (K, L) = _sets(n, (I, J), (K, L))
    if (I, J) != (K, L):
        raise ValueError("the three-entry equation needs (I,J) = (K,L)")
    if len(I) != len(J) or len(I) < 3:
        raise ValueError("need a square block of size r+2 >= 3")
    xs = [tuple(e) for e in entries]
    if len(xs) != 3:
        raise ValueError("need exactly three entries")
    rows = {x[0] for x in xs}
    cols = {x[1] for x in xs}
    if len(rows) != 3 or len(cols) != 3:
        raise ValueError("the three entries need distinct rows and distinct columns")
    if not set(xs) <= _block(I, J):
        raise ValueError("entries must lie in the block")
    (i1, j1), (i2, j2), (i3, j3) = xs
    R, C = I, J
    A = (_drop(R, [i3]), _drop(C, [j2]))
    B = (_drop(R, [i1, i2]), _drop(C, [j1, j3]))
    Cp = (_drop(R, [i2]), _drop(C, [j3]))
    D = (_drop(R, [i1, i3]), _drop(C, [j1, j2]))
    eA = cofactor_sign(*A, (i1, j1))
    eC = cofactor_sign(*Cp, (i1, j1))
    return from_m_terms(n, [(eC, [A, B]), (-eA, [Cp, D])], name="s3")


def gen_three_minor(I, J, K, L, P, Q, entries: Sequence[tuple[int, int]], S: Support,
                    ) -> MinorPolynomial:
    """Three size-(r+1) blocks: I x J meets S in x1 only, K x L in x2 only and
    P x Q in exactly {x1, x2}, where x1, x2 share a row or a column.

    alpha M^I_J M^{K'}_{L'} M^{P'}_{Q'} + beta M^K_L M^{I'}_{J'} M^{P''}_{Q''}
    + M^P_Q M^{I'}_{J'} M^{K'}_{L'}, degree 3r+1, where (P', Q') deletes x1 and
    (P'', Q'') deletes x2 from P x Q.
    """
    n = S.n
    (I, J), (K, L), (P, Q) = _sets(n, (I, J), (K, L), (P, Q))
    if not (len(I) == len(J) == len(K) == len(L) == len(P) == len(Q)):
        raise ValueError("all three blocks must be square of one size")
    x1, x2 = (tuple(e) for e in entries)
    if x1 == x2 or (x1[0] != x2[0] and x1[1] != x2[1]):
        raise ValueError("x1 and x2 must be distinct and share a row or a column")
    Sset = set(S.positions)
    if x1 not in Sset or x2 not in Sset:
        raise ValueError("x1 and x2 must be in S")
    _check_meets(Sset, I, J, {x1}, "block (I,J)")
    _check_meets(Sset, K, L, {x2}, "block (K,L)")
    _check_meets(Sset, P, Q, {x1, x2}, "block (P,Q)")
    eI = cofactor_sign(I, J, x1)
    eK = cofactor_sign(K, L, x2)
    eP1 = cofactor_sign(P, Q, x1)
    eP2 = cofactor_sign(P, Q, x2)
    Ip = (_drop(I, [x1[0]]), _drop(J, [x1[1]]))
    Kp = (_drop(K, [x2[0]]), _drop(L, [x2[1]]))
    P1 = (_drop(P, [x1[0]]), _drop(Q, [x1[1]]))
    P2 = (_drop(P, [x2[0]]), _drop(Q, [x2[1]]))
    return from_m_terms(n, [
        (-eI * eP1, [(I, J), Kp, P1]),
        (-eK * eP2, [(K, L), Ip, P2]),
        (1, [(P, Q), Ip, Kp]),
    ], name="s2")


def cycle_binomial(I: Sequence[int], J: Sequence[int], tau: Sequence[int], n: int | None = None,
                   ) -> MinorPolynomial:
    """x^{i1}_{j1} ... x^{ik}_{jk} - x^{i1}_{j tau(1)} ... x^{ik}_{j tau(k)}.

    I and J are ordered lists of distinct indices; ``tau`` is a permutation of
    range(k) given as a list of images and must be a single k-cycle.
    """
    I, J, tau = list(I), list(J), list(tau)
    k = len(I)
    if len(J) != k or len(set(I)) != k or len(set(J)) != k:
        raise ValueError("I and J need k distinct indices each")
    if k < 2:
        raise ValueError("need k >= 2")
    if sorted(tau) != list(range(k)):
        raise ValueError(f"tau={tau} is not a permutation of 0..{k - 1}")
    seen, a = 0, 0
    while True:
        a = tau[a]
        seen += 1
        if a == 0:
            break
    if seen != k:
        raise ValueError(f"tau={tau} is not a single {k}-cycle")
    n = max(I + J) if n is None else n
    t1 = tuple(((i,), (j,)) for i, j in zip(I, J))
    t2 = tuple(((I[a],), (J[tau[a]],)) for a in range(k))
    return MinorPolynomial(n, ((1, t1), (-1, t2)), ENTRY, name=f"cycle{k}")


def minor_polynomial(n: int, I, J) -> MinorPolynomial:
    """The single minor M^I_J as a polynomial."""
    return from_m_terms(n, [(1, [(I, J)])], name="minor")


def avoiding_minors(S: Support, r: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All size-(r+1) blocks (I, J) disjoint from S, lexicographic order."""
    n = S.n
    if not 0 <= r < n:
        raise ValueError(f"need 0 <= r < n, got r={r}")
    Sset = set(S.positions)
    out = []
    for I in combinations(range(1, n + 1), r + 1):
        rows_hit = [(i, j) for (i, j) in Sset if i in I]
        for J in combinations(range(1, n + 1), r + 1):
            if not any(j in J for _, j in rows_hit):
                out.append((I, J))
    return out


# ---------------------------------------------------------------- r = n - 2

def nm2_equation(n: int, entries: Sequence[tuple[int, int]]) -> MinorPolynomial:
    """Degree 2n-3 equation for three entries in distinct rows and columns."""
    full = tuple(range(1, n + 1))
    return gen_three_entry(full, full, full, full, entries, n)


def nm2_equations(S: Support) -> tuple[str, list[MinorPolynomial]]:
    """Equations of J(sigma_{n-2}, L^S) for |S| = 3.

    Returns a tag and the list: "distinct" with the degree 2n-3 equation,
    "minor" with the unique (n-1)-minor avoiding S, or "not a hypersurface"
    with no equation when S lies on one row or column.
    """
    if S.s != 3:
        raise ValueError(f"need |S| = 3, got {S.s}")
    n = S.n
    if n < 4:
        raise ValueError("need n >= 4")
    xs = sorted(S.positions)
    rows = {x[0] for x in xs}
    cols = {x[1] for x in xs}
    if len(rows) == 1 or len(cols) == 1:
        return NOT_A_HYPERSURFACE, []
    if len(rows) == 3 and len(cols) == 3:
        return "distinct", [nm2_equation(n, xs)]
    found = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)
             if all(x[0] == a or x[1] == b for x in xs)]
    assert len(found) == 1, found
    a, b = found[0]
    return "minor", [minor_polynomial(n, complement([a], n), complement([b], n))]


# ---------------------------------------------------------------- r = 1

@dataclass(frozen=True)
class Cycle:
    """A 2k-cycle in the bipartite row/column graph.

    rows[t] is joined to cols[t] and to cols[t-1]; the two perfect matchings
    give the two monomials of the binomial.
    """

    n: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def edges(self) -> frozenset:
        k = self.k
        return frozenset([(self.rows[t], self.cols[t]) for t in range(k)]
                         + [(self.rows[t], self.cols[t - 1]) for t in range(k)])

    def binomial(self) -> MinorPolynomial:
        k = self.k
        tau = [(t - 1) % k for t in range(k)]
        return cycle_binomial(self.rows, self.cols, tau, self.n)

    def key(self) -> tuple:
        return (self.k, tuple(sorted(set(self.rows))), tuple(sorted(set(self.cols))),
                tuple(sorted(self.edges)))


def _canonical_cycle(n: int, edges: Sequence[tuple[int, int]]) -> Cycle:
    """Walk a cycle given as an edge set, starting at its smallest row."""
    adj: dict = {}
    for i, j in edges:
        adj.setdefault(("r", i), []).append(("c", j))
        adj.setdefault(("c", j), []).append(("r", i))
    start = min(v for v in adj if v[0] == "r")
    # go towards the smaller column first for a deterministic orientation
    prev, cur = start, min(adj[start])
    rows, cols = [start[1]], [cur[1]]
    while True:
        nxt = [v for v in adj[cur] if v != prev]
        nxt = nxt[0] if nxt else prev
        if nxt == start:
            break
        prev, cur = cur, nxt
        if cur[0] == "r":
            rows.append(cur[1])
        else:
            cols.append(cur[1])
    return Cycle(n, tuple(rows), tuple(cols))


def classify_r1_component(S: Support) -> Cycle | str:
    """For |S| = n^2 - 2n, the cycle whose binomial cuts out J(sigma_1, L^S).

    The join has the expected dimension exactly when the bipartite graph of
    S^c (rows and columns as vertices) is connected; with 2n edges on 2n
    vertices it then has a unique cycle.  Otherwise returns "not a component".
    """
    n = S.n
    if S.s != n * n - 2 * n:
        raise ValueError(f"need |S| = n^2 - 2n = {n * n - 2 * n}, got {S.s}")
    comp = sorted(S.complement().positions)
    parent = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(1, n + 1):
        find(("r", i))
        find(("c", i))
    for i, j in comp:
        parent[find(("r", i))] = find(("c", j))
    if len({find(v) for v in list(parent)}) != 1:
        return NOT_A_COMPONENT
    # strip leaves until only the cycle remains
    edges = set(comp)
    while True:
        deg: dict = {}
        for i, j in edges:
            deg[("r", i)] = deg.get(("r", i), 0) + 1
            deg[("c", j)] = deg.get(("c", j), 0) + 1
        leaves = [e for e in edges if deg[("r", e[0])] == 1 or deg[("c", e[1])] == 1]
        if not leaves:
            break
        edges -= set(leaves)
    return _canonical_cycle(n, sorted(edges))


def cycle_count(n: int, k: int) -> int:
    return comb(n, k) ** 2 * factorial(k) * factorial(k - 1) // 2


def enumerate_cycles(n: int, k: int | None = None):
    """All cycles of K_{n,n} (of length 2k, or all k = 2..n), each once.

    Order: by k, then row set, then column set, then sorted edge list.
    """
    ks = range(2, n + 1) if k is None else [k]
    for kk in ks:
        for I in combinations(range(1, n + 1), kk):
            for J in combinations(range(1, n + 1), kk):
                found = {}
                for rest in permutations(I[1:]):
                    rows = (I[0],) + rest
                    for cols in permutations(J):
                        c = Cycle(n, rows, cols)
                        e = c.edges
                        if e not in found:
                            found[e] = c
                for e in sorted(found, key=sorted):
                    yield found[e]


# ---------------------------------------------------------------- supports

def reduce_support(S: Support, r: int) -> Support:
    """Drop entries beyond the first n - r in any row or column of S.

    A column holding more than n - r entries of S already spans every value
    a rank-r matrix can take there once n - r of them are free, so the join
    does not change.  Repeated until no line exceeds n - r.
    """
    n = S.n
    cap = n - r
    if cap < 0:
        raise ValueError("r > n")
    pos = set(S.positions)
    changed = True
    while changed:
        changed = False
        for j in range(1, n + 1):
            col = sorted(p for p in pos if p[1] == j)
            if len(col) > cap:
                pos -= set(col[cap:])
                changed = True
        for i in range(1, n + 1):
            row = sorted(p for p in pos if p[0] == i)
            if len(row) > cap:
                pos -= set(row[cap:])
                changed = True
    return Support(n, pos)
