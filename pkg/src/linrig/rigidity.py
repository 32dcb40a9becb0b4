"""Rigidity bounds: explicit change constructions (upper side), hitting-set
and threshold certificates (lower side), and exact deciders for maximal
border rigidity when r = 1 or r = n - 2."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import ceil, isqrt

from .certificates import Cycle, enumerate_cycles, nm2_equation
from .cyclotomic import Cyclotomic, root_of_unity
from .matrix import Matrix, minor, rank, solve
from .minorpoly import evaluate_poly

__all__ = [
    "RigidityBound",
    "EigenResult",
    "DeciderResult",
    "Threshold",
    "verify_changes",
    "schur_upper",
    "eigen_upper",
    "cdft_upper",
    "max_border_rigid_r1",
    "max_border_rigid_nm2",
    "lower_hitting",
    "min_hitting_set",
    "shokrollahi_threshold",
    "border_membership_upper",
    "is_transpose_cycle",
    "R1_MAX_N",
]

R1_MAX_N = 6


@dataclass
class RigidityBound:
    """Rig_r(M) lies in [lower, upper]; ``upper`` is None when unknown.

    ``changes`` maps 0-based positions to new values and realizes ``upper``.
    """

    r: int
    lower: int = 0
    upper: int | None = None
    changes: dict | None = None
    certificate: str | None = None
    decider: str = "interval"
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    def to_json(self) -> dict:
        from .matrix import _scalar_to_json
        d = {"r": self.r, "lower": self.lower, "upper": self.upper, "decider": self.decider}
        if self.changes is not None:
            d["witness_upper"] = [
                {"row": i + 1, "col": j + 1, "value": _scalar_to_json(v)}
                for (i, j), v in sorted(self.changes.items())
            ]
        if self.certificate is not None:
            d["witness_lower"] = self.certificate
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def verify_changes(M: Matrix, r: int, changes: dict) -> bool:
    """rank(M with the changes applied) <= r and every change is a real change."""
    if any(M[p] == v for p, v in changes.items()):
        return False
    return rank(M.with_entries(changes)) <= r


def _independent_rows(M: Matrix, want: int) -> list[int]:
    rows: list[int] = []
    if want == 0:
        return rows
    for i in range(M.nrows):
        trial = rows + [i]
        if rank(M.submatrix(trial, range(M.ncols))) == len(trial):
            rows = trial
            if len(rows) == want:
                break
    return rows


# ---------------------------------------------------------------- upper bounds

def schur_upper(M: Matrix, r: int) -> RigidityBound:
    """Overwrite the block complementary to an invertible r x r submatrix by
    the value that kills its Schur complement.  At most (n-r)^2 changes."""
    n, m = M.shape
    if not 0 <= r <= min(n, m):
        raise ValueError(f"r={r} out of range")
    if rank(M) <= r:
        return RigidityBound(r, 0, 0, {}, decider="interval")
    R = _independent_rows(M, r)
    if len(R) < r:
        raise ValueError("no invertible r x r submatrix")
    C = _independent_rows(M.submatrix(R, range(m)).T, r)
    base = M.submatrix(R, C)
    if rank(base) < r:
        raise ValueError("no invertible r x r submatrix")
    changes = {}
    other_cols = [j for j in range(m) if j not in C]
    coords = {j: solve(base, [M[i, j] for i in R]) if r else [] for j in other_cols}
    for i in range(n):
        if i in R:
            continue
        for j in other_cols:
            v = sum((M[i, c] * y for c, y in zip(C, coords[j])), 0 * M[i, j])
            if v != M[i, j]:
                changes[(i, j)] = v
    assert verify_changes(M, r, changes)
    return RigidityBound(r, 0, len(changes), changes)


@dataclass(frozen=True)
class EigenResult:
    eigenvalue: object
    multiplicity: int
    bound: RigidityBound
    nontrivial: bool  # multiplicity k with k^2 > n
    multiplicities: tuple = ()


def eigen_upper(M: Matrix, candidates) -> EigenResult:
    """Best candidate eigenvalue: M - lambda I has rank n - k, so changing the
    diagonal puts M in R[n, n-k, n]."""
    n = M.nrows
    if M.nrows != M.ncols:
        raise ValueError("eigen_upper needs a square matrix")
    if not candidates:
        raise ValueError("need at least one candidate eigenvalue")
    mults = []
    for lam in candidates:
        shifted = M - Matrix.identity(n, M.conductor).scale(lam)
        mults.append(n - rank(shifted))
    best = max(range(len(mults)), key=lambda t: (mults[t], -t))
    lam, k = candidates[best], mults[best]
    changes = {}
    if k > 0:
        for i in range(n):
            v = M[i, i] - lam
            if v != M[i, i]:
                changes[(i, i)] = v
    else:
        lam = None
    bound = RigidityBound(n - k, 0, len(changes), changes, certificate=None)
    assert verify_changes(M, n - k, changes)
    return EigenResult(lam, k, bound, k * k > n, tuple(mults))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, isqrt(p) + 1))


def cdft_upper(p: int) -> tuple[Matrix, RigidityBound]:
    """Rank-one completion of M(omega_p) with p^2 - 3p + 3 changes: (1,1) becomes
    w^-1 and the lower-right (p-1) x (p-1) block becomes constant w."""
    if not _is_prime(p):
        raise ValueError(f"p={p} is not prime")
    from .families import dft_curve
    w = root_of_unity(p)
    M = dft_curve(Fraction(1), w, p)
    winv = w.inverse() if isinstance(w, Cyclotomic) else 1 / w
    changes = {}
    if M[0, 0] != winv:
        changes[(0, 0)] = winv
    for i in range(1, p):
        for j in range(1, p):
            if M[i, j] != w:
                changes[(i, j)] = M[i, j] * 0 + w
    assert verify_changes(M, 1, changes)
    return M, RigidityBound(1, 0, len(changes), changes)


def border_membership_upper(M: Matrix, r: int, s_max: int) -> RigidityBound:
    """Search for at most s_max changes that bring the rank down to r.

    For each choice of r unchanged rows, every other row is moved into their
    span by changing as few of its entries as possible (solving exact linear
    systems on the unchanged columns).  The transpose is tried as well.
    Sound: a reported witness is verified.  Not complete: witnesses that
    change some of every r-subset of rows are missed.
    """
    n, m = M.shape
    if r >= min(n, m) or rank(M) <= r:
        return RigidityBound(r, 0, 0, {}, notes=["rank already <= r"])
    best = None
    for transposed in (False, True):
        A = M.T if transposed else M
        found = _row_span_search(A, r, s_max if best is None else min(s_max, len(best) - 1))
        if found is not None and (best is None or len(found) < len(best)):
            best = {(j, i): v for (i, j), v in found.items()} if transposed else found
    if best is None:
        return RigidityBound(r, 0, None, None,
                             notes=[f"no witness with <= {s_max} changes (search is not complete)"])
    assert verify_changes(M, r, best)
    return RigidityBound(r, 0, len(best), best)


def _row_span_search(A: Matrix, r: int, budget: int) -> dict | None:
    n, m = A.shape
    best = None
    for R in combinations(range(n), r):
        basis = A.submatrix(R, range(m))
        total: dict = {}
        ok = True
        for i in range(n):
            if i in R:
                continue
            fix = _cheapest_row_fix(A, basis, i, budget - len(total))
            if fix is None:
                ok = False
                break
            total.update(fix)
        if ok and (best is None or len(total) < len(best)):
            best = total
            budget = len(total) - 1
            if budget < 0:
                break
    return best


def _cheapest_row_fix(A: Matrix, basis: Matrix, i: int, budget: int) -> dict | None:
    m = A.ncols
    r = basis.nrows
    for t in range(0, max(budget, -1) + 1):
        for T in combinations(range(m), t):
            keep = [j for j in range(m) if j not in T]
            if r == 0:
                if all(A[i, j] == 0 for j in keep):
                    fix = {(i, j): A[i, j] * 0 for j in T if A[i, j] != 0}
                    if len(fix) == t:
                        return fix
                continue
            sub = basis.submatrix(range(r), keep).T  # unknowns: coefficients of basis rows
            c = solve(sub, [A[i, j] for j in keep])
            if c is None:
                continue
            fix = {}
            for j in T:
                v = sum((c[k] * basis[k, j] for k in range(r)), A[i, j] * 0)
                if v != A[i, j]:
                    fix[(i, j)] = v
            if len(fix) == t:
                return fix
    return None


# ---------------------------------------------------------------- deciders

@dataclass(frozen=True)
class DeciderResult:
    result: bool
    witness: object = None
    checked: int = 0
    stage: str = ""

    def __bool__(self):
        return self.result


def _entry(M, i, j):
    return M[i - 1, j - 1]


def max_border_rigid_r1(M: Matrix) -> DeciderResult:
    """M is maximally 1-border rigid iff no cycle binomial vanishes on it.

    Cycles are visited by length, then row set, column set and edge list, so
    the reported witness is the first failing one in that order.
    """
    n = M.nrows
    if M.shape != (n, n) or n < 2:
        raise ValueError("need a square matrix with n >= 2")
    if n > R1_MAX_N:
        raise ValueError(f"n={n} exceeds the enumeration guard {R1_MAX_N}")
    checked = 0
    for cyc in enumerate_cycles(n):
        checked += 1
        k = cyc.k
        a = b = 1
        for t in range(k):
            a = a * _entry(M, cyc.rows[t], cyc.cols[t])
            b = b * _entry(M, cyc.rows[t], cyc.cols[t - 1])
        if a == b:
            return DeciderResult(False, cyc, checked, "cycle")
    return DeciderResult(True, None, checked, "cycle")


def is_transpose_cycle(cyc: Cycle) -> bool:
    """The two monomials of the binomial are transposes of each other."""
    k = cyc.k
    m1 = {(cyc.rows[t], cyc.cols[t]) for t in range(k)}
    m2 = {(cyc.rows[t], cyc.cols[t - 1]) for t in range(k)}
    return {(j, i) for i, j in m1} == m2


def max_border_rigid_nm2(M: Matrix) -> DeciderResult:
    """M is maximally (n-2)-border rigid iff no (n-1)-minor vanishes and no
    degree 2n-3 equation of three scattered entries vanishes."""
    n = M.nrows
    if M.shape != (n, n) or n < 4:
        raise ValueError("need a square matrix with n >= 4")
    cache: dict = {}
    checked = 0
    idx = range(1, n + 1)
    for I in combinations(idx, n - 1):
        for J in combinations(idx, n - 1):
            checked += 1
            v = minor(M, I, J)
            cache[(I, J)] = v
            if v == 0:
                return DeciderResult(False, ("minor", I, J), checked, "minor")
    for rows in combinations(idx, 3):
        for cols3 in combinations(idx, 3):
            for cols in permutations(cols3):
                entries = sorted(zip(rows, cols))
                checked += 1
                P = nm2_equation(n, entries)
                if evaluate_poly(P, M, cache) == 0:
                    return DeciderResult(False, ("equation", tuple(entries)), checked, "equation")
    return DeciderResult(True, None, checked, "equation")


# ---------------------------------------------------------------- lower bounds

def min_hitting_set(sets: list[int], cap: int | None = None) -> tuple[int, int]:
    """Smallest number of bits meeting every bitmask in ``sets``.

    Exact branch and bound; returns (size, mask).  With ``cap`` the search
    stops once it knows the answer is >= cap and returns (cap, 0).
    """
    sets = sorted(set(sets), key=lambda s: (bin(s).count("1"), s))
    if not sets:
        return 0, 0
    if any(s == 0 for s in sets):
        raise ValueError("empty set cannot be hit")
    # greedy incumbent
    chosen, rest = 0, list(sets)
    while rest:
        counts: dict = {}
        for s in rest:
            b = s
            while b:
                low = b & -b
                counts[low] = counts.get(low, 0) + 1
                b ^= low
        bit = max(counts, key=lambda x: (counts[x], -x))
        chosen |= bit
        rest = [s for s in rest if not s & bit]
    best = [bin(chosen).count("1"), chosen]
    limit = best[0] if cap is None else min(best[0], cap)
    if cap is not None and best[0] >= cap:
        best = [cap, 0]

    def packing_bound(unhit):
        used, lb = 0, 0
        for s in unhit:
            if not s & used:
                used |= s
                lb += 1
        return lb

    def rec(mask, count, unhit):
        if not unhit:
            if count < best[0]:
                best[0], best[1] = count, mask
            return
        if count + packing_bound(unhit) >= best[0]:
            return
        s = unhit[0]
        b = s
        while b:
            low = b & -b
            b ^= low
            rec(mask | low, count + 1, [u for u in unhit if not u & low])

    if limit > 0:
        rec(0, 0, sets)
    return best[0], best[1]


def lower_hitting(M: Matrix, r: int, s_max: int) -> RigidityBound:
    """Rig_r(M) >= h where h is the least number of positions meeting every
    nonzero (r+1)-minor: positions outside the change set keep such a minor
    nonzero.  Reported as min(h, s_max + 1)."""
    n, m = M.shape
    if r >= min(n, m):
        return RigidityBound(r, 0, 0, {}, certificate="rank bound")
    sets = []
    for I in combinations(range(1, n + 1), r + 1):
        for J in combinations(range(1, m + 1), r + 1):
            if minor(M, I, J) != 0:
                mask = 0
                for i in I:
                    for j in J:
                        mask |= 1 << ((i - 1) * m + (j - 1))
                sets.append(mask)
    h, _ = min_hitting_set(sets, cap=s_max + 1)
    return RigidityBound(r, min(h, s_max + 1), None, None,
                         certificate=f"hitting set of {len(sets)} nonzero {r + 1}-minors has size {h}"
                         + (" or more" if h > s_max else ""))


@dataclass(frozen=True)
class Threshold:
    """Rational enclosure lo <= n^2/(4(r+1)) log2(n/r) <= hi."""

    lo: Fraction
    hi: Fraction
    rigidity_lower: int  # ceil(lo): valid when all r-minors are nonzero
    hypothesis_met: bool  # r >= (log2 n)^2


def shokrollahi_threshold(n: int, r: int, prec: int = 64) -> Threshold:
    """n^2 / (4 (r + 1)) * log2(n / r) enclosed with interval arithmetic."""
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got n={n}, r={r}")
    from mpmath import iv

    iv.prec = prec
    coef = Fraction(n * n, 4 * (r + 1))
    ratio = Fraction(n, r)
    if ratio.denominator == 1 and ratio.numerator & (ratio.numerator - 1) == 0:
        log2 = Fraction(ratio.numerator.bit_length() - 1)
        lo = hi = coef * log2
    else:
        val = iv.log(iv.mpf(n) / r) / iv.log(2)
        a, b = _endpoints(val)
        lo, hi = coef * a, coef * b
    lg = iv.log(iv.mpf(n)) / iv.log(2)
    hyp = Fraction(r) >= _endpoints(lg * lg)[1]
    return Threshold(lo, hi, int(ceil(lo)), hyp)


def _endpoints(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval."""
    from mpmath.libmp import to_rational

    a, b = x._mpi_
    return Fraction(*to_rational(a)), Fraction(*to_rational(b))
