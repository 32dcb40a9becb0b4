"""Polynomials that are sums of products of minors.

A factor is a pair of 1-based index sets (I, J).  In the ``"delta"``
representation it stands for Delta^I_J = M^{I^c}_{J^c}, the minor on the
complementary rows and columns; reinterpreting the same symbols on a
bigger matrix is exactly the propagation P -> P_q.  In the ``"entry"``
representation a factor (I, J) is the plain minor M^I_J, which is what the
cycle binomials use (1x1 factors, never propagated).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .matrix import Matrix, complement, index_set, minor

__all__ = [
    "MinorPolynomial",
    "Weight",
    "m_term",
    "from_m_terms",
    "evaluate_poly",
    "weight",
    "is_weight_vector",
    "propagate",
    "poly_to_json",
    "poly_from_json",
]

DELTA = "delta"
ENTRY = "entry"

Factor = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class Weight:
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __str__(self):
        return f"{_exp_notation(self.lam)} x {_exp_notation(self.mu)}"


def _exp_notation(v: Sequence[int]) -> str:
    parts = []
    for j, c in enumerate(v, start=1):
        if c == 1:
            parts.append(str(j))
        elif c > 1:
            parts.append(f"{j}^{c}")
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class MinorPolynomial:
    n: int
    terms: tuple  # of (Fraction coeff, tuple of factors)
    representation: str = DELTA
    name: str = ""

    def __post_init__(self):
        if self.representation not in (DELTA, ENTRY):
            raise ValueError(f"unknown representation {self.representation!r}")
        clean = []
        for coeff, factors in self.terms:
            fs = []
            for I, J in factors:
                I = index_set(I, self.n)
                J = index_set(J, self.n)
                if len(I) != len(J):
                    raise ValueError(f"factor with |I|={len(I)} != |J|={len(J)}")
                fs.append((I, J))
            clean.append((Fraction(coeff), tuple(fs)))
        object.__setattr__(self, "terms", tuple(clean))

    def m_sets(self, factor: Factor) -> Factor:
        """Row and column sets of the minor a factor denotes."""
        I, J = factor
        if self.representation == ENTRY:
            return I, J
        return complement(I, self.n), complement(J, self.n)

    @property
    def factor_counts(self) -> set[int]:
        return {len(fs) for _, fs in self.terms}

    @property
    def propagatable(self) -> bool:
        return self.representation == DELTA and len(self.factor_counts) <= 1

    def term_degree(self, k: int) -> int:
        return sum(len(self.m_sets(f)[0]) for f in self.terms[k][1])

    @property
    def degree(self) -> int:
        degs = {self.term_degree(k) for k in range(len(self.terms))}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous polynomial, term degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        sym = "Delta" if self.representation == DELTA else "M"
        for coeff, fs in self.terms:
            body = "*".join(f"{sym}^{{{''.join(map(str, I))}}}_{{{''.join(map(str, J))}}}"
                            for I, J in fs) or "1"
            c = "" if coeff == 1 else "-" if coeff == -1 else f"{coeff}*"
            out.append(f"{c}{body}")
        return " + ".join(out).replace("+ -", "- ")


def m_term(n: int, coeff, *minors: tuple[Iterable[int], Iterable[int]]):
    """A term given by M-index sets, converted to Delta symbols."""
    return (Fraction(coeff), tuple((complement(I, n), complement(J, n)) for I, J in minors))


def from_m_terms(n: int, terms: Iterable, name: str = "") -> MinorPolynomial:
    """Build a delta-represented polynomial from terms (coeff, [(I, J), ...])
    whose factors are written as plain minors M^I_J."""
    return MinorPolynomial(n, tuple(m_term(n, c, *fs) for c, fs in terms), DELTA, name)


def evaluate_poly(P: MinorPolynomial, M: Matrix, cache: dict | None = None):
    if M.shape != (P.n, P.n):
        raise ValueError(f"polynomial lives on {P.n}x{P.n} matrices, got {M.shape}")
    cache = {} if cache is None else cache
    zero = 0 * M[0, 0] if P.n else Fraction(0)
    total = zero
    for coeff, fs in P.terms:
        val = coeff
        for f in fs:
            key = P.m_sets(f)
            v = cache.get(key)
            if v is None:
                v = minor(M, *key)
                cache[key] = v
            val = val * v
            if val == 0:
                break
        total = total + val
    return total


def weight(P: MinorPolynomial) -> list[Weight]:
    """Per-term torus weight: lam[j] counts row j over the M-row sets of a term."""
    out = []
    for _, fs in P.terms:
        lam = [0] * P.n
        mu = [0] * P.n
        for f in fs:
            I, J = P.m_sets(f)
            for i in I:
                lam[i - 1] += 1
            for j in J:
                mu[j - 1] += 1
        out.append(Weight(tuple(lam), tuple(mu)))
    return out


def is_weight_vector(P: MinorPolynomial) -> bool:
    return len(set(weight(P))) <= 1


def propagate(P: MinorPolynomial, q: int) -> MinorPolynomial:
    """Same Delta symbols read on (n+q) x (n+q) matrices; degree d -> d + f q."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    if P.representation != DELTA:
        raise ValueError("only Delta-represented polynomials propagate")
    if len(P.factor_counts) > 1:
        raise ValueError(f"factor counts differ across terms: {sorted(P.factor_counts)}")
    name = f"{P.name}_q{q}" if P.name and q else P.name
    return MinorPolynomial(P.n + q, P.terms, DELTA, name)


# ---------------------------------------------------------------- JSON

def poly_to_json(P: MinorPolynomial) -> dict:
    return {
        "n": P.n,
        "representation": P.representation,
        "terms": [
            {"coeff": str(c), "factors": [{"I": list(I), "J": list(J)} for I, J in fs]}
            for c, fs in P.terms
        ],
    }


def poly_from_json(d: dict) -> MinorPolynomial:
    try:
        terms = tuple(
            (Fraction(t["coeff"]), tuple((tuple(f["I"]), tuple(f["J"])) for f in t["factors"]))
            for t in d["terms"]
        )
        return MinorPolynomial(d["n"], terms, d.get("representation", DELTA))
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed polynomial JSON: {e}") from None


def dumps(P: MinorPolynomial) -> str:
    return json.dumps(poly_to_json(P))
