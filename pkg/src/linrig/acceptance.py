"""The twelve acceptance checks, each returning (passed, detail).

Shared by ``tests/test_acceptance.py`` and ``linrig selftest``.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .catalog import EXAMPLES, get_example
from .certificates import (
    NOT_A_COMPONENT,
    avoiding_minors,
    classify_r1_component,
    enumerate_cycles,
    gen_three_entry,
    minor_polynomial,
    nm2_equations,
    reduce_support,
)
from .circuits import dft_circuit, evaluate, size
from .cyclotomic import root_of_unity
from .degrees import (
    count_components_r1,
    deg_closed_Dku,
    deg_join,
    deg_join_alternating,
    deg_join_recursive,
    deg_sigma,
    deg_sigma_barnes,
    deg_sigma_product,
)
from .families import (
    CauchyParams,
    VandermondeParams,
    butterfly_jacobian_rank,
    cauchy,
    cauchy_det,
    dft,
    random_rational,
    sylvester,
    vandermonde,
)
from .joins import Support, join_dimension, sample_join_point
from .matrix import Matrix, all_minors_nonzero, det, rank
from .minorpoly import evaluate_poly, propagate, weight
from .rigidity import (
    cdft_upper,
    eigen_upper,
    is_transpose_cycle,
    max_border_rigid_nm2,
    max_border_rigid_r1,
    verify_changes,
)

N_SAMPLES = 100


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def generic_matrix(n: int, seed: int) -> Matrix:
    rng = random.Random(10_000 + seed)
    return Matrix([[random_rational(rng) for _ in range(n)] for _ in range(n)])


def generic_symmetric(n: int, seed: int) -> Matrix:
    rng = random.Random(20_000 + seed)
    a = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = random_rational(rng)
    return Matrix(a)


def vanishes_on_join(P, n, r, S, samples=N_SAMPLES) -> bool:
    return all(evaluate_poly(P, sample_join_point(n, r, S, seed)) == 0 for seed in range(samples))


# ---------------------------------------------------------------- 1-4: degrees

def c1_deg_sigma():
    bad = [(n, r) for n in range(1, 13) for r in range(1, n + 1)
           if deg_sigma_product(n, r) != deg_sigma_barnes(n, r)]
    vals = (deg_sigma(3, 1), deg_sigma(4, 2))
    ok = not bad and vals == (6, 20)
    return ok, f"route mismatches {bad}, deg_sigma(3,1)={vals[0]}, deg_sigma(4,2)={vals[1]}"


def c2_deg_join():
    bad = [(n, r, s) for n in range(2, 11) for r in range(1, n) for s in range(n + 1)
           if deg_join_recursive(n, r, s) != deg_join_alternating(n, r, s)]
    hyp = [n for n in range(4, 11) if deg_join(n, n - 2, 3) != 2 * n - 3]
    small = (deg_join(3, 1, 1), deg_join(3, 1, 2))
    ok = not bad and not hyp and small == (5, 4)
    return ok, (f"recursion/alternating mismatches {bad}, 2n-3 failures {hyp}, "
                f"deg_join(3,1,1)={small[0]}, deg_join(3,1,2)={small[1]}")


def c3_closed_forms():
    bad = [n for n in range(4, 11)
           if not deg_closed_Dku(n, 2, 1) == 2 * n - 3 == deg_join_recursive(n, n - 2, 3)]
    v = deg_closed_Dku(4, 2, 2)
    rec = deg_join_recursive(4, 2, 2)
    ok = not bad and v == 9 == rec
    return ok, f"D(n,2,1) failures {bad}, D(4,2,2)={v}, recursion={rec}"


def c4_components():
    total, per = count_components_r1(3)
    ok = total == 15 and per == {2: 9, 3: 6}
    msgs = [f"n=3 total {total} {per}"]
    for n in range(2, 6):
        _, per = count_components_r1(n)
        counted: dict = {}
        for cyc in enumerate_cycles(n):
            counted[cyc.k] = counted.get(cyc.k, 0) + 1
        if counted != per:
            ok = False
            msgs.append(f"n={n} enumeration {counted} != formula {per}")
    # the classifier, run over every support, meets each cycle exactly once as a component
    for n in (3, 4):
        cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        seen = set()
        for comp in combinations(cells, 2 * n):
            cs = set(comp)
            res = classify_r1_component(Support(n, [c for c in cells if c not in cs]))
            if res != NOT_A_COMPONENT:
                seen.add(res.edges)
        if len(seen) != count_components_r1(n)[0]:
            ok = False
        msgs.append(f"n={n} classifier finds {len(seen)} cycles")
    return ok, "; ".join(msgs)


# ---------------------------------------------------------------- 5-8: ideals

def certificate_cases():
    """(label, poly, n, r, S) for every certificate family."""
    cases = []
    for e in EXAMPLES.values():
        cases.append((e.name, e.poly, e.n, e.r, e.support))
    # s3 on a proper sub-block: n=5, r=2, block {1,2,3,4}
    blk = (1, 2, 3, 4)
    ents = [(1, 2), (2, 4), (4, 1)]
    S = Support(5, ents + [(5, 5)])
    cases.append(("s3_block", gen_three_entry(blk, blk, blk, blk, ents, 5), 5, 2, S))
    # nm2 equations in all three configurations
    for n in (4, 5, 6):
        for ents in ([(1, 1), (2, 2), (3, 3)], [(1, 3), (2, 1), (n, 2)], [(1, 1), (1, 2), (2, 3)],
                     [(1, 1), (2, 1), (2, 2)]):
            S = Support(n, ents)
            tag, polys = nm2_equations(S)
            for P in polys:
                cases.append((f"nm2_{tag}_n{n}", P, n, n - 2, S))
    # cycle binomials for r = 1 components
    for n, sc in ((3, [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 3)]),
                  (4, [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1), (4, 4), (4, 1)]),
                  (4, [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 1)])):
        S = Support(n, sc).complement()
        cyc = classify_r1_component(S)
        cases.append((f"cycle{cyc.k}_n{n}", cyc.binomial(), n, 1, S))
    S8 = EXAMPLES["s2_n4"].support
    cyc = classify_r1_component(S8)
    cases.append(("cycle_s2_support", cyc.binomial(), 4, 1, S8))
    # avoiding minors
    for n, r, S in ((3, 1, Support(3, [(1, 1)])), (5, 2, Support.diagonal(5)),
                    (6, 2, EXAMPLES["s5"].support)):
        for I, J in avoiding_minors(S, r)[:6]:
            cases.append((f"avoid_n{n}", minor_polynomial(n, I, J), n, r, S))
    return cases


def c5_certificates():
    failed = []
    cases = certificate_cases()
    for k, (label, P, n, r, S) in enumerate(cases):
        if not vanishes_on_join(P, n, r, S):
            failed.append(f"{label} nonzero on a sample")
        if evaluate_poly(P, generic_matrix(n, k)) == 0:
            failed.append(f"{label} zero on generic matrix")
    return not failed, f"{len(cases)} equations x {N_SAMPLES} samples; failures {failed}"


def c6_propagation():
    eE = get_example("eE").poly
    out = []
    ok = True
    for q in (1, 2):
        P = propagate(eE, q)
        n = 3 + q
        S = Support.diagonal(n, 3)
        z = vanishes_on_join(P, n, 1 + q, S)
        ok &= z and P.degree == 3 + 2 * q
        out.append(f"q={q}: degree {P.degree}, zeros {z}")
    return ok, "; ".join(out)


def c7_weight():
    ws = set(weight(get_example("s5").poly))
    target = ((2, 2, 2, 1, 1, 1), (2, 2, 2, 1, 1, 1))
    ok = len(ws) == 1 and (next(iter(ws)).lam, next(iter(ws)).mu) == target
    return ok, f"weights {sorted(str(w) for w in ws)}"


def _scattered(n, s, rng):
    rows = rng.sample(range(1, n + 1), s)
    cols = rng.sample(range(1, n + 1), s)
    return Support(n, list(zip(rows, cols)))


def c8_dimension():
    rng = random.Random(8)
    bad = []
    for case in range(50):
        n = rng.randint(2, 6)
        r = rng.randint(1, n - 1)
        S = _scattered(n, rng.randint(0, n), rng)
        jd = join_dimension(n, r, S, seed=case)
        if jd.rank != jd.expected:
            bad.append((n, r, str(S), jd.rank, jd.expected))
    red_bad = []
    reduced = 0
    for case in range(20):
        n = rng.randint(3, 6)
        r = rng.randint(1, n - 2)
        cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        # half the cases get a full line so the reduction has something to do
        pos = set(rng.sample(cells, rng.randint(1, n + 2)))
        if case % 2 == 0:
            c = rng.randint(1, n)
            pos |= {(i, c) for i in range(1, n + 1)}
        S = Support(n, pos)
        S2 = reduce_support(S, r)
        reduced += S2.s < S.s
        a = join_dimension(n, r, S, seed=case).rank
        b = join_dimension(n, r, S2, seed=case).rank
        if a != b:
            red_bad.append((n, r, str(S), a, b))
    ok = not bad and not red_bad
    return ok, (f"50 scattered cases, mismatches {bad}; 20 reduction cases "
                f"({reduced} reduced), mismatches {red_bad}")


# ---------------------------------------------------------------- 9-12

def c9_deciders():
    msgs = []
    ok = True
    for n in (4, 5):
        for name, M in (("Cauchy", cauchy(CauchyParams.random(n, n))),
                        ("Vandermonde", vandermonde(VandermondeParams.random(n, n)))):
            a, b = max_border_rigid_r1(M), max_border_rigid_nm2(M)
            ok &= a.result and b.result
            msgs.append(f"{name}{n} r1={a.result} nm2={b.result}")
        Sym = generic_symmetric(n, n)
        d = max_border_rigid_r1(Sym)
        good = (not d.result) and d.witness is not None and is_transpose_cycle(d.witness)
        ok &= good
        msgs.append(f"symmetric{n} r1={d.result} transpose witness={good}")
    return ok, "; ".join(msgs)


def c10_dft_bounds():
    n = 16
    i = root_of_unity(16) ** 4
    M = dft(n).scale(Fraction(1, 4))  # unitary normalization: eigenvalues in {1, -1, i, -i}
    res = eigen_upper(M, [1, -1, i, -i])
    b = res.bound
    ok1 = (res.multiplicity == 5 and b.r == 11 and b.upper <= 16
           and verify_changes(M, 11, b.changes) and len(b.changes) == b.upper)
    _, cb = cdft_upper(5)
    Mw = dft(5)
    ok2 = cb.upper == 13 and rank(Mw.with_entries(cb.changes)) == 1
    return ok1 and ok2, (f"DFT_16/4: multiplicities {res.multiplicities}, member of R[16,{b.r},{b.upper}]; "
                         f"cdft_upper(5): {cb.upper} changes, rank-1 verified {ok2}")


def c11_circuits():
    msgs = []
    ok = True
    for k in range(1, 5):
        C = dft_circuit(k)
        good = evaluate(C) == dft(2 ** k) and size(C) == 2 ** (k + 1) * k
        ok &= good
        msgs.append(f"k={k} size {size(C)}")
    jr = butterfly_jacobian_rank(3, seed=0)
    ok &= jr == 32
    msgs.append(f"butterfly Jacobian rank at n=8: {jr}")
    return ok, "; ".join(msgs)


def c12_families():
    bad = []
    for seed in range(50):
        n = 1 + seed % 5
        p = CauchyParams.random(n, seed)
        if cauchy_det(p) != det(cauchy(p)):
            bad.append(seed)
    mats = [("DFT_5", dft(5))]
    for n in range(1, 6):
        mats.append((f"Cauchy{n}", cauchy(CauchyParams.random(n, 100 + n))))
        mats.append((f"Vandermonde{n}", vandermonde(VandermondeParams.random(n, 100 + n))))
    for k in (1, 2):
        mats.append((f"Sylvester{2 ** k}", sylvester(k)))
    zero_minor = []
    for name, M in mats:
        for r in range(1, M.nrows + 1):
            if not all_minors_nonzero(M, r):
                zero_minor.append(f"{name} (size {r})")
    ok = not bad and not zero_minor
    return ok, f"Cauchy det mismatches {bad}; matrices with a vanishing minor: {zero_minor}"


CRITERIA = [
    (1, "degree routes", c1_deg_sigma),
    (2, "recursion vs alternating sum", c2_deg_join),
    (3, "closed forms", c3_closed_forms),
    (4, "component counts", c4_components),
    (5, "certificate vanishing", c5_certificates),
    (6, "propagation", c6_propagation),
    (7, "weight of s5", c7_weight),
    (8, "join dimension", c8_dimension),
    (9, "rigidity deciders", c9_deciders),
    (10, "DFT upper bounds", c10_dft_bounds),
    (11, "circuits", c11_circuits),
    (12, "family identities", c12_families),
]


# wall-clock budgets in seconds, where a criterion states one
BUDGETS = {1: 1.0, 5: 300.0, 8: 120.0, 9: 120.0, 11: 60.0}


def run_criterion(number: int) -> Outcome:
    num, title, fn = CRITERIA[number - 1]
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure, reported like one
        ok, detail = False, f"raised {type(e).__name__}: {e}"
    secs = time.perf_counter() - t
    budget = BUDGETS.get(num)
    if budget is not None and secs > budget:
        ok = False
        detail += f"; over the {budget:g}s budget"
    return Outcome(num, title, bool(ok), detail, secs)


def run_all() -> list[Outcome]:
    return [run_criterion(k) for k in range(1, len(CRITERIA) + 1)]
