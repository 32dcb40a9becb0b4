"""Command-line front end.

Exit codes: 0 success / decider true, 1 decider false, 2 usage or input
error, 3 internal inconsistency (disagreeing routes, failed self-test).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations

from . import catalog, certificates, circuits, degrees, families, joins, minorpoly, rigidity
from .cyclotomic import root_of_unity
from .matrix import Matrix, matrix_from_json, matrix_to_json, minor, rank

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- I/O helpers

def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read JSON from {path}: {e}") from None


def _read_matrix(path: str) -> Matrix:
    try:
        return matrix_from_json(_read_json(path))
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"bad matrix JSON: {e}") from None


def _emit(obj, out: str | None = None):
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _fractions(text: str | None) -> list[Fraction] | None:
    if text is None:
        return None
    try:
        return [Fraction(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad number list {text!r}: {e}") from None


def _support(text: str | None, n: int) -> joins.Support:
    try:
        return joins.parse_support(text or "", n)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _need(args, *names):
    for nm in names:
        if getattr(args, nm) is None:
            raise UsageError(f"--{nm.replace('_', '-')} is required here")


# ---------------------------------------------------------------- subcommands

def cmd_gen(args) -> int:
    fam = args.family
    if fam == "dft":
        _need(args, "n")
        M = families.dft(args.n)
    elif fam == "cauchy":
        x, z = _fractions(args.x), _fractions(args.z)
        if x is not None or z is not None:
            if x is None or z is None:
                raise UsageError("give both --x and --z")
            p = families.CauchyParams(tuple(x), tuple(z))
        else:
            _need(args, "n")
            p = families.CauchyParams.random(args.n, args.seed)
        M = families.cauchy(p)
    elif fam == "vandermonde":
        y = _fractions(args.y)
        if y is not None:
            M = families.vandermonde([Fraction(1) if args.y0 is None else Fraction(args.y0)] + y)
        else:
            _need(args, "n")
            M = families.vandermonde(families.VandermondeParams.random(args.n, args.seed))
    elif fam == "sylvester":
        _need(args, "k")
        M = families.sylvester(args.k)
    elif fam == "dftcurve":
        _need(args, "n")
        w = root_of_unity(args.n) ** (1 if args.power is None else args.power)
        x = Fraction(args.x) if args.x is not None else Fraction(1)
        M = families.dft_curve(x, w, args.n)
    elif fam == "butterfly":
        _need(args, "k")
        _, M = families.butterfly_sample(args.k, args.seed)
    elif fam == "join":
        _need(args, "n", "r")
        M = joins.sample_join_point(args.n, args.r, _support(args.support, args.n), args.seed)
    else:  # argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    _emit(matrix_to_json(M), args.out)
    return EXIT_OK


def cmd_rank(args) -> int:
    M = _read_matrix(args.matrix)
    _emit({"rank": rank(M), "shape": list(M.shape)})
    return EXIT_OK


def cmd_minors(args) -> int:
    M = _read_matrix(args.matrix)
    r = args.size
    if not 1 <= r <= min(M.shape):
        raise UsageError(f"--size {r} out of range for a {M.nrows}x{M.ncols} matrix")
    if args.nonzero_check:
        zero = None
        for I in combinations(range(1, M.nrows + 1), r):
            for J in combinations(range(1, M.ncols + 1), r):
                if minor(M, I, J) == 0:
                    zero = {"I": list(I), "J": list(J)}
                    break
            if zero:
                break
        _emit({"size": r, "all_nonzero": zero is None, "first_zero": zero})
        return EXIT_OK if zero is None else EXIT_FALSE
    from .matrix import _scalar_to_json
    out = [{"I": list(I), "J": list(J), "value": _scalar_to_json(minor(M, I, J))}
           for I in combinations(range(1, M.nrows + 1), r)
           for J in combinations(range(1, M.ncols + 1), r)]
    _emit({"size": r, "minors": out})
    return EXIT_OK


def cmd_circuit(args) -> int:
    if args.action == "build":
        kind = args.kind
        if kind == "dft":
            _need(args, "k")
            C = circuits.dft_circuit(args.k)
        elif kind == "naive":
            _need(args, "matrix")
            C = circuits.naive_circuit(_read_matrix(args.matrix))
        elif kind == "factor":
            _need(args, "matrix", "r")
            try:
                C = circuits.factor_circuit(_read_matrix(args.matrix), args.r)
            except ValueError as e:
                raise UsageError(str(e)) from None
        else:
            raise UsageError("circuit build needs --kind dft|naive|factor")
        _emit(circuits.circuit_to_json(C), args.out)
        return EXIT_OK
    _need(args, "circuit")
    try:
        C = circuits.circuit_from_json(_read_json(args.circuit))
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"bad circuit JSON: {e}") from None
    if args.action == "eval":
        _emit(matrix_to_json(circuits.evaluate(C)), args.out)
    elif args.action == "size":
        _emit({"size": circuits.size(C), "depth": circuits.depth(C),
               "inputs": C.n_in, "outputs": C.n_out})
    elif args.action == "dot":
        _emit(circuits.to_dot(C), args.out)
    return EXIT_OK


def cmd_rigidity(args) -> int:
    M = _read_matrix(args.matrix)
    try:
        if args.decider == "r1":
            res = rigidity.max_border_rigid_r1(M)
            wit = None
            if res.witness is not None:
                wit = str(res.witness.binomial())
            _emit({"decider": "r1", "result": res.result, "checked": res.checked, "witness": wit})
            return EXIT_OK if res.result else EXIT_FALSE
        if args.decider == "nm2":
            res = rigidity.max_border_rigid_nm2(M)
            _emit({"decider": "nm2", "result": res.result, "checked": res.checked,
                   "witness": None if res.witness is None else repr(res.witness)})
            return EXIT_OK if res.result else EXIT_FALSE
    except ValueError as e:
        raise UsageError(str(e)) from None
    _need(args, "r")
    r, smax = args.r, args.smax
    lo = rigidity.lower_hitting(M, r, smax)
    up = rigidity.schur_upper(M, r)
    if M.nrows <= 5 and smax <= 4:
        found = rigidity.border_membership_upper(M, r, smax)
        if found.upper is not None and found.upper < up.upper:
            up = found
    if lo.lower > up.upper:
        _emit({"error": "lower bound exceeds upper bound", "r": r,
               "lower": lo.lower, "upper": up.upper})
        return EXIT_INCONSISTENT
    report = rigidity.RigidityBound(r, lo.lower, up.upper, up.changes, lo.certificate)
    _emit(report.to_json())
    return EXIT_OK


def _poly_out(P, M=None, cache=None):
    d = minorpoly.poly_to_json(P)
    d["text"] = str(P)
    d["degree"] = P.degree
    if M is not None:
        from .matrix import _scalar_to_json
        d["value"] = _scalar_to_json(minorpoly.evaluate_poly(P, M, cache))
    return d


def cmd_equations(args) -> int:
    fam = args.family
    tag = None
    try:
        if fam == "example":
            _need(args, "name")
            ex = catalog.get_example(args.name)
            polys, n, r, S = [ex.poly], ex.n, ex.r, ex.support
        else:
            _need(args, "n")
            n = args.n
            S = _support(args.support, n)
            r = args.r
            if fam == "avoiding":
                _need(args, "r")
                polys = [certificates.minor_polynomial(n, I, J)
                         for I, J in certificates.avoiding_minors(S, r)]
            elif fam == "nm2":
                tag, polys = certificates.nm2_equations(S)
                r = n - 2
            elif fam == "r1":
                res = certificates.classify_r1_component(S)
                r = 1
                if res == certificates.NOT_A_COMPONENT:
                    tag, polys = res, []
                else:
                    tag, polys = f"cycle of length {2 * res.k}", [res.binomial()]
            else:
                raise UsageError(f"unknown family {fam}")
        if args.q:
            polys = [minorpoly.propagate(P, args.q) for P in polys]
            n, r = n + args.q, (r + args.q if r is not None else None)
            S = S.with_n(n)
    except (ValueError, KeyError) as e:
        raise UsageError(str(e)) from None
    M = _read_matrix(args.evaluate) if args.evaluate else None
    if M is not None and M.shape != (n, n):
        raise UsageError(f"--evaluate matrix must be {n}x{n}")
    cache: dict = {}
    out = {"n": n, "r": r, "support": str(S), "equations": [_poly_out(P, M, cache) for P in polys]}
    if tag is not None:
        out["tag"] = tag
    code = EXIT_OK
    if args.check_samples:
        if r is None:
            raise UsageError("--check-samples needs --r")
        bad = [k for k, P in enumerate(polys)
               if any(minorpoly.evaluate_poly(P, joins.sample_join_point(n, r, S, args.seed + t)) != 0
                      for t in range(args.check_samples))]
        out["samples"] = args.check_samples
        out["nonvanishing"] = bad
        if bad:
            code = EXIT_INCONSISTENT
    _emit(out)
    return code


def cmd_dim(args) -> int:
    S = _support(args.support, args.n)
    try:
        jd = joins.join_dimension(args.n, args.r, S, args.seed)
        red = certificates.reduce_support(S, args.r)
        jr = joins.join_dimension(args.n, args.r, red, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit({"n": args.n, "r": args.r, "s": S.s, "dimension": jd.rank, "expected": jd.expected,
           "reduced_support": str(red), "reduced_dimension": jr.rank})
    return EXIT_OK if jd.rank == jr.rank else EXIT_INCONSISTENT


def cmd_degrees(args) -> int:
    if args.max_n < 2:
        raise UsageError("--max-n must be >= 2")
    text, ok = degrees.degree_csv(args.max_n)
    _emit(text.rstrip("\n"), args.out)
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_selftest(args) -> int:
    from .acceptance import CRITERIA, run_criterion
    nums = args.only or list(range(1, len(CRITERIA) + 1))
    ok = True
    for k in nums:
        res = run_criterion(k)
        ok &= res.passed
        print(res.line(), flush=True)
    return EXIT_OK if ok else EXIT_INCONSISTENT


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linrig", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    # --seed is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a structured matrix as JSON")
    g.add_argument("family", choices=["dft", "cauchy", "vandermonde", "sylvester", "dftcurve",
                                      "butterfly", "join"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--x", help="Cauchy x values, or the DFT-curve x")
    g.add_argument("--z", help="Cauchy z values")
    g.add_argument("--y", help="Vandermonde nodes y_1..y_n")
    g.add_argument("--y0", help="Vandermonde homogenizing coordinate (default 1)")
    g.add_argument("--power", type=int, help="DFT curve: w = omega_n^power")
    g.add_argument("--support", help='positions "i,j;i,j" for the join family')
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("rank", parents=[common], help="exact rank of a matrix")
    r.add_argument("matrix", help="matrix JSON file or - for stdin")
    r.set_defaults(func=cmd_rank)

    m = sub.add_parser("minors", parents=[common], help="list minors, or check that all are nonzero")
    m.add_argument("matrix")
    m.add_argument("--size", type=int, required=True)
    m.add_argument("--nonzero-check", action="store_true")
    m.set_defaults(func=cmd_minors)

    c = sub.add_parser("circuit", parents=[common], help="build, evaluate or measure linear circuits")
    c.add_argument("action", choices=["build", "eval", "size", "dot"])
    c.add_argument("circuit", nargs="?", help="circuit JSON (eval, size, dot)")
    c.add_argument("--kind", choices=["dft", "naive", "factor"])
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--matrix")
    c.add_argument("--out")
    c.set_defaults(func=cmd_circuit)

    rg = sub.add_parser("rigidity", parents=[common], help="rigidity bounds and maximal border rigidity deciders")
    rg.add_argument("matrix")
    rg.add_argument("--r", type=int)
    rg.add_argument("--decider", choices=["r1", "nm2", "interval"], default="interval")
    rg.add_argument("--smax", type=int, default=3)
    rg.set_defaults(func=cmd_rigidity)

    e = sub.add_parser("equations", parents=[common], help="emit or evaluate join equations")
    e.add_argument("family", choices=["avoiding", "nm2", "r1", "example"])
    e.add_argument("--n", type=int)
    e.add_argument("--r", type=int)
    e.add_argument("--support")
    e.add_argument("--name", help=f"example name: {', '.join(sorted(catalog.EXAMPLES))}")
    e.add_argument("--q", type=int, default=0, help="propagate by q")
    e.add_argument("--evaluate", metavar="MATRIX", help="evaluate on this matrix JSON")
    e.add_argument("--check-samples", type=int, default=0, metavar="N",
                   help="check vanishing on N seeded join samples")
    e.set_defaults(func=cmd_equations)

    d = sub.add_parser("dim", parents=[common], help="join dimension by exact Jacobian rank")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--support", default="")
    d.set_defaults(func=cmd_dim)

    dg = sub.add_parser("degrees", parents=[common], help="CSV table of join degrees")
    dg.add_argument("--max-n", type=int, required=True)
    dg.add_argument("--out")
    dg.set_defaults(func=cmd_degrees)

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    st.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"linrig: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except degrees.RouteDisagreement as e:
        print(f"linrig: inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT


run = main

if __name__ == "__main__":
    sys.exit(main())
