"""Exact arithmetic in cyclotomic fields Q(w_m) = Q[x]/(Phi_m(x)).

Elements are stored in the power basis 1, w, ..., w^(phi(m)-1) with
Fraction coefficients.  Reduction is always modulo the cyclotomic
polynomial Phi_m, so the representation is canonical and equality is
coefficient-wise.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "Cyclotomic",
    "cyclotomic_poly",
    "euler_phi",
    "root_of_unity",
    "coerce",
    "lcm_conductor",
]


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # low-degree-first integer polynomials, den monic
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j in range(dq + 1):
                num[i - dq + j] -= c * den[j]
    rem = num[:dq] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed by dividing x^m - 1 by Phi_d for every proper divisor d of m.
    """
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            assert not any(rem), "inexact cyclotomic division"
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Reductions of x^k mod Phi_m for k < 2*phi(m) - 1, as integer vectors."""
    phi = euler_phi(m)
    cp = cyclotomic_poly(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(2 * phi - 1, 1)):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for j in range(phi):
                nxt[j] -= top * cp[j]
        cur = nxt
    return tuple(rows)


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"not a rational value: {v!r}")


class Cyclotomic:
    """An element of Q(w_m), immutable.

    Mixing with ints and Fractions is allowed (Q embeds in every
    Q(w_m)).  Two Cyclotomic operands must share a conductor; use
    :func:`coerce` first when they do not.
    """

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs):
        phi = euler_phi(m)
        cs = tuple(_to_fraction(c) for c in coeffs)
        if len(cs) != phi:
            raise ValueError(f"Q(w_{m}) needs {phi} coefficients, got {len(cs)}")
        self.m = m
        self.coeffs = cs
        self._hash = None

    # construction helpers
    @classmethod
    def from_rational(cls, m: int, q) -> Cyclotomic:
        phi = euler_phi(m)
        return cls(m, (_to_fraction(q),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zero(cls, m: int) -> Cyclotomic:
        return cls.from_rational(m, 0)

    @classmethod
    def one(cls, m: int) -> Cyclotomic:
        return cls.from_rational(m, 1)

    @classmethod
    def _from_poly(cls, m: int, poly) -> Cyclotomic:
        phi = euler_phi(m)
        table = _power_table(m)
        out = [Fraction(0)] * phi
        for k, c in enumerate(poly):
            if not c:
                continue
            if k < len(table):
                row = table[k]
            else:
                row = _reduce_power(m, k)
            for j, t in enumerate(row):
                if t:
                    out[j] += c * t
        obj = cls.__new__(cls)
        obj.m = m
        obj.coeffs = tuple(out)
        obj._hash = None
        return obj

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    # arithmetic
    def _lift(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError(
                    f"conductor mismatch: {self.m} vs {other.m}; coerce explicitly"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic.from_rational(self.m, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _make(self.m, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return _make(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _make(self.m, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            q = _to_fraction(other)
            return _make(self.m, tuple(a * q for a in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._from_poly(self.m, prod)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return Cyclotomic.from_rational(self.m, 1 / self.coeffs[0])
        inv = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_poly(self.m)])
        return Cyclotomic._from_poly(self.m, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            q = _to_fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return _make(self.m, tuple(a / q for a in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Cyclotomic:
        """Image under the automorphism w -> w^{-1}."""
        m = self.m
        poly = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            if c:
                poly[(-k) % m] += c
        return Cyclotomic._from_poly(m, poly)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.m, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.m}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "w" if k == 1 else f"w^{k}"
                terms.append(mon if c == 1 else f"-{mon}" if c == -1 else f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _make(m: int, coeffs: tuple) -> Cyclotomic:
    obj = Cyclotomic.__new__(Cyclotomic)
    obj.m = m
    obj.coeffs = coeffs
    obj._hash = None
    return obj


def _reduce_power(m: int, k: int) -> tuple[int, ...]:
    # x^k mod Phi_m via x^m = 1 first
    k %= m
    table = _power_table(m)
    if k < len(table):
        return table[k]
    phi = euler_phi(m)
    cp = cyclotomic_poly(m)
    cur = list(table[-1])
    for _ in range(k - len(table) + 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(cur)


def _trim(p: list) -> list:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_inverse_mod(f: list, mod: list) -> list:
    # extended Euclid over Q[x]; mod is irreducible so gcd is a unit
    r0, r1 = _trim(list(mod)), _trim(list(f))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1 or r1[0]:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo Phi_m")
    c = r0[0]
    return [x / c for x in s0]


def root_of_unity(m: int) -> Cyclotomic | Fraction:
    """The primitive m-th root of unity w_m as the class of x in Q[x]/(Phi_m).

    For m = 1 and m = 2 the field is Q and the root is returned as the
    rational 1 or -1 (wrapped as a Cyclotomic of conductor m).
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if m == 1:
        return Cyclotomic(1, [1])
    if m == 2:
        return Cyclotomic(2, [-1])
    phi = euler_phi(m)
    return Cyclotomic(m, [0, 1] + [0] * (phi - 2))


def lcm_conductor(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def coerce(z: Cyclotomic, m: int) -> Cyclotomic:
    """Embed z in Q(w_m); m must be a multiple of z's conductor."""
    if m % z.m:
        raise ValueError(f"cannot embed Q(w_{z.m}) into Q(w_{m})")
    step = m // z.m
    # w_{z.m} = w_m ** step
    poly = [Fraction(0)] * (step * (len(z.coeffs) - 1) + 1)
    for k, c in enumerate(z.coeffs):
        poly[k * step] = c
    return Cyclotomic._from_poly(m, poly)
