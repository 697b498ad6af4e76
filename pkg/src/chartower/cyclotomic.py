"""Exact cyclotomic numbers in canonical form.

A Cyc is stored as (conductor n, sparse coefficients over the power basis
1, z, ..., z^(phi(n)-1) of Q(zeta_n), reduced mod the n-th cyclotomic
polynomial). Coefficients are ints where possible, Fractions otherwise.
The conductor is minimal: construction collapses exponent gcds, rewrites
2m -> m for odd m, and (for composite conductors) runs a Galois descent
prime by prime, so equality and hashing are plain tuple comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

import numpy as np

__all__ = ["Cyc", "ZERO", "ONE", "root_of_unity", "cyc_normalize", "cyc_sum"]


def _cnorm(c):
    """Prefer int over Fraction."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@lru_cache(maxsize=None)
def _totient(n: int) -> int:
    out = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def _prime_divisors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree."""
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(_cyclotomic_poly(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    dl = len(den) - 1
    lead = den[-1]
    for i in range(len(num) - 1, dl - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact cyclotomic division")
        out[i - dl] = q
        for j, dc in enumerate(den):
            num[i - dl + j] -= q * dc
    if dl and any(num[:dl]):
        raise ArithmeticError("non-zero remainder in cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """rows[k] = integer coordinates of zeta_n^k in the power basis."""
    phi = _totient(n)
    poly = _cyclotomic_poly(n)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    if phi > 0:
        cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(1, n):
        nxt = [0] * phi
        carry = cur[phi - 1]
        for i in range(phi - 1, 0, -1):
            nxt[i] = cur[i - 1]
        nxt[0] = 0
        if carry:
            for i in range(phi):
                nxt[i] -= carry * poly[i]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _descent_solver(n: int, p: int):
    """(T, d, phi_m): integer matrix with T/d the row-reduction transform of
    the power-basis embedding Q(zeta_{n/p}) -> Q(zeta_n); a conductor-n
    vector x lies in the subfield iff (T @ x)[phi_m:] = 0, and then its
    subfield coordinates are (T @ x)[:phi_m] / d."""
    m = n // p
    phi_n, phi_m = _totient(n), _totient(m)
    rows_n = _reduction_rows(n)
    cols = [rows_n[(p * j) % n] for j in range(phi_m)]
    mat = [[Fraction(cols[j][i]) for j in range(phi_m)] for i in range(phi_n)]
    trans = [[Fraction(1) if i == j else Fraction(0) for j in range(phi_n)]
             for i in range(phi_n)]
    r = 0
    for c in range(phi_m):
        pr = next((i for i in range(r, phi_n) if mat[i][c] != 0), None)
        if pr is None:
            raise ArithmeticError("embedding matrix not full rank")
        mat[r], mat[pr] = mat[pr], mat[r]
        trans[r], trans[pr] = trans[pr], trans[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        trans[r] = [x * inv for x in trans[r]]
        for i in range(phi_n):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
                trans[i] = [a - f * b for a, b in zip(trans[i], trans[r])]
        r += 1
    den = 1
    for row in trans:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    T = np.array([[int(x * den) for x in row] for row in trans],
                 dtype=np.int64)
    return T, den, phi_m


def _try_descend(n: int, p: int, dense: dict):
    phi_n = _totient(n)
    T, den, phi_m = _descent_solver(n, p)
    if all(isinstance(c, int) for c in dense.values()):
        x = np.zeros(phi_n, dtype=np.int64)
        for k, c in dense.items():
            x[k] = c
        y = T @ x
        if y[phi_m:].any():
            return None
        out = {}
        for j in range(phi_m):
            v = int(y[j])
            if v % den == 0:
                if v:
                    out[j] = v // den
            else:
                out[j] = Fraction(v, den)
        return out
    x = [dense.get(k, 0) for k in range(phi_n)]
    y = []
    for i in range(phi_n):
        acc = 0
        row = T[i]
        for j, xv in enumerate(x):
            if xv:
                acc = acc + int(row[j]) * xv
        y.append(acc)
    if any(y[i] != 0 for i in range(phi_m, phi_n)):
        return None
    return {j: _cnorm(Fraction(y[j], den) if isinstance(y[j], int)
                      else y[j] / den)
            for j in range(phi_m) if y[j] != 0}


def _normalize(n: int, coeffs: Mapping) -> tuple[int, tuple]:
    if n <= 0:
        raise ValueError("conductor must be positive")
    folded: dict = {}
    for k, c in coeffs.items():
        c = _cnorm(c)
        if c == 0:
            continue
        k %= n
        prev = folded.get(k)
        folded[k] = c if prev is None else _cnorm(prev + c)
    folded = {k: c for k, c in folded.items() if c != 0}
    if not folded:
        return 1, ()
    g = n
    for k in folded:
        g = gcd(g, k)
    if g > 1:
        return _normalize(n // g, {k // g: c for k, c in folded.items()})
    if n == 1:
        return 1, ((0, folded[0]),)
    if n % 2 == 0 and (n // 2) % 2 == 1:
        m = n // 2
        h = (m + 1) // 2
        out: dict = {}
        for k, c in folded.items():
            if k % 2 == 0:
                kk, cc = (k // 2) % m, c
            else:
                kk, cc = (k * h) % m, -c
            prev = out.get(kk)
            out[kk] = cc if prev is None else _cnorm(prev + cc)
        return _normalize(m, out)
    phi = _totient(n)
    need_reduce = any(k >= phi for k in folded)
    if need_reduce:
        rows = _reduction_rows(n)
        dense: dict = {}
        for k, c in folded.items():
            if k < phi:
                prev = dense.get(k)
                dense[k] = c if prev is None else _cnorm(prev + c)
            else:
                for i, ri in enumerate(rows[k]):
                    if ri:
                        prev = dense.get(i)
                        add = c * ri
                        dense[i] = add if prev is None else _cnorm(prev + add)
        dense = {k: c for k, c in dense.items() if c != 0}
    else:
        dense = folded
    if not dense:
        return 1, ()
    g = n
    for k in dense:
        g = gcd(g, k)
    if g > 1:
        return _normalize(n // g, {k // g: c for k, c in dense.items()})
    # Galois descent: only composite conductors can drop to a proper
    # cyclotomic subfield bigger than Q (rationals are structural).
    primes = _prime_divisors(n)
    if len(primes) > 1 or primes[0] != n:
        for p in primes:
            sub = _try_descend(n, p, dense)
            if sub is not None:
                return _normalize(n // p, sub)
    return n, tuple(sorted(dense.items()))


class Cyc:
    """Exact element of a cyclotomic field, minimal conductor."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs):
        if not isinstance(coeffs, Mapping):
            coeffs = dict(coeffs)
        self.n, self.coeffs = _normalize(conductor, coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> "Cyc":
        obj = object.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, q) -> "Cyc":
        q = _cnorm(q if isinstance(q, (int, Fraction)) else Fraction(q))
        if q == 0:
            return ZERO
        return cls._raw(1, ((0, q),))

    # -- predicates / accessors ----------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0][1]) if self.coeffs else Fraction(0)

    def is_integer(self) -> bool:
        return self.n == 1 and (not self.coeffs
                                or isinstance(self.coeffs[0][1], int))

    def as_int(self) -> int:
        if not self.coeffs:
            return 0
        v = self.coeffs[0][1]
        if self.n != 1 or not isinstance(v, int):
            raise ValueError(f"{self} is not an integer")
        return v

    # -- ring operations -------------------------------------------------------
    def __add__(self, other) -> "Cyc":
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.n == 1 and other.n == 1:
            return Cyc.from_rational(self.coeffs[0][1] + other.coeffs[0][1])
        if self.n == other.n:
            out = dict(self.coeffs)
            for k, c in other.coeffs:
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
            return Cyc(self.n, out)
        l = self.n * other.n // gcd(self.n, other.n)
        out = {}
        fa = l // self.n
        for k, c in self.coeffs:
            out[k * fa] = c
        fb = l // other.n
        for k, c in other.coeffs:
            kk = k * fb
            prev = out.get(kk)
            out[kk] = c if prev is None else prev + c
        return Cyc(l, out)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc._raw(self.n, tuple((k, -c) for k, c in self.coeffs))

    def __sub__(self, other) -> "Cyc":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Cyc":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Cyc":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.n == 1:
            q = self.coeffs[0][1]
            if q == 1:
                return other
            return Cyc._raw(other.n,
                            tuple((k, _cnorm(c * q)) for k, c in other.coeffs))
        if other.n == 1:
            q = other.coeffs[0][1]
            if q == 1:
                return self
            return Cyc._raw(self.n,
                            tuple((k, _cnorm(c * q)) for k, c in self.coeffs))
        l = self.n * other.n // gcd(self.n, other.n)
        fa, fb = l // self.n, l // other.n
        out: dict = {}
        for k1, c1 in self.coeffs:
            ka = k1 * fa
            for k2, c2 in other.coeffs:
                kk = (ka + k2 * fb) % l
                add = c1 * c2
                prev = out.get(kk)
                out[kk] = add if prev is None else prev + add
        return Cyc(l, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyc":
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError
            out = []
            for k, c in self.coeffs:
                if isinstance(c, int) and c % other == 0:
                    out.append((k, c // other))
                else:
                    out.append((k, _cnorm(Fraction(c, other) if isinstance(c, int)
                                          else c / other)))
            return Cyc._raw(self.n, tuple(out))
        if isinstance(other, Fraction):
            return Cyc._raw(self.n, tuple((k, _cnorm(c / other))
                                          for k, c in self.coeffs))
        other = _coerce(other)
        if other.n == 1:
            return self / other.as_fraction()
        raise TypeError("division only by rationals")

    def __pow__(self, t: int) -> "Cyc":
        if t < 0:
            raise ValueError("negative powers unsupported")
        out = ONE
        base = self
        while t:
            if t & 1:
                out = out * base
            t >>= 1
            if t:
                base = base * base
        return out

    def conjugate(self) -> "Cyc":
        return self.galois(-1)

    def galois(self, j: int) -> "Cyc":
        if self.n == 1:
            return self
        j %= self.n
        if gcd(j, self.n) != 1:
            raise ValueError(f"galois exponent {j} not coprime to {self.n}")
        if j == 1:
            return self
        return Cyc(self.n, {(k * j) % self.n: c for k, c in self.coeffs})

    # -- comparisons / serialization -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Cyc({self.serialize()!r})"

    def serialize(self) -> str:
        parts = []
        for k, c in self.coeffs:
            f = Fraction(c)
            parts.append(f"{k}={f.numerator}" if f.denominator == 1
                         else f"{k}={f.numerator}/{f.denominator}")
        return f"{self.n}:" + (" " + " ".join(parts) if parts else "")

    @classmethod
    def parse(cls, text: str) -> "Cyc":
        head, _, body = text.partition(":")
        n = int(head.strip())
        coeffs = {}
        for item in body.split():
            k, _, c = item.partition("=")
            coeffs[int(k)] = Fraction(c)
        return cls(n, coeffs)

    def to_complex(self) -> complex:
        import cmath
        return sum(complex(Fraction(c)) * cmath.exp(2j * cmath.pi * k / self.n)
                   for k, c in self.coeffs) if self.coeffs else 0j


def _coerce(x) -> Cyc:
    if isinstance(x, Cyc):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyc.from_rational(x)
    raise TypeError(f"cannot coerce {type(x)} to Cyc")


ZERO = Cyc._raw(1, ())
ONE = Cyc._raw(1, ((0, 1),))


def root_of_unity(n: int, k: int = 1) -> Cyc:
    """zeta_n^k."""
    return Cyc(n, {k % n: 1})


def cyc_normalize(x: Cyc) -> Cyc:
    """Re-run canonicalization (idempotent; exposed for the test suite)."""
    return Cyc(x.n, dict(x.coeffs))


def cyc_sum(values: Iterable[Cyc]) -> Cyc:
    """Sum with a single final normalization."""
    values = [v for v in values if not v.is_zero()]
    if not values:
        return ZERO
    if len(values) == 1:
        return values[0]
    l = 1
    for v in values:
        l = l * v.n // gcd(l, v.n)
    out: dict = {}
    for v in values:
        f = l // v.n
        for k, c in v.coeffs:
            kk = k * f
            prev = out.get(kk)
            out[kk] = c if prev is None else prev + c
    return Cyc(l, out)
