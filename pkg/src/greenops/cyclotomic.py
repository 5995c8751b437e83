"""Exact cyclotomic numbers: elements of Q(zeta_N) in the power basis.

A value is stored as Fraction coefficients over the basis 1, z, ..., z^(phi(N)-1)
of Q[x]/Phi_N(x). Conductors N = 2 mod 4 are normalized away so that equal
values arising from compatible conductors compare equal after promotion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients (ascending degree) of the n-th cyclotomic polynomial."""
    # (x^n - 1) / product of Phi_d for proper divisors d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _poly_divide_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _reduction_rows(n: int):
    """x^k mod Phi_n for k in [phi(n), 2*phi(n)-1], as Fraction tuples."""
    d = _phi(n)
    phi = cyclotomic_poly(n)
    rows = {}
    # x^d = -(phi[0] + ... + phi[d-1] x^(d-1))  (phi is monic)
    cur = [Fraction(-phi[j]) for j in range(d)]
    rows[d] = tuple(cur)
    for k in range(d + 1, 2 * d):
        nxt = [Fraction(0)] + cur[:-1]
        lead = cur[-1]
        if lead:
            top = rows[d]
            nxt = [a + lead * b for a, b in zip(nxt, top)]
        cur = nxt
        rows[k] = tuple(cur)
    return rows


ZERO = Fraction(0)


class Cyclo:
    """An element of Q(zeta_N)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == _phi(n)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(q) -> "Cyclo":
        return Cyclo(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclo":
        return Cyclo.rational(0)

    @staticmethod
    def one() -> "Cyclo":
        return Cyclo.rational(1)

    @staticmethod
    def root(n: int, k: int = 1) -> "Cyclo":
        """zeta_n^k, normalized (conductor never 2 mod 4)."""
        k %= n
        g = gcd(k, n) if k else n
        n2, k2 = n // g, k // g
        if n2 == 1:
            return Cyclo.rational(1)
        if n2 == 2:
            return Cyclo.rational(-1)
        if n2 % 4 == 2:
            # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
            m = n2 // 2
            return -Cyclo.root(m, (k2 * ((m + 1) // 2)) % m)
        exps = {k2: Fraction(1)}
        return _from_exponents(n2, exps)._shrink()

    # -- representation helpers ----------------------------------------------

    def is_rational(self) -> bool:
        return self.n == 1 or not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.coeffs[0]

    def promote(self, n: int) -> "Cyclo":
        """Rewrite in Q(zeta_n); requires self.n | n."""
        if n == self.n:
            return self
        assert n % self.n == 0
        step = n // self.n
        exps = {}
        for j, c in enumerate(self.coeffs):
            if c:
                exps[j * step] = exps.get(j * step, ZERO) + c
        return _from_exponents(n, exps)

    @staticmethod
    def _common(a: "Cyclo", b: "Cyclo"):
        if a.n == b.n:
            return a, b
        n = a.n * b.n // gcd(a.n, b.n)
        if n % 4 == 2:
            n *= 2  # promote through a conductor not 2 mod 4
        return a.promote(n), b.promote(n)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = Cyclo._common(self, o)
        return Cyclo(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))._shrink()

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.n == 1:
            c = o.coeffs[0]
            if not c:
                return Cyclo.rational(0)
            return Cyclo(self.n, tuple(x * c for x in self.coeffs))._shrink()
        if self.n == 1:
            return o * self.coeffs[0]
        a, b = Cyclo._common(self, o)
        d = _phi(a.n)
        prod = [ZERO] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        rows = _reduction_rows(a.n)
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = rows[k]
                for j in range(d):
                    out[j] += c * row[j]
        return Cyclo(a.n, out)._shrink()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            q = o.rational_value()
            if not q:
                raise ZeroDivisionError
            return Cyclo(self.n, tuple(x / q for x in self.coeffs))._shrink()
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def inverse(self) -> "Cyclo":
        """Field inverse via the multiplication-by-self matrix."""
        if self.is_rational():
            return Cyclo.rational(Fraction(1) / self.rational_value())
        d = _phi(self.n)
        cols = []
        for j in range(d):
            e = Cyclo(self.n, tuple(Fraction(i == j) for i in range(d)))
            cols.append((self * e).promote(self.n).coeffs)
        # solve M x = e0 where columns of M are self * z^j
        m = [[cols[j][i] for j in range(d)] + [Fraction(i == 0)] for i in range(d)]
        for col in range(d):
            piv = next(i for i in range(col, d) if m[i][col])
            m[col], m[piv] = m[piv], m[col]
            pv = m[col][col]
            m[col] = [x / pv for x in m[col]]
            for i in range(d):
                if i != col and m[i][col]:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[col])]
        return Cyclo(self.n, tuple(m[i][d] for i in range(d)))._shrink()

    def conjugate(self) -> "Cyclo":
        """Complex conjugation zeta -> zeta^-1."""
        if self.n == 1:
            return self
        exps = {}
        for j, c in enumerate(self.coeffs):
            if c:
                exps[(-j) % self.n] = exps.get((-j) % self.n, ZERO) + c
        return _from_exponents(self.n, exps)._shrink()

    def galois(self, k: int) -> "Cyclo":
        """Galois action zeta -> zeta^k for gcd(k, n) = 1."""
        if self.n == 1:
            return self
        assert gcd(k, self.n) == 1
        exps = {}
        for j, c in enumerate(self.coeffs):
            if c:
                e = (j * k) % self.n
                exps[e] = exps.get(e, ZERO) + c
        return _from_exponents(self.n, exps)._shrink()

    def _shrink(self) -> "Cyclo":
        if self.n != 1 and not any(self.coeffs[1:]):
            return Cyclo(1, (self.coeffs[0],))
        return self

    # -- comparisons ----------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = Cyclo._common(self, o)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        raise TypeError("hash only supported for rational cyclotomic values")

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        """Deterministic human-readable form, e.g. ``1 - z3``."""
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                mono = f"z{self.n}" + (f"^{j}" if j > 1 else "")
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _from_exponents(n: int, exps) -> Cyclo:
    """Build sum of c * zeta_n^e from an exponent dict, reducing mod Phi_n."""
    d = _phi(n)
    out = [ZERO] * d
    high = {}
    for e, c in exps.items():
        e %= n
        if e < d:
            out[e] += c
        else:
            high[e] = high.get(e, ZERO) + c
    if high:
        for e in sorted(high, reverse=True):
            c = high[e]
            if not c:
                continue
            vec = _power_vector(n, e)
            for j in range(d):
                out[j] += c * vec[j]
    return Cyclo(n, out)


@lru_cache(maxsize=None)
def _power_vector(n: int, e: int):
    """zeta_n^e as a basis coefficient tuple (e may be >= phi(n))."""
    d = _phi(n)
    if e < d:
        return tuple(Fraction(i == e) for i in range(d))
    rows = _reduction_rows(n)
    if e < 2 * d:
        return rows[e]
    prev = _power_vector(n, e - 1)
    # multiply by x: shift then reduce the overflow via x^d row
    shifted = (ZERO,) + prev[:-1]
    lead = prev[-1]
    if lead:
        top = rows[d]
        shifted = tuple(a + lead * b for a, b in zip(shifted, top))
    return shifted


def cyclo_sum(values) -> Cyclo:
    acc = Cyclo.rational(0)
    for v in values:
        acc = acc + v
    return acc
