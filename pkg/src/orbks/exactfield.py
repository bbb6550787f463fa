"""Exact arithmetic in the cyclotomic field Q(zeta_N).

An element is stored as its coefficient vector in the power basis
1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial.
Coefficients are gmpy2 rationals.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

__all__ = [
    "CycNum",
    "DivisionByZero",
    "OrderMismatch",
    "cyclotomic_poly",
    "root_of_unity",
    "as_cyc",
    "common_order",
]


class DivisionByZero(ZeroDivisionError):
    pass


class OrderMismatch(ValueError):
    pass


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficient lists run from low to high degree
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_vec(n: int, k: int) -> tuple:
    """z^k reduced modulo Phi_n, as a coefficient tuple."""
    k %= n
    deg = _phi(n)
    if k < deg:
        vec = [mpq(0)] * deg
        vec[k] = mpq(1)
        return tuple(vec)
    prev = _power_vec(n, k - 1)
    # multiply prev by z, then fold the overflowing top coefficient
    top = prev[-1]
    shifted = [mpq(0)] + list(prev[:-1])
    phi_poly = cyclotomic_poly(n)
    if top:
        for i in range(deg):
            shifted[i] -= top * phi_poly[i]
    return tuple(shifted)


def _to_mpq(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


class CycNum:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("order must be positive")
        deg = _phi(order)
        if coeffs is None:
            coeffs = (mpq(0),) * deg
        else:
            coeffs = tuple(_to_mpq(c) for c in coeffs)
            if len(coeffs) != deg:
                coeffs = _reduce_long(order, coeffs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # construction helpers
    @classmethod
    def rational(cls, order: int, value) -> "CycNum":
        deg = _phi(order)
        return cls._raw(order, (_to_mpq(value),) + (mpq(0),) * (deg - 1))

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "CycNum":
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def lift(self, order: int) -> "CycNum":
        """Embed into Q(zeta_order) using zeta_self = zeta_order^(order/self.order)."""
        if order == self.order:
            return self
        if order % self.order:
            raise OrderMismatch(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        out = [mpq(0)] * _phi(order)
        for i, c in enumerate(self.coeffs):
            if c:
                vec = _power_vec(order, i * step)
                for j, v in enumerate(vec):
                    if v:
                        out[j] += c * v
        return CycNum._raw(order, tuple(out))

    def _coerce(self, other) -> tuple["CycNum", "CycNum"]:
        if isinstance(other, CycNum):
            if other.order == self.order:
                return self, other
            if other.order == 1 or (other.order % self.order == 0 and self.is_rational()):
                if other.order == 1:
                    return self, CycNum.rational(self.order, other.coeffs[0])
                return CycNum.rational(other.order, self.coeffs[0]), other
            if self.order == 1:
                return CycNum.rational(other.order, self.coeffs[0]), other
            n = self.order * other.order // gcd(self.order, other.order)
            return self.lift(n), other.lift(n)
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self, CycNum.rational(self.order, other)
        return NotImplemented, NotImplemented

    # predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        c = self.coeffs[0]
        return Fraction(int(c.numerator), int(c.denominator))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
                s = _to_mpq(other)
                return CycNum._raw(self.order, tuple(x * s for x in self.coeffs))
            return NotImplemented
        a, b = self._coerce(other)
        n = a.order
        deg = len(a.coeffs)
        if deg == 1:
            return CycNum._raw(n, (a.coeffs[0] * b.coeffs[0],))
        if b.is_rational():
            s = b.coeffs[0]
            return CycNum._raw(n, tuple(x * s for x in a.coeffs))
        if a.is_rational():
            s = a.coeffs[0]
            return CycNum._raw(n, tuple(x * s for x in b.coeffs))
        conv = [mpq(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CycNum._raw(n, _fold(n, conv))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.order
        deg = len(self.coeffs)
        if self.is_rational():
            return CycNum._raw(n, (1 / self.coeffs[0],) + (mpq(0),) * (deg - 1))
        # solve (self * v) = 1 with v unknown: columns are self * z^j
        cols = []
        for j in range(deg):
            zj = CycNum._raw(n, _power_vec(n, j))
            cols.append((self * zj).coeffs)
        mat = [[cols[j][i] for j in range(deg)] + [mpq(1 if i == 0 else 0)] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if mat[r][c])
            mat[c], mat[piv] = mat[piv], mat[c]
            inv = 1 / mat[c][c]
            mat[c] = [v * inv for v in mat[c]]
            for r in range(deg):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[c])]
        return CycNum._raw(n, tuple(mat[i][deg] for i in range(deg)))

    def __truediv__(self, other):
        if isinstance(other, CycNum):
            a, b = self._coerce(other)
            return a * b.inverse()
        s = _to_mpq(other)
        if s == 0:
            raise DivisionByZero("division by zero")
        return CycNum._raw(self.order, tuple(x / s for x in self.coeffs))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal values of different orders only hash alike when rational
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CycNum({self.order}, {self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if k == 0:
                terms.append(cs)
            else:
                mono = f"z{self.order}" if k == 1 else f"z{self.order}^{k}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{cs}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _fold(n: int, conv: list) -> tuple:
    deg = _phi(n)
    out = list(conv[:deg])
    for k in range(deg, len(conv)):
        c = conv[k]
        if c:
            for i, v in enumerate(_power_vec(n, k)):
                if v:
                    out[i] += c * v
    return tuple(out)


def _reduce_long(n: int, coeffs: tuple) -> tuple:
    deg = _phi(n)
    out = [mpq(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            for i, v in enumerate(_power_vec(n, k)):
                if v:
                    out[i] += c * v
    return tuple(out)


def root_of_unity(n: int, k: int) -> CycNum:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("order must be positive")
    return CycNum._raw(n, _power_vec(n, k % n))


def as_cyc(value, order: int) -> CycNum:
    """Coerce an int, Fraction or CycNum to a CycNum of the given order."""
    if isinstance(value, CycNum):
        return value.lift(order)
    return CycNum.rational(order, value)


def common_order(*orders: int) -> int:
    n = 1
    for m in orders:
        n = n * m // gcd(n, m)
    return n
