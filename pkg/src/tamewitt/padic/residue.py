"""Finite fields F_p[t]/(g) and polynomials over F_p.

Elements of a residue field are tuples of ``f`` integers in ``[0, p)``, the
coefficients of ``1, t, ..., t^(f-1)``.  Polynomials over F_p are lists of
coefficients, lowest degree first.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..errors import NotIrreducible

Residue = tuple[int, ...]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the polynomial ``m`` over F_p."""
    a = _trim([x % p for x in a])
    m = _trim([x % p for x in m])
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            divisor = list(lower) + [1]
            if not poly_mod(poly, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, f: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree ``f`` over F_p.

    Candidates ``t^f + c_{f-1} t^{f-1} + ... + c_0`` are scanned in order of the
    integer ``sum c_i p^i``; the first irreducible one is returned.
    """
    if f == 1:
        return (0, 1)
    for n in range(p**f):
        coeffs = [(n // p**i) % p for i in range(f)]
        if is_irreducible(coeffs + [1], p):
            return tuple(coeffs) + (1,)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def check_modulus(poly: tuple[int, ...] | list[int], p: int) -> tuple[int, ...]:
    poly = tuple(c % p for c in poly)
    if not poly or poly[-1] != 1:
        raise NotIrreducible(f"residue polynomial {list(poly)} is not monic")
    if not is_irreducible(list(poly), p):
        raise NotIrreducible(f"residue polynomial {list(poly)} factors over F_{p}")
    return poly


class ResidueField:
    """The finite field F_p[t]/(modulus)."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.modulus = tuple(modulus)
        self.f = len(modulus) - 1
        self.q = p**self.f
        self.zero: Residue = (0,) * self.f
        self.one: Residue = (1,) + (0,) * (self.f - 1)

    def __repr__(self) -> str:
        return f"ResidueField(p={self.p}, f={self.f})"

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def elem(self, value) -> Residue:
        if isinstance(value, int):
            return ((value % self.p),) + (0,) * (self.f - 1)
        value = tuple(int(c) % self.p for c in value)
        if len(value) > self.f:
            value = tuple(poly_mod(list(value), list(self.modulus), self.p))
        return value + (0,) * (self.f - len(value))

    def elements(self):
        """All field elements, ordered by the integer ``sum c_i p^i``."""
        for n in range(self.q):
            yield tuple((n // self.p**i) % self.p for i in range(self.f))

    def index(self, a: Residue) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def add(self, a: Residue, b: Residue) -> Residue:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Residue, b: Residue) -> Residue:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Residue) -> Residue:
        return tuple(-x % self.p for x in a)

    def mul(self, a: Residue, b: Residue) -> Residue:
        p, f = self.p, self.f
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        g = self.modulus
        for d in range(2 * f - 2, f - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(f):
                    prod[d - f + i] -= c * g[i]
            prod[d] = 0
        return tuple(c % p for c in prod[:f])

    def pow(self, a: Residue, n: int) -> Residue:
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a: Residue) -> Residue:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow(a, self.q - 2)

    def is_square(self, a: Residue) -> bool:
        if a == self.zero:
            return True
        return self.pow(a, (self.q - 1) // 2) == self.one

    def legendre(self, a: Residue) -> int:
        if a == self.zero:
            return 0
        return 1 if self.is_square(a) else -1

    @property
    def nonsquare(self) -> Residue:
        """Smallest nonsquare in enumeration order."""
        for a in self.elements():
            if a != self.zero and not self.is_square(a):
                return a
        raise AssertionError("odd finite field without nonsquares")  # pragma: no cover

    def sqrt(self, a: Residue) -> Residue:
        """Tonelli-Shanks square root; raises ValueError on nonsquares."""
        if a == self.zero:
            return a
        if not self.is_square(a):
            raise ValueError("not a square in the residue field")
        s, t = 0, self.q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = self.pow(self.nonsquare, t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        m = s
        while b != self.one:
            i, bb = 0, b
            while bb != self.one:
                bb = self.mul(bb, bb)
                i += 1
            c = z
            for _ in range(m - i - 1):
                c = self.mul(c, c)
            x = self.mul(x, c)
            z = self.mul(c, c)
            b = self.mul(b, z)
            m = i
        return min(x, self.neg(x), key=self.index)

    def eval_poly(self, coeffs: list[Residue], x: Residue) -> Residue:
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def roots(self, coeffs: list[Residue]) -> list[Residue]:
        """All roots in enumeration order, by exhaustive evaluation."""
        return [x for x in self.elements() if self.eval_poly(coeffs, x) == self.zero]

    def frobenius(self, a: Residue, power: int = 1) -> Residue:
        return self.pow(a, self.p**power)
