"""Fixed-precision elements of tame extensions of Q_p.

An element of a field ``E`` with residue degree ``f`` and ramification ``e``
is stored as

    x = p^k * sum_{b < e} sum_{a < f} coords[b*f + a] * t^a * pi^b

where ``t`` generates the unramified part ``U = Z_p[t]/(g)``, ``pi`` is the
canonical uniformizer with ``pi^e = p*c`` for a unit ``c`` of ``U``, and
``prec`` is the absolute precision in units of ``pi``: the element is known
modulo ``pi^prec``.  The representation is canonical: coordinates carry no
digits at or beyond ``prec`` and ``k`` is the exact power of ``p`` dividing all
coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from ..errors import DivisionByZeroAtPrecision, FieldMismatch, PrecisionExhausted

if TYPE_CHECKING:  # pragma: no cover
    from .field import FieldDesc


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def u_mul(a, b, g, f):
    """Product in Z[t]/(g) of two coefficient sequences (no modular reduction)."""
    if f == 1:
        return [a[0] * b[0]]
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for d in range(2 * f - 2, f - 1, -1):
        c = prod[d]
        if c:
            for i in range(f):
                if g[i]:
                    prod[d - f + i] -= c * g[i]
    return prod[:f]


def block_mul(x, y, flat, mod):
    """Product of two coordinate vectors in O_E, reduced modulo ``mod``."""
    e, f, g = flat.e, flat.f, flat.g
    if e == 1:
        return [c % mod for c in u_mul(x, y, g, f)]
    acc = [[0] * f for _ in range(2 * e - 1)]
    xb = [x[b * f:(b + 1) * f] for b in range(e)]
    yb = [y[b * f:(b + 1) * f] for b in range(e)]
    for i in range(e):
        if not any(xb[i]):
            continue
        for j in range(e):
            if not any(yb[j]):
                continue
            prod = u_mul(xb[i], yb[j], g, f)
            row = acc[i + j]
            for a in range(f):
                row[a] += prod[a]
    out = []
    c = flat.c
    for b in range(e):
        row = acc[b]
        if b + e < 2 * e - 1 and any(acc[b + e]):
            wrapped = u_mul(acc[b + e], c, g, f)
            row = [r + flat.p * w for r, w in zip(row, wrapped)]
        out.extend(v % mod for v in row)
    return out


class PadicElement:
    """Element of a tame extension of Q_p known to a finite absolute precision."""

    __slots__ = ("field", "k", "coords", "prec", "val")

    def __init__(self, field: "FieldDesc", k: int, coords: tuple[int, ...], prec: int, val: int):
        self.field = field
        self.k = k
        self.coords = coords
        self.prec = prec
        self.val = val

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, field: "FieldDesc", k: int, coords, prec: int) -> "PadicElement":
        """Normalize raw data into the canonical representation."""
        p, e, f = field.p, field.e, field.f
        out = []
        for b in range(e):
            m = _ceil_div(prec - b, e) - k
            block = coords[b * f:(b + 1) * f]
            if m <= 0:
                out.extend([0] * f)
            else:
                mod = p**m
                out.extend(c % mod for c in block)
        if not any(out):
            return cls(field, 0, (0,) * (e * f), prec, prec)
        j = min(vp(c, p) for c in out if c)
        if j:
            pj = p**j
            out = [c // pj for c in out]
            k += j
        inner = min(e * vp(c, p) + i // f for i, c in enumerate(out) if c)
        return cls(field, k, tuple(out), prec, e * k + inner)

    @classmethod
    def zero(cls, field: "FieldDesc", prec: int) -> "PadicElement":
        return cls(field, 0, (0,) * (field.e * field.f), prec, prec)

    @classmethod
    def from_int(cls, field: "FieldDesc", n: int, prec: int | None = None) -> "PadicElement":
        if prec is None:
            prec = (vp(n, field.p) * field.e if n else 0) + field.default_precision
        coords = [0] * (field.e * field.f)
        coords[0] = n
        return cls.make(field, 0, coords, prec)

    @classmethod
    def from_fraction(cls, field: "FieldDesc", q: Fraction, prec: int | None = None) -> "PadicElement":
        num = cls.from_int(field, q.numerator, None if prec is None else prec + field.e * 64)
        den = cls.from_int(field, q.denominator, None if prec is None else prec + field.e * 64)
        x = num / den
        return x if prec is None else x.truncate(prec)

    @classmethod
    def from_unit_coords(cls, field: "FieldDesc", ucoords, prec: int) -> "PadicElement":
        """Element of the unramified subring given by its t-coefficients."""
        coords = [0] * (field.e * field.f)
        for a, c in enumerate(ucoords):
            coords[a] = c
        return cls.make(field, 0, coords, prec)

    @classmethod
    def from_qp_coords(cls, field: "FieldDesc", coords: list["PadicElement"]) -> "PadicElement":
        """Inverse of :meth:`qp_coords`: combine Q_p coordinates on the basis t^a pi^b."""
        e, f, p = field.e, field.f, field.p
        if len(coords) != e * f:
            raise FieldMismatch("wrong number of Q_p coordinates")
        prec = None
        nonzero = [c for c in coords if not c.is_zero()]
        k = min((c.k for c in nonzero), default=0)
        ints = []
        for i, c in enumerate(coords):
            b = i // f
            pc = e * c.prec + b
            prec = pc if prec is None else min(prec, pc)
            ints.append(0 if c.is_zero() else c.coords[0] * p ** (c.k - k))
        return cls.make(field, k, ints, prec)

    # -- basic properties ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.val >= self.prec

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def relative_precision(self) -> int:
        return self.prec - self.val

    def identical(self, other: "PadicElement") -> bool:
        """Bit-for-bit equality of the canonical representations."""
        return (
            isinstance(other, PadicElement)
            and self.field == other.field
            and (self.k, self.coords, self.prec) == (other.k, other.coords, other.prec)
        )

    def truncate(self, prec: int) -> "PadicElement":
        if prec >= self.prec:
            return self
        return PadicElement.make(self.field, self.k, self.coords, prec)

    def lift_precision(self, prec: int) -> "PadicElement":
        """Reinterpret the stored digits as exact to ``prec`` (used for exact constants)."""
        return PadicElement.make(self.field, self.k, self.coords, prec)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O(pi^{self.prec})"
        return f"PadicElement(k={self.k}, coords={list(self.coords)}, val={self.val}, prec={self.prec})"

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "PadicElement":
        if isinstance(other, PadicElement):
            if other.field != self.field:
                other = self.field(other)
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicElement.zero(self.field, max(self.prec, self.prec - self.val) + 1)
            v = self.field.e * (vp(other.numerator, self.field.p) - vp(other.denominator, self.field.p)) if isinstance(other, Fraction) else self.field.e * vp(other, self.field.p)
            rel = max(self.prec - self.val, 1)
            prec = max(self.prec, v + rel) + 1
            if isinstance(other, Fraction):
                return PadicElement.from_fraction(self.field, other, prec)
            return PadicElement.from_int(self.field, other, prec)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        if other.is_zero():
            return self.truncate(prec)
        if self.is_zero():
            return other.truncate(prec)
        p = self.field.p
        k = min(self.k, other.k)
        sx, so = p ** (self.k - k), p ** (other.k - k)
        coords = [a * sx + b * so for a, b in zip(self.coords, other.coords)]
        return PadicElement.make(self.field, k, coords, prec)

    __radd__ = __add__

    def __neg__(self):
        return PadicElement.make(self.field, self.k, [-c for c in self.coords], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec + other.val, other.prec + self.val)
        if self.is_zero() or other.is_zero():
            return PadicElement.zero(self.field, prec)
        k = self.k + other.k
        digits = max(_ceil_div(prec, self.field.e) - k, 1)
        flat = self.field.flat(digits + 2)
        coords = block_mul(self.coords, other.coords, flat, self.field.p ** (digits + 1))
        return PadicElement.make(self.field, k, coords, prec)

    __rmul__ = __mul__

    def shift(self, n: int) -> "PadicElement":
        """Multiply by pi^n exactly."""
        if n == 0:
            return self
        field = self.field
        e, f, p = field.e, field.f, field.p
        if self.is_zero():
            return PadicElement.zero(field, self.prec + n)
        q, r = divmod(n, e)
        k = self.k + q
        prec = self.prec + n
        digits = max(_ceil_div(prec, e) - k, 1) + 2
        flat = field.flat(digits + abs(q) + 2)
        mod = p ** (digits + 1)
        blocks = [list(self.coords[b * f:(b + 1) * f]) for b in range(e)]
        if r:
            new = [[0] * f for _ in range(e)]
            for b in range(e):
                tgt = b + r
                if tgt >= e:
                    wrapped = u_mul(blocks[b], flat.c, flat.g, f)
                    new[tgt - e] = [p * w for w in wrapped]
                else:
                    new[tgt] = blocks[b]
            blocks = new
        if q:
            cq = flat.c_power(q, digits + 1)
            blocks = [[v % mod for v in u_mul(bl, cq, flat.g, f)] for bl in blocks]
        coords = [v for bl in blocks for v in bl]
        return PadicElement.make(field, k, coords, prec)

    def unit_part(self) -> "PadicElement":
        if self.is_zero():
            raise PrecisionExhausted("unit part of an element that is zero at precision")
        return self.shift(-self.val)

    def residue(self):
        """Image in the residue field (the element must be integral)."""
        if self.val > 0 or self.is_zero():
            if self.prec <= 0:
                raise PrecisionExhausted("no residue digit available")
            return self.field.residue_field.zero
        if self.val < 0:
            raise ValueError("residue of a non-integral element")
        f = self.field.f
        return self.field.residue_field.elem(self.coords[:f])

    def _unit_inverse(self) -> "PadicElement":
        kf = self.field.residue_field
        r0 = kf.inv(self.residue())
        w = PadicElement.from_unit_coords(self.field, r0, self.prec)
        for _ in range(self.prec.bit_length() + 2):
            err = 1 - self * w
            if err.is_zero():
                break
            w = w + w * err
        return w.truncate(self.prec)

    def inverse(self) -> "PadicElement":
        if self.is_zero():
            raise DivisionByZeroAtPrecision("inverse of an element that is zero at precision")
        v = self.val
        return self.shift(-v)._unit_inverse().shift(-v)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, PadicElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- coordinates --------------------------------------------------------

    def qp_coords(self) -> list["PadicElement"]:
        """Coordinates over Q_p on the integral basis t^a pi^b."""
        from .field import qp_field

        qp = qp_field(self.field.p)
        e, f = self.field.e, self.field.f
        out = []
        for i, c in enumerate(self.coords):
            b = i // f
            abs_prec = _ceil_div(self.prec - b, e)
            if self.is_zero() or c == 0:
                out.append(PadicElement.zero(qp, abs_prec))
            else:
                out.append(PadicElement.make(qp, self.k, [c], abs_prec))
        return out

    def to_json(self) -> dict:
        return {"k": self.k, "coords": list(self.coords), "prec": self.prec}
