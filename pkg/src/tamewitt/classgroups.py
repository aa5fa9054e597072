"""Square classes, Hilbert symbols and norm groups of quadratic extensions.

Square classes of a non-dyadic local field ``K`` are recorded relative to the
canonical uniformizer ``pi`` of ``K`` and the Teichmuller lift ``u`` of the
smallest nonsquare residue: every ``x`` is ``pi^v * w`` and its class is
``(v mod 2, [w is a nonsquare unit])``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, NotInFixedField, PrecisionExhausted
from .padic import FieldDesc, Involution, PadicElement


@dataclass(frozen=True, order=True)
class SquareClass:
    val_parity: int
    unit: int

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.val_parity ^ other.val_parity, self.unit ^ other.unit)

    @property
    def label(self) -> str:
        return {(0, 0): "1", (0, 1): "u", (1, 0): "pi", (1, 1): "u*pi"}[(self.val_parity, self.unit)]

    def __str__(self) -> str:
        return self.label

    def element(self, field: FieldDesc, prec: int | None = None) -> PadicElement:
        """The canonical representative u^unit * pi^val_parity."""
        prec = field.default_precision if prec is None else prec
        x = field.nonsquare_unit(prec + 2) if self.unit else field.one(prec + 2)
        return x.shift(self.val_parity)

    def to_json(self) -> dict:
        return {"val_parity": self.val_parity, "unit": "u" if self.unit else "1"}

    @classmethod
    def from_json(cls, data: dict) -> "SquareClass":
        unit = data.get("unit", "1")
        if unit not in ("1", "u"):
            raise InputError(f"unit class must be '1' or 'u', got {unit!r}")
        return cls(int(data.get("val_parity", 0)) % 2, 1 if unit == "u" else 0)


ONE = SquareClass(0, 0)
U = SquareClass(0, 1)
PI = SquareClass(1, 0)
UPI = SquareClass(1, 1)
ALL_CLASSES = (ONE, U, PI, UPI)


def square_class(x: PadicElement) -> SquareClass:
    if x.is_zero():
        raise PrecisionExhausted("square class of an element that is zero at precision")
    kf = x.field.residue_field
    unit = 0 if kf.is_square(x.unit_part().residue()) else 1
    return SquareClass(x.val % 2, unit)


def minus_one_class(field: FieldDesc) -> SquareClass:
    """Class of -1: trivial iff q = 1 mod 4."""
    return ONE if field.q % 4 == 1 else U


def _as_class(a, field):
    if isinstance(a, SquareClass):
        return a
    return square_class(a if isinstance(a, PadicElement) else field(a))


def hilbert_symbol(a, b, field: FieldDesc) -> int:
    """Non-dyadic Hilbert symbol (a, b) in {+1, -1}.

    With ``a = pi^alpha * w1`` and ``b = pi^beta * w2``:
    ``(a, b) = (-1)^(alpha*beta*(q-1)/2) * chi(w1)^beta * chi(w2)^alpha``
    where ``chi`` is the quadratic residue character.
    """
    a, b = _as_class(a, field), _as_class(b, field)
    sign = 1
    if a.val_parity and b.val_parity and ((field.q - 1) // 2) % 2:
        sign = -sign
    if b.val_parity and a.unit:
        sign = -sign
    if a.val_parity and b.unit:
        sign = -sign
    return sign


@dataclass(frozen=True)
class NormClassContext:
    """A quadratic extension E/E0 given by a nontrivial involution of E."""

    involution: Involution

    def __post_init__(self):
        if self.involution.is_trivial:
            raise InputError("a norm class context needs a nontrivial involution")

    @property
    def field(self) -> FieldDesc:
        return self.involution.field

    @property
    def ramified(self) -> bool:
        return self.involution.is_ramified

    @property
    def fixed_residue_size(self) -> int:
        e0, f0 = self.involution.fixed_degrees
        return self.field.p**f0

    @property
    def minus_one_square_in_fixed(self) -> bool:
        return self.fixed_residue_size % 4 == 1

    @property
    def minus_one_is_norm(self) -> bool:
        return is_norm(self.field(-1), self)


def is_norm(x: PadicElement, ctx: NormClassContext | Involution) -> bool:
    """Whether ``x`` in E0 lies in N_{E/E0}(E^x).

    Unramified E/E0: norms are the elements of even valuation.  Ramified E/E0
    (sigma(pi) = -pi): N(pi) = -pi^2, so ``x`` is a norm iff the unit
    ``x * (-pi^2)^(-v/2)`` has square residue.
    """
    if isinstance(ctx, Involution):
        ctx = NormClassContext(ctx)
    sigma = ctx.involution
    if x.is_zero():
        raise PrecisionExhausted("norm test of an element that is zero at precision")
    if not sigma.is_fixed(x):
        raise NotInFixedField("element is not fixed by the involution")
    if not sigma.is_ramified:
        return x.val % 2 == 0
    k = x.val // 2
    unit = x.shift(-2 * k)
    if k % 2:
        unit = -unit
    return x.field.residue_field.is_square(unit.residue())


def norm_class(x: PadicElement, ctx: NormClassContext | Involution) -> int:
    """0 for norms, 1 otherwise."""
    return 0 if is_norm(x, ctx) else 1
