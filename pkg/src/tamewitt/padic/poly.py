"""Polynomials over rings of integers: evaluation, Hensel lifting, square roots."""

from __future__ import annotations

from ..errors import NoSimpleRoot, NotARoot, PrecisionExhausted
from .element import PadicElement


def _as_elements(poly, field, prec):
    out = []
    for c in poly:
        if isinstance(c, PadicElement):
            out.append(c if c.field == field else field(c))
        else:
            out.append(field(c, prec))
    return out


def evaluate(poly: list[PadicElement], x: PadicElement) -> PadicElement:
    """Horner evaluation; coefficients lowest degree first."""
    acc = poly[-1]
    for c in reversed(poly[:-1]):
        acc = acc * x + c
    return acc


def derivative(poly: list[PadicElement]) -> list[PadicElement]:
    return [c * i for i, c in enumerate(poly)][1:]


def hensel_lift(poly, r0, N: int, field=None) -> PadicElement:
    """Lift a simple residue root of a monic integral polynomial to precision ``N``.

    ``poly`` holds coefficients lowest degree first, as field elements or
    integers (integers need ``field``).  ``r0`` is a residue-field element (int
    or coefficient tuple) or an integral field element whose residue is used.
    The result ``r`` satisfies ``val(poly(r)) >= N`` and ``r == r0`` mod pi.
    """
    if field is None:
        field = next(c.field for c in poly if isinstance(c, PadicElement))
    work = N + field.e
    coeffs = _as_elements(poly, field, work)
    kf = field.residue_field
    if isinstance(r0, PadicElement):
        r0 = r0.residue()
    r0 = kf.elem(r0)
    res = [c.residue() for c in coeffs]
    if kf.eval_poly(res, r0) != kf.zero:
        raise NotARoot("the residue value is not a root modulo the maximal ideal")
    dres = [kf.mul(kf.elem(i), c) for i, c in enumerate(res)][1:]
    if kf.eval_poly(dres, r0) == kf.zero:
        raise NoSimpleRoot("the derivative vanishes at the residue root")

    dpoly = derivative(coeffs)
    r = PadicElement.from_unit_coords(field, r0, work)
    for _ in range(work.bit_length() + 3):
        fr = evaluate(coeffs, r)
        if fr.val >= N:
            break
        r = (r - fr / evaluate(dpoly, r)).truncate(work)
    fr = evaluate(coeffs, r)
    if fr.val < N or fr.prec < N:
        raise PrecisionExhausted(f"coefficients too imprecise to reach precision {N}")
    return r.truncate(N)


def is_square(x: PadicElement) -> bool:
    """Whether ``x`` is a nonzero square (valuation parity plus residue test)."""
    if x.is_zero():
        raise PrecisionExhausted("square test of an element that is zero at precision")
    if x.val % 2:
        return False
    return x.field.residue_field.is_square(x.unit_part().residue())


def sqrt(x: PadicElement) -> PadicElement:
    """A square root of ``x`` to the relative precision of ``x``; ValueError if none."""
    if not is_square(x):
        raise ValueError("not a square")
    field = x.field
    m = x.val // 2
    u = x.unit_part()
    kf = field.residue_field
    r0 = kf.sqrt(u.residue())
    rel = u.prec
    w = hensel_lift([-u, field.zero(rel + field.e), field.one(rel + field.e)], r0, rel, field)
    return w.shift(m)


def square_witness(x: PadicElement) -> tuple[bool, PadicElement | None]:
    """(is_square(x), w) with ``w*w == x`` at precision when ``x`` is a square."""
    if is_square(x):
        return True, sqrt(x)
    return False, None


def norm_quadratic(x: PadicElement, sigma) -> PadicElement:
    """x * sigma(x) for a nontrivial involution ``sigma``."""
    from ..errors import NotQuadratic

    if sigma.is_trivial:
        raise NotQuadratic("the involution is trivial")
    return x * sigma(x)
