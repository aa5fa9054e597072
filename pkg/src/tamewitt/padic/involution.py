"""Involutions of flattened tame fields.

An automorphism of ``E = U(pi)`` with ``pi^e = p*c`` is fixed by two data: a
power ``j`` of Frobenius giving the image of ``t``, and a unit ``m`` of ``U``
with ``sigma(pi) = m*pi``.  The unit must satisfy ``m^e = sigma(c)/c``, so it is
pinned down by its residue.  The automorphism is an involution exactly when
``2j = 0 mod f`` and ``m*sigma(m) = 1``.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import FieldMismatch, NotAnInvolution
from .element import PadicElement
from .field import FieldDesc, LinearMap, _basis_images, _bucket, embedding, teichmuller
from .poly import hensel_lift


def _unit_poly_at(field: FieldDesc, ucoords, tau: PadicElement) -> PadicElement:
    """Evaluate a t-polynomial with integer coefficients at ``tau``."""
    prec = tau.prec
    acc = field.zero(prec)
    for c in reversed(list(ucoords)):
        acc = acc * tau + field(c, prec)
    return acc


class Involution:
    """An involution of a field, given by a Frobenius power and a multiplier residue."""

    def __init__(self, field: FieldDesc, frob: int = 0, multiplier=1):
        self.field = field
        f, e = field.f, field.e
        self.frob = frob % f
        kf = field.residue_field
        self.mult_residue = kf.elem(multiplier)
        if (2 * self.frob) % f:
            raise NotAnInvolution(f"Frobenius power {frob} does not square to the identity on a residue field of degree {f}")
        if self.mult_residue == kf.zero:
            raise NotAnInvolution("the multiplier must be a unit")
        # residue conditions: r^e = sigma(c)/c and r * sigma(r) = 1
        cbar = kf.elem(field.flat(1).c)
        ratio = kf.mul(kf.frobenius(cbar, self.frob), kf.inv(cbar))
        r = self.mult_residue
        if kf.pow(r, e) != ratio:
            raise NotAnInvolution("sigma(pi)/pi does not have the required e-th power")
        if kf.mul(r, kf.frobenius(r, self.frob)) != kf.one:
            raise NotAnInvolution("sigma does not square to the identity on the uniformizer")
        self._map = LinearMap(field, field, 1, self._images)

    # -- structure -------------------------------------------------------------

    @classmethod
    def identity(cls, field: FieldDesc) -> "Involution":
        return cls(field, 0, 1)

    @property
    def is_trivial(self) -> bool:
        return self.frob == 0 and self.mult_residue == self.field.residue_field.one

    @property
    def is_ramified(self) -> bool:
        """Whether E/E0 is ramified (only meaningful for nontrivial involutions)."""
        return not self.is_trivial and self.frob == 0

    @property
    def fixed_degrees(self) -> tuple[int, int]:
        """(e, f) of the fixed field E0 over Q_p."""
        e, f = self.field.e, self.field.f
        if self.is_trivial:
            return e, f
        if self.is_ramified:
            return e // 2, f
        return e, f // 2

    def __eq__(self, other):
        return (
            isinstance(other, Involution)
            and self.field == other.field
            and (self.frob, self.mult_residue) == (other.frob, other.mult_residue)
        )

    def __hash__(self):
        return hash((self.field, self.frob, self.mult_residue))

    def __repr__(self) -> str:
        return f"Involution(frob={self.frob}, mult={list(self.mult_residue)}, field={self.field!r})"

    def to_json(self) -> dict:
        r = self.mult_residue
        return {"frob": self.frob, "mult": r[0] if len(r) == 1 else list(r)}

    # -- lifted data ---------------------------------------------------------------

    def t_image(self, prec: int) -> PadicElement:
        return _t_image(self.field, self.frob, _bucket(-(-prec // self.field.e) + 2)).truncate(prec)

    def multiplier(self, prec: int) -> PadicElement:
        return _multiplier(self.field, self.frob, self.mult_residue, _bucket(-(-prec // self.field.e) + 2)).truncate(prec)

    def _images(self, prec: int):
        field = self.field
        work = prec + 2 * field.e
        pi_img = self.multiplier(work) * field.uniformizer(work)
        return _basis_images(field, self.t_image(work), pi_img, field.e, field.f, prec)

    def __call__(self, x: PadicElement) -> PadicElement:
        if x.field != self.field:
            raise FieldMismatch("element does not belong to the involution's field")
        if self.is_trivial:
            return x
        return self._map(x)

    def is_fixed(self, x: PadicElement) -> bool:
        return self(x) == x

    def is_skew(self, x: PadicElement) -> bool:
        return self(x) == -x

    def norm(self, x: PadicElement) -> PadicElement:
        return x * self(x)

    # -- distinguished elements ------------------------------------------------------

    def skew_element(self, prec: int | None = None) -> PadicElement:
        """Canonical nonzero skew element: pi if sigma(pi) = -pi, else t - sigma(t)."""
        field = self.field
        prec = field.default_precision if prec is None else prec
        if self.is_trivial:
            raise NotAnInvolution("the identity has no nonzero skew elements")
        kf = field.residue_field
        if self.mult_residue == kf.neg(kf.one):
            return field.uniformizer(prec + 1)
        t = field.t(prec + 1)
        return t - self(t)

    def non_norm(self, prec: int | None = None) -> PadicElement:
        """A fixed element that is not a norm from E: the nonsquare unit (ramified)
        or a fixed element of valuation one (unramified)."""
        field = self.field
        prec = field.default_precision if prec is None else prec
        if self.is_trivial:
            raise NotAnInvolution("no norm group for the identity")
        if self.is_ramified:
            return field.nonsquare_unit(prec)
        work = prec + 2 * field.e
        pi = field.uniformizer(work)
        if self.mult_residue == field.residue_field.one:
            return pi.truncate(prec + 1)
        m = self.multiplier(work)
        for a in field.basis(work)[: field.f]:
            y = a + m * self(a)
            if y.val == 0:
                return (y * pi).truncate(prec + 1)
        raise AssertionError("no unit solution of Hilbert 90 found")  # pragma: no cover

    def fixed_uniformizer(self, prec: int | None = None) -> PadicElement:
        """A sigma-fixed element of minimal positive valuation (a uniformizer of E0)."""
        field = self.field
        prec = field.default_precision if prec is None else prec
        if self.is_trivial:
            return field.uniformizer(prec + 1)
        if self.is_ramified:
            return field.uniformizer(prec + 2) ** 2
        return self.non_norm(prec)

    def fixed_nonsquare_unit(self, prec: int | None = None) -> PadicElement:
        """Teichmuller lift of the smallest residue that is fixed and a nonsquare in k_E0."""
        field = self.field
        prec = field.default_precision if prec is None else prec
        if self.is_trivial or self.is_ramified:
            return field.nonsquare_unit(prec)
        kf = field.residue_field
        q0 = field.p ** (field.f // 2)
        for r in kf.elements():
            if r == kf.zero or kf.frobenius(r, self.frob) != r:
                continue
            if kf.pow(r, (q0 - 1) // 2) != kf.one:
                return teichmuller(field, r, prec)
        raise AssertionError("fixed residue field has no nonsquare")  # pragma: no cover

    def restricts_to(self, other: "Involution") -> bool:
        """Whether this involution extends ``other`` on a subfield of the tower."""
        sub = other.field
        emb = embedding(sub, self.field)
        prec = self.field.default_precision
        gens = [sub.t(prec), sub.uniformizer(prec)]
        return all(self(emb(g)) == emb(other(g)) for g in gens)


@lru_cache(maxsize=None)
def _t_image(field: FieldDesc, frob: int, C: int) -> PadicElement:
    prec = field.e * C
    kf = field.residue_field
    g = field.flat(C).g
    tbar = kf.elem((0, 1)) if field.f > 1 else kf.elem(-g[0])
    target = kf.frobenius(tbar, frob)
    poly = [field(c, prec + field.e) for c in g]
    return hensel_lift(poly, target, prec)


@lru_cache(maxsize=None)
def _multiplier(field: FieldDesc, frob: int, residue, C: int) -> PadicElement:
    prec = field.e * C
    e = field.e
    if e == 1:
        return PadicElement.from_unit_coords(field, residue, prec)
    work = prec + 2 * e
    c = field.flat(C + 4).c
    tau = _t_image(field, frob, _bucket(C + 4))
    cu = PadicElement.from_unit_coords(field, c, work)
    sc = _unit_poly_at(field, c, tau.truncate(work))
    ratio = sc / cu
    poly = [-ratio] + [field.zero(work)] * (e - 1) + [field.one(work)]
    return hensel_lift(poly, residue, prec)


def involutions(field: FieldDesc) -> list[Involution]:
    """Every involution (including the identity) in this model, in a fixed order."""
    out = []
    kf = field.residue_field
    frobs = [0] + ([field.f // 2] if field.f % 2 == 0 else [])
    for j in frobs:
        for r in kf.elements():
            if r == kf.zero:
                continue
            try:
                out.append(Involution(field, j, r))
            except NotAnInvolution:
                continue
    return out
