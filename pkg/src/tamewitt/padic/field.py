"""Tame extension towers over Q_p and their flattened arithmetic data.

A :class:`FieldDesc` records a base unramified field ``U_{f0}`` together with a
tower of unramified and Eisenstein steps.  Internally every tower is flattened
to ``E = U(pi)`` with ``U = Z_p[t]/(g)`` unramified of degree ``f`` and
``pi^e = p*c`` for a unit ``c`` of ``U``.  The flattened constants are computed
lazily, to a requested p-adic precision, and cached.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from ..errors import (
    EvenResidueChar,
    FieldMismatch,
    InputError,
    NotIrreducible,
    PrecisionExhausted,
    WildExtension,
)
from .element import PadicElement, u_mul
from .residue import ResidueField, check_modulus, default_modulus

DEFAULT_PRECISION = int(os.environ.get("TAMEWITT_PRECISION", "32"))
_MIN_CONST_DIGITS = 64


def _bucket(digits: int) -> int:
    c = _MIN_CONST_DIGITS
    while c < digits:
        c *= 2
    return c


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Step:
    """One step of a tame tower.

    ``kind`` is ``"unramified"`` (degree ``f``) or ``"eisenstein"`` (degree
    ``e``, root of ``X^e - pi_K * unit``).  ``unit`` holds the t-coefficients of
    the unit in the unramified subring of the field being extended.
    """

    kind: str
    degree: int
    unit: tuple[int, ...] = (1,)

    def to_json(self) -> dict:
        if self.kind == "unramified":
            return {"kind": "unramified", "f": self.degree}
        unit = self.unit[0] if len(self.unit) == 1 else list(self.unit)
        return {"kind": "eisenstein", "e": self.degree, "unit": unit}


def Unramified(f: int) -> Step:
    return Step("unramified", int(f))


def Eisenstein(e: int, unit=1) -> Step:
    if isinstance(unit, int):
        unit = (unit,)
    return Step("eisenstein", int(e), tuple(int(u) for u in unit))


@dataclass(frozen=True)
class FieldDesc:
    p: int
    f0: int = 1
    tower: tuple[Step, ...] = ()
    modulus: tuple[int, ...] | None = None
    default_precision: int = field(default=DEFAULT_PRECISION, compare=False, hash=False)

    # -- derived invariants --------------------------------------------------

    @cached_property
    def e(self) -> int:
        e = 1
        for s in self.tower:
            if s.kind == "eisenstein":
                e *= s.degree
        return e

    @cached_property
    def f(self) -> int:
        f = self.f0
        for s in self.tower:
            if s.kind == "unramified":
                f *= s.degree
        return f

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def degree(self) -> int:
        return self.e * self.f

    @cached_property
    def residue_modulus(self) -> tuple[int, ...]:
        if self.f == self.f0 and self.modulus is not None:
            return self.modulus
        return default_modulus(self.p, self.f)

    @cached_property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.p, self.residue_modulus)

    def prefix(self, n: int) -> "FieldDesc":
        return FieldDesc(self.p, self.f0, self.tower[:n], self.modulus, self.default_precision)

    @property
    def parent(self) -> "FieldDesc | None":
        return self.prefix(len(self.tower) - 1) if self.tower else None

    def is_subfield_of(self, other: "FieldDesc") -> bool:
        """True when ``other`` is obtained from ``self`` by further steps."""
        return (
            (self.p, self.f0, self.modulus) == (other.p, other.f0, other.modulus)
            and other.tower[: len(self.tower)] == self.tower
        )

    def relative_degrees(self, sub: "FieldDesc") -> tuple[int, int]:
        """(e(self/sub), f(self/sub))."""
        if not sub.is_subfield_of(self):
            raise FieldMismatch("not a subfield in this tower")
        return self.e // sub.e, self.f // sub.f

    def with_precision(self, n: int) -> "FieldDesc":
        return FieldDesc(self.p, self.f0, self.tower, self.modulus, n)

    def __repr__(self) -> str:
        steps = ", ".join(f"{s.kind[0].upper()}{s.degree}" + (f"({list(s.unit)})" if s.kind == "eisenstein" else "") for s in self.tower)
        return f"FieldDesc(p={self.p}, f0={self.f0}, tower=[{steps}], e={self.e}, f={self.f})"

    # -- elements ------------------------------------------------------------

    def __call__(self, value, prec: int | None = None) -> PadicElement:
        """Coerce an integer, fraction, or element of a subfield into this field."""
        from fractions import Fraction

        if isinstance(value, PadicElement):
            if value.field == self:
                return value if prec is None else value.truncate(prec)
            x = embed(value, self)
            return x if prec is None else x.truncate(prec)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return PadicElement.from_int(self, value, prec)
        if isinstance(value, Fraction):
            return PadicElement.from_fraction(self, value, prec)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def zero(self, prec: int | None = None) -> PadicElement:
        return PadicElement.zero(self, self.default_precision if prec is None else prec)

    def one(self, prec: int | None = None) -> PadicElement:
        return PadicElement.from_int(self, 1, prec)

    def uniformizer(self, prec: int | None = None) -> PadicElement:
        """The canonical uniformizer pi (the generator of the last Eisenstein step)."""
        prec = self.default_precision + 1 if prec is None else prec
        if self.e == 1:
            return PadicElement.from_int(self, self.p, prec)
        coords = [0] * (self.e * self.f)
        coords[self.f] = 1
        return PadicElement.make(self, 0, coords, prec)

    def t(self, prec: int | None = None) -> PadicElement:
        """Generator of the unramified subring."""
        prec = self.default_precision if prec is None else prec
        coords = [0] * (self.e * self.f)
        if self.f == 1:
            coords[0] = -self.residue_modulus[0]
        else:
            coords[1] = 1
        return PadicElement.make(self, 0, coords, prec)

    def unit(self, residue, prec: int | None = None) -> PadicElement:
        """Lift of a residue (int or coefficient tuple) to the unramified subring."""
        prec = self.default_precision if prec is None else prec
        return PadicElement.from_unit_coords(self, self.residue_field.elem(residue), prec)

    def from_coords(self, coords, k: int = 0, prec: int | None = None) -> PadicElement:
        prec = self.default_precision if prec is None else prec
        return PadicElement.make(self, k, list(coords), prec)

    def basis(self, prec: int | None = None) -> list[PadicElement]:
        """The integral Q_p-basis t^a pi^b, indexed by b*f + a."""
        prec = self.default_precision if prec is None else prec
        out = []
        for i in range(self.e * self.f):
            coords = [0] * (self.e * self.f)
            coords[i] = 1
            out.append(PadicElement.make(self, 0, coords, prec))
        return out

    def nonsquare_unit(self, prec: int | None = None) -> PadicElement:
        """Teichmuller lift of the smallest nonsquare residue."""
        prec = self.default_precision if prec is None else prec
        return teichmuller(self, self.residue_field.nonsquare, prec)

    # -- flattened constants -------------------------------------------------

    def flat(self, digits: int) -> "Flat":
        return _flat(self, _bucket(digits))

    def to_json(self) -> dict:
        out = {"p": self.p, "f0": self.f0, "tower": [s.to_json() for s in self.tower]}
        if self.modulus is not None:
            out["poly"] = list(self.modulus)
        return out


class Flat:
    """Flattened constants of a field at p-adic precision ``C``."""

    def __init__(self, p: int, e: int, f: int, g: tuple[int, ...], c: tuple[int, ...], C: int):
        self.p, self.e, self.f, self.g, self.C = p, e, f, g, C
        self.c = c
        self._cinv = None

    def c_power(self, n: int, digits: int) -> list[int]:
        mod = self.p**digits
        base = self.c if n >= 0 else self.cinv
        n = abs(n)
        result = [1] + [0] * (self.f - 1)
        b = list(base)
        while n:
            if n & 1:
                result = [v % mod for v in u_mul(result, b, self.g, self.f)]
            b = [v % mod for v in u_mul(b, b, self.g, self.f)]
            n >>= 1
        return result

    @property
    def cinv(self) -> tuple[int, ...]:
        if self._cinv is None:
            u = _unramified_field(self.p, self.f, self.g)
            cu = PadicElement.from_unit_coords(u, self.c, self.C)
            inv = cu.inverse()
            coords = [c * self.p**inv.k for c in inv.coords]
            self._cinv = tuple(coords[: self.f])
        return self._cinv


def _unramified_field(p: int, f: int, g: tuple[int, ...]) -> FieldDesc:
    mod = tuple(c % p for c in g)
    if mod == default_modulus(p, f):
        return FieldDesc(p, f)
    return FieldDesc(p, f, (), mod)


@lru_cache(maxsize=None)
def _flat(desc: FieldDesc, C: int) -> Flat:
    p = desc.p
    if not desc.tower:
        g = desc.residue_modulus
        return Flat(p, 1, desc.f0, g, (1,) + (0,) * (desc.f0 - 1), C)
    parent = desc.parent
    pf = _flat(parent, C)
    step = desc.tower[-1]
    mod = p**C
    if step.kind == "eisenstein":
        w = list(step.unit) + [0] * (pf.f - len(step.unit))
        we = [1] + [0] * (pf.f - 1)
        for _ in range(pf.e):
            we = [v % mod for v in u_mul(we, w, pf.g, pf.f)]
        c = tuple(v % mod for v in u_mul(pf.c, we, pf.g, pf.f))
        return Flat(p, pf.e * step.degree, pf.f, pf.g, c, C)
    # unramified: push c into the larger unramified ring
    f_new = pf.f * step.degree
    g_new = default_modulus(p, f_new)
    tau = _unramified_embedding_root(p, pf.g, f_new, C)
    c_new = _eval_u(pf.c, tau, p, f_new, g_new, C)
    return Flat(p, pf.e, f_new, g_new, tuple(c_new), C)


@lru_cache(maxsize=None)
def _unramified_embedding_root(p: int, g_old: tuple[int, ...], f_new: int, C: int) -> tuple[int, ...]:
    """t-coefficients in U_{f_new} of the root of g_old lifting its smallest residue root."""
    from .poly import hensel_lift

    u_new = FieldDesc(p, f_new)
    kf = u_new.residue_field
    coeffs = [kf.elem(c) for c in g_old]
    roots = kf.roots(coeffs)
    if not roots:
        raise AssertionError("unramified degree does not divide")  # pragma: no cover
    poly = [u_new(c, C + 4) for c in g_old]
    r = hensel_lift(poly, roots[0], C + 2)
    return tuple(c * p**r.k for c in r.coords[: u_new.f])


def _eval_u(coeffs, tau, p, f, g, C):
    mod = p**C
    acc = [0] * f
    for c in reversed(list(coeffs)):
        acc = [v % mod for v in u_mul(acc, tau, g, f)]
        acc[0] = (acc[0] + c) % mod
    return acc


@lru_cache(maxsize=None)
def qp_field(p: int) -> FieldDesc:
    return FieldDesc(p, 1)


# -- public constructors --------------------------------------------------------


def make_field(p: int, f0: int = 1, poly=None, precision: int | None = None) -> FieldDesc:
    """The unramified extension of Q_p of degree ``f0``.

    ``poly`` optionally supplies the residue polynomial (coefficients lowest
    degree first, monic); otherwise one is chosen deterministically.
    """
    if p == 2:
        raise EvenResidueChar("p = 2 is not supported (odd residual characteristic only)")
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    if f0 < 1:
        raise InputError("f0 must be positive")
    modulus = None
    if poly is not None:
        modulus = check_modulus(tuple(poly), p)
        if len(modulus) - 1 != f0:
            raise NotIrreducible(f"residue polynomial has degree {len(modulus) - 1}, expected {f0}")
        if modulus == default_modulus(p, f0):
            modulus = None
    return FieldDesc(p, f0, (), modulus, DEFAULT_PRECISION if precision is None else precision)


def extend(F: FieldDesc, step: Step) -> FieldDesc:
    if step.degree < 1:
        raise InputError("extension degree must be positive")
    if step.kind == "eisenstein":
        if step.degree % F.p == 0:
            raise WildExtension(f"Eisenstein degree {step.degree} is divisible by p={F.p}")
        if len(step.unit) > F.f:
            raise InputError("unit has more coefficients than the residue degree")
        if F.residue_field.elem(step.unit) == F.residue_field.zero:
            raise InputError("Eisenstein constant term must be a unit times the uniformizer")
    elif step.kind != "unramified":
        raise InputError(f"unknown step kind {step.kind!r}")
    return FieldDesc(F.p, F.f0, F.tower + (step,), F.modulus, F.default_precision)


# -- embeddings -----------------------------------------------------------------


class LinearMap:
    """A Q_p-linear map between fields, integral on the basis t^a pi^b."""

    def __init__(self, source: FieldDesc, target: FieldDesc, ratio: int, images):
        self.source, self.target, self.ratio = source, target, ratio
        self._images = images  # callable: prec -> list of target elements
        self._cache: dict[int, list[list[int]]] = {}

    def matrix(self, digits: int) -> list[list[int]]:
        C = _bucket(digits)
        if C not in self._cache:
            p = self.target.p
            need = self.target.e * (C + 4)
            imgs = self._images(need)
            mod = p**C
            cols = []
            for x in imgs:
                if x.prec < self.target.e * C:
                    raise PrecisionExhausted("basis image computed below the requested precision")
                if x.is_zero():
                    cols.append([0] * len(x.coords))
                else:
                    cols.append([(c * p**x.k) % mod for c in x.coords])
            self._cache[C] = cols
        return self._cache[C]

    def __call__(self, x: PadicElement) -> PadicElement:
        if x.field != self.source:
            raise FieldMismatch("element does not belong to the map's source")
        prec = self.ratio * x.prec
        if x.is_zero():
            return PadicElement.zero(self.target, prec)
        digits = -((-prec) // self.target.e) - x.k + 2
        cols = self.matrix(max(digits, 1))
        n = len(cols[0])
        out = [0] * n
        for xc, col in zip(x.coords, cols):
            if xc:
                for i in range(n):
                    out[i] += xc * col[i]
        return PadicElement.make(self.target, x.k, out, prec)


def _basis_images(target: FieldDesc, t_img, pi_img, e_src: int, f_src: int, prec: int):
    out = []
    tp = [target(1, prec)]
    for _ in range(1, f_src):
        tp.append(tp[-1] * t_img)
    pp = target(1, prec)
    for b in range(e_src):
        for a in range(f_src):
            out.append(tp[a] * pp)
        pp = pp * pi_img
    return out


@lru_cache(maxsize=None)
def _step_embedding(desc: FieldDesc) -> LinearMap:
    """Embedding of ``desc.parent`` into ``desc``."""
    parent = desc.parent
    step = desc.tower[-1]

    if step.kind == "eisenstein":
        def images(prec):
            w = list(step.unit) + [0] * (parent.f - len(step.unit))
            winv = PadicElement.from_unit_coords(desc, w, prec + 2 * desc.e).inverse()
            pi_img = desc.uniformizer(prec + 2 * desc.e).shift(step.degree - 1) * winv
            return _basis_images(desc, desc.t(prec + 2 * desc.e), pi_img, parent.e, parent.f, prec)

        return LinearMap(parent, desc, step.degree, images)

    def images(prec):
        C = -(-prec // desc.e) + 4
        tau = _unramified_embedding_root(desc.p, _flat(parent, _bucket(C)).g, desc.f, _bucket(C))
        t_img = PadicElement.from_unit_coords(desc, tau, prec + 2)
        return _basis_images(desc, t_img, desc.uniformizer(prec + 2 * desc.e), parent.e, parent.f, prec)

    return LinearMap(parent, desc, 1, images)


@lru_cache(maxsize=None)
def embedding(sub: FieldDesc, sup: FieldDesc) -> LinearMap:
    """The tower embedding of a prefix field (or Q_p) into ``sup``."""
    if sub == sup:
        return LinearMap(sub, sup, 1, lambda prec: sup.basis(prec))
    if sub.f0 == 1 and not sub.tower and sub.modulus is None and sub.p == sup.p and not sub.is_subfield_of(sup):
        return LinearMap(sub, sup, sup.e, lambda prec: [sup(1, prec)])
    if not sub.is_subfield_of(sup):
        raise FieldMismatch(f"{sub!r} is not a subfield of {sup!r}")
    chain = [_step_embedding(sup.prefix(i)) for i in range(len(sub.tower) + 1, len(sup.tower) + 1)]
    ratio = sup.e // sub.e

    def images(prec):
        out = []
        for x in sub.basis(prec // ratio + 2):
            for m in chain:
                x = m(x)
            out.append(x)
        return out

    return LinearMap(sub, sup, ratio, images)


def embed(x: PadicElement, target: FieldDesc) -> PadicElement:
    return embedding(x.field, target)(x)


@lru_cache(maxsize=None)
def _teichmuller(desc: FieldDesc, residue, C: int) -> PadicElement:
    from .poly import hensel_lift

    prec = desc.e * C
    q = desc.q
    poly = [desc(-1, prec + desc.e)] + [desc.zero(prec + desc.e)] * (q - 2) + [desc(1, prec + desc.e)]
    return hensel_lift(poly, residue, prec)


def teichmuller(desc: FieldDesc, residue, prec: int) -> PadicElement:
    """The (q-1)-th root of unity lifting a nonzero residue."""
    residue = desc.residue_field.elem(residue)
    if residue == desc.residue_field.zero:
        return desc.zero(prec)
    return _teichmuller(desc, residue, _bucket(-(-prec // desc.e) + 1)).truncate(prec)
