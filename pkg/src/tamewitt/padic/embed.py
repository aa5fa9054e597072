"""Embeddings of tame extensions matching two minimal elements.

Given ``b1`` generating ``E1`` over a common subfield ``F`` and ``b2`` in
``E2`` with the same normalized valuation and residue data, we look for an
F-embedding ``phi: E1 -> E2`` with ``val(phi(b1) - b2) > val(b2)``.  Candidates
are built from a Hensel root of the residue polynomial of ``E1`` (image of
``t``) and an e-th root giving the image of the uniformizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import HypothesisViolated, NotAGenerator, WildExtension
from .element import PadicElement
from .field import FieldDesc, LinearMap, _basis_images, embedding
from .poly import hensel_lift
from .relative import PowerBasis


@dataclass
class FieldEmbedding:
    source: FieldDesc
    target: FieldDesc
    t_image: PadicElement
    pi_image: PadicElement
    map: LinearMap

    def __call__(self, x: PadicElement) -> PadicElement:
        return self.map(x)


def common_base(E1: FieldDesc, E2: FieldDesc) -> FieldDesc:
    """The unramified base field shared by both towers."""
    if (E1.p, E1.f0, E1.modulus) != (E2.p, E2.f0, E2.modulus):
        raise HypothesisViolated("the fields share no common base in their towers")
    return E1.prefix(0)


def _residue_min_poly(y, kE, tau_bar, kF):
    """Minimal polynomial over k_F (as k_F coefficient tuples) of y in k_E."""
    qF = kF.q
    orbit = [y]
    z = kE.pow(y, qF)
    while z != y:
        orbit.append(z)
        z = kE.pow(z, qF)
    poly = [kE.one]
    for r in orbit:
        shifted = [kE.zero] + poly
        for i in range(len(poly)):
            shifted[i] = kE.sub(shifted[i], kE.mul(r, poly[i]))
        poly = shifted
    # pull coefficients back along k_F -> k_E
    images = {}
    for a in kF.elements():
        acc = kE.zero
        for c in reversed(a):
            acc = kE.add(kE.mul(acc, tau_bar), kE.elem(c))
        images[acc] = a
    return tuple(images[c] for c in poly)


def _residue_data(E: FieldDesc, F: FieldDesc, b: PadicElement):
    e = E.e // F.e
    nu = b.val
    emb = embedding(F, E)
    piF = emb(F.uniformizer(b.prec + 4))
    y = (b**e) * piF ** (-nu)
    tau_bar = emb(F.t(8)).residue()
    return Fraction(nu, e), _residue_min_poly(y.residue(), E.residue_field, tau_bar, F.residue_field)


def embed_minimal(E1: FieldDesc, b1: PadicElement, E2: FieldDesc, b2: PadicElement, F: FieldDesc | None = None) -> FieldEmbedding:
    if F is None:
        F = common_base(E1, E2)
    for E in (E1, E2):
        for s in E.tower:
            if s.kind == "eisenstein" and s.degree % E.p == 0:
                raise WildExtension("wild step in tower")
    try:
        PowerBasis(E1, F, b1)
    except NotAGenerator:
        raise HypothesisViolated("b1 does not generate E1 over F") from None
    e1 = E1.e // F.e
    if b1.is_zero() or b2.is_zero():
        raise HypothesisViolated("minimal elements must be nonzero")
    if gcd(b1.val, e1) != 1:
        raise HypothesisViolated(f"valuation {b1.val} of b1 is not prime to e(E1/F) = {e1}")
    nv1, mp1 = _residue_data(E1, F, b1)
    nv2, mp2 = _residue_data(E2, F, b2)
    if nv1 != nv2:
        raise HypothesisViolated(f"normalized valuations differ: {nv1} vs {nv2}")
    if mp1 != mp2:
        raise HypothesisViolated("residue minimal polynomials over k_F differ")
    if E2.f % E1.f or E2.e % E1.e:
        raise HypothesisViolated("E1 does not embed in E2 (degree data incompatible)")

    prec = E2.default_precision + 4 * E2.e
    work = prec + 4 * E2.e
    kf2 = E2.residue_field
    g1 = E1.flat(prec).g
    c1 = E1.flat(prec).c
    c2 = E2.flat(prec).c
    ratio = E2.e // E1.e
    t_roots = kf2.roots([kf2.elem(c) for c in g1]) if E1.f > 1 else [kf2.elem(-g1[0])]
    emb1, emb2 = embedding(F, E1), embedding(F, E2)
    gens = [F.t(E1.default_precision), F.uniformizer(E1.default_precision)]
    target = b2.val + 1

    def candidate(r, wr, pr):
        if E1.f > 1:
            tau = hensel_lift([E2(c, pr + E2.e) for c in g1], r, pr)
        else:
            tau = E2(-g1[0], pr)
        if E1.e == 1:
            return tau, E2(E1.p, pr + E2.e)
        cc1, cc2 = E1.flat(pr).c, E2.flat(pr).c
        c1_tau = E2.zero(pr + E2.e)
        for c in reversed(cc1):
            c1_tau = c1_tau * tau + E2(c, pr + E2.e)
        w_pow = c1_tau / PadicElement.from_unit_coords(E2, cc2, pr + E2.e)
        rhs = [-w_pow] + [E2.zero(pr + E2.e)] * (E1.e - 1) + [E2.one(pr + E2.e)]
        w = hensel_lift(rhs, wr, pr)
        return tau, E2.uniformizer(pr + ratio).shift(ratio - 1) * w

    for r in t_roots:
        # residue roots of the e-th root equation depend on the image of t
        if E1.f > 1:
            tau0 = hensel_lift([E2(c, work) for c in g1], r, work)
        else:
            tau0 = E2(-g1[0], work)
        if E1.e > 1:
            c1_tau = E2.zero(work)
            for c in reversed(c1):
                c1_tau = c1_tau * tau0 + E2(c, work)
            wbar = (c1_tau / PadicElement.from_unit_coords(E2, c2, work)).residue()
            w_roots = kf2.roots([kf2.neg(wbar)] + [kf2.zero] * (E1.e - 1) + [kf2.one])
        else:
            w_roots = [kf2.one]
        for wr in w_roots:
            def images(pr, r=r, wr=wr):
                tau, pi_img = candidate(r, wr, pr + 2 * E2.e)
                return _basis_images(E2, tau, pi_img, E1.e, E1.f, pr)

            phi = LinearMap(E1, E2, ratio, images)
            if not all(phi(emb1(g)) == emb2(g) for g in gens):
                continue
            if (phi(b1) - b2).val >= target:
                tau, pi_img = candidate(r, wr, prec)
                return FieldEmbedding(E1, E2, tau, pi_img, phi)
    raise HypothesisViolated("no F-embedding satisfies the valuation inequality")
