"""Matching bijections between Witt groups of self-dual extensions, and Witt types.

For a nonzero skew ``beta`` generating E over F, the group W_{sigma_E, eps}(E)
has order 4 with anisotropic dimensions 0, 1, 1, 2.  The matching map sends
the class of <beta> (eps = -1) or <beta^2> (eps = 1) to the corresponding
class for ``beta'`` and preserves the anisotropic dimension.  The remaining
diman-1 class then has only one possible image, so every class carries a
label (zero, ref, other, max) that matchings preserve.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import CaseMismatch, DissimilarGroups, InputError, ZeroBeta
from .forms import Case, FormDescriptor, WittClass, enumerate_witt_group, witt_class, zero_class
from .padic import is_square
from .transfer import SelfDualExtension, standard_linear_form, transfer_class

ZERO, REF, OTHER, MAX = "zero", "ref", "other", "max"


def is_zero_context(ext: SelfDualExtension) -> bool:
    return ext.is_trivial and ext.beta.is_zero()


def _require_nonzero(ext: SelfDualExtension) -> None:
    if ext.beta.is_zero():
        raise ZeroBeta("matching needs a nonzero skew element")
    if not ext.sigma_E.is_skew(ext.beta):
        raise InputError("beta must be skew for sigma_E")


def reference_class(ext: SelfDualExtension, eps: int) -> WittClass:
    """Class of <beta> (eps = -1) or <beta^2> (eps = 1) in W_{sigma_E, eps}(E)."""
    _require_nonzero(ext)
    case = ext.case_E(eps)
    entry = ext.beta if eps == -1 else ext.beta * ext.beta
    return witt_class(FormDescriptor(case, (entry,)))


def class_label(c: WittClass, ext: SelfDualExtension) -> str:
    if c.diman == 0:
        return ZERO
    if c.diman == 2:
        return MAX
    return REF if c == reference_class(ext, c.case.eps) else OTHER


def is_klein(ext: SelfDualExtension, eps: int) -> bool:
    """W_{sigma_E, eps}(E) is a Klein group iff <a> + <a> is hyperbolic."""
    group = enumerate_witt_group(ext.case_E(eps))
    return all(_double(c).diman == 0 for c in group)


def _double(c: WittClass) -> WittClass:
    rep = c.rep()
    return witt_class(rep + rep)


def _valuation_offsets(ext: SelfDualExtension, eps: int) -> list[int]:
    """E-valuations of the 1-dim representatives of the two diman-1 classes."""
    group = enumerate_witt_group(ext.case_E(eps))
    return [c.rep().diag[0].val for c in group if c.diman == 1]


def _cosets_meet(v1: int, e1: int, v2: int, e2: int) -> bool:
    """Whether (v1 + 2Z)/e1 and (v2 + 2Z)/e2 intersect (norms shift valuations by evens)."""
    return (e2 * v1 - e1 * v2) % (2 * gcd(e1, e2)) == 0


def similar_descriptions(ext1: SelfDualExtension, ext2: SelfDualExtension, eps: int) -> bool:
    k1, k2 = is_klein(ext1, eps), is_klein(ext2, eps)
    if not k1 and not k2:
        return True
    if k1 != k2:
        return False
    e1 = ext1.E.e // ext1.F.e
    e2 = ext2.E.e // ext2.F.e
    a, b = _valuation_offsets(ext1, eps), _valuation_offsets(ext2, eps)
    straight = _cosets_meet(a[0], e1, b[0], e2) and _cosets_meet(a[1], e1, b[1], e2)
    crossed = _cosets_meet(a[0], e1, b[1], e2) and _cosets_meet(a[1], e1, b[0], e2)
    return straight or crossed


def matching_map(ext1: SelfDualExtension, ext2: SelfDualExtension, eps: int, strict: bool = True) -> dict:
    """The bijection W_{sigma_E, eps}(E) -> W_{sigma_E', eps}(E') preserving diman
    and sending the reference class to the reference class.

    Found by search over all diman-preserving bijections; uniqueness is
    asserted.  With ``strict`` the two groups must have similar descriptions.
    """
    _require_nonzero(ext1)
    _require_nonzero(ext2)
    if ext1.F != ext2.F or ext1.sigma_F != ext2.sigma_F:
        raise CaseMismatch("extensions of different base fields")
    if strict and not similar_descriptions(ext1, ext2, eps):
        raise DissimilarGroups("the Witt groups do not have similar descriptions")
    g1 = enumerate_witt_group(ext1.case_E(eps))
    g2 = enumerate_witt_group(ext2.case_E(eps))
    r1, r2 = reference_class(ext1, eps), reference_class(ext2, eps)
    from itertools import permutations

    found = []
    for perm in permutations(g2):
        if any(a.diman != b.diman for a, b in zip(g1, perm)):
            continue
        m = dict(zip(g1, perm))
        if m[r1] == r2:
            found.append(m)
    if len(found) != 1:
        raise DissimilarGroups(f"{len(found)} candidate bijections instead of exactly one")
    return found[0]


def w11_equals_wsquares(ext1: SelfDualExtension, ext2: SelfDualExtension) -> bool:
    """Whether w_{1,1} = w_{beta^2, beta'^2}: -1 is a square in both E and E', or in neither."""
    for ext in (ext1, ext2):
        if ext.beta.is_zero():
            raise ZeroBeta("the criterion needs nonzero beta")
    sq1 = is_square(ext1.E(-1))
    sq2 = is_square(ext2.E(-1))
    return sq1 == sq2


def w11_equals_wsquares_by_maps(ext1: SelfDualExtension, ext2: SelfDualExtension) -> bool:
    """The same question decided by comparing the two bijections directly."""
    _require_nonzero(ext1)
    _require_nonzero(ext2)
    g1 = enumerate_witt_group(ext1.case_E(1))
    one1 = witt_class(FormDescriptor(ext1.case_E(1), (ext1.E.one(),)))
    one2 = witt_class(FormDescriptor(ext2.case_E(1), (ext2.E.one(),)))
    wsq = matching_map(ext1, ext2, 1, strict=False)
    # w_{1,1}: <1> -> <1'>, the other diman-1 class to the other one
    w11 = {}
    for c in g1:
        if c.diman != 1:
            w11[c] = wsq[c]
        else:
            target = one2 if c == one1 else next(d for d in wsq.values() if d.diman == 1 and d != one2)
            w11[c] = target
    return w11 == wsq


# -- Witt types ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WittType:
    """A pair (beta, t): beta a self-dual extension context (possibly zero) and t a
    Witt class over F[beta] for the fixed sign eps."""

    ext: SelfDualExtension
    t: WittClass

    def __post_init__(self):
        expected = self.ext.case_E(self.t.case.eps) if not is_zero_context(self.ext) else self.ext.case_F(self.t.case.eps)
        if self.t.case != expected:
            raise CaseMismatch("Witt class does not belong to F[beta]")
        if not is_zero_context(self.ext):
            _require_nonzero(self.ext)

    @property
    def eps(self) -> int:
        return self.t.case.eps

    @property
    def base_case(self) -> Case:
        return self.ext.case_F(self.eps)

    @property
    def diman(self) -> int:
        return self.t.diman

    @property
    def is_zero_beta(self) -> bool:
        return is_zero_context(self.ext)

    def key(self) -> tuple:
        """Canonical key; equal keys iff witt_type_equiv (same base case)."""
        if self.t.diman == 0:
            return ("zero",)
        if self.is_zero_beta:
            return ("beta0", self.t)
        return ("nonzero", class_label(self.t, self.ext), wt_f(self))

    def to_json(self) -> dict:
        beta = "zero" if self.is_zero_beta else {"field": self.ext.E.to_json(), "beta": self.ext.beta.to_json()}
        return {"beta": beta, "witt_class": self.t.to_json(), "wtF": wt_f(self).to_json(), "diman": self.diman}

    def __repr__(self) -> str:
        return f"WittType({self.key()!r})"


def wt_f(T: WittType) -> WittClass:
    """lambda_beta*(t), with the identity when beta = 0."""
    if T.is_zero_beta:
        return T.t
    if T.t.case.kind == "symplectic":  # pragma: no cover - nonzero beta forces a unitary E-case
        return zero_class(T.base_case)
    return transfer_class(T.t, standard_linear_form(T.ext))


def witt_type_equiv(a: WittType, b: WittType) -> bool:
    if a.base_case != b.base_case:
        raise CaseMismatch("Witt types for different (sigma, eps)")
    if a.t.diman == 0 and b.t.diman == 0:
        return True
    if a.t.diman == 0 or b.t.diman == 0:
        return False
    if a.is_zero_beta and b.is_zero_beta:
        return a.t == b.t
    if a.is_zero_beta or b.is_zero_beta:
        return False
    if wt_f(a) != wt_f(b):
        return False
    w = matching_map(a.ext, b.ext, a.eps, strict=False)
    return w[a.t] == b.t


def witt_types(ext: SelfDualExtension, eps: int) -> list[WittType]:
    """All pairs (beta, t) for t in the Witt group over F[beta]."""
    case = ext.case_F(eps) if is_zero_context(ext) else ext.case_E(eps)
    return [WittType(ext, t) for t in enumerate_witt_group(case) or [zero_class(case)]]


def zero_context(F, sigma_F) -> SelfDualExtension:
    return SelfDualExtension(F, sigma_F, F, sigma_F, F.zero())
