"""The test grid of self-dual tame extensions E/F.

Primes 3, 5, 7; e(E/F) in {1, 2, 4}, f(E/F) in {1, 2}, [E:F] <= 4.  The base
F is either Q_p with the identity (orthogonal/symplectic side) or a quadratic
extension of Q_p with its nontrivial involution (unitary side).  For each
tower every involution of E extending sigma_F is tried, and the first skew
generator among a short list of candidates is kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAGenerator, NotSelfDual, NotSkew
from .padic import Eisenstein, FieldDesc, Involution, Unramified, extend, involutions, make_field
from .transfer import SelfDualExtension

PRIMES = (3, 5, 7)


@dataclass(frozen=True, eq=False)
class GridPoint:
    name: str
    ext: SelfDualExtension

    @property
    def p(self) -> int:
        return self.ext.E.p

    def __repr__(self) -> str:
        return f"GridPoint({self.name})"


def _beta_candidates(E: FieldDesc, sigma: Involution):
    prec = E.default_precision
    pi = E.uniformizer(prec + 1) if E.e > 1 else None
    t = E.t(prec + 1)
    out = []
    if pi is not None:
        out.append(pi)
    if not sigma.is_trivial:
        out.append(t - sigma(t))
    if pi is not None:
        out += [t * pi, (t - sigma(t)) * pi, pi * (E.one() + t), pi**3]
    if E.f > 1 and not sigma.is_trivial:
        d = t - sigma(t)
        out += [d * (E.one() + pi) if pi is not None else d * E(1 + E.p)]
    return out


def _find_extension(E, sigma_E, F, sigma_F):
    for beta in _beta_candidates(E, sigma_E):
        try:
            return SelfDualExtension(E, sigma_E, F, sigma_F, beta)
        except (NotSkew, NotAGenerator, NotSelfDual):
            continue
    return None


def _towers_over(F: FieldDesc):
    """(label, E) for the relative towers in the grid; F-relative degree <= 4."""
    u = F.residue_field.nonsquare
    uc = tuple(u) if F.f > 1 else u[0]
    yield "E2(1)", extend(F, Eisenstein(2, 1))
    yield "E2(u)", extend(F, Eisenstein(2, uc))
    yield "U2", extend(F, Unramified(2))
    yield "E4(1)", extend(F, Eisenstein(4, 1))
    yield "E4(u)", extend(F, Eisenstein(4, uc))
    yield "U2,E2(1)", extend(extend(F, Unramified(2)), Eisenstein(2, 1))
    yield "E2(1),U2", extend(extend(F, Eisenstein(2, 1)), Unramified(2))


def _points_over(F: FieldDesc, sigma_F: Involution, base_label: str):
    pts = [GridPoint(f"{base_label}/E=F", SelfDualExtension(F, sigma_F, F, sigma_F, sigma_F.skew_element() if not sigma_F.is_trivial else F.zero()))]
    for label, E in _towers_over(F):
        for s in involutions(E):
            if s.is_trivial or not s.restricts_to(sigma_F):
                continue
            ext = _find_extension(E, s, F, sigma_F)
            if ext is not None:
                tag = f"frob={s.frob},mult={list(s.mult_residue)}"
                pts.append(GridPoint(f"{base_label}/{label}[{tag}]", ext))
    return pts


@lru_cache(maxsize=None)
def grid(primes: tuple[int, ...] = PRIMES, unitary: bool = True) -> tuple[GridPoint, ...]:
    pts = []
    for p in primes:
        Q = make_field(p, 1)
        pts += _points_over(Q, Involution.identity(Q), f"Q{p}")
        if not unitary:
            continue
        for label, F in (("U2", extend(Q, Unramified(2))), ("E2(1)", extend(Q, Eisenstein(2, 1)))):
            for sF in involutions(F):
                if sF.is_trivial:
                    continue
                pts += _points_over(F, sF, f"Q{p}:{label}")
    return tuple(pts)
