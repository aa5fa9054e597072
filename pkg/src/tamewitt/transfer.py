"""Transfer of eps-hermitian forms along equivariant linear forms E -> F.

A self-dual extension is a tower ``E`` over ``F`` (``F`` a prefix of the
tower) with involutions ``sigma_E`` on ``E`` and ``sigma_F`` on ``F`` such that
``sigma_E`` restricts to ``sigma_F``, together with a skew generator ``beta``
of E over F.  When E = F, beta is any element of F (the identity transfer).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CaseMismatch,
    InputError,
    NotSelfDual,
    NotSkew,
)
from .forms import Case, FormDescriptor, WittClass, diagonalize, witt_class
from .padic import FieldDesc, Involution, PadicElement, PowerBasis, embedding
from .padic.linalg import solve


@dataclass(frozen=True, eq=False)
class SelfDualExtension:
    E: FieldDesc
    sigma_E: Involution
    F: FieldDesc
    sigma_F: Involution
    beta: PadicElement

    def __post_init__(self):
        if not self.F.is_subfield_of(self.E):
            raise InputError("F must be a subfield of E in its tower")
        if self.sigma_E.field != self.E or self.sigma_F.field != self.F:
            raise InputError("involutions must act on E and F respectively")
        if self.beta.field != self.E:
            raise InputError("beta must lie in E")
        if not self.sigma_E.restricts_to(self.sigma_F):
            raise NotSelfDual("sigma_E does not restrict to sigma_F")
        if self.n > 1:
            if not self.sigma_E.is_skew(self.beta):
                raise NotSkew("beta is not skew for sigma_E")
            self.power_basis  # raises NotAGenerator

    @property
    def n(self) -> int:
        return self.E.degree // self.F.degree

    @property
    def is_trivial(self) -> bool:
        return self.n == 1

    @cached_property
    def power_basis(self) -> PowerBasis:
        return PowerBasis(self.E, self.F, self.beta)

    @cached_property
    def emb(self):
        return embedding(self.F, self.E)

    def case_E(self, eps: int) -> Case:
        return Case.for_involution(self.sigma_E, eps)

    def case_F(self, eps: int) -> Case:
        return Case.for_involution(self.sigma_F, eps)

    def coords(self, x: PadicElement) -> list[PadicElement]:
        if self.is_trivial:
            return [self._restrict(x)]
        return self.power_basis.coords(x)

    def _restrict(self, x: PadicElement) -> PadicElement:
        """x in E = F viewed as an element of F."""
        return x if self.E == self.F else PadicElement.from_qp_coords(self.F, x.qp_coords())

    def norm_beta(self) -> PadicElement:
        if self.is_trivial:
            return self._restrict(self.beta)
        return self.power_basis.norm()

    def to_json(self) -> dict:
        return {
            "E": self.E.to_json(),
            "F": self.F.to_json(),
            "sigma_E": self.sigma_E.to_json(),
            "sigma_F": self.sigma_F.to_json(),
            "beta": self.beta.to_json(),
        }

    def __repr__(self) -> str:
        return f"SelfDualExtension(E={self.E!r}, F={self.F!r}, n={self.n})"


@dataclass(frozen=True, eq=False)
class EquivariantLinearForm:
    """lambda: E -> F, given by its values on 1, beta, ..., beta^(n-1)."""

    ext: SelfDualExtension
    values: tuple

    def __post_init__(self):
        vals = tuple(v if isinstance(v, PadicElement) else self.ext.F(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.ext.n:
            raise InputError(f"expected {self.ext.n} values, got {len(vals)}")
        if all(v.is_zero() for v in vals):
            raise InputError("the linear form must be nonzero")
        sF = self.ext.sigma_F
        for i, a in enumerate(vals):
            if sF(a) != (-1) ** i * a:
                raise NotSkew(f"value on beta^{i} breaks equivariance")

    def __call__(self, x: PadicElement) -> PadicElement:
        cs = self.ext.coords(x)
        acc = None
        for c, v in zip(cs, self.values):
            term = c * v
            acc = term if acc is None else acc + term
        return acc

    def scaled(self, c) -> "EquivariantLinearForm":
        c = c if isinstance(c, PadicElement) else self.ext.F(c)
        return EquivariantLinearForm(self.ext, tuple(c * v for v in self.values))


def standard_linear_form(ext: SelfDualExtension) -> EquivariantLinearForm:
    """lambda(1) = 1 and lambda(beta^i) = 0 for 0 < i < n."""
    F = ext.F
    return EquivariantLinearForm(ext, (F.one(),) + tuple(F.zero() for _ in range(ext.n - 1)))


def make_extension(E: FieldDesc, sigma_E: Involution, F: FieldDesc, sigma_F: Involution, beta) -> SelfDualExtension:
    if not isinstance(beta, PadicElement):
        beta = E(beta)
    return SelfDualExtension(E, sigma_E, F, sigma_F, beta)


def random_equivariant_form(ext: SelfDualExtension, rng: random.Random, digits: int = 6) -> EquivariantLinearForm:
    """A random nonzero equivariant form: sigma_F(a_i) = (-1)^i a_i."""
    F, sF = ext.F, ext.sigma_F
    while True:
        vals = []
        for i in range(ext.n):
            x = F.from_coords([rng.randrange(F.p**digits) for _ in range(F.degree)], k=rng.randrange(0, 2))
            vals.append(x + sF(x) if i % 2 == 0 else x - sF(x))
        if not all(v.is_zero() for v in vals):
            return EquivariantLinearForm(ext, tuple(vals))


def transfer_gram(h: FormDescriptor, lam: EquivariantLinearForm) -> list[list[PadicElement]]:
    """F-Gram matrix of lambda o h on the basis beta^i v_k."""
    ext = lam.ext
    E = ext.E
    if h.case.field != E:
        raise CaseMismatch("form does not live over E")
    if h.case.sigma != ext.sigma_E:
        raise CaseMismatch("form's involution differs from sigma_E")
    G = h.gram_matrix()
    m, n = len(G), ext.n
    prec = min([E.default_precision] + [x.prec for row in G for x in row if not x.is_zero()])
    powers = [E.one(prec + 8 * E.e)]
    beta = ext.beta
    for _ in range(2 * n):
        powers.append(powers[-1] * beta)
    # lambda(beta^s * G_kl) for each (s, k, l)
    cache = {}

    def entry(s, k, l):
        key = (s, k, l)
        if key not in cache:
            cache[key] = lam(G[k][l] * powers[s]) if not G[k][l].is_zero() else ext.F.zero(prec)
        return cache[key]

    idx = [(i, k) for k in range(m) for i in range(n)]
    out = []
    for i, k in idx:
        row = []
        for j, l in idx:
            x = entry(i + j, k, l)
            row.append(-x if i % 2 else x)
        out.append(row)
    return out


def transfer_form(h: FormDescriptor, lam: EquivariantLinearForm) -> FormDescriptor:
    """lambda_*(h): the F-form lambda(h(v, w)), diagonalized."""
    ext = lam.ext
    gram = transfer_gram(h, lam)
    case_F = ext.case_F(h.case.eps)
    if not gram:
        return FormDescriptor(case_F, ())
    return diagonalize(gram, case_F)


def transfer_class(c: WittClass, lam: EquivariantLinearForm) -> WittClass:
    ext = lam.ext
    if c.case != ext.case_E(c.case.eps):
        raise CaseMismatch("Witt class is not over E with sigma_E")
    return witt_class(transfer_form(c.rep(), lam))


def transfer_unit_closed_form(ext: SelfDualExtension) -> WittClass:
    """lambda_beta*(<1>): <1> for odd n, else <1, (-1)^(n/2+1) N_{E/F}(beta)>."""
    if not ext.sigma_E.restricts_to(ext.sigma_F):
        raise NotSelfDual("sigma_E does not restrict to sigma_F")
    case = ext.case_F(1)
    F = ext.F
    n = ext.n
    if n % 2:
        return witt_class(FormDescriptor(case, (F.one(),)))
    sign = (-1) ** (n // 2 + 1)
    return witt_class(FormDescriptor(case, (F.one(), ext.norm_beta() * sign)))


def gamma_between_forms(lam: EquivariantLinearForm, lam2: EquivariantLinearForm) -> PadicElement:
    """The unique gamma in E with lambda(x gamma) = lambda'(x); it is sigma_E-fixed."""
    ext = lam.ext
    if lam2.ext is not ext and (lam2.ext.E != ext.E or lam2.ext.F != ext.F):
        raise CaseMismatch("linear forms on different extensions")
    n = ext.n
    E = ext.E
    if n == 1:
        g = lam2.values[0] / lam.values[0]
        return ext.emb(g)
    prec = E.default_precision + 8 * E.e
    powers = [E.one(prec)]
    for _ in range(2 * n):
        powers.append(powers[-1] * ext.beta)
    lam_pows = [lam(x) for x in powers[: 2 * n - 1]]
    M = [[lam_pows[i + j] for j in range(n)] for i in range(n)]
    rhs = [lam2(powers[i]) for i in range(n)]
    g = solve(M, rhs)
    return ext.power_basis.combine(g)


def check_gamma(lam: EquivariantLinearForm, lam2: EquivariantLinearForm, gamma: PadicElement) -> bool:
    """Residual check lambda(x gamma) == lambda'(x) on the power basis."""
    ext = lam.ext
    x = ext.E.one()
    for _ in range(ext.n):
        if lam(x * gamma) != lam2(x):
            return False
        x = x * ext.beta
    return True
