"""Coordinates of an extension E/F in the power basis of a generator beta."""

from __future__ import annotations

from ..errors import FieldMismatch, NotAGenerator, SingularSystem
from .element import PadicElement
from .field import FieldDesc, embedding, qp_field
from .linalg import det, inverse, mat_vec


class PowerBasis:
    """E as an F-vector space with basis 1, beta, ..., beta^(n-1).

    Q_p-linear algebra on the integral bases does the work: the matrix whose
    columns are the Q_p-coordinates of ``b_k * beta^i`` (``b_k`` running over the
    integral Q_p-basis of F) is inverted once and cached.
    """

    def __init__(self, E: FieldDesc, F: FieldDesc, beta: PadicElement, prec: int | None = None):
        if beta.field != E:
            raise FieldMismatch("beta must lie in E")
        self.E, self.F = E, F
        self.emb = embedding(F, E)
        self.n = E.degree // F.degree
        self.prec = (E.default_precision if prec is None else prec) + 4 * E.e
        self.beta = beta
        if beta.is_zero() and self.n > 1:
            raise NotAGenerator("zero does not generate a proper extension")
        work = self.prec + E.e * 8 + max(0, -beta.val) * self.n * 2
        self.powers = [E.one(work)]
        for _ in range(1, self.n + 1):
            self.powers.append(self.powers[-1] * beta)
        cols = []
        fb = [self.emb(x) for x in F.basis(work)]
        for i in range(self.n):
            for k in range(F.degree):
                cols.append((fb[k] * self.powers[i]).qp_coords())
        N = E.degree
        self.matrix = [[cols[j][r] for j in range(N)] for r in range(N)]
        try:
            d = det(self.matrix)
        except SingularSystem:  # pragma: no cover
            d = None
        if d is None or d.is_zero():
            raise NotAGenerator("beta does not generate E over F")
        self._inv = None

    @property
    def inv(self):
        if self._inv is None:
            self._inv = inverse(self.matrix)
        return self._inv

    def coords(self, x: PadicElement) -> list[PadicElement]:
        """F-coefficients c_i with x = sum c_i beta^i."""
        if x.field != self.E:
            raise FieldMismatch("element does not lie in E")
        y = mat_vec(self.inv, x.qp_coords())
        d = self.F.degree
        return [PadicElement.from_qp_coords(self.F, y[i * d:(i + 1) * d]) for i in range(self.n)]

    def combine(self, coeffs: list[PadicElement]) -> PadicElement:
        acc = None
        for c, bp in zip(coeffs, self.powers):
            term = self.emb(c) * bp
            acc = term if acc is None else acc + term
        return acc

    def minimal_polynomial(self) -> list[PadicElement]:
        """Monic minimal polynomial of beta over F, lowest degree first."""
        top = self.coords(self.powers[self.n])
        return [-c for c in top] + [self.F.one(self.prec)]

    def norm(self) -> PadicElement:
        """N_{E/F}(beta) = (-1)^n * constant term of the minimal polynomial."""
        c0 = self.minimal_polynomial()[0]
        return c0 if self.n % 2 == 0 else -c0


def generates(E: FieldDesc, F: FieldDesc, beta: PadicElement) -> bool:
    try:
        PowerBasis(E, F, beta)
    except NotAGenerator:
        return False
    return True


def relative_norm(x: PadicElement, F: FieldDesc) -> PadicElement:
    """N_{E/F}(x) as the determinant of multiplication by x on E over F."""
    E = x.field
    if x.is_zero():
        return F.zero(x.prec)
    emb = embedding(F, E)
    n = E.degree // F.degree
    basis = _relative_basis(E, F, x.prec)
    pb = _GenericBasis(E, F, basis, emb)
    rows = [pb.coords(x * b) for b in basis]
    mat = [[rows[j][i] for j in range(n)] for i in range(n)]
    return det(mat)


def _relative_basis(E: FieldDesc, F: FieldDesc, prec: int) -> list[PadicElement]:
    eE, fE = E.e // F.e, E.f // F.f
    t, pi = E.t(prec + 4 * E.e), E.uniformizer(prec + 4 * E.e)
    out = []
    tp = E.one(prec + 4 * E.e)
    for _ in range(fE):
        pp = tp
        for _ in range(eE):
            out.append(pp)
            pp = pp * pi
        tp = tp * t
    return out


class _GenericBasis:
    def __init__(self, E, F, basis, emb):
        self.E, self.F = E, F
        fb = [emb(x) for x in F.basis(basis[0].prec)]
        cols = []
        for b in basis:
            for k in range(F.degree):
                cols.append((fb[k] * b).qp_coords())
        N = E.degree
        self.n = len(basis)
        self.inv = inverse([[cols[j][r] for j in range(N)] for r in range(N)])

    def coords(self, x):
        y = mat_vec(self.inv, x.qp_coords())
        d = self.F.degree
        return [PadicElement.from_qp_coords(self.F, y[i * d:(i + 1) * d]) for i in range(self.n)]


def qp_norm(x: PadicElement) -> PadicElement:
    return relative_norm(x, qp_field(x.field.p))
