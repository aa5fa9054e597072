"""Epsilon-hermitian forms: diagonalization, invariants, Witt classes.

Three cases are handled:

* orthogonal: symmetric bilinear forms (trivial involution, eps = 1),
* symplectic: alternating forms (trivial involution, eps = -1),
* unitary: eps-hermitian forms for a nontrivial involution of the field.

Skew-hermitian unitary forms are classified through the hermitian form
obtained by dividing every diagonal entry by the canonical skew element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .classgroups import (
    ALL_CLASSES,
    ONE,
    SquareClass,
    hilbert_symbol,
    minus_one_class,
    norm_class,
    square_class,
)
from .errors import (
    CaseMismatch,
    DegenerateAtPrecision,
    InputError,
    NotSymmetricOrSkew,
)
from .padic import FieldDesc, Involution, PadicElement
from .padic.linalg import inverse

ORTHOGONAL = "orthogonal"
UNITARY = "unitary"
SYMPLECTIC = "symplectic"


@dataclass(frozen=True)
class Case:
    kind: str
    field: FieldDesc
    involution: Involution | None = None
    eps: int = 1

    def __post_init__(self):
        if self.kind not in (ORTHOGONAL, UNITARY, SYMPLECTIC):
            raise InputError(f"unknown case {self.kind!r}")
        if self.eps not in (1, -1):
            raise InputError("eps must be +1 or -1")
        if self.kind == UNITARY:
            if self.involution is None or self.involution.is_trivial:
                raise InputError("the unitary case needs a nontrivial involution")
            if self.involution.field != self.field:
                raise InputError("involution belongs to a different field")
        else:
            if self.involution is not None and not self.involution.is_trivial:
                raise InputError(f"the {self.kind} case needs the trivial involution")
            object.__setattr__(self, "involution", None)
            object.__setattr__(self, "eps", 1 if self.kind == ORTHOGONAL else -1)

    @classmethod
    def orthogonal(cls, field: FieldDesc) -> "Case":
        return cls(ORTHOGONAL, field)

    @classmethod
    def symplectic(cls, field: FieldDesc) -> "Case":
        return cls(SYMPLECTIC, field, None, -1)

    @classmethod
    def unitary(cls, involution: Involution, eps: int = 1) -> "Case":
        return cls(UNITARY, involution.field, involution, eps)

    @classmethod
    def for_involution(cls, involution: Involution, eps: int) -> "Case":
        if involution.is_trivial:
            return cls.orthogonal(involution.field) if eps == 1 else cls.symplectic(involution.field)
        return cls.unitary(involution, eps)

    @property
    def sigma(self) -> Involution:
        return self.involution if self.involution is not None else Involution.identity(self.field)

    def conj(self, x: PadicElement) -> PadicElement:
        return x if self.involution is None else self.involution(x)

    @property
    def theta(self) -> PadicElement:
        """Canonical skew element (unitary case only)."""
        return self.involution.skew_element()

    def twin(self, eps: int) -> "Case":
        """The case with the same field and involution and the given sign."""
        if self.kind == UNITARY:
            return Case.unitary(self.involution, eps)
        return Case.orthogonal(self.field) if eps == 1 else Case.symplectic(self.field)

    def to_json(self) -> dict:
        out = {"case": self.kind, "field": self.field.to_json(), "eps": self.eps}
        if self.involution is not None:
            out["involution"] = self.involution.to_json()
        return out

    def __repr__(self) -> str:
        return f"Case({self.kind}, eps={self.eps}, {self.field!r})"


@dataclass(frozen=True)
class FormDescriptor:
    """A nondegenerate form: diagonal entries plus hyperbolic planes."""

    case: Case
    diag: tuple = ()
    hyperbolic: int = 0
    gram: tuple | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        F = self.case.field
        entries = tuple(x if isinstance(x, PadicElement) else F(x) for x in self.diag)
        object.__setattr__(self, "diag", entries)
        if self.hyperbolic < 0:
            raise InputError("hyperbolic count must be non-negative")
        if self.case.kind == SYMPLECTIC and entries:
            raise NotSymmetricOrSkew("alternating forms have no diagonal entries")
        for a in entries:
            if a.field != F:
                raise InputError("diagonal entry lies in a different field")
            if a.is_zero():
                raise DegenerateAtPrecision("diagonal entry is zero at precision")
            if self.case.kind == UNITARY and self.case.conj(a) != self.case.eps * a:
                raise NotSymmetricOrSkew("diagonal entry does not satisfy sigma(a) = eps*a")

    @property
    def dim(self) -> int:
        return len(self.diag) + 2 * self.hyperbolic

    def __add__(self, other: "FormDescriptor") -> "FormDescriptor":
        if other.case != self.case:
            raise CaseMismatch("orthogonal sum of forms from different cases")
        return FormDescriptor(self.case, self.diag + other.diag, self.hyperbolic + other.hyperbolic)

    def scaled(self, a: PadicElement) -> "FormDescriptor":
        return FormDescriptor(self.case, tuple(a * x for x in self.diag), self.hyperbolic)

    def gram_matrix(self) -> list[list[PadicElement]]:
        F = self.case.field
        n = self.dim
        prec = max([x.prec for x in self.diag] + [F.default_precision])
        H = [[F.zero(prec) for _ in range(n)] for _ in range(n)]
        for i, a in enumerate(self.diag):
            H[i][i] = a
        base = len(self.diag)
        for k in range(self.hyperbolic):
            i = base + 2 * k
            H[i][i + 1] = F.one(prec)
            H[i + 1][i] = F(self.case.eps, prec)
        return H

    def hermitian_entries(self) -> list[PadicElement]:
        """Diagonal entries of the associated hermitian (eps = 1) form, with
        hyperbolic planes expanded as <1, -1>."""
        F = self.case.field
        if self.case.kind == SYMPLECTIC:
            return []
        if self.case.kind == UNITARY and self.case.eps == -1:
            theta_inv = self.case.theta.inverse()
            entries = [a * theta_inv for a in self.diag]
        else:
            entries = list(self.diag)
        for _ in range(self.hyperbolic):
            entries += [F.one(), F(-1)]
        return entries

    def to_json(self) -> dict:
        out = {"case": self.case.kind, "dim": self.dim, "hyperbolic": self.hyperbolic}
        out["diag"] = [x.to_json() for x in self.diag]
        return out


@dataclass(frozen=True)
class FormInvariants:
    kind: str
    dim: int
    det: SquareClass | int | None = None
    hasse: int | None = None

    def to_json(self) -> dict:
        det = self.det.to_json() if isinstance(self.det, SquareClass) else self.det
        return {"case": self.kind, "dim": self.dim, "det": det, "hasse": self.hasse}


# -- orthogonal classification ---------------------------------------------------


def _orth_invariants(classes: list[SquareClass], field: FieldDesc) -> tuple[int, SquareClass, int]:
    d = ONE
    for c in classes:
        d = d * c
    s = 1
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            s *= hilbert_symbol(classes[i], classes[j], field)
    return len(classes), d, s


def orth_isotropic(n: int, d: SquareClass, s: int, field: FieldDesc) -> bool:
    """Isotropy of a quadratic form from (dim, discriminant class, Hasse invariant)."""
    m1 = minus_one_class(field)
    if n <= 1:
        return False
    if n == 2:
        return d == m1
    if n == 3:
        return s == hilbert_symbol(m1, m1 * d, field)
    if n == 4:
        return not (d == ONE and s == -hilbert_symbol(m1, m1, field))
    return True


def orth_anisotropic_part(n: int, d: SquareClass, s: int, field: FieldDesc) -> tuple[int, SquareClass, int]:
    """Invariants of the anisotropic kernel: split off hyperbolic planes."""
    m1 = minus_one_class(field)
    while orth_isotropic(n, d, s, field):
        n -= 2
        d = d * m1
        s = s * hilbert_symbol(m1, d, field)
    return n, d, s


def _orth_rep_classes(n: int, d: SquareClass, s: int, field: FieldDesc) -> tuple[SquareClass, ...]:
    for combo in itertools.combinations_with_replacement(ALL_CLASSES, n):
        if _orth_invariants(list(combo), field)[1:] == (d, s):
            return combo
    raise InputError(f"no {n}-dimensional form has determinant {d} and Hasse invariant {s}")


# -- unitary classification ------------------------------------------------------


def _unitary_invariants(entries: list[PadicElement], sigma: Involution) -> tuple[int, int]:
    bit = 0
    for a in entries:
        bit ^= norm_class(a, sigma)
    return len(entries), bit


def unitary_anisotropic_part(n: int, det_bit: int, sigma: Involution) -> tuple[int, int]:
    m1 = norm_class(sigma.field(-1), sigma)
    while n >= 3 or (n == 2 and (m1 ^ det_bit) == 0):
        n -= 2
        det_bit ^= m1
    return n, det_bit


# -- invariants, Witt classes ---------------------------------------------------------


def invariants(form: FormDescriptor) -> FormInvariants:
    case = form.case
    if case.kind == SYMPLECTIC:
        return FormInvariants(SYMPLECTIC, form.dim)
    entries = form.hermitian_entries()
    if case.kind == ORTHOGONAL:
        n, d, s = _orth_invariants([square_class(a) for a in entries], case.field)
        return FormInvariants(ORTHOGONAL, n, d, s)
    n, bit = _unitary_invariants(entries, case.involution)
    return FormInvariants(UNITARY, n, bit)


@dataclass(frozen=True)
class WittClass:
    case: Case
    diman: int
    key: tuple = ()

    @property
    def is_hyperbolic(self) -> bool:
        return self.diman == 0

    def sort_key(self):
        if self.case.kind == ORTHOGONAL:
            d, s = self.key
            return (self.diman, d.val_parity, d.unit, -s)
        return (self.diman,) + tuple(self.key)

    def rep(self) -> FormDescriptor:
        """Canonical anisotropic representative."""
        case = self.case
        F = case.field
        if case.kind == SYMPLECTIC or self.diman == 0:
            return FormDescriptor(case, ())
        if case.kind == ORTHOGONAL:
            d, s = self.key
            classes = _orth_rep_classes(self.diman, d, s, F)
            return FormDescriptor(case, tuple(c.element(F) for c in classes))
        sigma = case.involution
        (det_bit,) = self.key
        one, delta = F.one(), sigma.non_norm()
        if self.diman == 1:
            entries = (delta if det_bit else one,)
        else:
            entries = (one, delta if det_bit else one)
        if case.eps == -1:
            theta = case.theta
            entries = tuple(a * theta for a in entries)
        return FormDescriptor(case, entries)

    def rep_labels(self) -> list[str]:
        if self.case.kind == ORTHOGONAL and self.diman:
            return [c.label for c in _orth_rep_classes(self.diman, *self.key, self.case.field)]
        if self.case.kind == UNITARY and self.diman:
            (bit,) = self.key
            labels = ["delta" if bit else "1"] if self.diman == 1 else ["1", "delta" if bit else "1"]
            return labels if self.case.eps == 1 else [f"{x}*theta" for x in labels]
        return []

    def to_json(self) -> dict:
        out = {"diman": self.diman, "rep": self.rep_labels()}
        if self.case.kind == ORTHOGONAL:
            d, s = self.key
            out["det"] = d.to_json()
            out["hasse"] = s
        elif self.case.kind == UNITARY:
            out["det_norm_class"] = self.key[0]
        return out

    @classmethod
    def from_json(cls, case: Case, data: dict) -> "WittClass":
        """Parse {"diman", "det", "hasse"} (orthogonal) or {"diman", "det_norm_class"} (unitary)."""
        known = {"diman", "rep", "det", "hasse", "det_norm_class"}
        if set(data) - known:
            raise InputError(f"unknown Witt class fields {sorted(set(data) - known)}")
        d = int(data.get("diman", 0))
        if d == 0:
            return zero_class(case)
        if case.kind == ORTHOGONAL:
            if not 1 <= d <= 4 or "det" not in data or data.get("hasse") not in (1, -1):
                raise InputError("orthogonal Witt classes need diman 0..4, det and hasse")
            c = WittClass(case, d, (SquareClass.from_json(data["det"]), int(data["hasse"])))
        elif case.kind == UNITARY:
            if d not in (1, 2) or data.get("det_norm_class", 0) not in (0, 1):
                raise InputError("unitary Witt classes need diman 0..2 and det_norm_class 0|1")
            c = WittClass(case, d, (int(data.get("det_norm_class", 0)),))
        else:
            raise InputError("the symplectic Witt group is trivial")
        if witt_class(c.rep()) != c:
            raise InputError("these invariants do not describe an anisotropic class")
        return c

    def __repr__(self) -> str:
        return f"WittClass({self.case.kind}, diman={self.diman}, rep={self.rep_labels()})"


def zero_class(case: Case) -> WittClass:
    if case.kind == ORTHOGONAL:
        return WittClass(case, 0, (ONE, 1))
    if case.kind == UNITARY:
        return WittClass(case, 0, (0,))
    return WittClass(case, 0, ())


def witt_class(form: FormDescriptor) -> WittClass:
    case = form.case
    if case.kind == SYMPLECTIC:
        return zero_class(case)
    inv = invariants(form)
    if case.kind == ORTHOGONAL:
        n, d, s = orth_anisotropic_part(inv.dim, inv.det, inv.hasse, case.field)
        if n == 0:
            return zero_class(case)
        return WittClass(case, n, (d, s))
    n, bit = unitary_anisotropic_part(inv.dim, inv.det, case.involution)
    return WittClass(case, n, (bit if n else 0,))


def diman(form: FormDescriptor) -> int:
    return witt_class(form).diman


def witt_add(a: WittClass, b: WittClass) -> WittClass:
    if a.case != b.case:
        raise CaseMismatch("Witt classes from different cases")
    return _witt_add(a, b)


@lru_cache(maxsize=4096)
def _witt_add(a: WittClass, b: WittClass) -> WittClass:
    return witt_class(a.rep() + b.rep())


def witt_neg(a: WittClass) -> WittClass:
    rep = a.rep()
    return witt_class(FormDescriptor(a.case, tuple(-x for x in rep.diag), rep.hyperbolic))


def witt_sum(classes, case: Case) -> WittClass:
    acc = zero_class(case)
    for c in classes:
        acc = witt_add(acc, c)
    return acc


def generators(case: Case) -> list[FormDescriptor]:
    F = case.field
    if case.kind == ORTHOGONAL:
        return [FormDescriptor(case, (c.element(F),)) for c in ALL_CLASSES]
    if case.kind == UNITARY:
        entries = [F.one(), case.involution.non_norm()]
        if case.eps == -1:
            entries = [a * case.theta for a in entries]
        return [FormDescriptor(case, (a,)) for a in entries]
    return []


def enumerate_witt_group(case: Case) -> list[WittClass]:
    """All Witt classes, by closing the one-dimensional generators under addition."""
    found = {zero_class(case)}
    frontier = [witt_class(g) for g in generators(case)]
    gens = list(frontier)
    found.update(frontier)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = witt_add(a, g)
                if c not in found:
                    found.add(c)
                    new.append(c)
        frontier = new
    return sorted(found, key=WittClass.sort_key)


# -- constructions ----------------------------------------------------------------


def twist(form: FormDescriptor, a: PadicElement) -> FormDescriptor:
    """The form h^a(v, w) = h(v, a w); eps flips when a is skew."""
    case = form.case
    F = case.field
    if not isinstance(a, PadicElement):
        a = F(a)
    if a.is_zero():
        raise NotSymmetricOrSkew("cannot twist by zero")
    sa = case.conj(a)
    if sa == a:
        new_case = case
    elif sa == -a:
        new_case = case.twin(-case.eps)
    else:
        raise NotSymmetricOrSkew("twisting element is neither symmetric nor skew")
    if case.kind == SYMPLECTIC:
        return FormDescriptor(new_case, (), form.hyperbolic)
    diag = tuple(a * x for x in form.diag)
    if form.hyperbolic:
        # a hyperbolic plane twists to a hyperbolic plane
        extra = ()
        if new_case.kind != SYMPLECTIC:
            base = F.one() if new_case.eps == 1 else new_case.theta
            extra = (base, -base) * form.hyperbolic
        return FormDescriptor(new_case, diag + extra, 0 if new_case.kind != SYMPLECTIC else form.hyperbolic)
    return FormDescriptor(new_case, diag)


def _hyperbolic_entries(case: Case) -> tuple[PadicElement, PadicElement]:
    F = case.field
    base = F.one() if case.eps == 1 else case.theta
    return base, -base


def diagonalize(gram, case: Case) -> FormDescriptor:
    """Congruent diagonal form (orthogonal/unitary) or hyperbolic normal form
    (symplectic), pivoting on an entry of minimal valuation."""
    F = case.field
    H = [[x if isinstance(x, PadicElement) else F(x) for x in row] for row in gram]
    n = len(H)
    if any(len(r) != n for r in H):
        raise InputError("Gram matrix must be square")
    for i in range(n):
        for j in range(i, n):
            if H[j][i] != case.eps * case.conj(H[i][j]):
                raise NotSymmetricOrSkew(f"Gram matrix is not {case.kind} (entry {i},{j})")
    original = tuple(tuple(r) for r in H)
    diag: list[PadicElement] = []
    hyp = 0
    idx = list(range(n))
    while idx:
        best = None
        for a in idx:
            for b in idx:
                x = H[a][b]
                if not x.is_zero() and (best is None or x.val < best[0] or (x.val == best[0] and a == b and best[1] != best[2])):
                    best = (x.val, a, b)
        if best is None:
            raise DegenerateAtPrecision("no nonzero pivot remains")
        m = best[0]
        diag_piv = next((a for a in idx if not H[a][a].is_zero() and H[a][a].val == m), None)
        if diag_piv is not None:
            i = diag_piv
            piv = H[i][i]
            inv = piv.inverse()
            rest = [k for k in idx if k != i]
            for k in rest:
                hki = H[k][i]
                if hki.is_zero():
                    continue
                for l in rest:
                    H[k][l] = H[k][l] - hki * H[i][l] * inv
            diag.append(piv)
            idx = rest
        else:
            i, j = best[1], best[2]
            B = [[H[i][i], H[i][j]], [H[j][i], H[j][j]]]
            Binv = inverse(B)
            rest = [k for k in idx if k not in (i, j)]
            for k in rest:
                left = [H[k][i], H[k][j]]
                if left[0].is_zero() and left[1].is_zero():
                    continue
                lb = [left[0] * Binv[0][c] + left[1] * Binv[1][c] for c in range(2)]
                for l in rest:
                    H[k][l] = H[k][l] - (lb[0] * H[i][l] + lb[1] * H[j][l])
            hyp += 1
            idx = rest
    if case.kind == SYMPLECTIC:
        return FormDescriptor(case, (), hyp, original)
    entries = tuple(diag)
    for _ in range(hyp):
        entries += _hyperbolic_entries(case)
    return FormDescriptor(case, entries, 0, original)


def form_from_entries(case: Case, entries, hyperbolic: int = 0) -> FormDescriptor:
    """Build a form from {"unit": "1"|"u", "val": v} records.

    Orthogonal: the entry is u^unit * pi^val.  Unitary: u and pi are replaced by
    a fixed nonsquare unit and a uniformizer of the fixed field, and skew forms
    are multiplied by the canonical skew element.
    """
    F = case.field
    out = []
    for ent in entries:
        unit = ent.get("unit", "1")
        if unit not in ("1", "u"):
            raise InputError(f"unit class must be '1' or 'u', got {unit!r}")
        v = int(ent.get("val", 0))
        sign = -1 if ent.get("sign", 1) == -1 else 1
        if case.kind == ORTHOGONAL:
            x = (F.nonsquare_unit() if unit == "u" else F.one()).shift(v)
        elif case.kind == UNITARY:
            sigma = case.involution
            x = sigma.fixed_nonsquare_unit() if unit == "u" else F.one()
            x = x * sigma.fixed_uniformizer() ** v
            if case.eps == -1:
                x = x * case.theta
        else:
            raise InputError("alternating forms take no diagonal entries")
        out.append(x if sign == 1 else -x)
    return FormDescriptor(case, tuple(out), hyperbolic)
