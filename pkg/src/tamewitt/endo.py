"""Endo-parameter arithmetic over synthetic catalogs of endo-classes.

A catalog entry records only what the parametrization of endo-parameters uses: a
degree, a kind, and for skew classes a self-dual extension from which Witt
types are computed (or a declared table of Witt types).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError, NonSkewWittType, UnknownClass, WrongCase
from .forms import ORTHOGONAL, Case, WittClass, enumerate_witt_group, witt_add, zero_class
from .transfer import SelfDualExtension
from .wittmatch import WittType, is_zero_context, witt_type_equiv, witt_types, wt_f

GL = "GL"
SKEW = "SkewElementary"
NONSKEW = "NonSkewElementary"
ZERO = "Zero"
KINDS = (GL, SKEW, NONSKEW, ZERO)


@dataclass(frozen=True, eq=False)
class TypeOption:
    """One Witt type available to a class: canonical key, diman and WT_F."""

    key: tuple
    diman: int
    wtf: WittClass
    witt_type: WittType | None = None

    @property
    def is_zero(self) -> bool:
        return self.key == ("zero",)

    def sort_key(self):
        if self.is_zero:
            return (0,)
        return (1, self.diman, str(self.key[0]), str(self.key[1]) if self.key[0] == "nonzero" else "", self.wtf.sort_key())

    def __eq__(self, other):
        return isinstance(other, TypeOption) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def to_json(self) -> dict:
        if self.witt_type is not None:
            return self.witt_type.to_json()
        return {"beta": "declared", "key": [str(k) for k in self.key], "wtF": self.wtf.to_json(), "diman": self.diman}

    def __repr__(self) -> str:
        return f"TypeOption(diman={self.diman}, key={self.key[0]})"


ZERO_OPTION_KEY = ("zero",)


@dataclass(frozen=True, eq=False)
class EndoClassDescriptor:
    id: str
    kind: str
    degree: int = 1
    ext: SelfDualExtension | None = None
    witt_table: tuple = field(default=())  # declared (diman, WittClass) pairs

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown endo-class kind {self.kind!r}")
        if self.degree < 1:
            raise InputError("degree must be positive")
        if self.kind == ZERO:
            if self.degree != 1:
                raise InputError("the zero endo-class has degree 1")
            if self.ext is not None and not is_zero_context(self.ext):
                raise InputError("the zero endo-class carries the trivial context")
        if self.kind == SKEW and self.ext is not None:
            if self.ext.n != self.degree:
                raise InputError(f"class {self.id}: degree {self.degree} differs from [F[beta]:F] = {self.ext.n}")
            if self.ext.beta.is_zero():
                raise InputError("skew classes need a nonzero beta")

    def to_json(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "degree": self.degree}
        if self.ext is not None and self.kind == SKEW:
            out["extension"] = self.ext.to_json()
        if self.witt_table:
            out["witt_table"] = [{"diman": d, "wtF": w.to_json()} for d, w in self.witt_table]
        return out


class Catalog:
    def __init__(self, classes, case: Case | None = None):
        self.classes = sorted(classes, key=lambda c: c.id)
        ids = [c.id for c in self.classes]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate class ids in catalog")
        self.by_id = {c.id: c for c in self.classes}
        self.case = case

    def __getitem__(self, cid: str) -> EndoClassDescriptor:
        try:
            return self.by_id[cid]
        except KeyError:
            raise UnknownClass(f"class {cid!r} is not in the catalog") from None

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    # -- Witt types per class ------------------------------------------------------

    def zero_option(self) -> TypeOption:
        return TypeOption(ZERO_OPTION_KEY, 0, zero_class(self._case()))

    def _case(self) -> Case:
        if self.case is None:
            raise InputError("classical enumeration needs a (sigma, eps) case")
        return self.case

    def options(self, cid: str) -> list[TypeOption]:
        return self._options[cid]

    @cached_property
    def _options(self) -> dict:
        case = self._case()
        out = {}
        for c in self.classes:
            out[c.id] = type_options(c, case)
        return out

    def to_json(self) -> dict:
        return {"classes": [c.to_json() for c in self.classes]}


def type_options(c: EndoClassDescriptor, case: Case) -> list[TypeOption]:
    """Distinct Witt types (by canonical key) available to a class, sorted."""
    zero = TypeOption(ZERO_OPTION_KEY, 0, zero_class(case))
    if c.kind in (NONSKEW, GL):
        return [zero]
    if c.witt_table:
        opts = {zero.key: zero}
        for i, (d, w) in enumerate(c.witt_table):
            if w.case != case:
                raise InputError(f"class {c.id}: declared Witt class is for a different case")
            if d == 0:
                continue
            opt = TypeOption(("declared", c.id, i), d, w)
            opts[opt.key] = opt
        return sorted(opts.values(), key=TypeOption.sort_key)
    if c.kind == ZERO:
        ext = c.ext
        if ext is None:
            from .wittmatch import zero_context

            ext = zero_context(case.field, case.sigma)
    else:
        ext = c.ext
        if ext is None:
            raise InputError(f"class {c.id}: a skew class needs an extension or a Witt table")
    if ext.F != case.field or ext.sigma_F != case.sigma:
        raise InputError(f"class {c.id}: extension is not over the catalog's base field")
    opts = {}
    for T in witt_types(ext, case.eps):
        k = T.key()
        if k not in opts:
            opts[k] = TypeOption(k, T.diman, wt_f(T), T)
    return sorted(opts.values(), key=TypeOption.sort_key)


# -- parameters ----------------------------------------------------------------------


@dataclass(frozen=True)
class EndoParameter:
    """GL: id -> f(c).  Classical: id -> (f1(c), TypeOption)."""

    values: tuple  # sorted (id, value) pairs with nonzero value
    classical: bool = False

    @classmethod
    def gl(cls, mapping: dict) -> "EndoParameter":
        return cls(tuple(sorted((k, int(v)) for k, v in mapping.items() if v)), False)

    @classmethod
    def classical_from(cls, mapping: dict) -> "EndoParameter":
        items = []
        for k, (f1, opt) in mapping.items():
            if f1 or not opt.is_zero:
                items.append((k, (int(f1), opt)))
        return cls(tuple(sorted(items, key=lambda kv: kv[0])), True)

    def as_dict(self) -> dict:
        return dict(self.values)

    @property
    def support(self) -> list[str]:
        return [k for k, _ in self.values]

    def to_json(self) -> dict:
        if not self.classical:
            return {k: v for k, v in self.values}
        return {k: {"f1": f1, "f2": opt.to_json()} for k, (f1, opt) in self.values}


def validate_gl(f: EndoParameter, catalog: Catalog, n: int) -> bool:
    total = 0
    for cid, v in f.values:
        if v < 0:
            raise InputError("values must be non-negative")
        total += catalog[cid].degree * v
    return total == n


def enumerate_gl(catalog: Catalog, n: int) -> list[EndoParameter]:
    """All f with sum deg(c) f(c) = n, lexicographic in the value vector over sorted ids."""
    classes = list(catalog)
    out = []
    vec = [0] * len(classes)

    def rec(i, remaining):
        if i == len(classes):
            if remaining == 0:
                out.append(EndoParameter.gl({c.id: v for c, v in zip(classes, vec)}))
            return
        d = classes[i].degree
        for v in range(remaining // d + 1):
            vec[i] = v
            rec(i + 1, remaining - d * v)
        vec[i] = 0

    if n >= 0:
        rec(0, n)
    return out


def count_gl_dp(degrees: list[int], n: int) -> int:
    """Coefficient of x^n in prod (1 - x^d)^(-1)."""
    coef = [1] + [0] * n
    for d in degrees:
        for m in range(d, n + 1):
            coef[m] += coef[m - d]
    return coef[n] if n >= 0 else 0


def validate_classical(f: EndoParameter, catalog: Catalog, n: int, target: WittClass) -> bool:
    case = catalog._case()
    if target.case != case:
        raise InputError("target Witt class is for a different case")
    dim = 0
    acc = zero_class(case)
    for cid, (f1, opt) in f.values:
        c = catalog[cid]
        if f1 < 0:
            raise InputError("f1 must be non-negative")
        if c.kind == NONSKEW and not opt.is_zero:
            raise NonSkewWittType(f"class {cid} is not skew; its Witt type must be zero")
        if opt.key not in {o.key for o in catalog.options(cid)}:
            raise InputError(f"Witt type is not available to class {cid}")
        dim += c.degree * (2 * f1 + opt.diman)
        acc = witt_add(acc, opt.wtf)
    return dim == n and acc == target


def enumerate_classical(catalog: Catalog, n: int, target: WittClass) -> list[EndoParameter]:
    """All valid classical parameters, ordered by class id, then f1, then Witt-type key."""
    case = catalog._case()
    classes = list(catalog)
    out = []
    choice: list = [None] * len(classes)
    opts = [catalog.options(c.id) for c in classes]
    # minimal dimension still needed is 0, so prune only on the budget
    memo_add: dict = {}

    def add(a, b):
        k = (a, b)
        if k not in memo_add:
            memo_add[k] = witt_add(a, b)
        return memo_add[k]

    def rec(i, remaining, acc):
        if i == len(classes):
            if remaining == 0 and acc == target:
                out.append(EndoParameter.classical_from({c.id: ch for c, ch in zip(classes, choice)}))
            return
        d = classes[i].degree
        for f1 in range(remaining // (2 * d) + 1):
            for opt in opts[i]:
                used = d * (2 * f1 + opt.diman)
                if used > remaining:
                    continue
                choice[i] = (f1, opt)
                rec(i + 1, remaining - used, add(acc, opt.wtf))
        choice[i] = None

    if n >= 0:
        rec(0, n, zero_class(case))
    return out


def count_classical_bruteforce(catalog: Catalog, n: int, target: WittClass) -> int:
    """Independent count by nested products over (f1 range x Witt types) per class.

    Witt types are re-derived here by pairwise equivalence rather than
    canonical keys, and Witt sums are accumulated in reverse class order.
    """
    import itertools

    case = catalog._case()
    per_class = []
    for c in catalog:
        reps = _types_by_equivalence(c, case)
        rng = range(n // (2 * c.degree) + 1)
        per_class.append([(c.degree * (2 * f1 + dm), w) for f1 in rng for dm, w in reps])
    count = 0
    for combo in itertools.product(*per_class):
        if sum(x[0] for x in combo) != n:
            continue
        acc = zero_class(case)
        for _, w in reversed(combo):
            acc = witt_add(w, acc)
        if acc == target:
            count += 1
    return count


def _types_by_equivalence(c: EndoClassDescriptor, case: Case) -> list[tuple[int, WittClass]]:
    if c.kind in (NONSKEW, GL):
        return [(0, zero_class(case))]
    if c.witt_table:
        seen = [(0, zero_class(case))]
        for d, w in c.witt_table:
            if d and (d, w) not in seen:
                seen.append((d, w))
        return seen
    from .wittmatch import zero_context

    ext = c.ext if c.ext is not None else zero_context(case.field, case.sigma)
    reps: list[WittType] = []
    for T in witt_types(ext, case.eps):
        if not any(witt_type_equiv(T, R) for R in reps):
            reps.append(T)
    return [(T.diman, wt_f(T)) for T in reps]


def so_classes(f: EndoParameter, catalog: Catalog) -> list[tuple[EndoParameter, int | None]]:
    """Labelled classes over the special orthogonal group: one class when the
    zero endo-class is in the support, otherwise two tagged +1 and -1."""
    case = catalog._case()
    if case.kind != ORTHOGONAL:
        raise WrongCase("special orthogonal classes exist only in the orthogonal case")
    for cid in f.support:
        if catalog[cid].kind == ZERO:
            return [(f, None)]
    return [(f, 1), (f, -1)]


def witt_group(case: Case) -> list[WittClass]:
    return enumerate_witt_group(case)
