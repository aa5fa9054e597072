"""JSON parsing for fields, elements, involutions, forms and catalogs."""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError, NotAnInvolution
from .forms import Case, FormDescriptor, WittClass, diagonalize, form_from_entries, witt_class
from .padic import Eisenstein, FieldDesc, Involution, PadicElement, Unramified, extend, involutions, make_field


def loads(text: str, what: str = "input"):
    """Parse a JSON payload, or read it from a file when given ``@path``."""
    if isinstance(text, (dict, list)):
        return text
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON for {what}: {exc.msg}") from None


def _check_keys(data: dict, allowed: set, what: str) -> None:
    if not isinstance(data, dict):
        raise InputError(f"{what} must be a JSON object")
    extra = set(data) - allowed
    if extra:
        raise InputError(f"unknown {what} fields: {sorted(extra)}")


def field_from_json(data, precision: int | None = None) -> FieldDesc:
    """{"p", "f0", "tower": [{"kind", "e"|"f"|"param", "unit"?}], "poly"?}"""
    data = loads(data, "field")
    _check_keys(data, {"p", "f0", "tower", "poly"}, "field")
    if "p" not in data:
        raise InputError("field needs a prime p")
    F = make_field(int(data["p"]), int(data.get("f0", 1)), data.get("poly"), precision)
    for step in data.get("tower", []):
        _check_keys(step, {"kind", "e", "f", "param", "unit", "poly"}, "tower step")
        kind = step.get("kind")
        if kind == "unramified":
            F = extend(F, Unramified(int(step.get("f", step.get("param", 0)))))
        elif kind == "eisenstein":
            unit = step.get("unit", 1)
            F = extend(F, Eisenstein(int(step.get("e", step.get("param", 0))), unit))
        else:
            raise InputError(f"unknown tower step kind {kind!r}")
    return F


def element_from_json(data, field: FieldDesc) -> PadicElement:
    """Integers, fraction strings, "pi", "t", {"terms": [[c, a, b], ...]} for
    sum c t^a pi^b, or the raw {"k", "coords", "prec"} record."""
    data = loads(data, "element") if isinstance(data, str) and data[:1] in "{[@" else data
    if isinstance(data, bool):
        raise InputError("booleans are not field elements")
    if isinstance(data, int):
        return field(data)
    if isinstance(data, str):
        if data == "pi":
            return field.uniformizer()
        if data == "t":
            return field.t()
        try:
            return field(Fraction(data))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse element {data!r}") from None
    if isinstance(data, dict):
        if "terms" in data:
            _check_keys(data, {"terms"}, "element")
            acc = field.zero(field.default_precision)
            t, pi = field.t(field.default_precision + 8), field.uniformizer(field.default_precision + 8)
            for term in data["terms"]:
                if len(term) != 3:
                    raise InputError("terms are [coefficient, t-power, pi-power]")
                c, a, b = (int(x) for x in term)
                if a < 0 or b < 0:
                    raise InputError("powers must be non-negative")
                acc = acc + field(c) * t**a * pi**b if (a or b) else acc + field(c)
            return acc
        _check_keys(data, {"k", "coords", "prec"}, "element")
        coords = data.get("coords", [])
        if len(coords) != field.degree:
            raise InputError(f"element needs {field.degree} coordinates")
        return field.from_coords(coords, int(data.get("k", 0)), int(data.get("prec", field.default_precision)))
    raise InputError(f"cannot parse element {data!r}")


def involution_from_json(data, field: FieldDesc) -> Involution:
    data = loads(data, "involution")
    _check_keys(data, {"frob", "mult"}, "involution")
    try:
        return Involution(field, int(data.get("frob", 0)), data.get("mult", 1))
    except NotAnInvolution as exc:
        raise InputError(str(exc)) from None


def default_involution(field: FieldDesc, beta: PadicElement | None = None, base: Involution | None = None) -> Involution:
    """The first nontrivial involution (extending ``base``) for which ``beta`` is skew."""
    for s in involutions(field):
        if s.is_trivial:
            continue
        if base is not None and not s.restricts_to(base):
            continue
        if beta is None or s.is_skew(beta):
            return s
    raise InputError("no nontrivial involution with the requested properties")


def case_from_args(kind: str, field: FieldDesc, sigma: Involution | None, eps: int) -> Case:
    if kind == "orthogonal":
        return Case.orthogonal(field)
    if kind == "symplectic":
        return Case.symplectic(field)
    if kind == "unitary":
        return Case.unitary(sigma if sigma is not None else default_involution(field), eps)
    raise InputError(f"unknown case {kind!r}")


def form_from_json(data, case: Case) -> FormDescriptor:
    """{"diag": [{"unit", "val"}...], "hyperbolic"?} or {"gram": [[element...]...]}."""
    data = loads(data, "form")
    _check_keys(data, {"case", "field", "diag", "gram", "hyperbolic", "entries"}, "form")
    if "case" in data and data["case"] != case.kind:
        raise InputError(f"form is tagged {data['case']!r} but the case is {case.kind!r}")
    if "gram" in data:
        gram = [[element_from_json(x, case.field) for x in row] for row in data["gram"]]
        return diagonalize(gram, case)
    if "entries" in data:
        return FormDescriptor(case, tuple(element_from_json(x, case.field) for x in data["entries"]), int(data.get("hyperbolic", 0)))
    entries = data.get("diag", [])
    for ent in entries:
        _check_keys(ent, {"unit", "val", "sign"}, "diagonal entry")
    return form_from_entries(case, entries, int(data.get("hyperbolic", 0)))


def witt_class_from_json(data, case: Case) -> WittClass:
    data = loads(data, "Witt class")
    if isinstance(data, dict) and ("diag" in data or "gram" in data or "entries" in data):
        return witt_class(form_from_json(data, case))
    return WittClass.from_json(case, data)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def catalog_from_json(data, case: Case | None):
    """{"classes": [{"id", "kind", "degree", "field"?, "beta"?, "sigma"?, "witt_table"?}]}.

    ``field`` describes E as a tower over the catalog's base field; ``beta``
    is parsed in E, and ``sigma`` defaults to the first involution of E
    extending the base involution for which beta is skew.
    """
    from .endo import SKEW, Catalog, EndoClassDescriptor
    from .transfer import SelfDualExtension

    data = loads(data, "catalog")
    _check_keys(data, {"classes"}, "catalog")
    classes = []
    for entry in data.get("classes", []):
        _check_keys(entry, {"id", "kind", "degree", "field", "beta", "sigma", "witt_table"}, "catalog class")
        if "id" not in entry or "kind" not in entry:
            raise InputError("catalog classes need an id and a kind")
        ext = None
        if "field" in entry:
            if case is None:
                raise InputError("field data needs a base case")
            if entry["kind"] != SKEW:
                raise InputError("only skew classes carry field data")
            F = case.field
            E = field_from_json(entry["field"], F.default_precision)
            if not F.is_subfield_of(E):
                raise InputError(f"class {entry['id']}: field is not a tower over the base field")
            beta = element_from_json(entry.get("beta", "pi"), E)
            sigma_E = involution_from_json(entry["sigma"], E) if "sigma" in entry else default_involution(E, beta, case.sigma)
            ext = SelfDualExtension(E, sigma_E, F, case.sigma, beta)
        table = ()
        if "witt_table" in entry:
            if case is None:
                raise InputError("a Witt table needs a base case")
            rows = []
            for row in entry["witt_table"]:
                _check_keys(row, {"diman", "wtF"}, "Witt table row")
                rows.append((int(row["diman"]), witt_class_from_json(row["wtF"], case)))
            table = tuple(rows)
        degree = int(entry.get("degree", ext.n if ext is not None else 1))
        classes.append(EndoClassDescriptor(str(entry["id"]), entry["kind"], degree, ext, table))
    return Catalog(classes, case)
