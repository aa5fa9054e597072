import json

import pytest

from tamewitt.endo import SKEW, ZERO
from tamewitt.errors import InputError
from tamewitt.forms import Case, enumerate_witt_group, witt_class
from tamewitt.padic import Eisenstein, Unramified, extend, make_field
from tamewitt.serialize import (
    case_from_args,
    catalog_from_json,
    element_from_json,
    field_from_json,
    form_from_json,
    involution_from_json,
    loads,
    witt_class_from_json,
)


def test_loads_variants(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"a": 1}')
    assert loads(f"@{path}") == {"a": 1}
    assert loads({"a": 2}) == {"a": 2}
    with pytest.raises(InputError):
        loads("{nope")


def test_field_roundtrip():
    F = extend(extend(make_field(5, 1), Unramified(2)), Eisenstein(2, 1))
    assert field_from_json(F.to_json()) == F
    assert field_from_json(json.dumps(F.to_json())) == F
    with pytest.raises(InputError):
        field_from_json({"p": 3, "tower": [{"kind": "weird"}]})
    with pytest.raises(InputError):
        field_from_json({"f0": 1})


def test_elements(Q3, R3):
    E, _ = R3
    assert element_from_json(5, Q3) == Q3(5)
    assert element_from_json("2/3", Q3) * 3 == Q3(2)
    assert element_from_json("pi", E) == E.uniformizer()
    assert element_from_json({"terms": [[2, 0, 0], [1, 0, 1]]}, E) == E(2) + E.uniformizer()
    x = E.uniformizer() * 7 + 1
    assert element_from_json(x.to_json(), E) == x
    with pytest.raises(InputError):
        element_from_json("sqrt", Q3)
    with pytest.raises(InputError):
        element_from_json(True, Q3)


def test_involutions(U3):
    E, s = U3
    assert involution_from_json(s.to_json(), E) == s
    with pytest.raises(InputError):
        involution_from_json({"frob": 0, "mult": 1, "x": 0}, E)


def test_forms_and_classes(Q3, R3):
    case = Case.orthogonal(Q3)
    f = form_from_json('{"diag":[{"unit":"u","val":1}],"hyperbolic":1}', case)
    assert f.dim == 3
    g = form_from_json({"gram": [[2, 1], [1, 2]]}, case)
    assert g.dim == 2
    with pytest.raises(InputError):
        form_from_json({"diag": [], "case": "unitary"}, case)
    for c in enumerate_witt_group(case):
        assert witt_class_from_json(c.to_json(), case) == c
    assert witt_class_from_json({"diag": [{"unit": "1", "val": 0}]}, case) == witt_class(form_from_json({"diag": [{"unit": "1"}]}, case))
    E, s = R3
    assert case_from_args("unitary", E, None, -1).eps == -1
    with pytest.raises(InputError):
        case_from_args("affine", Q3, None, 1)


def test_catalog(Q3):
    case = Case.orthogonal(Q3)
    data = {"classes": [
        {"id": "z", "kind": ZERO},
        {"id": "s", "kind": SKEW, "field": {"p": 3, "tower": [{"kind": "eisenstein", "e": 2}]}},
        {"id": "d", "kind": SKEW, "degree": 2, "witt_table": [{"diman": 1, "wtF": {"diag": [{"unit": "1"}]}}]},
    ]}
    cat = catalog_from_json(data, case)
    assert [c.id for c in cat] == ["d", "s", "z"]
    assert cat["s"].degree == 2
    assert len(cat.options("d")) == 2
    with pytest.raises(InputError):
        catalog_from_json({"classes": [{"id": "x"}]}, case)
    with pytest.raises(InputError):
        catalog_from_json({"classes": [{"id": "x", "kind": ZERO, "field": {"p": 3}}]}, case)
    with pytest.raises(InputError):
        catalog_from_json({"classes": [], "version": 2}, case)
