import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamewitt.classgroups import ALL_CLASSES, U, minus_one_class
from tamewitt.errors import CaseMismatch, DegenerateAtPrecision, InputError, NotSymmetricOrSkew
from tamewitt.forms import (
    Case,
    FormDescriptor,
    WittClass,
    diagonalize,
    diman,
    enumerate_witt_group,
    form_from_entries,
    invariants,
    twist,
    witt_add,
    witt_class,
    witt_neg,
    witt_sum,
    zero_class,
)
from tamewitt.oracles import oracle_diman, to_qp_int
from tamewitt.padic import make_field


def orth(F, *xs):
    return FormDescriptor(Case.orthogonal(F), tuple(F(x) for x in xs))


def all_cases(Q3, Q5, R3, U3):
    out = [Case.orthogonal(Q3), Case.orthogonal(Q5), Case.symplectic(Q3)]
    for _, s in (R3, U3):
        out += [Case.unitary(s, 1), Case.unitary(s, -1)]
    return out


@pytest.fixture(scope="module")
def cases(Q3, Q5, R3, U3):
    return all_cases(Q3, Q5, R3, U3)


# -- descriptors ------------------------------------------------------------------------


def test_unitary_entries_must_be_hermitian(R3):
    E, s = R3
    with pytest.raises(InputError):
        FormDescriptor(Case.unitary(s, 1), (E.uniformizer(),))
    FormDescriptor(Case.unitary(s, -1), (E.uniformizer(),))


def test_zero_entries_rejected(Q3):
    with pytest.raises(DegenerateAtPrecision):
        orth(Q3, 0)


def test_sum_requires_same_case(Q3, Q5):
    with pytest.raises(CaseMismatch):
        orth(Q3, 1) + orth(Q5, 1)


# -- diagonalization and invariants -----------------------------------------------------------


def test_diagonalize_examples(Q3):
    case = Case.orthogonal(Q3)
    f = diagonalize([[1, 0], [0, 1]], case)
    assert witt_class(f) == witt_class(orth(Q3, 1, 1))
    h = diagonalize([[0, 1], [1, 0]], case)
    assert invariants(h).det == minus_one_class(Q3)
    assert diman(h) == 0
    with pytest.raises(DegenerateAtPrecision):
        diagonalize([[0, 0], [0, 0]], case)
    with pytest.raises(NotSymmetricOrSkew):
        diagonalize([[1, 2], [3, 1]], case)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=6, max_size=6))
def test_diagonalize_preserves_invariants(vals):
    """A congruent copy P^T D P of a diagonal form has the same class."""
    F = make_field(5, 1)
    case = Case.orthogonal(F)
    d = [x or 1 for x in vals[:3]]
    P = [[1, vals[3], vals[4]], [0, 1, vals[5]], [0, 0, 1]]
    G = [[sum(P[k][i] * d[k] * P[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert witt_class(diagonalize(G, case)) == witt_class(orth(F, *d))


def test_invariants_examples(Q3, R3):
    inv = invariants(orth(Q3, 1, -1))
    assert inv.dim == 2 and inv.det == U and inv.hasse == 1
    E, s = R3
    inv = invariants(FormDescriptor(Case.unitary(s), (E.one(),)))
    assert inv.dim == 1 and inv.det == 0
    inv = invariants(FormDescriptor(Case.symplectic(Q3), (), 2))
    assert inv.dim == 4


def test_diman_examples(Q3):
    assert diman(orth(Q3, 1, -1)) == 0
    assert diman(orth(Q3, 1, 1)) == 2
    assert diman(orth(Q3, 1, 1, 3, 3)) == 4


@pytest.mark.parametrize("p", [3, 5])
def test_diman_matches_oracle_dims_1_to_3(p):
    F = make_field(p, 1)
    case = Case.orthogonal(F)
    reps = [c.element(F) for c in ALL_CLASSES]
    ints = [to_qp_int(x) for x in reps]
    for n in (1, 2, 3):
        for combo in itertools.product(range(4), repeat=n):
            f = FormDescriptor(case, tuple(reps[i] for i in combo))
            assert diman(f) == oracle_diman([ints[i] for i in combo], p)


# -- Witt groups -----------------------------------------------------------------------------------


def test_witt_group_orders(Q3, Q5, R3, U3):
    assert len(enumerate_witt_group(Case.orthogonal(Q3))) == 16
    assert len(enumerate_witt_group(Case.orthogonal(Q5))) == 16
    assert len(enumerate_witt_group(Case.symplectic(Q3))) == 1
    for _, s in (R3, U3):
        for eps in (1, -1):
            assert len(enumerate_witt_group(Case.unitary(s, eps))) == 4


def test_unitary_group_structure(R3, U3):
    """Klein iff -1 is a norm; otherwise cyclic of order 4."""
    from tamewitt.classgroups import NormClassContext

    for _, s in (R3, U3):
        case = Case.unitary(s, 1)
        G = enumerate_witt_group(case)
        klein = all(witt_add(c, c) == zero_class(case) for c in G)
        assert klein == NormClassContext(s).minus_one_is_norm


def test_group_axioms(cases):
    for case in cases:
        G = enumerate_witt_group(case)
        z = zero_class(case)
        for a in G:
            assert witt_add(a, z) == a
            assert witt_add(a, witt_neg(a)) == z
            for b in G:
                assert witt_add(a, b) == witt_add(b, a)
        rnd = random.Random(0)
        for _ in range(20):
            a, b, c = (rnd.choice(G) for _ in range(3))
            assert witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c))


def test_witt_add_example(Q3):
    assert witt_add(witt_class(orth(Q3, 1)), witt_class(orth(Q3, -1))) == zero_class(Case.orthogonal(Q3))


def test_witt_sum_order_independent(Q5):
    case = Case.orthogonal(Q5)
    G = enumerate_witt_group(case)
    rnd = random.Random(1)
    for _ in range(10):
        xs = [rnd.choice(G) for _ in range(5)]
        assert witt_sum(xs, case) == witt_sum(list(reversed(xs)), case)


def test_reps_are_anisotropic_and_classified(cases):
    for case in cases:
        for c in enumerate_witt_group(case):
            rep = c.rep()
            assert rep.dim == c.diman
            assert witt_class(rep) == c


def test_witt_class_json_roundtrip(cases):
    for case in cases:
        for c in enumerate_witt_group(case):
            assert WittClass.from_json(case, c.to_json()) == c


def test_witt_class_json_rejects_bad_input(Q3):
    case = Case.orthogonal(Q3)
    with pytest.raises(InputError):
        WittClass.from_json(case, {"diman": 1, "det": {"val_parity": 0, "unit": "1"}, "hasse": -1})
    with pytest.raises(InputError):
        WittClass.from_json(case, {"diman": 1, "colour": 3})


# -- twisting and JSON entries ---------------------------------------------------------------------


def test_twist_examples(R3, Q3):
    f = orth(Q3, 1, 3)
    assert witt_class(twist(f, 1)) == witt_class(f)
    E, s = R3
    h = FormDescriptor(Case.unitary(s, -1), (E.uniformizer(),))
    g = twist(h, E.uniformizer())
    assert g.case.eps == 1
    back = twist(g, E.uniformizer().inverse())
    assert back.case == h.case and witt_class(back) == witt_class(h)
    with pytest.raises(NotSymmetricOrSkew):
        twist(FormDescriptor(Case.unitary(s, 1), (E.one(),)), E.uniformizer() + 1)


def test_form_from_entries(Q3, R3):
    case = Case.orthogonal(Q3)
    f = form_from_entries(case, [{"unit": "1", "val": 0}, {"unit": "u", "val": 1}])
    assert [x.val for x in f.diag] == [0, 1]
    E, s = R3
    for eps in (1, -1):
        uc = Case.unitary(s, eps)
        g = form_from_entries(uc, [{"unit": "u", "val": 1}], hyperbolic=1)
        assert g.dim == 3
    with pytest.raises(InputError):
        form_from_entries(case, [{"unit": "w"}])


def test_classes_independent_of_uniformizer_choice(Q3):
    """Q3(sqrt 3) and Q3(sqrt 12) are one field with different uniformizers."""
    from tamewitt.padic import Eisenstein, extend
    from tamewitt.padic.embed import embed_minimal

    E1, E2 = extend(Q3, Eisenstein(2, 1)), extend(Q3, Eisenstein(2, 4))
    phi = embed_minimal(E1, E1.uniformizer(), E2, E2.uniformizer())
    c1, c2 = Case.orthogonal(E1), Case.orthogonal(E2)
    rnd = random.Random(2)
    for _ in range(30):
        xs = [E1.from_coords([rnd.randrange(1, 50), rnd.randrange(50)], rnd.randrange(0, 2)) for _ in range(rnd.randrange(1, 5))]
        f1 = FormDescriptor(c1, tuple(xs))
        f2 = FormDescriptor(c2, tuple(phi(x) for x in xs))
        assert diman(f1) == diman(f2)
        assert invariants(f1).hasse == invariants(f2).hasse
