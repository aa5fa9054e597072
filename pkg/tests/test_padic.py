from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamewitt.errors import (
    DivisionByZeroAtPrecision,
    EvenResidueChar,
    HypothesisViolated,
    NoSimpleRoot,
    NotAGenerator,
    NotARoot,
    WildExtension,
)
from tamewitt.padic import (
    Eisenstein,
    PowerBasis,
    Unramified,
    embedding,
    extend,
    generates,
    hensel_lift,
    involutions,
    is_square,
    make_field,
    norm_quadratic,
    relative_norm,
    sqrt,
    square_witness,
    teichmuller,
)
from tamewitt.padic.embed import embed_minimal
from tamewitt.padic.poly import evaluate

Q3 = make_field(3, 1)
Q5 = make_field(5, 1)
FIELDS = [
    Q3,
    Q5,
    extend(Q3, Eisenstein(2, 1)),
    extend(Q3, Unramified(2)),
    extend(extend(Q5, Unramified(2)), Eisenstein(2, 1)),
    extend(make_field(7, 1), Eisenstein(3, 1)),
]


@st.composite
def elements(draw, nonzero=False):
    K = draw(st.sampled_from(FIELDS))
    coords = draw(st.lists(st.integers(-(10**6), 10**6), min_size=K.degree, max_size=K.degree))
    k = draw(st.integers(-2, 3))
    x = K.from_coords(coords, k)
    if nonzero and x.is_zero():
        x = K.one()
    return x


@st.composite
def pairs(draw):
    K = draw(st.sampled_from(FIELDS))
    def one():
        coords = draw(st.lists(st.integers(-(10**6), 10**6), min_size=K.degree, max_size=K.degree))
        return K.from_coords(coords, draw(st.integers(-2, 3)))
    return one(), one(), one()


# -- fields ---------------------------------------------------------------------------


def test_make_field_basic():
    assert Q3.q == 3 and Q3.e == 1 and Q3.f == 1
    assert Q5.q == 5


def test_make_field_rejects_even_residue_characteristic():
    with pytest.raises(EvenResidueChar):
        make_field(2, 1)


def test_extensions():
    E = extend(Q3, Eisenstein(2, 1))
    assert (E.e, E.f) == (2, 1)
    assert E.uniformizer() ** 2 == E(3)
    U = extend(Q3, Unramified(2))
    assert (U.e, U.f, U.q) == (1, 2, 9)


def test_wild_extension_rejected():
    with pytest.raises(WildExtension):
        extend(Q3, Eisenstein(3, 1))


def test_tower_prefix_and_subfields():
    K = extend(extend(Q5, Unramified(2)), Eisenstein(2, 1))
    assert K.prefix(0) == Q5
    assert Q5.is_subfield_of(K)
    assert K.prefix(1).is_subfield_of(K)
    assert K.degree == 4


# -- element arithmetic ---------------------------------------------------------------------


def test_valuations():
    assert Q3(3).val == 1
    x, y = Q3(2), Q3(9)
    assert (x + y).val == 0
    assert Q3(Fraction(1, 9)).val == -2


def test_division_by_zero():
    with pytest.raises(DivisionByZeroAtPrecision):
        Q3.zero().inverse()


@settings(max_examples=60, deadline=None)
@given(pairs())
def test_ring_axioms(abc):
    a, b, c = abc
    assert (a + b) - b == a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(elements(nonzero=True))
def test_inverse(x):
    assert x * x.inverse() == x.field.one()
    assert (x * x).val == 2 * x.val


def test_fractions_roundtrip():
    assert Q5(Fraction(2, 3)) * 3 == Q5(2)


def test_teichmuller_is_fixed_by_frobenius_power():
    U = extend(Q3, Unramified(2))
    for r in U.residue_field.elements():
        w = teichmuller(U, r, 20)
        assert w ** U.q == w


# -- Hensel, squares, norms ---------------------------------------------------------------------


@pytest.mark.parametrize("field,poly,r0", [(Q3, [-7, 0, 1], 1), (Q5, [1, 0, 1], 2)])
def test_hensel_square_roots(field, poly, r0):
    r = hensel_lift(poly, r0, 8, field=field)
    assert (evaluate([field(c) for c in poly], r)).val >= 8
    assert r.residue() == field.residue_field.elem(r0)


def test_hensel_errors():
    with pytest.raises(NoSimpleRoot):
        hensel_lift([-3, 0, 1], 0, 8, field=Q3)
    with pytest.raises(NotARoot):
        hensel_lift([-7, 0, 1], 0, 8, field=Q3)


def test_hensel_over_extension(rng):
    from tamewitt.acceptance import random_liftable_poly

    K = FIELDS[4]
    for _ in range(5):
        coeffs, r0 = random_liftable_poly(K, rng, 40)
        r = hensel_lift(coeffs, r0, 32)
        fr = evaluate(coeffs, r)
        assert fr.is_zero() or fr.val >= 32


def test_is_square_examples():
    assert is_square(Q3(7))
    assert not is_square(Q3(3))
    assert is_square(Q5(-1))
    assert not is_square(Q3(-1))
    ok, w = square_witness(Q3(7))
    assert ok and w * w == Q3(7)


@settings(max_examples=40, deadline=None)
@given(elements(nonzero=True))
def test_squares_are_squares(x):
    y = x * x
    assert is_square(y)
    r = sqrt(y)
    assert r * r == y


def test_norm_quadratic_examples(R3, U3):
    E, s = R3
    rt3 = E.uniformizer()
    assert norm_quadratic(rt3, s) == E(-3)
    assert norm_quadratic(E.one(), s) == E.one()
    U, f = U3
    x = U.t() + 2
    assert norm_quadratic(x, f).val == 0


# -- involutions ------------------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(pairs())
def test_involutions_are_ring_involutions(abc):
    a, b, _ = abc
    for s in involutions(a.field):
        assert s(s(a)) == a
        assert s(a * b) == s(a) * s(b)
        assert s(a + b) == s(a) + s(b)
        if not s.is_trivial:
            assert s.is_fixed(s.norm(a))


def test_involution_count():
    # Q3(sqrt 3) has identity and sqrt3 -> -sqrt3
    assert len(involutions(FIELDS[2])) == 2
    assert len(involutions(FIELDS[3])) == 2


def test_skew_element_and_non_norm(R3, U3):
    from tamewitt.classgroups import is_norm

    for E, s in (R3, U3):
        assert s.is_skew(s.skew_element())
        assert not is_norm(s.non_norm(), s)
        assert s.is_fixed(s.fixed_uniformizer())


# -- relative structure ---------------------------------------------------------------------------


def test_power_basis_and_generators(R3):
    E, _ = R3
    assert generates(E, Q3, E.uniformizer())
    assert not generates(E, Q3, E(2))
    with pytest.raises(NotAGenerator):
        PowerBasis(E, Q3, E(2))
    pb = PowerBasis(E, Q3, E.uniformizer())
    x = E.uniformizer() * 5 + 7
    assert pb.combine(pb.coords(x)) == x
    assert relative_norm(E.uniformizer(), Q3) == Q3(-3)


def test_embedding_is_a_homomorphism():
    K = FIELDS[4]
    mid = K.prefix(1)
    emb = embedding(mid, K)
    a, b = mid.t() + 3, mid.t() * 2 - 1
    assert emb(a * b) == emb(a) * emb(b)
    assert emb(a + b) == emb(a) + emb(b)


def test_embed_minimal_identity(R3):
    E, _ = R3
    phi = embed_minimal(E, E.uniformizer(), E, E.uniformizer())
    assert phi(E.uniformizer()) == E.uniformizer()


def test_embed_minimal_rescaled_uniformizer():
    E1 = extend(Q3, Eisenstein(2, 1))
    E2 = extend(Q3, Eisenstein(2, 4))  # Q3(sqrt 12)
    b2 = E2.uniformizer()
    phi = embed_minimal(E1, E1.uniformizer(), E2, b2)
    img = phi(E1.uniformizer())
    assert img * img == E2(3)
    assert (img - b2).val > b2.val


def test_embed_minimal_hypothesis():
    E = extend(Q3, Eisenstein(2, 1))
    with pytest.raises(HypothesisViolated):
        embed_minimal(E, E(3), E, E(3))
