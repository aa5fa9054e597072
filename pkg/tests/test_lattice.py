import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamewitt.errors import BasisMismatch, InputError, InvalidLatticeSequence, NotInNormalizer, NotSelfDual
from tamewitt.lattice import (
    LatticeSequence,
    MonomialForm,
    a_n,
    contains,
    dagger,
    dual_lattice,
    in_a_n,
    is_regular,
    is_self_dual,
    is_vertex,
    min_plus,
    nu_lambda,
    random_sequence,
    random_self_dual,
    standard_chain,
)

IWAHORI = LatticeSequence(2, ((0, 0), (0, 1)))  # L(0) = o + o, L(1) = o + p


def test_validation():
    with pytest.raises(InvalidLatticeSequence):
        LatticeSequence(0, ())
    with pytest.raises(InvalidLatticeSequence):
        LatticeSequence(2, ((0,),))
    with pytest.raises(InvalidLatticeSequence):
        LatticeSequence(2, ((1, 0),))
    with pytest.raises(InvalidLatticeSequence):
        LatticeSequence(2, ((0, 2),))  # jumps past the next period


def test_periodicity():
    L = IWAHORI
    for k in range(-5, 5):
        assert L.lattice(k + L.e) == tuple(x + 1 for x in L.lattice(k))


def test_a_n_examples():
    assert a_n(IWAHORI, 0) == [[0, 0], [1, 0]]
    L = LatticeSequence(1, ((0,), (0,), (0,)))
    assert a_n(L, 0) == [[0] * 3 for _ in range(3)]


def _brute_in_a_n(vals, L, n):
    """a Lambda(k) inside Lambda(k + n) for k over several periods."""
    N = L.dim
    for k in range(-2 * L.e, 3 * L.e):
        for i in range(N):
            for j in range(N):
                v = vals[i][j]
                if v is not None and v + L.exponent(j, k) < L.exponent(i, k + n):
                    return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(-4, 4), st.randoms(use_true_random=False))
def test_a_n_against_containment(N, e, n, rnd):
    L = random_sequence(N, e, rnd)
    vals = [[rnd.choice([None, -1, 0, 1, 2]) for _ in range(N)] for _ in range(N)]
    assert in_a_n(vals, L, n) == _brute_in_a_n(vals, L, n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3), st.integers(-3, 3), st.randoms(use_true_random=False))
def test_filtration_laws(N, e, m, n, rnd):
    L = random_sequence(N, e, rnd)
    A, B, C = a_n(L, m), a_n(L, n), a_n(L, m + n)
    prod = min_plus(A, B)
    assert all(prod[i][j] >= C[i][j] for i in range(N) for j in range(N))
    shifted = a_n(L, n + L.e)
    assert shifted == [[x + 1 for x in row] for row in B]
    nxt = a_n(L, n + 1)
    assert all(nxt[i][j] >= B[i][j] for i in range(N) for j in range(N))


def test_nu_lambda():
    assert nu_lambda(IWAHORI, [0, 0]) == 0
    assert nu_lambda(IWAHORI, [1, 1]) == IWAHORI.e
    with pytest.raises(NotInNormalizer):
        nu_lambda(IWAHORI, [1, 0])
    with pytest.raises(BasisMismatch):
        nu_lambda(IWAHORI, [1])


def test_dual_lattice_examples():
    assert dual_lattice((0, 0, 0), MonomialForm.diagonal((0, 0, 0))) == (1, 1, 1)
    # the pairing e_0 <-> e_1 swaps exponents
    h = MonomialForm((1, 0), (0, 0))
    assert dual_lattice((0, 2), h) == (-1, 1)
    assert contains((0, 0), (0, 1)) and not contains((0, 1), (0, 0))


def test_self_dual_witness():
    L = LatticeSequence(1, ((0,),))
    assert is_self_dual(L, MonomialForm.diagonal((0,))) == 1
    assert is_self_dual(IWAHORI, MonomialForm.diagonal((0, 0))) is None


def test_regularity():
    assert is_regular(standard_chain(3))
    assert is_regular(LatticeSequence(1, ((0,), (0,))))
    assert not is_regular(LatticeSequence(2, ((0, 0),)))


def test_vertex():
    h = MonomialForm.diagonal((0, 0))
    assert not is_vertex((0, 0), h)  # o^2 is not inside its dual p^2
    assert not is_vertex((1, 1), h)  # pi L# = L, the first inclusion is strict
    assert is_vertex((1, 0), MonomialForm.diagonal((0, 1)))


def test_monomial_form_validation():
    with pytest.raises(InputError):
        MonomialForm((1, 2, 0), (0, 0, 0))  # not an involution
    with pytest.raises(InputError):
        MonomialForm((1, 0), (0, 1))  # paired valuations differ


def test_dagger_principal_example():
    L = LatticeSequence(1, ((0,), (0,)))
    h = MonomialForm.diagonal((0, 0))
    D, hd = dagger(L, h)
    assert D.dim == 4 and D.e == 1
    assert is_regular(D)
    assert is_self_dual(D, hd) == is_self_dual(L, h)


def test_dagger_needs_self_dual():
    with pytest.raises(NotSelfDual):
        dagger(IWAHORI, MonomialForm.diagonal((0, 0)))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_dagger_regular_and_self_dual(N, e, rnd):
    L, h, d = random_self_dual(N, e, rnd)
    assert is_self_dual(L, h) is not None
    D, hd = dagger(L, h)
    assert D.dim == 2 * e * N
    assert is_regular(D)
    assert is_self_dual(D, hd) is not None


def test_json_roundtrip():
    rnd = random.Random(5)
    for _ in range(20):
        L, h, _ = random_self_dual(3, 3, rnd)
        assert LatticeSequence.from_json(L.to_json()) == L
        assert MonomialForm.from_json(h.to_json()) == h
    with pytest.raises(InputError):
        LatticeSequence.from_json({"e": 1, "mu": [[0]], "extra": 1})
