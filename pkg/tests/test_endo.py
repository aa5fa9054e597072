import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamewitt.endo import (
    GL,
    NONSKEW,
    SKEW,
    ZERO,
    Catalog,
    EndoClassDescriptor,
    EndoParameter,
    count_classical_bruteforce,
    count_gl_dp,
    enumerate_classical,
    enumerate_gl,
    so_classes,
    type_options,
    validate_classical,
    validate_gl,
)
from tamewitt.errors import InputError, NonSkewWittType, UnknownClass, WrongCase
from tamewitt.forms import Case, enumerate_witt_group, zero_class
from tamewitt.grid import grid


def gl_catalog(*degrees):
    return Catalog([EndoClassDescriptor(f"c{i}", GL, d) for i, d in enumerate(degrees)])


@pytest.fixture(scope="module")
def skew3():
    return [pt.ext for pt in grid((3,), unitary=False) if not pt.ext.beta.is_zero()]


@pytest.fixture(scope="module")
def orth(Q3):
    return Case.orthogonal(Q3)


# -- GL ----------------------------------------------------------------------------------


def test_validate_gl_examples():
    cat = gl_catalog(1, 2)
    assert validate_gl(EndoParameter.gl({"c0": 0, "c1": 2}), cat, 4)
    assert not validate_gl(EndoParameter.gl({"c0": 1, "c1": 2}), cat, 4)
    one = gl_catalog(1)
    assert [p.as_dict() for p in enumerate_gl(one, 5)] == [{"c0": 5}]


def test_enumerate_gl_examples():
    params = enumerate_gl(gl_catalog(1, 2), 4)
    assert [p.as_dict() for p in params] == [{"c1": 2}, {"c0": 2, "c1": 1}, {"c0": 4}]
    assert enumerate_gl(gl_catalog(2), 3) == []
    brute = sum(1 for a, b, c in itertools.product(range(13), range(7), range(5)) if a + 2 * b + 3 * c == 12)
    assert len(enumerate_gl(gl_catalog(1, 2, 3), 12)) == brute


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=4), st.integers(0, 30))
def test_gl_count_matches_generating_function(degrees, n):
    params = enumerate_gl(gl_catalog(*degrees), n)
    assert len(params) == count_gl_dp(degrees, n)
    assert len({p.values for p in params}) == len(params)
    assert all(validate_gl(p, gl_catalog(*degrees), n) for p in params)


def test_unknown_class():
    with pytest.raises(UnknownClass):
        validate_gl(EndoParameter.gl({"zz": 1}), gl_catalog(1), 1)


def test_catalog_rejects_duplicates_and_bad_kinds():
    with pytest.raises(InputError):
        Catalog([EndoClassDescriptor("a", GL, 1), EndoClassDescriptor("a", GL, 2)])
    with pytest.raises(InputError):
        EndoClassDescriptor("a", "Mystery", 1)
    with pytest.raises(InputError):
        EndoClassDescriptor("z", ZERO, 2)


def test_skew_degree_must_match(skew3):
    ext = skew3[0]
    with pytest.raises(InputError):
        EndoClassDescriptor("s", SKEW, ext.n + 1, ext)


# -- classical -------------------------------------------------------------------------------


def test_symplectic_zero_catalog(Q3):
    S = Case.symplectic(Q3)
    cat = Catalog([EndoClassDescriptor("z", ZERO)], S)
    for n in range(0, 11):
        params = enumerate_classical(cat, n, zero_class(S))
        assert len(params) == (1 if n % 2 == 0 else 0)
        for p in params:
            assert validate_classical(p, cat, n, zero_class(S))
    (p,) = enumerate_classical(cat, 4, zero_class(S))
    f1, opt = p.as_dict()["z"]
    assert f1 == 2 and opt.is_zero


def test_zero_class_options(orth):
    opts = type_options(EndoClassDescriptor("z", ZERO), orth)
    assert len(opts) == 16  # one Witt type per class of W(F)
    assert opts[0].is_zero


def test_nonskew_types_are_zero(orth, skew3):
    cat = Catalog([EndoClassDescriptor("u", NONSKEW, 1), EndoClassDescriptor("s", SKEW, skew3[0].n, skew3[0])], orth)
    assert len(cat.options("u")) == 1
    nonzero = next(o for o in cat.options("s") if not o.is_zero)
    bad = EndoParameter.classical_from({"u": (0, nonzero)})
    with pytest.raises(NonSkewWittType):
        validate_classical(bad, cat, 4, zero_class(orth))


def test_classical_enumeration_is_valid_and_sorted(orth, skew3):
    cat = Catalog(
        [EndoClassDescriptor("z", ZERO), EndoClassDescriptor("s", SKEW, skew3[0].n, skew3[0]), EndoClassDescriptor("u", NONSKEW, 1)],
        orth,
    )
    for tgt in enumerate_witt_group(orth)[:6]:
        for n in range(0, 7):
            params = enumerate_classical(cat, n, tgt)
            assert all(validate_classical(p, cat, n, tgt) for p in params)
            assert len({p.values for p in params}) == len(params)


def test_classical_counts_match_bruteforce(orth, skew3):
    rnd = random.Random(11)
    targets = enumerate_witt_group(orth)
    for _ in range(6):
        classes = [EndoClassDescriptor("z", ZERO)]
        for j in range(rnd.randrange(1, 3)):
            ext = rnd.choice(skew3)
            classes.append(EndoClassDescriptor(f"s{j}", SKEW, ext.n, ext))
        cat = Catalog(classes, orth)
        n = rnd.randrange(0, 11)
        tgt = rnd.choice(targets)
        assert len(enumerate_classical(cat, n, tgt)) == count_classical_bruteforce(cat, n, tgt)


def test_declared_witt_table(orth):
    G = enumerate_witt_group(orth)
    w1 = next(c for c in G if c.diman == 1)
    w2 = next(c for c in G if c.diman == 2)
    cat = Catalog([EndoClassDescriptor("d", SKEW, 2, None, ((1, w1), (2, w2)))], orth)
    assert len(cat.options("d")) == 3
    for n in range(0, 9):
        for tgt in (zero_class(orth), w1, w2):
            assert len(enumerate_classical(cat, n, tgt)) == count_classical_bruteforce(cat, n, tgt)


def test_skew_without_data_rejected(orth):
    cat = Catalog([EndoClassDescriptor("s", SKEW, 2)], orth)
    with pytest.raises(InputError):
        cat.options("s")


def test_so_classes(orth, Q3, skew3):
    cat = Catalog([EndoClassDescriptor("z", ZERO), EndoClassDescriptor("s", SKEW, skew3[0].n, skew3[0])], orth)
    with_zero = next(p for p in enumerate_classical(cat, 2, zero_class(orth)) if "z" in p.support)
    assert len(so_classes(with_zero, cat)) == 1
    without = next(p for p in enumerate_classical(cat, 4, zero_class(orth)) if p.support == ["s"])
    assert [tag for _, tag in so_classes(without, cat)] == [1, -1]
    S = Case.symplectic(Q3)
    with pytest.raises(WrongCase):
        so_classes(with_zero, Catalog([EndoClassDescriptor("z", ZERO)], S))


def test_unitary_catalog(R3):
    E, s = R3
    case = Case.unitary(s, 1)
    cat = Catalog([EndoClassDescriptor("z", ZERO)], case)
    # f1 pairs plus one of four unitary classes with matching diman and target
    for n in range(0, 6):
        for tgt in enumerate_witt_group(case):
            got = len(enumerate_classical(cat, n, tgt))
            assert got == (1 if (n - tgt.diman) % 2 == 0 and n >= tgt.diman else 0)
