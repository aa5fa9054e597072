"""Sanity checks on the brute-force oracles themselves."""

import pytest

from tamewitt.oracles import hilbert_oracle, is_isotropic, isotropic_vector, oracle_diman


@pytest.mark.parametrize("coeffs,p,expected", [
    ([1, -1], 3, 0),
    ([1, 1], 3, 2),
    ([1, 1], 5, 0),
    ([1, 1, 3, 3], 3, 4),
    ([1, 2, 3], 5, 1),
    ([1, 1, 1], 3, 1),
    ([1], 7, 1),
])
def test_oracle_diman_known_values(coeffs, p, expected):
    assert oracle_diman(coeffs, p) == expected


def test_isotropic_vector_is_isotropic():
    for coeffs, p in (([1, 1, 1], 3), ([1, 2, -3], 5), ([3, 1, -1, 2], 7)):
        v = isotropic_vector(coeffs, p)
        assert v is not None
        assert sum(c * x * x for c, x in zip(coeffs, v)) % p**3 == 0
        assert any(x % p for x in v)
    assert not is_isotropic([1, 1], 3)


def test_hilbert_oracle_known_values():
    assert hilbert_oracle(3, 3, 3) == -1
    assert hilbert_oracle(2, 5, 5) == -1
    assert hilbert_oracle(2, 2, 3) == 1
    assert hilbert_oracle(1, 7, 7) == 1
