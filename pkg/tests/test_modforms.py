from __future__ import annotations

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from faberlab.errors import InvalidWeight, UnsupportedWeight
from faberlab.modforms import (
    GAMMA,
    KPRIMES,
    WeightDecomposition,
    delta_series,
    eisenstein_gamma,
    eisenstein_series,
    j_series,
    normalization,
    sigma,
    weight_decompose,
)


@pytest.mark.parametrize(
    "k, ell, kp",
    [(0, 0, 0), (4, 0, 4), (12, 1, 0), (14, 0, 14), (26, 1, 14), (24, 2, 0), (1810, 150, 10)],
)
def test_weight_decompose(k, ell, kp):
    assert weight_decompose(k) == WeightDecomposition(k, ell, kp)


@pytest.mark.parametrize("k", [2, 3, -4, 7])
def test_invalid_weights(k):
    with pytest.raises(InvalidWeight):
        weight_decompose(k)


@given(st.integers(0, 2000).map(lambda x: 2 * x).filter(lambda k: k != 2))
def test_decomposition_roundtrip(k):
    w = weight_decompose(k)
    assert w.k == 12 * w.ell + w.kprime and w.kprime in KPRIMES


def test_gamma_matches_zeta_oracle():
    # (2 pi i)^k / (zeta(k) (k-1)!) evaluated numerically
    mpmath.mp.dps = 40
    for k, g in GAMMA.items():
        val = (2j * mpmath.pi) ** k / (mpmath.zeta(k) * mpmath.factorial(k - 1))
        assert abs(val - g) < 1e-25
        assert eisenstein_gamma(k) == g


def test_normalization_rejects_bad_kprime():
    assert normalization(0).gamma == 0
    with pytest.raises(UnsupportedWeight):
        normalization(12)


def test_sigma():
    assert [sigma(1, n) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]
    assert sigma(3, 4) == 1 + 8 + 64


def pentagonal_delta(n):
    # Euler's pentagonal theorem gives prod (1 - q^i) independently of the sieve
    eta = [0] * n
    k = 0
    while True:
        done = True
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if g < n:
                eta[g] = (-1) ** k
                done = False
        if done and k > 0:
            break
        k += 1
    out = [1] + [0] * (n - 1)
    for _ in range(24):
        new = [0] * n
        for i, a in enumerate(out):
            if a:
                for j in range(n - i):
                    new[i + j] += a * eta[j]
        out = new
    return out


def test_delta_against_pentagonal_oracle():
    d = delta_series(40)
    assert d.valuation == 1 and d.trunc == 40
    assert d.coefficient_list(1, 40) == pentagonal_delta(40)


def test_ramanujan_tau_values():
    d = delta_series(12)
    assert d.coefficient_list(1, 6) == [1, -24, 252, -1472, 4830, -6048]


def test_tau_multiplicative():
    d = delta_series(40)
    tau = lambda n: d[n]  # noqa: E731
    assert tau(6) == tau(2) * tau(3)
    assert tau(35) == tau(5) * tau(7)
    assert tau(4) == tau(2) ** 2 - 2**11


def test_eisenstein_first_terms():
    assert eisenstein_series(4, 4).coefficient_list(0, 3) == [1, 240, 2160, 6720]
    assert eisenstein_series(6, 3).coefficient_list(0, 2) == [1, -504, -16632]
    assert eisenstein_series(0, 5).coefficient_list(0, 4) == [1, 0, 0, 0, 0]


def test_weight_12_identity():
    n = 30
    e4, e6, d = eisenstein_series(4, n), eisenstein_series(6, n), delta_series(n)
    lhs = e4 * e4 * e4 - e6 * e6 - 1728 * d
    assert lhs.coefficient_list(0, n - 1) == [0] * n


def test_e8_and_e10_are_products():
    n = 25
    e4, e6 = eisenstein_series(4, n), eisenstein_series(6, n)
    assert (e4 * e4).agrees_with(eisenstein_series(8, n))
    assert (e4 * e6).agrees_with(eisenstein_series(10, n))
    assert (e4 * e4 * e6).agrees_with(eisenstein_series(14, n))


def test_j_series():
    j = j_series(6)
    assert j.valuation == -1 and j.trunc == 4
    assert j.coefficient_list(-1, 2) == [1, 744, 196884, 21493760]


def test_prefix_independent_of_length():
    assert delta_series(10).coefficient_list(1, 10) == delta_series(200).coefficient_list(1, 10)
