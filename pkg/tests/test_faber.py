from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from faberlab.errors import IndexOutOfRange, InvalidWeight, NonIntegerResult, OutOfTheoremRange
from faberlab.faber import (
    FaberPolynomial,
    faber_closed_form,
    faber_family,
    faber_greedy,
    miller_form_qexp,
    miller_prefix_ok,
    partitions,
)
from faberlab.modforms import delta_series, eisenstein_series, j_series, weight_decompose
from faberlab.powersums import LinearityConstants, linearity_constants
from faberlab.qseries import series_pow


def linear_solve_oracle(k, m):
    """F_{k,m} by solving for the coefficients that kill q^(m+1..ell) directly."""
    w = weight_decompose(k)
    D = w.ell - m
    n = w.ell + 2
    base = series_pow(delta_series(n), w.ell, n) * eisenstein_series(w.kprime, n)
    j = j_series(n)
    cols = []
    jp = None
    for s in range(D + 1):
        jp = j if s == 1 else (jp * j if s > 1 else None)
        f = base if s == 0 else base * jp
        cols.append([Fraction(f[d]) for d in range(m, w.ell + 1)])
    # rows d = m..ell; unknown x_s multiplies j^s; target q^m
    rows = D + 1
    A = [[cols[s][r] for s in range(D + 1)] for r in range(rows)]
    b = [Fraction(1)] + [Fraction(0)] * (rows - 1)
    for c in range(rows):
        piv = next(r for r in range(c, rows) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        b[c], b[piv] = b[piv], b[c]
        for r in range(rows):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                b[r] -= f * b[c]
    x = [b[i] / A[i][i] for i in range(rows)]
    return [int(v) for v in reversed(x)]


@pytest.mark.parametrize(
    "k, m, coeffs",
    [
        (12, 0, [1, -720]),
        (12, 1, [1]),
        (24, 0, [1, -1440, 125280]),
        (24, 1, [1, -696]),
        (26, 0, [1, -696]),
        (36, 2, [1, -672]),
        (14, 0, [1]),
        (4, 0, [1]),
    ],
)
def test_known_polynomials(k, m, coeffs):
    assert list(faber_greedy(k, m).coeffs) == coeffs


@pytest.mark.parametrize("k, m", [(24, 0), (40, 1), (62, 2), (84, 0), (120, 3), (142, 5)])
def test_against_linear_solve(k, m):
    assert list(faber_greedy(k, m).coeffs) == linear_solve_oracle(k, m)


@pytest.mark.parametrize("ell", [1, 2, 5, 17, 40])
def test_second_to_last_index(ell):
    # F_{12 ell, ell-1} = t + 24 ell - 744
    assert list(faber_greedy(12 * ell, ell - 1).coeffs) == [1, 24 * ell - 744]


def test_family_matches_single_calls():
    for k in (48, 70, 134):
        fam = faber_family(k)
        assert [F.m for F in fam] == list(range(weight_decompose(k).ell + 1))
        assert all(F == faber_greedy(k, F.m) for F in fam)


@given(st.integers(0, 25), st.sampled_from([0, 4, 6, 8, 10, 14]), st.data())
def test_miller_prefix_property(ell, kp, data):
    k = 12 * ell + kp
    if k == 0:
        return
    m = data.draw(st.integers(0, ell))
    assert miller_prefix_ok(faber_greedy(k, m))


def test_prefix_check_rejects_wrong_polynomial():
    F = faber_greedy(48, 1)
    bad = FaberPolynomial(F.weight, F.m, (1,) + tuple(c + 1 for c in F.coeffs[1:]))
    assert miller_prefix_ok(F) and not miller_prefix_ok(bad)


def test_qexp_shape():
    f = miller_form_qexp(36, 1, 10)
    assert f.valuation == 1 and f.trunc == 10
    assert f.coefficient_list(1, 3) == [1, 0, 0]
    assert f[4] != 0
    with pytest.raises(ValueError):
        miller_form_qexp(36, 1, 2)


def test_errors():
    with pytest.raises(IndexOutOfRange):
        faber_greedy(24, 3)
    with pytest.raises(IndexOutOfRange):
        faber_greedy(24, -1)
    with pytest.raises(InvalidWeight):
        faber_greedy(2, 0)


def test_polynomial_value_and_str():
    F = faber_greedy(24, 0)
    assert F(720) == 720 * 720 - 1440 * 720 + 125280
    assert str(F) == "t^2 -1440t +125280"
    assert F.e(1) == -1440 and F.e(5) == 0


def test_partitions():
    assert sorted(partitions(3)) == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]
    assert sum(1 for _ in partitions(10)) == 42
    assert list(partitions(0)) == [()]


@pytest.mark.parametrize("k, m", [(120, 0), (134, 2), (246, 4), (372, 11)])
def test_closed_form_matches_greedy(k, m):
    F = faber_greedy(k, m)
    for n in range(1, min(8, F.degree) + 1):
        assert faber_closed_form(k, m, n) == F.e(n)


def test_closed_form_checks():
    with pytest.raises(OutOfTheoremRange):
        faber_closed_form(24, 1, 2)
    consts = [linearity_constants(1), linearity_constants(2)]
    # shifting B_2 moves p_2 by m = 1, so e_2 = (p_1^2 - p_2)/2 is a half-integer
    broken = [consts[0], LinearityConstants(2, consts[1].A, consts[1].B + 1, consts[1].C)]
    assert faber_closed_form(60, 1, 2, consts) == faber_greedy(60, 1).e(2)
    assert faber_closed_form(60, 1, 2, {s: c for s, c in enumerate(consts, 1)}) == faber_greedy(60, 1).e(2)
    with pytest.raises(NonIntegerResult):
        faber_closed_form(60, 1, 2, broken)
