"""q-expansions of Delta, the Eisenstein series E_k' and the j-invariant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InvalidWeight, UnsupportedWeight
from .qseries import LaurentSeries, convolve, inverse_coeffs, power_coeffs

__all__ = [
    "KPRIMES",
    "GAMMA",
    "WeightDecomposition",
    "EisensteinNormalization",
    "weight_decompose",
    "sigma",
    "bernoulli",
    "eisenstein_gamma",
    "delta_series",
    "eisenstein_series",
    "j_series",
]

KPRIMES = (0, 4, 6, 8, 10, 14)

# gamma_k = (2 pi i)^k / (zeta(k) (k-1)!) for the weights that occur as k'
GAMMA = {4: 240, 6: -504, 8: 480, 10: -264, 14: -24}


@dataclass(frozen=True)
class WeightDecomposition:
    k: int
    ell: int
    kprime: int

    def __post_init__(self):
        if self.k != 12 * self.ell + self.kprime or self.kprime not in KPRIMES or self.ell < 0:
            raise InvalidWeight(f"inconsistent decomposition {self}")


@dataclass(frozen=True)
class EisensteinNormalization:
    kprime: int
    gamma: int


def weight_decompose(k: int) -> WeightDecomposition:
    """Write ``k = 12*ell + k'`` with ``k'`` in (0, 4, 6, 8, 10, 14)."""
    if not isinstance(k, int) or k < 0 or k % 2 or k == 2:
        raise InvalidWeight(f"weight must be an even integer >= 4 or 0, got {k!r}")
    ell, kp = divmod(k, 12)
    if kp == 2:
        ell, kp = ell - 1, 14
    return WeightDecomposition(k, ell, kp)


def sigma(s: int, n: int) -> int:
    """Divisor power sum ``sum_{d | n} d^s``."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**s
            e = n // d
            if e != d:
                total += e**s
        d += 1
    return total


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (convention B_1 = -1/2)."""
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, i) * bernoulli(i) for i in range(n)) / (n + 1)


def eisenstein_gamma(k: int) -> Fraction:
    """gamma_k = -2k / B_k, the rational form of (2 pi i)^k / (zeta(k) (k-1)!)."""
    return Fraction(-2 * k) / bernoulli(k)


def _check_gamma_table() -> None:
    for kp, g in GAMMA.items():
        if eisenstein_gamma(kp) != g:
            raise AssertionError(f"gamma_{kp} table entry {g} != {eisenstein_gamma(kp)}")


_check_gamma_table()


def normalization(kprime: int) -> EisensteinNormalization:
    if kprime not in KPRIMES:
        raise UnsupportedWeight(f"k' must be one of {KPRIMES}, got {kprime}")
    return EisensteinNormalization(kprime, GAMMA.get(kprime, 0))


def _bucket(n: int) -> int:
    # prefixes do not depend on the truncation, so cache a few long ones and slice
    return max(64, -(-n // 64) * 64)


@lru_cache(maxsize=8)
def _euler_product(n: int) -> tuple[int, ...]:
    # prod_{i=1}^{n} (1 - q^i), first n coefficients (exponents 0..n-1)
    p = [1] + [0] * (n - 1)
    for i in range(1, n):
        for d in range(n - 1, i - 1, -1):
            p[d] -= p[d - i]
    return tuple(p)


@lru_cache(maxsize=8)
def _delta_bucket(n: int) -> tuple[int, ...]:
    return tuple(power_coeffs(_euler_product(n), 24, n))


def _delta_coeffs(n: int) -> tuple[int, ...]:
    return _delta_bucket(_bucket(n))[:n]


def delta_series(n_terms: int) -> LaurentSeries:
    """``q * prod (1 - q^n)^24`` with ``n_terms`` known coefficients from ``q^1``."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    return LaurentSeries(_delta_coeffs(n_terms), 1, n_terms)


@lru_cache(maxsize=32)
def _eisenstein_coeffs(kprime: int, n: int) -> tuple[int, ...]:
    g = GAMMA.get(kprime, 0)
    if kprime == 0:
        return (1,) + (0,) * (n - 1)
    return (1,) + tuple(g * sigma(kprime - 1, i) for i in range(1, n))


def eisenstein_series(kprime: int, n_terms: int) -> LaurentSeries:
    """``E_k'`` with ``n_terms`` known coefficients from ``q^0``; ``E_0 = 1``."""
    normalization(kprime)
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    return LaurentSeries(_eisenstein_coeffs(kprime, n_terms), 0, n_terms - 1)


@lru_cache(maxsize=8)
def _qj_bucket(n: int) -> tuple[int, ...]:
    # q*j = E_4^3 / (Delta/q)
    e4 = _eisenstein_coeffs(4, n)
    num = convolve(convolve(e4, e4, n), e4, n)
    return tuple(convolve(num, inverse_coeffs(_delta_coeffs(n), n), n))


def _qj_coeffs(n: int) -> tuple[int, ...]:
    return _qj_bucket(_bucket(n))[:n]


def j_series(n_terms: int) -> LaurentSeries:
    """``j = E_4^3 / Delta`` with ``n_terms`` known coefficients from ``q^-1``."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    return LaurentSeries(_qj_coeffs(n_terms), -1, n_terms - 2)


def qj_coeffs(n_terms: int) -> tuple[int, ...]:
    """Coefficients ``c(-1), c(0), ..., c(n_terms - 2)`` of j, i.e. of ``q*j``."""
    return _qj_coeffs(n_terms)
