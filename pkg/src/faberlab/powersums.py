"""Newton's identities and the linear power-sum law for Faber roots.

For ``n <= ell - m`` the roots ``x_i`` of ``F_{k,m}`` satisfy

    sum x_i^n = A_n k + B_n m + C_n(k')

with ``-B_n`` the constant term of ``j^n`` and ``C_n(k') = -1728^n / 2`` for
``k'`` in (6, 10, 14), zero otherwise.  ``A_n`` is read off exactly from
the instance ``F_{12(n+1), 0}`` and confirmed on ``F_{12(n+2), 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .errors import (
    CapExceeded,
    InconsistentInstances,
    NonIntegerResult,
    OutOfTheoremRange,
    UnsupportedWeight,
)
from .faber import FaberPolynomial, faber_greedy, partitions
from .modforms import KPRIMES, WeightDecomposition, qj_coeffs, weight_decompose
from .qseries import power_coeffs

__all__ = [
    "LinearityConstants",
    "MomentVector",
    "LinearityReport",
    "power_sums",
    "coeffs_from_power_sums",
    "constant_A",
    "constant_B",
    "constant_C",
    "constant_c0_oracle",
    "linearity_constants",
    "verify_linearity",
    "bound_violation",
    "first_sum_threshold",
    "threshold_shift",
    "ratio_sequence",
    "moment_vector",
    "PI_LOWER",
    "PI_UPPER",
    "exceeds_three_over_pi",
]

# 50 correct digits of pi, truncated and rounded up
PI_LOWER = Fraction("3.14159265358979323846264338327950288419716939937510")
PI_UPPER = Fraction("3.14159265358979323846264338327950288419716939937511")

C0_ORACLE_CAP = 12


@dataclass(frozen=True)
class LinearityConstants:
    n: int
    A: int
    B: int
    C: Mapping[int, int] = field(hash=False)

    def power_sum(self, k: int, m: int, kprime: int | None = None) -> int:
        """``A k + B m + C(k')``; ``k'`` is derived from ``k`` when omitted."""
        if kprime is None:
            kprime = weight_decompose(k).kprime
        return self.A * k + self.B * m + self.C[kprime]


@dataclass(frozen=True)
class MomentVector:
    weight: WeightDecomposition
    m: int
    moments: tuple[Fraction, ...]


@dataclass
class LinearityReport:
    k: int
    m: int
    n_max: int
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _coeff_list(poly) -> Sequence[int]:
    if isinstance(poly, FaberPolynomial):
        return poly.coeffs
    return list(poly)


def power_sums(poly, n_max: int) -> list[int]:
    """``[p_1, ..., p_{n_max}]`` for the monic polynomial ``poly`` (highest degree first)."""
    c = _coeff_list(poly)
    if not c or c[0] != 1:
        raise ValueError("power_sums expects a monic polynomial")
    deg = len(c) - 1
    e = lambda i: c[i] if i <= deg else 0  # noqa: E731
    p: list[int] = []
    for n in range(1, n_max + 1):
        s = -n * e(n)
        for i in range(1, min(n - 1, deg) + 1):
            s -= e(i) * p[n - i - 1]
        p.append(s)
    return p


def coeffs_from_power_sums(p: Sequence[int]) -> list[int]:
    """Inverse Newton direction: ``[e_1, ..., e_n]`` from ``[p_1, ..., p_n]``."""
    e: list[int] = []
    for n in range(1, len(p) + 1):
        s = p[n - 1] + sum(e[i - 1] * p[n - i - 1] for i in range(1, n))
        q, r = divmod(-s, n)
        if r:
            raise NonIntegerResult(f"e_{n} = {-s}/{n} is not an integer")
        e.append(q)
    return e


@lru_cache(maxsize=None)
def constant_B(n: int) -> int:
    """``B_n``: minus the coefficient of ``q^0`` in ``j^n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # j^n = q^-n (q j)^n, so the q^0 term is coefficient n of (q j)^n
    return -power_coeffs(qj_coeffs(n + 1), n, n + 1)[n]


def constant_C(n: int, kprime: int) -> int:
    if kprime not in KPRIMES:
        raise UnsupportedWeight(f"k' must be one of {KPRIMES}, got {kprime}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if kprime in (6, 10, 14):
        return -864 * 1728 ** (n - 1)
    return 0


def _A_from_instance(n: int, k: int) -> int:
    F = faber_greedy(k, 0)
    if n > F.degree:
        raise OutOfTheoremRange(f"instance k={k} too small for n={n}")
    p = power_sums(F, n)[n - 1] - constant_C(n, F.kprime)
    q, r = divmod(p, k)
    if r:
        raise InconsistentInstances(f"p_{n}(F_{{{k},0}}) = {p} not divisible by k={k}")
    return q


@lru_cache(maxsize=None)
def constant_A(n: int) -> int:
    """``A_n`` from ``F_{12(n+1),0}``, cross-checked on ``F_{12(n+2),0}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = _A_from_instance(n, 12 * (n + 1))
    b = _A_from_instance(n, 12 * (n + 2))
    if a != b:
        raise InconsistentInstances(f"A_{n}: instances disagree ({a} vs {b})")
    return a


@lru_cache(maxsize=None)
def linearity_constants(n: int) -> LinearityConstants:
    return LinearityConstants(
        n, constant_A(n), constant_B(n), {kp: constant_C(n, kp) for kp in KPRIMES}
    )


def constant_c0_oracle(n: int, cap: int = C0_ORACLE_CAP) -> int:
    """Constant term of ``j^n`` from the partition formula

        c_n(0) = sum_{d_1 + 2 d_2 + ... + n d_n = n} n!/(n - sum d)! prod c(t-1)^{d_t} / d_t!

    using only the coefficients ``c(0), ..., c(n-1)`` of j.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise CapExceeded(f"n={n} above partition cap {cap}")
    c = qj_coeffs(n + 1)  # c[t] is the coefficient of q^(t-1)
    total = Fraction(0)
    for d in partitions(n):
        used = sum(d)
        term = Fraction(factorial(n), factorial(n - used))
        for t, dt in enumerate(d, start=1):
            if dt:
                term *= Fraction(c[t] ** dt, factorial(dt))
        total += term
    if total.denominator != 1:
        raise NonIntegerResult(f"c_{n}(0) evaluated to {total}")
    return total.numerator


def verify_linearity(
    k: int,
    m: int,
    n_max: int,
    constants: Mapping[int, LinearityConstants] | None = None,
) -> LinearityReport:
    """Compare ``p_n(F_{k,m})`` with ``A_n k + B_n m + C_n(k')`` for ``n <= n_max``.

    ``constants`` overrides the computed table (used to exercise the failure path).
    """
    w = weight_decompose(k)
    if not 0 <= m <= w.ell:
        raise OutOfTheoremRange(f"m={m} outside [0, {w.ell}]")
    if n_max > w.ell - m:
        raise OutOfTheoremRange(f"n_max={n_max} exceeds ell - m = {w.ell - m}")
    report = LinearityReport(k, m, n_max)
    if n_max < 1:
        return report
    p = power_sums(faber_greedy(k, m), n_max)
    for n in range(1, n_max + 1):
        c = constants[n] if constants is not None else linearity_constants(n)
        predicted = c.A * k + c.B * m + c.C[w.kprime]
        report.checked += 1
        if p[n - 1] != predicted:
            report.violations.append(
                {
                    "k": k, "m": m, "n": n, "p_n": p[n - 1], "A": c.A, "B": c.B,
                    "C": c.C[w.kprime], "predicted": predicted,
                }
            )
    return report


def bound_violation(k: int, m: int) -> int | None:
    """Smallest ``n <= ell - m`` with ``A_n k + B_n m + C_n(k') < 0``, else ``None``.

    A negative power sum forces a root outside ``[0, 1728]``.
    """
    w = weight_decompose(k)
    if not 0 <= m < w.ell:
        return None
    for n in range(1, w.ell - m + 1):
        if linearity_constants(n).power_sum(k, m, w.kprime) < 0:
            return n
    return None


def first_sum_threshold(ell: int, kprime: int) -> Fraction:
    """The bound ``b`` with ``p_1(F_{12 ell + k', m}) < 0`` exactly when ``m > b``.

    ``p_1 = A_1 k + B_1 m + C_1(k')`` is decreasing in ``m``, so
    ``b = (A_1 k + C_1(k')) / (-B_1)``.
    """
    c = linearity_constants(1)
    k = 12 * ell + kprime
    return Fraction(c.A * k + c.C[kprime], -c.B)


def threshold_shift(kprime: int) -> Fraction:
    """Offset of :func:`first_sum_threshold` caused by ``C_1(k')``, i.e. ``C_1 / (-B_1)``."""
    c = linearity_constants(1)
    return Fraction(c.C[kprime], -c.B)


def ratio_sequence(n_max: int) -> list[Fraction]:
    """``[12 A_n / (-B_n)]`` for ``n = 1..n_max``; tends to ``3/pi``."""
    return [Fraction(12 * constant_A(n), -constant_B(n)) for n in range(1, n_max + 1)]


def exceeds_three_over_pi(r: Fraction) -> bool | None:
    """Decide ``r > 3/pi`` with rational bounds on pi; ``None`` if the bounds cannot tell."""
    if r * PI_LOWER > 3:
        return True
    if r * PI_UPPER <= 3:
        return False
    return None


def moment_vector(k: int, m: int, n_max: int | None = None) -> MomentVector:
    """Moments ``M_n = p_n / (ell - m)`` of the root distribution of ``F_{k,m}``."""
    w = weight_decompose(k)
    D = w.ell - m
    if D < 1:
        raise OutOfTheoremRange("moments need ell - m >= 1")
    if n_max is None:
        n_max = D
    if n_max > D:
        raise OutOfTheoremRange(f"n_max={n_max} exceeds ell - m = {D}")
    p = power_sums(faber_greedy(k, m), n_max)
    return MomentVector(w, m, tuple(Fraction(x, D) for x in p))
