"""Faber polynomials of Miller-basis forms.

``f_{k,m} = Delta^ell * E_k' * F_{k,m}(j)`` with ``f_{k,m} = q^m + O(q^(ell+1))``.
Only the exponents ``m - ell .. 0`` of ``q^m Delta^-ell E_k'^-1`` influence
``F_{k,m}``, so one series ``Delta^-ell E_k'^-1`` with ``ell + 1`` coefficients
serves every ``m`` of a given weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping

from .errors import IndexOutOfRange, NonIntegerResult, OutOfTheoremRange
from .modforms import (
    WeightDecomposition,
    _delta_coeffs,
    _eisenstein_coeffs,
    _qj_coeffs,
    weight_decompose,
)
from .qseries import LaurentSeries, convolve, inverse_coeffs, power_coeffs

__all__ = [
    "FaberPolynomial",
    "faber_greedy",
    "faber_family",
    "faber_closed_form",
    "miller_form_qexp",
    "miller_prefix_ok",
    "partitions",
]


@dataclass(frozen=True)
class FaberPolynomial:
    """Monic integer polynomial ``e0 t^D + e1 t^(D-1) + ... + eD`` with ``D = ell - m``."""

    weight: WeightDecomposition
    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.m <= self.weight.ell:
            raise IndexOutOfRange(f"m={self.m} outside [0, {self.weight.ell}]")
        if len(self.coeffs) != self.weight.ell - self.m + 1 or self.coeffs[0] != 1:
            raise ValueError("coefficient list must be monic of degree ell - m")

    @property
    def k(self) -> int:
        return self.weight.k

    @property
    def ell(self) -> int:
        return self.weight.ell

    @property
    def kprime(self) -> int:
        return self.weight.kprime

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def e(self, n: int) -> int:
        """Coefficient ``e_n`` (zero past the degree)."""
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __call__(self, t):
        acc = 0
        for c in self.coeffs:
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        D = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            p = D - i
            mono = "" if p == 0 else ("t" if p == 1 else f"t^{p}")
            if c == 0:
                continue
            if mono and c in (1, -1):
                parts.append(("-" if c < 0 else "+") + mono)
            else:
                parts.append(f"{c:+d}" + mono)
        s = " ".join(parts) if parts else "0"
        return s[1:] if s.startswith("+") else s


@lru_cache(maxsize=4)
def _qj_power_table(dmax: int, prec: int) -> tuple[tuple[int, ...], ...]:
    qj = list(_qj_coeffs(prec))
    table = [tuple([1] + [0] * (prec - 1))]
    for _ in range(dmax):
        table.append(tuple(convolve(table[-1], qj, prec)))
    return tuple(table)


def _powers(dmax: int, prec: int) -> tuple[tuple[int, ...], ...]:
    # round up so consecutive weights in a scan share one table
    b = max(32, -(-max(dmax, prec) // 32) * 32)
    return _qj_power_table(b, b + 1)


@lru_cache(maxsize=16)
def _reduced_inverse(ell: int, kprime: int, n: int) -> tuple[int, ...]:
    # coefficients of q^-ell .. q^(n-1-ell) of Delta^-ell E_k'^-1
    inv_delta = inverse_coeffs(_delta_coeffs(n), n)
    out = power_coeffs(inv_delta, ell, n)
    if kprime:
        out = convolve(out, inverse_coeffs(_eisenstein_coeffs(kprime, n), n), n)
    return tuple(out)


def _greedy(h: tuple[int, ...], D: int, table) -> list[int]:
    # peel e_s off the running remainder; e_s j^(D-s) starts at q^(s-D)
    rem = list(h[: D + 1])
    e = []
    for s in range(D + 1):
        es = rem[s]
        e.append(es)
        if es:
            row = table[D - s]
            for t in range(1, D - s + 1):
                rem[s + t] -= es * row[t]
    return e


def _check_index(w: WeightDecomposition, m: int) -> None:
    if not isinstance(m, int) or m < 0 or m > w.ell:
        raise IndexOutOfRange(f"m={m} outside [0, {w.ell}] for k={w.k}")


@lru_cache(maxsize=2048)
def faber_greedy(k: int, m: int) -> FaberPolynomial:
    """Faber polynomial ``F_{k,m}`` by successive elimination against powers of j."""
    w = weight_decompose(k)
    _check_index(w, m)
    D = w.ell - m
    h = _reduced_inverse(w.ell, w.kprime, w.ell + 1)
    return FaberPolynomial(w, m, tuple(_greedy(h, D, _powers(D, D + 1))))


def faber_family(k: int) -> list[FaberPolynomial]:
    """``[F_{k,0}, ..., F_{k,ell}]`` sharing one inverse series and power table."""
    w = weight_decompose(k)
    h = _reduced_inverse(w.ell, w.kprime, w.ell + 1)
    table = _powers(w.ell, w.ell + 1)
    return [
        FaberPolynomial(w, m, tuple(_greedy(h, w.ell - m, table))) for m in range(w.ell + 1)
    ]


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors ``(t_1, ..., t_n)`` with ``sum s * t_s = n``."""

    def rec(s: int, remaining: int, acc: list[int]):
        if s == 0:
            if remaining == 0:
                yield tuple(reversed(acc))
            return
        for t in range(remaining // s + 1):
            acc.append(t)
            yield from rec(s - 1, remaining - s * t, acc)
            acc.pop()

    if n == 0:
        yield ()
        return
    yield from rec(n, n, [])


def faber_closed_form(k: int, m: int, n: int, consts: Iterable | Mapping | None = None) -> int:
    """``e_n`` from the power-sum constants via the partition sum over ``t_1 + 2 t_2 + ... = n``.

    ``consts`` holds :class:`~faberlab.powersums.LinearityConstants` for
    ``s = 1..n`` (a mapping keyed by ``s`` or any iterable); computed on demand
    when omitted.
    """
    w = weight_decompose(k)
    _check_index(w, m)
    if n < 1 or n > w.ell - m:
        raise OutOfTheoremRange(f"n={n} outside 1..{w.ell - m}")
    if consts is None:
        from .powersums import linearity_constants

        table = {s: linearity_constants(s) for s in range(1, n + 1)}
    elif isinstance(consts, Mapping):
        table = dict(consts)
    else:
        table = {c.n: c for c in consts}
    p = {s: table[s].A * k + table[s].B * m + table[s].C[w.kprime] for s in range(1, n + 1)}
    total = Fraction(0)
    for t in partitions(n):
        term = Fraction(1)
        for s, ts in enumerate(t, start=1):
            if ts:
                term *= Fraction((-p[s]) ** ts, factorial(ts) * s**ts)
        total += term
    if total.denominator != 1:
        raise NonIntegerResult(f"e_{n} evaluated to {total}; constants are inconsistent")
    return total.numerator


def miller_form_qexp(k: int, m: int, n_terms: int) -> LaurentSeries:
    """q-expansion of ``f_{k,m} = Delta^ell E_k' F_{k,m}(j)``, ``n_terms`` coefficients from ``q^m``."""
    F = faber_greedy(k, m)
    if n_terms < F.ell + 1:
        raise ValueError(f"n_terms must be >= ell + 1 = {F.ell + 1}")
    return _qexp_of(F, n_terms)


def _qexp_of(F: FaberPolynomial, n_terms: int) -> LaurentSeries:
    w = F.weight
    D = F.degree
    table = _powers(D, n_terms)
    # q^D F(j) = sum_s e_s q^s (q j)^(D-s)
    fj = [0] * n_terms
    for s, es in enumerate(F.coeffs):
        if es:
            row = table[D - s]
            for i in range(n_terms - s):
                fj[s + i] += es * row[i]
    delta_pow = power_coeffs(_delta_coeffs(n_terms), w.ell, n_terms)
    out = convolve(convolve(delta_pow, _eisenstein_coeffs(w.kprime, n_terms), n_terms), fj, n_terms)
    return LaurentSeries(out, F.m, F.m + n_terms - 1)


def miller_prefix_ok(F: FaberPolynomial) -> bool:
    """True when ``Delta^ell E_k' F(j) = q^m + 0 q^(m+1) + ... + 0 q^ell + O(q^(ell+1))``."""
    f = _qexp_of(F, F.ell - F.m + 1)
    return f.coefficient_list(F.m, F.ell) == [1] + [0] * (F.ell - F.m)
