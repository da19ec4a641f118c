"""Truncated Laurent series in q with exact integer coefficients.

A :class:`LaurentSeries` stores the coefficients of ``q^v, q^(v+1), ..., q^N``
where ``v`` is the valuation (lowest stored exponent) and ``N`` the truncation
(highest exponent whose coefficient is known).  A series with ``trunc=None``
is an exact Laurent polynomial: every coefficient past the stored ones is a
known zero.

Products use Kronecker substitution once the operands are long enough, which
hands the convolution to CPython's Karatsuba integer multiplication.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    InsufficientPrecision,
    NonUnitLeadingCoefficient,
    PrecisionExceeded,
)

__all__ = [
    "LaurentSeries",
    "series_add",
    "series_mul",
    "series_invert",
    "series_pow",
    "coefficient",
    "convolve",
    "inverse_coeffs",
    "power_coeffs",
]

_SCHOOLBOOK_CUTOFF = 24


def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], nbytes: int, half: int) -> int:
    return int.from_bytes(
        b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs), "little"
    )


def convolve(a: Sequence[int], b: Sequence[int], n: int | None = None) -> list[int]:
    """First ``n`` coefficients of the product of two coefficient lists.

    ``n`` defaults to the full product length.
    """
    if not a or not b:
        return [0] * (n or 0)
    full = len(a) + len(b) - 1
    if n is None:
        n = full
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        out = _schoolbook(a, b, n)
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    width = 8 * nbytes
    half = 1 << (width - 1)
    # bias every digit into [0, 2^width) so packing and unpacking are plain bytes
    pa = _pack(a, nbytes, half) - _pack([0] * len(a), nbytes, half)
    pb = _pack(b, nbytes, half) - _pack([0] * len(b), nbytes, half)
    m = min(n, len(a) + len(b) - 1)
    raw = pa * pb + _pack([0] * (len(a) + len(b) - 1), nbytes, half)
    # higher digits never carry downward, so the low m digits are exact
    raw &= (1 << (width * m)) - 1
    data = raw.to_bytes(nbytes * m, "little")
    out = [
        int.from_bytes(data[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(m)
    ]
    out.extend([0] * (n - m))
    return out


def inverse_coeffs(a: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of ``1/a`` for a power series with ``a[0] = +-1``."""
    if not a or a[0] not in (1, -1):
        raise NonUnitLeadingCoefficient(
            f"leading coefficient {a[0] if a else 0} is not a unit over the integers"
        )
    b = [a[0]]
    prec = 1
    # Newton: b <- b * (2 - a*b), doubling precision each round
    while prec < n:
        prec = min(2 * prec, n)
        ab = convolve(a[:prec], b, prec)
        ab = [-x for x in ab]
        ab[0] += 2
        b = convolve(b, ab, prec)
    return b[:n]


def power_coeffs(a: Sequence[int], e: int, n: int) -> list[int]:
    """First ``n`` coefficients of ``a**e`` (``e >= 0``) by repeated squaring."""
    result = [1] + [0] * (n - 1)
    base = list(a[:n]) + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = convolve(result, base, n)
        e >>= 1
        if e:
            base = convolve(base, base, n)
    return result


class LaurentSeries:
    """Immutable truncated Laurent series ``sum c_d q^d + O(q^(trunc+1))``."""

    __slots__ = ("valuation", "coeffs", "trunc")

    def __init__(self, coeffs: Iterable[int], valuation: int = 0, trunc: int | None = ...):
        coeffs = tuple(int(c) for c in coeffs)
        if trunc is ...:
            trunc = valuation + len(coeffs) - 1
        if trunc is None:
            # exact polynomial: drop trailing zeros, they carry no information
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
        else:
            if trunc < valuation - 1:
                raise ValueError("trunc must be >= valuation - 1")
            span = trunc - valuation + 1
            if len(coeffs) > span:
                coeffs = coeffs[:span]
            elif len(coeffs) < span:
                coeffs = coeffs + (0,) * (span - len(coeffs))
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def constant(cls, c: int) -> LaurentSeries:
        """The exact constant ``c`` (no truncation)."""
        return cls([c], 0, None)

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> LaurentSeries:
        return cls([c], d, None)

    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    @property
    def rel_prec(self) -> float | int:
        """Number of known coefficients from the valuation on."""
        if self.trunc is None:
            return float("inf")
        return self.trunc - self.valuation + 1

    def _hi(self) -> int:
        return self.valuation + len(self.coeffs) - 1

    def __getitem__(self, d: int) -> int:
        return coefficient(self, d)

    def coefficient_list(self, lo: int, hi: int) -> list[int]:
        """Coefficients of ``q^lo ... q^hi`` (each access checked)."""
        return [coefficient(self, d) for d in range(lo, hi + 1)]

    def truncate(self, trunc: int) -> LaurentSeries:
        """Forget every coefficient above ``q^trunc``."""
        if self.trunc is not None and trunc > self.trunc:
            raise PrecisionExceeded(f"cannot raise truncation {self.trunc} to {trunc}")
        return LaurentSeries(self.coeffs, self.valuation, trunc)

    def shift(self, s: int) -> LaurentSeries:
        """Multiply by ``q^s``."""
        trunc = None if self.trunc is None else self.trunc + s
        return LaurentSeries(self.coeffs, self.valuation + s, trunc)

    def normalized(self) -> LaurentSeries:
        """Drop known leading zeros so the first stored coefficient is nonzero."""
        i = 0
        while i < len(self.coeffs) and self.coeffs[i] == 0:
            i += 1
        if i == 0:
            return self
        return LaurentSeries(self.coeffs[i:], self.valuation + i, self.trunc)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentSeries.constant(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries([-c for c in self.coeffs], self.valuation, self.trunc)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentSeries.constant(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentSeries([other * c for c in self.coeffs], self.valuation, self.trunc)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.valuation == other.valuation
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.valuation, self.trunc, self.coeffs))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equal on every exponent known to both series."""
        lo = min(self.valuation, other.valuation)
        his = [t for t in (self.trunc, other.trunc) if t is not None]
        hi = min(his) if his else max(self._hi(), other._hi())
        return all(coefficient(self, d) == coefficient(other, d) for d in range(lo, hi + 1))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            d = self.valuation + i
            terms.append(f"{c}*q^{d}")
        if len(self.coeffs) > 8:
            terms.append("...")
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.trunc is None else f" + O(q^{self.trunc + 1})"
        return f"LaurentSeries({body}{tail})"


def _min_trunc(*truncs):
    known = [t for t in truncs if t is not None]
    return min(known) if known else None


def coefficient(a: LaurentSeries, d: int) -> int:
    """Exact coefficient of ``q^d``; raises :class:`PrecisionExceeded` past the truncation."""
    if a.trunc is not None and d > a.trunc:
        raise PrecisionExceeded(f"coefficient of q^{d} requested, series known to q^{a.trunc}")
    i = d - a.valuation
    if i < 0 or i >= len(a.coeffs):
        return 0
    return a.coeffs[i]


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    v = min(a.valuation, b.valuation)
    trunc = _min_trunc(a.trunc, b.trunc)
    hi = trunc if trunc is not None else max(a._hi(), b._hi())
    out = [0] * max(0, hi - v + 1)
    for s in (a, b):
        off = s.valuation - v
        for i, c in enumerate(s.coeffs):
            if off + i < len(out):
                out[off + i] += c
    return LaurentSeries(out, v, trunc)


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product.

    Valuation is ``a.valuation + b.valuation`` and the truncation is
    ``min(a.trunc + b.valuation, b.trunc + a.valuation)``.
    """
    v = a.valuation + b.valuation
    ta = None if a.trunc is None else a.trunc + b.valuation
    tb = None if b.trunc is None else b.trunc + a.valuation
    trunc = _min_trunc(ta, tb)
    n = None if trunc is None else trunc - v + 1
    if n is not None and n <= 0:
        return LaurentSeries([], v, trunc)
    return LaurentSeries(convolve(a.coeffs, b.coeffs, n), v, trunc)


def _unit_view(a: LaurentSeries, rel_prec: int) -> tuple[list[int], int]:
    a = a.normalized()
    if not a.coeffs or a.coeffs[0] == 0:
        raise NonUnitLeadingCoefficient("series has no known nonzero coefficient")
    if a.coeffs[0] not in (1, -1):
        raise NonUnitLeadingCoefficient(f"leading coefficient {a.coeffs[0]} is not +-1")
    if a.rel_prec < rel_prec:
        raise InsufficientPrecision(
            f"need {rel_prec} known coefficients, series has {a.rel_prec}"
        )
    return list(a.coeffs[:rel_prec]), a.valuation


def series_invert(a: LaurentSeries, rel_prec: int) -> LaurentSeries:
    """``1/a`` with ``rel_prec`` known coefficients past its valuation ``-v``."""
    if rel_prec < 1:
        raise ValueError("rel_prec must be >= 1")
    coeffs, v = _unit_view(a, rel_prec)
    inv = inverse_coeffs(coeffs, rel_prec)
    return LaurentSeries(inv, -v, -v + rel_prec - 1)


def series_pow(a: LaurentSeries, e: int, rel_prec: int) -> LaurentSeries:
    """``a**e`` with ``rel_prec`` known coefficients past the valuation ``e*v``.

    Negative exponents invert first; ``a`` must then have a +-1 leading
    coefficient.
    """
    if rel_prec < 1:
        raise ValueError("rel_prec must be >= 1")
    if e == 0:
        return LaurentSeries([1], 0, rel_prec - 1)
    if e < 0:
        a = series_invert(a, rel_prec)
        e = -e
    a = a.normalized()
    if not a.coeffs:
        raise InsufficientPrecision("series has no known nonzero coefficient")
    if a.rel_prec < rel_prec:
        raise InsufficientPrecision(
            f"need {rel_prec} known coefficients, series has {a.rel_prec}"
        )
    v = e * a.valuation
    return LaurentSeries(power_coeffs(a.coeffs, e, rel_prec), v, v + rel_prec - 1)
