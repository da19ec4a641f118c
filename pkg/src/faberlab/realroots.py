"""Exact real-root location for integer polynomials.

Polynomials are plain lists of ints, highest degree first (the same order as
:attr:`FaberPolynomial.coeffs`).  Counting is exact: Sturm chains built from
sign-corrected pseudo-remainders with the content stripped at every step.

High-degree Faber polynomials whose roots all sit in ``[0, 1728]`` are
expensive to Sturm.  For those, :func:`root_report` first tries a cheap
certificate: evaluate the polynomial exactly at dyadic points spread along
the arc (points ``j(e^{i theta})`` on a theta grid) and count sign changes.
``D`` sign changes for a degree-``D`` polynomial prove ``D`` simple real roots
in ``[0, 1728]``; anything short of that falls back to Sturm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, inf
from typing import Iterable, Sequence

import numpy as np

from .errors import ZeroPolynomial
from .faber import FaberPolynomial, faber_family
from .modforms import weight_decompose

__all__ = [
    "ARC_HI",
    "SturmChain",
    "RootCountReport",
    "IsolatingInterval",
    "MinMResult",
    "LargeRootScan",
    "squarefree_decompose",
    "poly_gcd",
    "sturm_chain",
    "count_roots",
    "root_report",
    "isolate_roots",
    "arc_brackets",
    "scan_arc",
    "min_m_off_arc",
    "conjectured_min_m",
    "scan_no_large_roots",
    "CONJECTURE_TABLE",
]

ARC_HI = 1728
CONJECTURE_TABLE = (4, 3, 4, 5, 6, 7, 6, 7, 8, 9, 10, 9, 10, 11, 12, 13)

_DYADIC_BITS = 64


# --------------------------------------------------------------------------
# integer polynomial arithmetic

def _strip(p: Sequence[int]) -> list[int]:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return list(p[i:])


def _content(p: Sequence[int]) -> int:
    return reduce(gcd, p, 0)


def _primitive(p: Sequence[int]) -> list[int]:
    """Content-free, positive leading coefficient."""
    p = _strip(p)
    if not p:
        return []
    c = _content(p)
    if p[0] < 0:
        c = -c
    return [x // c for x in p]


def _drop_content(p: Sequence[int]) -> list[int]:
    """Divide by the positive content; signs are preserved."""
    c = _content(p)
    return [x // c for x in p] if c > 1 else list(p)


def _derivative(p: Sequence[int]) -> list[int]:
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def _prem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Remainder of ``|lc(b)|^(deg a - deg b + 1) * a`` by ``b``.

    The multiplier is positive, so the result is a positive multiple of the
    true remainder.
    """
    a = list(a)
    db = len(b) - 1
    lb = b[0]
    alb = abs(lb)
    sb = 1 if lb > 0 else -1
    steps = len(a) - db
    for i in range(steps):
        c = a[i]
        # a <- |lb| a - sign(lb) c b, which kills a[i]
        f = sb * c
        for j in range(i + 1, len(a)):
            a[j] *= alb
        if f:
            for j in range(1, db + 1):
                a[i + j] -= f * b[j]
        a[i] = 0
    return _strip(a[steps:]) if steps > 0 else _strip(a)


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = _primitive(a), _primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return a


def _exact_div(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """``a / b`` for primitive ``b`` dividing ``a`` over Q (result is integral)."""
    a = list(a)
    db = len(b) - 1
    lb = b[0]
    q = []
    for i in range(len(a) - db):
        c, r = divmod(a[i], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q.append(c)
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    if db and any(a[-db:]):
        raise ArithmeticError("inexact polynomial division")
    return q


def _sign_at(p: Sequence[int], x) -> int:
    """Sign of ``p(x)`` for ``x`` an int, a Fraction, or +-inf."""
    if not p:
        return 0
    if x == inf:
        return 1 if p[0] > 0 else -1
    if x == -inf:
        s = 1 if p[0] > 0 else -1
        return s if (len(p) - 1) % 2 == 0 else -s
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    acc = 0
    bp = 1
    for c in p:
        acc = acc * a + c * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def squarefree_decompose(poly: Sequence[int]) -> list[tuple[list[int], int]]:
    """``[(factor, multiplicity), ...]`` with pairwise coprime square-free primitive factors.

    The product of ``factor**multiplicity`` equals ``poly`` up to a nonzero
    rational scalar.  A nonzero constant yields ``[]``.
    """
    f = _primitive(poly)
    if not f:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    if len(f) == 1:
        return []
    a = poly_gcd(f, _derivative(f))
    b = _exact_div(f, a)
    out = []
    i = 1
    while len(b) > 1:
        c = poly_gcd(a, b) if len(a) > 1 else [1]
        fac = _exact_div(b, c)
        if len(fac) > 1:
            out.append((_primitive(fac), i))
        b = c
        if len(a) > 1:
            a = _exact_div(a, c)
        i += 1
    return out


# --------------------------------------------------------------------------
# Sturm chains

@dataclass(frozen=True)
class SturmChain:
    polys: tuple[tuple[int, ...], ...]

    def variations(self, x) -> int:
        """Sign changes of the chain at ``x`` (zeros skipped)."""
        v = 0
        last = 0
        for p in self.polys:
            s = _sign_at(p, x)
            if s:
                if last and s != last:
                    v += 1
                last = s
        return v

    def count(self, lo, hi) -> int:
        """Distinct roots in ``(lo, hi]`` of the chain's head."""
        return self.variations(lo) - self.variations(hi)


def sturm_chain(poly: Sequence[int]) -> SturmChain:
    """Sturm chain ``p, p', -rem, ...`` of a polynomial (reduced to primitive form).

    For a square-free input the last element is a nonzero constant.
    """
    p = _primitive(poly)
    if not p:
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [p]
    if len(p) > 1:
        chain.append(_drop_content(_derivative(p)))
        while len(chain[-1]) > 1:
            r = _prem(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-x for x in _drop_content(r)])
    return SturmChain(tuple(tuple(q) for q in chain))


def _factor_chains(poly: Sequence[int]) -> list[tuple[list[int], int, SturmChain]]:
    p = _primitive(poly)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    if len(p) == 1:
        return []
    chain = sturm_chain(p)
    if len(chain.polys[-1]) == 1:
        # last remainder constant: p is already square-free
        return [(p, 1, chain)]
    return [(f, mult, sturm_chain(f)) for f, mult in squarefree_decompose(p)]


def count_roots(poly: Sequence[int], lo=-inf, hi=inf) -> int:
    """Real roots in ``(lo, hi]`` counted with multiplicity; endpoints rational or +-inf."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    return sum(mult * chain.count(lo, hi) for _, mult, chain in _factor_chains(poly))


# --------------------------------------------------------------------------
# arc certificate

def _eval_dyadic(coeffs: Sequence[int], nums: np.ndarray, shift) -> np.ndarray:
    """``2^(shift*D) p(nums / 2^shift)`` elementwise, exactly (object arrays)."""
    acc = np.zeros(len(nums), dtype=object)
    for n, c in enumerate(coeffs):
        acc = acc * nums + (c << (shift * n))
    return acc


def _signs(values) -> np.ndarray:
    return np.array([(v > 0) - (v < 0) for v in values], dtype=np.int8)


def _arc_grid(G: int) -> list[int]:
    from .arcdist import j_on_circle_array

    theta = np.linspace(np.pi / 2, 2 * np.pi / 3, G + 1)[1:-1]
    xs = j_on_circle_array(theta)[::-1]
    scale = 1 << _DYADIC_BITS
    pts = sorted({int(round(float(x) * scale)) for x in xs if 0.0 < x < ARC_HI})
    return [0] + pts + [ARC_HI * scale]


def arc_brackets(poly: Sequence[int], oversample: Iterable[int] = (4, 16)) -> list[tuple[Fraction, Fraction]] | None:
    """Disjoint brackets ``[a, b]`` in ``[0, 1728]``, one per root, each with a sign change.

    Returns ``None`` unless the grid exhibits ``deg`` sign changes, which
    proves every root is real, simple and inside ``[0, 1728]``.
    """
    p = _strip(poly)
    D = len(p) - 1
    if D < 0:
        raise ZeroPolynomial("zero polynomial")
    if D == 0:
        return []
    for factor in oversample:
        pts = _arc_grid(max(factor * D, 8))
        nums = np.array(pts, dtype=object)
        s = _signs(_eval_dyadic(p, nums, _DYADIC_BITS))
        if not s.all():
            return None
        idx = np.nonzero(s[:-1] != s[1:])[0]
        if len(idx) == D:
            den = 1 << _DYADIC_BITS
            return [(Fraction(pts[i], den), Fraction(pts[i + 1], den)) for i in idx]
    return None


# --------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class RootCountReport:
    """Root counts (with multiplicity) of a Faber polynomial by region.

    ``arc`` is the closed interval ``[0, 1728]`` and ``large`` the open ray
    ``(1728, inf)``; roots exactly at 0 or 1728 are also tallied in
    ``at_zero`` / ``at_1728``.
    """

    degree: int
    neg: int
    arc: int
    large: int
    nonreal: int
    at_zero: int = 0
    at_1728: int = 0
    k: int | None = None
    m: int | None = None
    method: str = "sturm"

    def __post_init__(self):
        if self.neg + self.arc + self.large + self.nonreal != self.degree or self.nonreal % 2:
            raise AssertionError(f"inconsistent root counts {self}")

    @property
    def all_on_arc(self) -> bool:
        return self.arc == self.degree

    @property
    def boundary_hits(self) -> dict[str, bool]:
        return {"zero": self.at_zero > 0, "1728": self.at_1728 > 0}

    @property
    def at_or_above_1728(self) -> int:
        return self.at_1728 + self.large


def _as_coeffs(F) -> tuple[list[int], int | None, int | None]:
    if isinstance(F, FaberPolynomial):
        return list(F.coeffs), F.k, F.m
    return _strip(F), None, None


def root_report(F, use_certificate: bool = True) -> RootCountReport:
    """Partition the roots of ``F`` into ``(-inf,0)``, ``[0,1728]``, ``(1728,inf)`` and non-real."""
    p, k, m = _as_coeffs(F)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    D = len(p) - 1
    if D == 0:
        return RootCountReport(0, 0, 0, 0, 0, k=k, m=m, method="trivial")
    if use_certificate and D >= 2 and arc_brackets(p) is not None:
        return RootCountReport(D, 0, D, 0, 0, k=k, m=m, method="certificate")
    neg = arc = large = at0 = at1728 = 0
    for f, mult, chain in _factor_chains(p):
        v_lo, v0, v1, v_hi = (chain.variations(x) for x in (-inf, 0, ARC_HI, inf))
        z0 = mult if f[-1] == 0 else 0
        z1 = mult if _sign_at(f, ARC_HI) == 0 else 0
        neg += mult * (v_lo - v0) - z0
        arc += mult * (v0 - v1) + z0
        large += mult * (v1 - v_hi)
        at0 += z0
        at1728 += z1
    return RootCountReport(D, neg, arc, large, D - neg - arc - large, at0, at1728, k, m)


@dataclass(frozen=True)
class IsolatingInterval:
    """Closed rational interval holding exactly one distinct root."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _eval_rational(coeffs: Sequence[int], xs: Sequence[Fraction]) -> np.ndarray:
    nums = np.array([x.numerator for x in xs], dtype=object)
    dens = np.array([x.denominator for x in xs], dtype=object)
    acc = np.zeros(len(xs), dtype=object)
    dp = np.ones(len(xs), dtype=object)
    for c in coeffs:
        acc = acc * nums + c * dp
        dp = dp * dens
    return acc


def _refine_brackets(p, brackets, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    # simultaneous sign bisection; each bracket holds one simple root with a sign change
    lo = [a for a, _ in brackets]
    hi = [b for _, b in brackets]
    s_lo = _signs(_eval_rational(p, lo)) if brackets else []
    done = [False] * len(brackets)
    while True:
        todo = [i for i in range(len(lo)) if not done[i] and hi[i] - lo[i] > width]
        if not todo:
            break
        mids = [(lo[i] + hi[i]) / 2 for i in todo]
        s_mid = _signs(_eval_rational(p, mids))
        for i, c, sm in zip(todo, mids, s_mid):
            if sm == 0:
                lo[i] = hi[i] = c
                done[i] = True
            elif sm == s_lo[i]:
                lo[i] = c
            else:
                hi[i] = c
    return list(zip(lo, hi))


def _split_at(p, a: Fraction, b: Fraction, c: Fraction):
    # which side of c holds the single root of p in [a, b]
    sc = _sign_at(p, c)
    if sc == 0:
        return (c, c), (c, c)
    if _sign_at(p, a) * sc < 0:
        return (a, c), None
    return None, (c, b)


def isolate_roots(poly: Sequence[int], lo, hi, width) -> list[IsolatingInterval]:
    """Isolating intervals of length ``<= width`` for the distinct roots in ``[lo, hi]``.

    Intervals are disjoint and sorted; each carries the multiplicity of its root.
    """
    lo, hi, width = Fraction(lo), Fraction(hi), Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    p = _primitive(poly)
    if not p:
        raise ZeroPolynomial("zero polynomial")
    if len(p) == 1 or lo > hi:
        return []
    # a certificate proves p square-free, which spares the Sturm chain
    brackets = arc_brackets(p) if len(p) > 2 else None
    if brackets is not None:
        factors = [(p, 1, None)]
        sqf = p
    else:
        factors = _factor_chains(p)
        sqf = reduce(lambda acc, f: _mul(acc, f[0]), factors, [1])
    if brackets is not None:
        kept = []
        for a, b in brackets:
            if b < lo or a > hi:
                continue
            if a < lo:
                _, right = _split_at(sqf, a, b, lo)
                if right is None:
                    continue
                a, b = right
            if b > hi:
                left, _ = _split_at(sqf, a, b, hi)
                if left is None:
                    continue
                a, b = left
            kept.append((a, b))
    else:
        kept = _sturm_isolate(sqf, lo, hi)
    refined = _refine_brackets(sqf, [ab for ab in kept if ab[0] != ab[1]], width)
    refined += [ab for ab in kept if ab[0] == ab[1]]
    refined.sort()
    out = []
    for a, b in refined:
        out.append(IsolatingInterval(a, b, _multiplicity_in(factors, a, b)))
    return out


def _mul(a, b):
    from .qseries import convolve

    return convolve(a, b)


def _multiplicity_in(factors, a: Fraction, b: Fraction) -> int:
    for f, mult, _ in factors:
        sa, sb = _sign_at(f, a), _sign_at(f, b)
        if sb == 0 or sa * sb < 0:
            return mult
    raise AssertionError("no factor vanishes in isolating interval")


def _sturm_isolate(sqf, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    chain = sturm_chain(sqf)
    out = []
    if _sign_at(sqf, lo) == 0:
        out.append((lo, lo))
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = chain.count(a, b)
        if n == 0:
            continue
        if n == 1:
            if _sign_at(sqf, b) == 0:
                out.append((b, b))
            else:
                out.append((a, b))
            continue
        c = (a + b) / 2
        stack.append((c, b))
        stack.append((a, c))
    return out


# --------------------------------------------------------------------------
# scans

def scan_arc(k: int) -> list[RootCountReport]:
    """Root reports for every ``F_{k,m}``, ``m = 0..ell``."""
    return [root_report(F) for F in faber_family(k)]


@dataclass
class MinMResult:
    k: int
    ell: int
    m_min: int | None
    monotone: bool
    failing: list[int] = field(default_factory=list)
    conjectured: int | None = None

    @property
    def matches_conjecture(self) -> bool | None:
        if self.conjectured is None:
            return None
        return self.m_min == self.conjectured


def conjectured_min_m(ell: int) -> int | None:
    """Predicted smallest off-arc index ``10 s + m_r`` for ``ell = 16 s + r > 30``."""
    if ell <= 30:
        return None
    s, r = divmod(ell, 16)
    return 10 * s + CONJECTURE_TABLE[r]


def min_m_off_arc(k: int, reports: Sequence[RootCountReport] | None = None) -> MinMResult:
    """Smallest ``m`` for which ``F_{k,m}`` has a root off ``[0, 1728]``, scanning ``m`` upward.

    ``monotone`` records whether every ``m`` in ``[m_min, ell)`` also fails.
    """
    w = weight_decompose(k)
    if reports is None:
        reports = scan_arc(k)
    # F_{k,ell} = 1 has no roots at all, so only m < ell can fail
    failing = [r.m for r in reports if not r.all_on_arc]
    m_min = failing[0] if failing else None
    monotone = m_min is None or failing == list(range(m_min, w.ell))
    conj = conjectured_min_m(w.ell) if w.kprime == 0 else None
    return MinMResult(k, w.ell, m_min, monotone, failing, conj)


@dataclass
class LargeRootScan:
    checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def scan_no_large_roots(k_list: Iterable[int]) -> LargeRootScan:
    """Check that no ``F_{k,m}`` has a root in ``[1728, inf)``."""
    scan = LargeRootScan()
    for k in k_list:
        for r in scan_arc(k):
            scan.checked += 1
            if r.at_or_above_1728:
                scan.counterexamples.append(
                    {"k": k, "m": r.m, "large": r.large, "at_1728": r.at_1728}
                )
    return scan
