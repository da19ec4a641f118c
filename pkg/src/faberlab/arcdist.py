"""j on the unit-circle arc, root angles and the limiting angular law.

Angles live on ``[pi/2, 2pi/3]``, where ``theta -> j(e^{i theta})`` decreases
from 1728 to 0.  Evaluation sums the q-expansion of j; on the arc
``|q| = exp(-2 pi sin theta) <= exp(-pi sqrt 3) ~ 0.00433``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import integrate, stats

from .errors import (
    EmptySample,
    NotAllOnArc,
    OutOfRegime,
    QuadratureFailure,
    RangeError,
    TailBoundFailure,
)
from .faber import faber_greedy
from .modforms import WeightDecomposition, qj_coeffs, weight_decompose
from .realroots import ARC_HI, isolate_roots, root_report

__all__ = [
    "THETA_LO",
    "THETA_HI",
    "THETA_TOL",
    "ArcSample",
    "LimitLaw",
    "ZeroCountPrediction",
    "QuadResult",
    "j_on_circle",
    "j_on_circle_array",
    "theta_from_x",
    "theta_from_x_array",
    "arc_sample",
    "ks_distance",
    "raveh_zero_count",
    "quad_A",
    "quad_B",
    "moment_check",
]

THETA_LO = math.pi / 2
THETA_HI = 2 * math.pi / 3
THETA_TOL = 1e-9
TAIL_TOL = 1e-10
DEFAULT_ROOT_WIDTH = Fraction(1, 1 << 40)

N_TERMS = 60
N_CHECK = 20


@lru_cache(maxsize=1)
def _j_table() -> tuple[np.ndarray, float, float]:
    """Float coefficients of ``q j`` plus a geometric tail majorant ``(c_N, r)``.

    The majorant ``c(n) <= c_N r^(n - N)`` for ``n >= N`` uses the ratio of the
    last two tabulated coefficients; it is checked against ``N_CHECK`` further
    exact coefficients.
    """
    exact = qj_coeffs(N_TERMS + N_CHECK)
    c = exact[:N_TERMS]
    cN = exact[N_TERMS]
    r = Fraction(exact[N_TERMS - 1], exact[N_TERMS - 2])
    for i in range(N_CHECK):
        if exact[N_TERMS + i] > cN * r**i:
            raise TailBoundFailure(f"majorant fails at coefficient {N_TERMS + i}")
    return np.array([float(x) for x in c]), float(cN), float(r)


def _check_theta(theta: np.ndarray) -> None:
    lo, hi = math.pi / 3, 2 * math.pi / 3
    eps = 1e-12
    if np.any(theta < lo - eps) or np.any(theta > hi + eps):
        raise RangeError("theta must lie in [pi/3, 2pi/3]")


def j_on_circle_array(theta) -> np.ndarray:
    """Vectorized :func:`j_on_circle`."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    _check_theta(theta)
    coeffs, cN, r = _j_table()
    tau = np.exp(1j * theta)
    q = np.exp(2j * np.pi * tau)
    aq = np.abs(q)
    # q j = sum c[i] q^i; Horner from the top
    acc = np.zeros_like(q)
    mag = np.zeros_like(aq)
    for c in coeffs[::-1]:
        acc = acc * q + c
        mag = mag * aq + abs(c)
    if np.any(r * aq >= 1):
        raise TailBoundFailure("geometric tail majorant does not converge")
    tail = cN * aq ** (N_TERMS - 1) / (1 - r * aq)
    val = acc / q
    absval = np.abs(val.real)
    if np.any(tail > TAIL_TOL * np.maximum(1.0, absval)):
        raise TailBoundFailure(f"{N_TERMS} terms do not meet the tail tolerance")
    # j is real on |tau| = 1; allow for float rounding of the partial sum
    rounding = 64 * np.finfo(float).eps * mag / aq
    if np.any(np.abs(val.imag) > np.maximum(TAIL_TOL * np.maximum(1.0, absval), rounding)):
        raise TailBoundFailure("imaginary part of j on the arc above tolerance")
    return val.real


def j_on_circle(theta: float) -> float:
    """``j(e^{i theta})`` for ``theta`` in ``[pi/3, 2pi/3]``."""
    return float(j_on_circle_array([theta])[0])


def theta_from_x_array(xs, tol: float = THETA_TOL) -> np.ndarray:
    """Vectorized :func:`theta_from_x`."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0) or np.any(xs > ARC_HI):
        raise RangeError("x must lie in [0, 1728]")
    lo = np.full(xs.shape, THETA_LO)
    hi = np.full(xs.shape, THETA_HI)
    # j decreases on the arc: j(lo) >= x >= j(hi)
    # stop well inside tol so the midpoint is accurate, not just bracketed
    while np.max(hi - lo, initial=0.0) > tol / 64:
        mid = (lo + hi) / 2
        above = j_on_circle_array(mid) > xs
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    out = (lo + hi) / 2
    out[xs == ARC_HI] = THETA_LO
    out[xs == 0] = THETA_HI
    return out


def theta_from_x(x: float, tol: float = THETA_TOL) -> float:
    """The angle ``theta`` in ``[pi/2, 2pi/3]`` with ``j(e^{i theta}) = x``."""
    return float(theta_from_x_array([x], tol)[0])


@dataclass(frozen=True)
class ArcSample:
    weight: WeightDecomposition
    m: int
    thetas: tuple[float, ...]
    root_width: Fraction

    def __len__(self) -> int:
        return len(self.thetas)

    @property
    def c(self) -> float:
        return self.m / self.weight.ell if self.weight.ell else 0.0


def arc_sample(k: int, m: int, width: Fraction = DEFAULT_ROOT_WIDTH) -> ArcSample:
    """Angles of the roots of ``F_{k,m}``, sorted, repeated by multiplicity."""
    F = faber_greedy(k, m)
    rep = root_report(F)
    if not rep.all_on_arc:
        raise NotAllOnArc(f"F_{{{k},{m}}} has {F.degree - rep.arc} roots off [0, 1728]")
    xs: list[float] = []
    if F.degree:
        for iv in isolate_roots(F.coeffs, 0, ARC_HI, width):
            xs.extend([float(iv.midpoint)] * iv.multiplicity)
    thetas = np.sort(theta_from_x_array(np.clip(xs, 0, ARC_HI))) if xs else np.array([])
    return ArcSample(F.weight, m, tuple(float(t) for t in thetas), Fraction(width))


@dataclass(frozen=True)
class LimitLaw:
    """Limiting distribution of root angles when ``m / ell -> c``."""

    c: float

    def __post_init__(self):
        if not 0 <= self.c <= 3 / math.pi:
            raise ValueError(f"c must lie in [0, 3/pi], got {self.c}")

    def cdf(self, theta):
        c = self.c
        theta = np.asarray(theta, dtype=float)
        out = 6 * (theta - THETA_LO) / (math.pi * (1 - c)) + 2 * c * np.cos(theta) / (1 - c)
        return out if out.ndim else float(out)

    def density(self, theta):
        c = self.c
        theta = np.asarray(theta, dtype=float)
        out = 6 / (math.pi * (1 - c)) - 2 * c * np.sin(theta) / (1 - c)
        return out if out.ndim else float(out)


def ks_distance(sample: ArcSample | Sequence[float], law: LimitLaw) -> float:
    """Kolmogorov-Smirnov distance between the sample angles and ``law``."""
    thetas = sample.thetas if isinstance(sample, ArcSample) else tuple(sample)
    if not thetas:
        raise EmptySample("KS distance of an empty sample")
    return float(stats.kstest(np.asarray(thetas), law.cdf).statistic)


@dataclass(frozen=True)
class ZeroCountPrediction:
    value: float
    lo: int
    hi: int

    def __contains__(self, count: int) -> bool:
        return self.lo <= count <= self.hi


def _h(k: int, m: int, theta: float) -> float:
    return k * theta / 2 + 2 * math.pi * m * math.cos(theta)


def raveh_zero_count(k: int, m: int, theta1: float, theta2: float) -> ZeroCountPrediction:
    """Predicted number of root angles in ``[theta1, theta2]``, with slack 2 either side.

    Valid only while ``m < 2 ell / 9``, where ``h`` is monotone.
    """
    w = weight_decompose(k)
    if not 9 * m < 2 * w.ell:
        raise OutOfRegime(f"m={m} not below 2 ell / 9 = {2 * w.ell / 9:.3f}")
    eps = 1e-12
    if not THETA_LO - eps <= theta1 <= theta2 <= THETA_HI + eps:
        raise RangeError("need pi/2 <= theta1 <= theta2 <= 2pi/3")
    v = (_h(k, m, theta2) - _h(k, m, theta1)) / math.pi
    return ZeroCountPrediction(v, math.ceil(v - 2), math.floor(v + 2))


@dataclass(frozen=True)
class QuadResult:
    value: float
    abserr: float


def _quad(f, a: float, b: float) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-11, limit=200)
        except integrate.IntegrationWarning as exc:
            raise QuadratureFailure(str(exc)) from exc
    if not math.isfinite(val):
        raise QuadratureFailure("non-finite quadrature result")
    return val, err


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a non-negative integer")


def quad_A(n: int) -> QuadResult:
    """``(1/2pi) * integral of j^n`` over the arc ``[pi/2, 2pi/3]``."""
    _check_n(n)
    # integrate (j/1728)^n and rescale so large n stays in range
    val, err = _quad(lambda t: (j_on_circle(t) / ARC_HI) ** n, THETA_LO, THETA_HI)
    scale = float(ARC_HI) ** n / (2 * math.pi)
    return QuadResult(val * scale, err * scale)


def quad_B(n: int) -> QuadResult:
    """``-integral of sin(theta) j^n`` over ``[pi/3, 2pi/3]``."""
    _check_n(n)
    f = lambda t: math.sin(t) * (j_on_circle(t) / ARC_HI) ** n  # noqa: E731
    v1, e1 = _quad(f, math.pi / 3, THETA_LO)
    v2, e2 = _quad(f, THETA_LO, THETA_HI)
    scale = float(ARC_HI) ** n
    return QuadResult(-(v1 + v2) * scale, (e1 + e2) * scale)


def moment_check(c: float, n: int) -> tuple[float, float]:
    """``(integral of j^n * density_c, (12 A_n + c B_n) / (1 - c))``.

    ``n = 0`` uses ``A_0 = 1/12`` and ``B_0 = -1``, so both sides equal 1.
    """
    from .powersums import constant_A, constant_B

    if not 0 < c < 3 / math.pi:
        raise ValueError("c must lie in (0, 3/pi)")
    _check_n(n)
    law = LimitLaw(c)
    val, _ = _quad(
        lambda t: (j_on_circle(t) / ARC_HI) ** n * law.density(t), THETA_LO, THETA_HI
    )
    lhs = val * float(ARC_HI) ** n
    if n == 0:
        A, B = Fraction(1, 12), Fraction(-1)
    else:
        A, B = Fraction(constant_A(n)), Fraction(constant_B(n))
    rhs = float((12 * A + Fraction(c) * B) / (1 - Fraction(c)))
    return lhs, rhs
