"""Linear and integral-type contraction conditions over related pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .relation import FiniteRelation, Pair, SelfMap, Verdict
from .space import FiniteDistanceSpace, Rational, as_rational

Number = Union[Fraction, float]


class OmegaError(ValueError):
    """The integrand parameters fall outside the admissible class."""


@dataclass(frozen=True)
class ContractionReport:
    feasible: bool
    k_star: Fraction
    # Pairs (x, y) in R with d(x,y) = 0 < d(fx,fy), or with ratio >= 1.
    blocking_pairs: tuple[Pair, ...] = ()


CONSTANT = "constant"
POWER = "power"
PIECEWISE = "piecewise_linear"
KINDS = (CONSTANT, POWER, PIECEWISE)


@dataclass(frozen=True)
class IntegrandSpec:
    """A nonnegative integrand whose integral over (0, e) is positive for every e > 0.

    Kinds and ``params``:

    - ``constant``: ``(c,)`` with c > 0, rho(t) = c
    - ``power``: ``(c, alpha)`` with c > 0, alpha > -1, rho(t) = c * t**alpha
    - ``piecewise_linear``: ``((t0, v0), (t1, v1), ...)`` with t0 = 0,
      strictly increasing knots and all v > 0; linear between knots and
      constant (= last value) beyond the last knot.
    """

    kind: str
    params: tuple = field(default=())

    def __post_init__(self) -> None:
        if self.kind == CONSTANT:
            (c,) = self.params
            if c <= 0:
                raise OmegaError(f"constant integrand must be positive, got {c}")
        elif self.kind == POWER:
            c, alpha = self.params
            if c <= 0:
                raise OmegaError(f"power integrand scale must be positive, got {c}")
            if alpha <= -1:
                raise OmegaError(f"t**alpha is not integrable at 0 for alpha={alpha}")
        elif self.kind == PIECEWISE:
            knots = self.params
            if not knots or knots[0][0] != 0:
                raise OmegaError("piecewise integrand must start with a knot at t=0")
            ts = [t for t, _ in knots]
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise OmegaError("piecewise knots must be strictly increasing")
            if any(v <= 0 for _, v in knots):
                raise OmegaError("piecewise values must be positive")
        else:
            raise OmegaError(f"unknown integrand kind {self.kind!r}; expected one of {KINDS}")

    @classmethod
    def constant(cls, c: Rational = 1) -> IntegrandSpec:
        return cls(CONSTANT, (as_rational(c),))

    @classmethod
    def power(cls, alpha: Rational, c: Rational = 1) -> IntegrandSpec:
        return cls(POWER, (as_rational(c), as_rational(alpha)))

    @classmethod
    def piecewise(cls, knots: Iterable[Sequence[Rational]]) -> IntegrandSpec:
        return cls(PIECEWISE, tuple((as_rational(t), as_rational(v)) for t, v in knots))


def _rational_root(q: Fraction, n: int) -> Optional[Fraction]:
    """Exact n-th root of a nonnegative rational, if it is rational."""

    def iroot(m: int) -> Optional[int]:
        lo, hi = 0, 1
        while hi**n <= m:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid**n <= m:
                lo = mid
            else:
                hi = mid
        return lo if lo**n == m else None

    num, den = iroot(q.numerator), iroot(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _rational_pow(b: Fraction, e: Fraction) -> Number:
    """b**e, exact when the result is rational."""
    if e.denominator == 1:
        return b ** e.numerator
    root = _rational_root(b, e.denominator)
    if root is not None:
        return root ** e.numerator
    return float(b) ** float(e)


def integrate(rho: IntegrandSpec, b: Rational) -> Number:
    """Integral of rho over [0, b].

    Exact (a Fraction) for constants, piecewise-linear tables and powers
    whose value at b is rational; otherwise a float.
    """
    b = as_rational(b)
    if b < 0:
        raise ValueError(f"upper limit must be nonnegative, got {b}")
    if b == 0:
        return Fraction(0)
    if rho.kind == CONSTANT:
        return rho.params[0] * b
    if rho.kind == POWER:
        c, alpha = rho.params
        return c * _rational_pow(b, alpha + 1) / (alpha + 1)
    total = Fraction(0)
    knots = rho.params
    for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
        if b <= t0:
            break
        hi = min(b, t1)
        v_hi = v0 + (v1 - v0) * (hi - t0) / (t1 - t0)
        total += (v0 + v_hi) * (hi - t0) / 2
    t_last, v_last = knots[-1]
    if b > t_last:
        total += v_last * (b - t_last)
    return total


def check_omega(rho: IntegrandSpec, epsilons: Iterable[Rational]) -> bool:
    """Re-check that the integral over (0, e) is positive for each e."""
    out = True
    for eps in epsilons:
        eps = as_rational(eps)
        if eps <= 0:
            raise ValueError(f"epsilons must be positive, got {eps}")
        out = out and integrate(rho, eps) > 0
    return out


def _scan(R: FiniteRelation, f: SelfMap, measure) -> ContractionReport:
    k_star: Number = Fraction(0)
    blocking = []
    for x, y in R.sorted_pairs():
        before, after = measure(x, y), measure(f(x), f(y))
        if before == 0:
            if after > 0:
                blocking.append((x, y))
            continue
        ratio = after / before
        if ratio >= 1:
            blocking.append((x, y))
        if ratio > k_star:
            k_star = ratio
    return ContractionReport(not blocking and k_star < 1, k_star, tuple(blocking))


def minimal_k(space: FiniteDistanceSpace, R: FiniteRelation, f: SelfMap) -> ContractionReport:
    """Smallest k with d(fx, fy) <= k d(x, y) on every related pair."""
    return _scan(R, f, space.dist)


def check_k(space: FiniteDistanceSpace, R: FiniteRelation, f: SelfMap, k: Rational) -> Verdict:
    k = as_rational(k)
    if k < 0 or k >= 1:
        raise ValueError(f"contraction constant must lie in [0, 1), got {k}")
    for x, y in R.sorted_pairs():
        if space.dist(f(x), f(y)) > k * space.dist(x, y):
            return Verdict(False, (x, y))
    return Verdict(True)


def integral_minimal_k(
    space: FiniteDistanceSpace, R: FiniteRelation, f: SelfMap, rho: IntegrandSpec
) -> ContractionReport:
    """As :func:`minimal_k`, comparing integrals of rho up to each distance."""
    cache: dict[Fraction, Number] = {}

    def measure(x: str, y: str) -> Number:
        b = space.dist(x, y)
        if b not in cache:
            cache[b] = integrate(rho, b)
        return cache[b]

    return _scan(R, f, measure)
