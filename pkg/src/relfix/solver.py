"""Picard iteration with exact fixed-point detection and a-priori error bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .contraction import check_k
from .relation import FiniteRelation, SelfMap, find_path, is_f_closed, is_preserving, symmetrize
from .space import FiniteDistanceSpace, Rational, as_rational


class NonConvergence(RuntimeError):
    """No fixed point was reached within the iteration budget."""

    def __init__(self, message: str, trace: PicardTrace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class PicardTrace:
    iterates: tuple[str, ...]
    gaps: tuple[Fraction, ...]
    # k**n * d0 / (1 - k) for each recorded n; empty when no k was supplied.
    bounds: tuple[Fraction, ...] = ()
    k: Optional[Fraction] = None


@dataclass(frozen=True)
class FixedPointCertificate:
    point: str
    self_distance: Fraction
    residual: Fraction
    iterations: int
    # None when no relation was supplied to check the orbit against.
    preserving_verified: Optional[bool] = None


def a_priori_bound(k: Rational, n: int, d0: Rational) -> Fraction:
    """Bound on d(x_n, x_m) for every m > n along a Picard orbit."""
    k, d0 = as_rational(k), as_rational(d0)
    if not 0 <= k < 1:
        raise ValueError(f"contraction constant must lie in [0, 1), got {k}")
    if n < 0 or d0 < 0:
        raise ValueError("n and d0 must be nonnegative")
    return k**n * d0 / (1 - k)


def picard(
    space: FiniteDistanceSpace,
    f: SelfMap,
    x0: str,
    max_iter: Optional[int] = None,
    k: Optional[Rational] = None,
    relation: Optional[FiniteRelation] = None,
) -> tuple[PicardTrace, FixedPointCertificate]:
    """Iterate x_{n+1} = f(x_n) from ``x0`` until f(x_n) = x_n.

    The trace ends with the repeated fixed point, so ``[a, b, b]`` means one
    application reached b.  ``max_iter`` caps the number of applications
    before the fixed point (default ``len(space) + 1``; on a finite set an
    orbit either settles or cycles within ``len(space)`` steps).
    Raises :class:`NonConvergence` otherwise.
    """
    if x0 not in space:
        raise KeyError(f"unknown start point {x0!r}")
    if max_iter is None:
        max_iter = len(space) + 1
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    k = None if k is None else as_rational(k)

    iterates = [x0]
    found = None
    for n in range(max_iter + 1):
        nxt = f(iterates[-1])
        iterates.append(nxt)
        if nxt == iterates[-2]:
            found = n
            break
        if n == max_iter:
            break
    gaps = tuple(space.dist(a, b) for a, b in zip(iterates, iterates[1:]))
    bounds: tuple[Fraction, ...] = ()
    if k is not None:
        bounds = tuple(a_priori_bound(k, n, gaps[0]) for n in range(len(gaps)))
    trace = PicardTrace(tuple(iterates), gaps, bounds, k)
    if found is None:
        raise NonConvergence(f"no fixed point within {max_iter} applications from {x0!r}", trace)
    y = iterates[-1]
    cert = FixedPointCertificate(
        point=y,
        self_distance=space.dist(y, y),
        residual=space.dist(y, f(y)),
        iterations=found,
        preserving_verified=None if relation is None else is_preserving(relation, iterates),
    )
    return trace, cert


def fixed_points(space: FiniteDistanceSpace, f: SelfMap) -> frozenset[str]:
    """Brute-force fixed point set."""
    return frozenset(x for x in space.points if f(x) == x)


@dataclass(frozen=True)
class UniquenessVerdict:
    unique: bool
    explanation: str
    # Distinct fixed points joined by a path: impossible under a verified
    # contraction, so this signals bad input or a bug.
    alarm: Optional[tuple[str, str]] = None


def uniqueness_by_paths(
    space: FiniteDistanceSpace,
    R: FiniteRelation,
    f: SelfMap,
    F: frozenset[str],
    k: Rational,
) -> UniquenessVerdict:
    """Decide whether the fixed points in ``F`` must coincide.

    Requires R to be f-closed and d(fx, fy) <= k d(x, y) on R.  Then any
    path in the symmetrized relation between fixed points p, q gives
    d(p, q) <= k**n * (path length sum) for all n, so p = q.
    """
    if not check_k(space, R, f, k).holds:
        raise ValueError(f"contraction with k={k} does not hold on R")
    if not is_f_closed(R, f).holds:
        raise ValueError("R is not f-closed")
    if len(F) <= 1:
        return UniquenessVerdict(True, f"{len(F)} fixed point(s)")
    Rs = symmetrize(R)
    pts = sorted(F, key=space.index.__getitem__)
    for p, q in combinations(pts, 2):
        if find_path(Rs, p, q) is None:
            return UniquenessVerdict(False, f"no path joins fixed points {p} and {q}")
    p, q = pts[0], pts[1]
    return UniquenessVerdict(
        False, f"fixed points {p} and {q} are path-connected under a verified contraction", (p, q)
    )
