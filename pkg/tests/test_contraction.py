import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relfix.contraction import (
    IntegrandSpec,
    OmegaError,
    check_k,
    check_omega,
    integral_minimal_k,
    integrate,
    minimal_k,
)
from relfix.relation import FiniteRelation, SelfMap

from helpers import EX2, EX2_F, EX2_R, UNIVERSAL3, X3, corpus, random_map, random_metric_like, random_relation, small_instances

GRID = [Fraction(i, 8) for i in range(8)]


def test_minimal_k_examples():
    rep = minimal_k(EX2, EX2_R, EX2_F)
    assert rep.feasible and rep.k_star == 0 and rep.blocking_pairs == ()
    rep = minimal_k(EX2, UNIVERSAL3, EX2_F)
    assert rep.feasible and rep.k_star == Fraction(1, 2)
    rep = minimal_k(EX2, UNIVERSAL3, SelfMap.identity(X3))
    assert not rep.feasible and rep.k_star == 1


def test_blocking_reflexive_pair():
    # (a,a) related with d(a,a) = 0 but d(fa,fa) = 1
    from relfix import fixtures
    from relfix.document import instance_from_document

    inst = instance_from_document(fixtures.load("blocking_reflexive"))
    rep = minimal_k(inst.space, inst.relation, inst.fmap)
    assert not rep.feasible
    assert ("a", "a") in rep.blocking_pairs


def test_check_k_examples():
    assert check_k(EX2, UNIVERSAL3, EX2_F, Fraction(1, 2)).holds
    assert check_k(EX2, UNIVERSAL3, EX2_F, Fraction(1, 4)) == (False, ("a", "c"))
    assert check_k(EX2, FiniteRelation.of(X3, []), EX2_F, 0).holds


@pytest.mark.parametrize("k", [Fraction(-1, 2), 1, Fraction(3, 2)])
def test_check_k_rejects_outside_unit_interval(k):
    with pytest.raises(ValueError):
        check_k(EX2, EX2_R, EX2_F, k)


def test_check_k_agrees_with_k_star():
    rng = random.Random(11)
    for _ in range(500):
        space = random_metric_like(rng, rng.randint(1, 4))
        R = random_relation(rng, space.points, 0.5)
        f = random_map(rng, space.points)
        rep = minimal_k(space, R, f)
        for k in GRID:
            expected = not rep.blocking_pairs and k >= rep.k_star
            assert check_k(space, R, f, k).holds == expected


@settings(max_examples=300, deadline=None)
@given(small_instances(), st.data())
def test_shrinking_relation_never_raises_k_star(inst, data):
    space, R, f = inst
    sub = data.draw(st.sets(st.sampled_from(sorted(R.pairs)))) if R.pairs else set()
    smaller = FiniteRelation(R.carrier, frozenset(sub))
    big, small = minimal_k(space, R, f), minimal_k(space, smaller, f)
    assert small.k_star <= big.k_star
    assert set(small.blocking_pairs) <= set(big.blocking_pairs)


@settings(max_examples=300, deadline=None)
@given(small_instances())
def test_feasibility_invariant(inst):
    rep = minimal_k(*inst)
    assert rep.feasible == (not rep.blocking_pairs and rep.k_star < 1)


def test_integrate_examples():
    assert integrate(IntegrandSpec.constant(1), 2) == 2
    assert integrate(IntegrandSpec.power(1), 2) == 2
    assert integrate(IntegrandSpec.piecewise([(0, 1), (1, 3)]), 1) == 2
    # past the last knot the table is extended by its last value
    assert integrate(IntegrandSpec.piecewise([(0, 1), (1, 3)]), 2) == 5
    assert integrate(IntegrandSpec.power(Fraction(1, 2)), 4) == Fraction(16, 3)
    assert isinstance(integrate(IntegrandSpec.power(Fraction(1, 2)), 2), float)
    assert integrate(IntegrandSpec.power(0, c=5), 0) == 0


def _midpoint(rho, b, steps=4000):
    def value(t):
        if rho.kind == "constant":
            return float(rho.params[0])
        if rho.kind == "power":
            c, alpha = rho.params
            return float(c) * t ** float(alpha)
        knots = rho.params
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if t <= t1:
                return float(v0 + (v1 - v0) * (Fraction(t) - t0) / (t1 - t0))
        return float(knots[-1][1])

    h = float(b) / steps
    return sum(value((i + 0.5) * h) for i in range(steps)) * h


@pytest.mark.parametrize(
    "rho",
    [
        IntegrandSpec.constant(Fraction(3, 2)),
        IntegrandSpec.power(2, c=3),
        IntegrandSpec.power(Fraction(1, 3)),
        IntegrandSpec.power(Fraction(-1, 2)),
        IntegrandSpec.piecewise([(0, 1), (1, 3), (2, Fraction(1, 2))]),
    ],
)
@pytest.mark.parametrize("b", [Fraction(1, 3), 1, Fraction(5, 2)])
def test_integrate_against_quadrature(rho, b):
    tol = 2e-2 if rho.kind == "power" and rho.params[1] < 0 else 1e-5
    assert float(integrate(rho, b)) == pytest.approx(_midpoint(rho, b), rel=tol)


def test_check_omega():
    assert check_omega(IntegrandSpec.constant(1), [Fraction(1, 1000), 1, 10])
    assert check_omega(IntegrandSpec.power(2, c=3), [Fraction(1, 10), 2])
    with pytest.raises(ValueError):
        check_omega(IntegrandSpec.constant(1), [0])


@pytest.mark.parametrize(
    "build",
    [
        lambda: IntegrandSpec.constant(0),
        lambda: IntegrandSpec.power(1, c=0),
        lambda: IntegrandSpec.power(-1),
        lambda: IntegrandSpec.piecewise([(1, 1)]),
        lambda: IntegrandSpec.piecewise([(0, 1), (1, 0)]),
        lambda: IntegrandSpec.piecewise([(0, 1), (0, 2)]),
        lambda: IntegrandSpec("gaussian", ()),
    ],
)
def test_outside_admissible_class(build):
    with pytest.raises(OmegaError):
        build()


def test_integral_k_star_examples():
    rep = integral_minimal_k(EX2, UNIVERSAL3, EX2_F, IntegrandSpec.power(1))
    assert rep.k_star == Fraction(1, 4) and rep.feasible
    empty = FiniteRelation.of(X3, [])
    rep = integral_minimal_k(EX2, empty, EX2_F, IntegrandSpec.power(3))
    assert rep.k_star == 0 and rep.feasible


def test_constant_integrand_reduces_to_distances():
    for name, inst in corpus().items():
        a = minimal_k(inst.space, inst.relation, inst.fmap)
        for c in (1, Fraction(7, 3)):
            b = integral_minimal_k(inst.space, inst.relation, inst.fmap, IntegrandSpec.constant(c))
            assert a == b, name


def test_power_integrand_ratios_are_exact_per_pair():
    rng = random.Random(5)
    for _ in range(200):
        space = random_metric_like(rng, rng.randint(1, 4))
        R = random_relation(rng, space.points, 0.5)
        f = random_map(rng, space.points)
        rep = integral_minimal_k(space, R, f, IntegrandSpec.power(2))
        expected = max(
            [(space.dist(f(x), f(y)) / space.dist(x, y)) ** 3 for x, y in R.pairs if space.dist(x, y) > 0],
            default=0,
        )
        assert rep.k_star == expected
