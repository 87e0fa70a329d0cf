import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from magsum.catalog import FamilySpec, eliminate, magnification_fn
from magsum.polynomial import Polynomial, RationalFunction, gcd
from magsum.trace import (
    PoleError,
    RepeatedRootsError,
    coset_representative,
    numeric_trace_oracle,
    trace_sum,
)

from conftest import random_fraction, small_fractions


def P(*c):
    return Polynomial(c)


def test_coset_representative_examples():
    assert coset_representative(P(-1, 0, 1), RationalFunction(P(0, 0, 1))) == P(0, 2)
    assert coset_representative(P(-1, 0, 3), RationalFunction(P(1), P(0, 12))) == P(Fraction(1, 2))


@pytest.mark.parametrize("phi, h, value", [
    (P(-1, 0, 1), RationalFunction(P(0, 1)), 0),
    (P(-1, 0, 1), RationalFunction(P(0, 0, 1)), 2),
    (P(0, -2, 0, 1), RationalFunction(P(1), P(1, 0, 1)), Fraction(5, 3)),
])
def test_trace_sum_examples(phi, h, value):
    assert trace_sum(phi, h).value == value
    assert abs(numeric_trace_oracle(phi, h) - value) <= 1e-9


def test_trace_errors():
    with pytest.raises(RepeatedRootsError):
        trace_sum(P(1, -2, 1), RationalFunction(P(1)))
    with pytest.raises(PoleError):
        trace_sum(P(-1, 0, 1), RationalFunction(P(1), P(-1, 1)))


def test_d4_coset_is_2y():
    spec = FamilySpec("D", 4, (1,))
    rng = random.Random(3)
    for _ in range(10):
        c, s = (random_fraction(rng),), (random_fraction(rng) or Fraction(1), random_fraction(rng))
        phi, _ = eliminate(spec, c, s)
        assert coset_representative(phi, magnification_fn(spec, c, s)) == P(0, 2)


def test_a5_oracle_sum_vanishes():
    spec = FamilySpec("A", 5, (1, 1))
    c, s = (Fraction(1, 3), Fraction(-2, 5)), (Fraction(1, 7), Fraction(-3, 2))
    phi, _ = eliminate(spec, c, s)
    assert abs(numeric_trace_oracle(phi, magnification_fn(spec, c, s))) <= 1e-8


def _random_case(rng):
    while True:
        deg = rng.randint(1, 12)
        phi = Polynomial([Fraction(rng.randint(-10, 10)) for _ in range(deg)] + [Fraction(rng.choice([-1, 1]) * rng.randint(1, 10))])
        num = Polynomial([Fraction(rng.randint(-10, 10)) for _ in range(rng.randint(0, 6))])
        den = Polynomial([Fraction(rng.randint(-10, 10)) for _ in range(rng.randint(0, 3))] + [Fraction(1)])
        if gcd(phi, phi.derivative()).degree == 0 and gcd(den, phi).degree == 0:
            return phi, RationalFunction(num, den)


def test_exact_vs_oracle_random_cases():
    rng = random.Random(11)
    for _ in range(200):
        phi, h = _random_case(rng)
        exact = trace_sum(phi, h).value
        assert abs(numeric_trace_oracle(phi, h) - float(exact)) <= 1e-8 * (1 + abs(exact))


@given(st.lists(small_fractions, min_size=2, max_size=5, unique=True),
       st.lists(small_fractions, min_size=1, max_size=4),
       st.lists(small_fractions, min_size=1, max_size=4),
       small_fractions, small_fractions)
def test_linearity(roots, a, b, alpha, beta):
    phi = Polynomial.from_roots(roots)
    ha, hb = RationalFunction(Polynomial(a)), RationalFunction(Polynomial(b))
    lhs = trace_sum(phi, ha * alpha + hb * beta).value
    assert lhs == alpha * trace_sum(phi, ha).value + beta * trace_sum(phi, hb).value


@given(st.lists(small_fractions, min_size=1, max_size=5, unique=True),
       st.lists(small_fractions, min_size=1, max_size=4),
       small_fractions.filter(lambda t: t != 0))
def test_scaling_phi_leaves_value(roots, a, lam):
    phi = Polynomial.from_roots(roots)
    h = RationalFunction(Polynomial(a))
    assert trace_sum(phi * lam, h).value == trace_sum(phi, h).value


@given(st.lists(small_fractions, min_size=1, max_size=6, unique=True),
       st.lists(small_fractions, min_size=1, max_size=5))
def test_value_equals_direct_sum_over_rational_roots(roots, a):
    h = Polynomial(a)
    assert trace_sum(Polynomial.from_roots(roots), RationalFunction(h)).value == sum(h(r) for r in roots)
