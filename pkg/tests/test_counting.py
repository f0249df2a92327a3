import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainsurf.counting import (
    asymptotic_count,
    girth_probability_limit,
    pairing_girth_probability,
    short_cycle_exponent,
)
from chainsurf.errors import DomainError

# log(e^-2 * 12!/(2^6 6! 4! 6^4)), exact rational part 385/1152, via mpmath
BOLLOBAS_N3_E6_W3 = -3.0960115069680523249


def exact_log_count(n, E, w):
    V = 2 * E // n
    ratio = Fraction(math.factorial(2 * E), 2**E * math.factorial(E) * math.factorial(V) * math.factorial(n) ** V)
    exponent = sum(Fraction((n - 1) ** i, 2 * i) for i in range(1, w))
    return math.log(ratio.numerator) - math.log(ratio.denominator) - float(exponent)


def test_bollobas_example():
    assert asymptotic_count(3, 6, 3) == pytest.approx(BOLLOBAS_N3_E6_W3, rel=1e-14)
    assert math.factorial(12) / (2**6 * math.factorial(6) * math.factorial(4) * 6**4) == pytest.approx(385 / 1152)


@pytest.mark.parametrize("n,E,w", [(3, 6, 3), (3, 300, 5), (4, 40, 4), (5, 50, 3), (3, 1500, 8)])
def test_matches_exact_rational_oracle(n, E, w):
    assert asymptotic_count(n, E, w) == pytest.approx(exact_log_count(n, E, w), rel=1e-12)


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=3, max_value=12))
def test_strictly_decreasing_in_girth(half, w):
    E = 3 * half
    assert asymptotic_count(3, E, w + 1) < asymptotic_count(3, E, w)


def test_grows_without_bound_in_edges():
    vals = [asymptotic_count(3, 3 * 10**j, 6) for j in range(1, 7)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 1e6


@pytest.mark.parametrize("n,E", [(3, 5), (3, 0), (2, 6), (4, 3)])
def test_inconsistent_inputs(n, E):
    with pytest.raises(DomainError):
        asymptotic_count(n, E, 3)


def test_limits():
    assert short_cycle_exponent(3, 3) == 2.0
    assert girth_probability_limit(3) == pytest.approx(math.exp(-2))
    assert girth_probability_limit(4) == pytest.approx(math.exp(-10 / 3))
    assert girth_probability_limit(1) == 1.0


class TestMonteCarlo:
    def test_girth_one_is_certain(self):
        assert pairing_girth_probability(100, 1, 1000, 0) == (1.0, 0.0)

    def test_deterministic_and_worker_independent(self):
        a = pairing_girth_probability(50, 4, 3000, 11)
        assert a == pairing_girth_probability(50, 4, 3000, 11)
        assert a == pairing_girth_probability(50, 4, 3000, 11, workers=2)

    def test_partial_chunk(self):
        p, se = pairing_girth_probability(20, 3, 2500, 1)
        assert 0 < p < 1 and se > 0

    def test_too_few_trials(self):
        with pytest.raises(DomainError):
            pairing_girth_probability(100, 3, 999, 0)

    def test_simple_probability_four_vertices(self):
        # 4 vertices: 11!! = 10395 pairings; K4 arises from (3!)^4 = 1296 of them
        p, se = pairing_girth_probability(4, 3, 20000, 5)
        assert abs(p - 1296 / 10395) <= 4 * se

    @pytest.mark.slow
    def test_large_n_close_to_limit(self):
        p, se = pairing_girth_probability(1000, 3, 20000, 0)
        assert abs(p - math.exp(-2)) <= 3 * se

    @pytest.mark.slow
    def test_large_n_girth_four_close_to_limit(self):
        p, se = pairing_girth_probability(1000, 4, 20000, 0)
        assert abs(p - math.exp(-10 / 3)) <= 3 * se

    def test_independent_sampler_agrees_at_100_vertices(self):
        # stdlib shuffle sampler sharing no code with the library: same finite-n probability
        import random

        rng = random.Random(4)
        trials, hits = 20000, 0
        for _ in range(trials):
            stubs = [v for v in range(100) for _ in range(3)]
            rng.shuffle(stubs)
            pairs = {tuple(sorted(stubs[i : i + 2])) for i in range(0, 300, 2)}
            if len(pairs) == 150 and all(u != v for u, v in pairs):
                hits += 1
        p_ref = hits / trials
        p, se = pairing_girth_probability(100, 3, 20000, 4)
        assert abs(p - p_ref) <= 4 * math.hypot(se, math.sqrt(p_ref * (1 - p_ref) / trials))
