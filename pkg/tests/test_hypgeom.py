import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainsurf import hypgeom as hg
from chainsurf.errors import DomainError

SILVER = 2.0 * math.log(1.0 + math.sqrt(2.0))  # sinh(l/2) = 1

# arbitrary-precision oracle values (mpmath, 40 digits)
D_AT_1 = 2.8686951416198218842
TAU_AT_2 = 3.6122259996822519422
W_AT_10 = 0.013476097938606626442
EMIN_L1_W1 = 0.57752093331937426076

lengths = st.floats(min_value=1e-6, max_value=1e4, allow_nan=False)


def mp_d(eps):
    mp.mp.dps = 60
    e = mp.mpf(eps)
    return 2 * mp.asinh(1 / (2 * mp.sinh(e / 4)))


class TestPantsFormulas:
    def test_d_forced_value(self):
        eps = 4.0 * math.asinh(0.5)
        assert hg.compute_d(eps) == pytest.approx(2.0 * math.log(1.0 + math.sqrt(2.0)), rel=1e-15)

    def test_d_regression(self):
        assert hg.compute_d(1.0) == pytest.approx(D_AT_1, rel=1e-15)

    def test_d_large_eps_asymptotic(self):
        assert abs(hg.compute_d(40.0) / (2.0 * math.exp(-10.0)) - 1.0) <= 1e-6

    @pytest.mark.parametrize("eps", [1e-3, 0.3, 2.0, 10.0, 79.0, 81.0, 300.0, 1000.0, 2900.0])
    def test_d_matches_mpmath(self, eps):
        assert hg.compute_d(eps) == pytest.approx(float(mp_d(eps)), rel=1e-13)

    @pytest.mark.parametrize("eps", [0.5, 100.0, 3000.0, 1e4])
    def test_log_d_matches_mpmath(self, eps):
        assert hg.log_d(eps) == pytest.approx(float(mp.log(mp_d(eps))), rel=1e-13)

    def test_tau_regression(self):
        assert hg.compute_tau(2.0) == pytest.approx(TAU_AT_2, rel=1e-15)

    def test_tau_exceeds_half_eps_on_grid(self):
        for eps in np.linspace(50.0 / 1000, 50.0, 1000):
            assert hg.compute_tau(eps) > eps / 2

    def test_tau_blows_up_as_eps_vanishes(self):
        taus = [hg.compute_tau(2.0**-j) for j in range(1, 21)]
        assert all(b > a for a, b in zip(taus, taus[1:]))
        assert taus[-1] > 25

    @given(lengths)
    def test_tau_is_twice_h_exactly(self, eps):
        assert hg.compute_tau(eps) == 2.0 * hg.compute_h(eps)

    @given(lengths)
    def test_pants_invariants(self, eps):
        p = hg.pants_geometry(eps)
        assert p.tau == 2.0 * p.h
        assert p.tau > eps / 2
        assert p.collar_area < 4
        assert p.h > 0 and math.isfinite(p.tau)
        assert p.pants_area == 2 * math.pi

    def test_d_positive_and_decreasing_where_representable(self):
        grid = np.geomspace(1e-4, 2900.0, 2000)
        ds = [hg.compute_d(e) for e in grid]
        assert all(d > 0 for d in ds)
        assert all(b < a for a, b in zip(ds, ds[1:]))

    def test_log_d_decreasing_on_full_range(self):
        grid = np.geomspace(1e-4, 1e4, 3000)
        vals = [hg.log_d(e) for e in grid]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf, 1e4 * 1.0001, "x"])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            hg.compute_d(bad)
        with pytest.raises(DomainError):
            hg.compute_tau(bad)


class TestCollar:
    def test_half_width_forced(self):
        assert hg.collar_half_width(SILVER) == pytest.approx(math.log(1 + math.sqrt(2)), rel=1e-15)

    def test_half_width_regression(self):
        assert hg.collar_half_width(10.0) == pytest.approx(W_AT_10, rel=1e-14)

    def test_half_width_diverges(self):
        assert hg.collar_half_width(1e-8) > 19

    def test_half_width_decreasing(self):
        ws = [hg.collar_half_width(x) for x in np.geomspace(1e-3, 1000, 500)]
        assert all(b < a for a, b in zip(ws, ws[1:]))

    def test_area_forced(self):
        assert hg.collar_area(SILVER) == pytest.approx(2 * SILVER, rel=1e-15)
        assert hg.collar_area(SILVER) == pytest.approx(3.52549, abs=1e-5)

    def test_area_limit(self):
        assert hg.collar_area(1e-6) == pytest.approx(4.0, rel=1e-10)

    def test_area_below_four(self):
        for ell in np.linspace(0.1, 100.0, 1000):
            assert hg.collar_area(ell) < 4

    @pytest.mark.parametrize("ell", [0.1, 1.0, SILVER, 5.0, 10.0])
    def test_area_quadrature(self, ell):
        q = hg.collar_area_quadrature(ell, 1e-10)
        assert abs(q - hg.collar_area(ell)) <= 1e-10 * hg.collar_area(ell)

    def test_quadrature_bad_tol(self):
        with pytest.raises(DomainError):
            hg.collar_area_quadrature(1.0, 0.0)


class TestCollarEnergy:
    def test_constant_boundary_gives_zero(self):
        p = hg.CollarProfile(1.3, 0.7, 7.0, 7.0)
        assert hg.collar_energy_min(p) == 0.0
        assert hg.collar_energy_bruteforce(p, 64) == 0.0

    def test_closed_form_value(self):
        assert hg.collar_energy_min(hg.CollarProfile(1.0, 1.0, 0.0, 1.0)) == pytest.approx(EMIN_L1_W1, rel=1e-15)

    def test_quadratic_in_jump(self):
        one = hg.collar_energy_min(hg.CollarProfile(2.0, 0.5, 0.0, 1.0))
        two = hg.collar_energy_min(hg.CollarProfile(2.0, 0.5, 0.0, 2.0))
        assert two == pytest.approx(4 * one, rel=1e-15)

    def test_closed_form_against_quadrature_of_profile_energy(self):
        # energy of the harmonic profile: int l cosh(rho) f'(rho)^2 drho, by mpmath quadrature
        p = hg.CollarProfile(1.7, 0.9, -0.5, 2.0)
        mp.mp.dps = 30
        a_ = mp.atan(mp.tanh(mp.mpf(p.half_width) / 2))
        slope = (p.b - p.a) / (2 * a_)
        fprime = lambda r: slope * 0.5 / mp.cosh(r)  # noqa: E731
        e = mp.quad(lambda r: p.length * mp.cosh(r) * fprime(r) ** 2, [-p.half_width, p.half_width])
        assert hg.collar_energy_min(p) == pytest.approx(float(e), rel=1e-13)

    def test_bruteforce_matches_closed_form(self):
        p = hg.CollarProfile(1.0, 1.0, 0.0, 1.0)
        got = hg.collar_energy_bruteforce(p, 4096)
        assert abs(got / hg.collar_energy_min(p) - 1) <= 1e-5

    def test_bruteforce_second_order(self):
        p = hg.CollarProfile(1.0, 1.0, 0.0, 1.0)
        exact = hg.collar_energy_min(p)
        errs = [abs(hg.collar_energy_bruteforce(p, n) - exact) for n in (256, 512, 1024, 2048)]
        for e1, e2 in zip(errs, errs[1:]):
            assert e1 / e2 == pytest.approx(4.0, rel=0.05)

    def test_bruteforce_is_a_minimum_over_grid_functions(self):
        p = hg.CollarProfile(0.8, 1.2, 0.0, 1.0)
        n = 64
        best = hg.collar_energy_bruteforce(p, n)
        rng = np.random.default_rng(3)
        nodes = np.linspace(-p.half_width, p.half_width, n + 1)
        base = hg.harmonic_profile(p, nodes)
        for _ in range(20):
            pert = base + 1e-3 * rng.standard_normal(n + 1)
            pert[0], pert[-1] = p.a, p.b
            assert hg.discrete_collar_energy(p, pert) >= best

    def test_harmonic_profile_is_discrete_near_minimizer(self):
        p = hg.CollarProfile(1.0, 1.0, 0.0, 1.0)
        exact = hg.collar_energy_min(p)
        gaps = []
        for n in (128, 256, 512):
            nodes = np.linspace(-1.0, 1.0, n + 1)
            gaps.append(abs(hg.discrete_collar_energy(p, hg.harmonic_profile(p, nodes)) - exact))
        assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.1)
        assert gaps[1] / gaps[2] == pytest.approx(4.0, rel=0.1)

    def test_bruteforce_rejects_small_grid(self):
        with pytest.raises(DomainError):
            hg.collar_energy_bruteforce(hg.CollarProfile(1.0, 1.0), 8)

    @pytest.mark.parametrize("field", ["length", "half_width"])
    def test_profile_validation(self, field):
        kwargs = dict(length=1.0, half_width=1.0)
        kwargs[field] = -1.0
        with pytest.raises(DomainError):
            hg.CollarProfile(**kwargs)


class TestHarmonicProfile:
    p = hg.CollarProfile(1.0, 1.3, 2.0, 5.0)

    def test_center_and_ends(self):
        assert hg.harmonic_profile(self.p, 0.0) == 3.5
        assert hg.harmonic_profile(self.p, -1.3) == pytest.approx(2.0, abs=1e-15)
        assert hg.harmonic_profile(self.p, 1.3) == pytest.approx(5.0, abs=1e-15)

    @given(st.floats(min_value=-1.3, max_value=1.3))
    def test_odd_symmetry_and_monotone(self, rho):
        f = hg.harmonic_profile(self.p, rho)
        assert f + hg.harmonic_profile(self.p, -rho) == pytest.approx(7.0, abs=1e-12)
        assert 2.0 - 1e-12 <= f <= 5.0 + 1e-12

    def test_monotone_array(self):
        vals = hg.harmonic_profile(self.p, np.linspace(-1.3, 1.3, 101))
        assert np.all(np.diff(vals) > 0)

    def test_solves_euler_lagrange(self):
        # cosh(rho) f'(rho) is constant for the minimizer
        rho = np.linspace(-1.2, 1.2, 25)
        h = 1e-5
        fp = (hg.harmonic_profile(self.p, rho + h) - hg.harmonic_profile(self.p, rho - h)) / (2 * h)
        flux = np.cosh(rho) * fp
        assert np.ptp(flux) < 1e-8

    def test_outside_collar(self):
        with pytest.raises(DomainError):
            hg.harmonic_profile(self.p, 1.31)


class TestDisk:
    def test_unit_radius(self):
        area, perim = hg.disk_isoperimetric(1.0)
        assert area == pytest.approx(2 * math.pi * (math.cosh(1) - 1), rel=1e-14)
        assert perim == pytest.approx(2 * math.pi * math.sinh(1), rel=1e-14)
        assert area < perim

    def test_ratio_limits(self):
        a, p = hg.disk_isoperimetric(1e-6)
        assert a / p < 1e-6
        a, p = hg.disk_isoperimetric(10.0)
        assert a / p == pytest.approx(0.99990920426259513121, rel=1e-13)
        assert a < p

    @given(st.floats(min_value=1e-6, max_value=700))
    def test_area_below_perimeter(self, r):
        a, p = hg.disk_isoperimetric(r)
        assert a <= p


def test_tridiagonal_solver_against_dense():
    rng = np.random.default_rng(0)
    n = 12
    lower = rng.uniform(-1, 0, n - 1)
    upper = rng.uniform(-1, 0, n - 1)
    diag = 3 + rng.uniform(0, 1, n)
    rhs = rng.standard_normal(n)
    dense = np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)
    assert np.allclose(hg.solve_tridiagonal(lower, diag, upper, rhs), np.linalg.solve(dense, rhs))
