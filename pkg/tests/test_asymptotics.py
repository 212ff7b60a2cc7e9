import numpy as np
import pytest

from kzchain import compute_beta, efp, domain_distribution, kz_length, refit_interpolation
from kzchain.asymptotics import (
    ALPHA_D,
    A_INTERP,
    B_INTERP,
    BETA_PAPER,
    AlphaLawFit,
    alpha_law,
    coherent_small,
    coherent_tail,
    efp_dephased_small,
    efp_dephased_tail,
    fit_alpha_law,
    fit_decay_rate,
    pl_dephased_small,
    pl_dephased_tail,
    pl_interpolation,
    refit_alpha_d,
)
from kzchain.correlators import C_CONST, dephasing_length
from kzchain.errors import FitError


class TestBeta:
    def test_value(self):
        assert compute_beta(64.0) == pytest.approx(BETA_PAPER, abs=5e-4)

    def test_quench_time_independent(self):
        assert abs(compute_beta(16.0) - compute_beta(256.0)) < 1e-3

    def test_grid_refinement_stable(self):
        assert abs(compute_beta(64.0, n_nodes=24) - compute_beta(64.0, n_nodes=96)) < 1e-5

    def test_variational_variant_shifts_by_two_percent(self):
        b = compute_beta(64.0)
        bv = compute_beta(64.0, use_variational=True)
        assert 0.01 < (bv - b) / b < 0.03

    def test_rejects_fast_quench(self):
        with pytest.raises(ValueError):
            compute_beta(2.0)


class TestDephasedForms:
    def test_tail_ratio_is_beta_squared(self):
        xi = kz_length(16.0)
        ell = np.array([40, 70, 100])
        ratio = pl_dephased_tail(xi, ell) / efp_dephased_tail(xi, ell)
        np.testing.assert_allclose(ratio, BETA_PAPER**2, rtol=1e-12)

    def test_small_l_limits(self):
        xi = kz_length(16.0)
        assert efp_dephased_small(xi, 0.0) == 1.0
        assert pl_dephased_small(xi, 0.1 * xi) == pytest.approx(2 * np.pi * 0.01)

    def test_small_l_matches_exact(self, table4):
        # dephased P_L follows 2 pi r^2 within 10% up to r ~ 0.15
        import warnings

        from kzchain import lz_spectrum
        from kzchain.correlators import CorrelatorTable

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            table = CorrelatorTable.from_spectrum(lz_spectrum(64.0))
        xi = kz_length(64.0)
        td = table.dephased()
        ls = np.arange(1, int(0.15 * xi) + 1)
        p = domain_distribution(td, l_values=ls)
        model = pl_dephased_small(xi, ls)
        np.testing.assert_allclose(xi * p.values, model, rtol=0.10)

    def test_exact_prefactor_drifts_towards_alpha_d(self, table16):
        # the windowed prefactor estimate exceeds 2.00 and decreases with L
        # (the tail carries a ~1/L correction in the exponent)
        xi = kz_length(16.0)
        td = table16.dephased()
        near = refit_alpha_d(
            np.array([2.0, 2.5]),
            efp(td, l_values=(np.array([2.0, 2.5]) * xi).astype(int),
                method="dephased-det").log_abs,
            beta=compute_beta(16.0),
        )
        far = refit_alpha_d(
            np.array([3.5, 4.0]),
            efp(td, l_values=(np.array([3.5, 4.0]) * xi).astype(int),
                method="dephased-det").log_abs,
            beta=compute_beta(16.0),
        )
        assert near > far > ALPHA_D
        assert far < 1.2 * ALPHA_D * 1.25  # within the slow-drift envelope


class TestInterpolation:
    def test_refit_reproduces_published_constants(self):
        a, b = refit_interpolation(beta=compute_beta(16.0))
        assert a == pytest.approx(A_INTERP, abs=1e-3)
        assert b == pytest.approx(B_INTERP, abs=1e-3)

    def test_limits(self):
        xi = kz_length(16.0)
        r = 12.0
        tail = pl_dephased_tail(xi, r * xi)
        interp = pl_interpolation(xi, r * xi)
        assert interp == pytest.approx(tail, rel=0.12)
        small = pl_interpolation(xi, 0.001 * xi)
        assert small == pytest.approx(pl_dephased_small(xi, 0.001 * xi), rel=0.01)

    def test_uniform_agreement_with_exact(self, table16):
        xi = kz_length(16.0)
        td = table16.dephased()
        ls = np.arange(int(np.ceil(0.2 * xi)), int(2 * xi) + 1)
        exact = xi * domain_distribution(td, l_values=ls).values
        beta = compute_beta(16.0)
        a, b = refit_interpolation(beta=beta)
        model = pl_interpolation(xi, ls, a=a, b=b, beta=beta)
        assert np.max(np.abs(model - exact)) / exact.max() < 0.05

    def test_refit_failure_raises(self):
        with pytest.raises(FitError):
            refit_interpolation(beta=50.0, guess=(1e6, -1e6))


class TestCoherent:
    def test_tail_rate_is_half(self):
        xi = kz_length(16.0)
        ell = dephasing_length(16.0)
        e1, p1 = coherent_tail(xi, ell, 2.0 * xi)
        e2, p2 = coherent_tail(xi, ell, 2.0 * xi + xi)
        assert np.log(e1 / e2) == pytest.approx(BETA_PAPER / 2, rel=1e-12)
        assert p1 / e1 == pytest.approx(BETA_PAPER**2 / 4, rel=1e-12)

    def test_alpha_law_at_unit_ratio(self):
        assert np.log(alpha_law(1.0)) == pytest.approx(0.12, abs=1e-12)

    def test_small_l_recovers_dephased(self):
        xi = kz_length(16.0)
        ls = np.array([2.0, 5.0])
        e_inf, p_inf = coherent_small(xi, 1e12 * xi, ls)
        np.testing.assert_allclose(e_inf, efp_dephased_small(xi, ls), rtol=1e-10)
        np.testing.assert_allclose(p_inf, pl_dephased_small(xi, ls), rtol=1e-10)

    def test_small_l_coefficient_at_equal_lengths(self):
        xi = kz_length(16.0)
        _, p = coherent_small(xi, xi, np.array([1.0]))
        coeff = p[0] / (1.0 / xi) ** 2
        assert coeff == pytest.approx(2 * np.pi + C_CONST**2, rel=1e-10)
        assert coeff == pytest.approx(15.852, abs=5e-3)

    def test_coherent_small_matches_exact(self, table16):
        # r = 0.1 check at tau_q = 64 runs in the acceptance suite; here a
        # cheaper spot check at tau_q = 16
        xi = kz_length(16.0)
        ell = dephasing_length(16.0)
        l_probe = int(round(0.1 * xi))
        exact = xi * domain_distribution(table16, l_values=[l_probe]).values[0]
        _, model = coherent_small(xi, ell, np.array([l_probe]))
        assert exact == pytest.approx(model[0], rel=0.15)


class TestRateFits:
    def test_fit_decay_rate_on_synthetic(self):
        r = np.linspace(2, 4, 9)
        log_e = np.log(1.7) + np.log(r) - 2.61 * r
        rate, intercept = fit_decay_rate(r, log_e, algebraic_power=1)
        assert rate == pytest.approx(2.61, rel=1e-12)
        assert np.exp(intercept) == pytest.approx(1.7, rel=1e-12)

    def test_fit_needs_points(self):
        with pytest.raises(FitError):
            fit_decay_rate([1.0, 2.0], [0.0, -1.0])

    def test_alpha_law_fit_synthetic(self):
        rng = np.random.default_rng(5)
        points = []
        for l_over_xi in (1.0, 2.0, 3.5, 5.0):
            r = np.linspace(2, 4, 7)
            log_det = (-0.25 * l_over_xi + 0.37) - BETA_PAPER * r
            points.append((l_over_xi, r, log_det + 1e-12 * rng.standard_normal(7)))
        fit = fit_alpha_law(points)
        assert isinstance(fit, AlphaLawFit)
        assert fit.beta0 == pytest.approx(0.25, abs=1e-9)
        assert fit.intercept == pytest.approx(0.37, abs=1e-9)
        assert fit.residual_spread < 1e-9

    def test_alpha_law_fit_needs_three_ramps(self):
        with pytest.raises(FitError):
            fit_alpha_law([(1.0, [2.0], [0.0]), (2.0, [2.0], [0.0])])


class TestCrossover:
    def test_waiting_ramp_approaches_dephased_distribution(self):
        # strong extra dephasing pushes E_L towards the determinant limit
        # for L below ~0.1 l, while the far tail keeps the halved rate
        import warnings

        from kzchain import lz_spectrum, RampSpec
        from kzchain.correlators import CorrelatorTable

        tau_q = 16.0
        xi = kz_length(tau_q)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            spec_w = lz_spectrum(tau_q, ramp=RampSpec(kind="waiting", tau_q=tau_q,
                                                      g_w=0.5, w=10.0))
        tw = CorrelatorTable.from_spectrum(spec_w)
        td = tw.dephased()
        ell_w = dephasing_length(tau_q, tw.shift[1])
        probe = np.arange(1, int(0.1 * ell_w) + 1)
        e_w = efp(tw, l_values=probe).values
        e_d = efp(td, l_values=probe, method="dephased-det").values
        np.testing.assert_allclose(e_w, e_d, rtol=0.01)

        far = np.unique(np.linspace(2.5 * xi, 4 * xi, 6).astype(int))
        rate_w, _ = fit_decay_rate(far / xi, efp(tw, l_values=far).log_abs)
        rate_d, _ = fit_decay_rate(far / xi,
                                   efp(td, l_values=far, method="dephased-det").log_abs,
                                   algebraic_power=1)
        assert rate_w == pytest.approx(BETA_PAPER / 2, rel=0.05)
        assert rate_d == pytest.approx(BETA_PAPER, rel=0.05)
