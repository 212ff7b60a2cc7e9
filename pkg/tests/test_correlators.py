import warnings

import numpy as np
import pytest

from kzchain import (
    CorrelatorTable,
    anomalous_closed_form,
    anomalous_correlator,
    dephasing_length,
    kink_density,
    kz_length,
    lz_spectrum,
    normal_correlator,
    variational_band,
    C_CONST,
)
from kzchain.bdg import ModeSpectrum, momentum_grid, uniform_kgrid
from kzchain.correlators import KzScales, connected_two_kink_closed_form


def flat_spectrum(p_value, n_points=512):
    k = uniform_kgrid(n_points)
    return ModeSpectrum(tau_q=16.0, k=k, p=np.full(n_points, p_value),
                        phi=np.zeros(n_points))


class TestScales:
    def test_kz_length_values(self):
        assert kz_length(0.5) == pytest.approx(2 * np.pi)
        assert kz_length(2.0) == pytest.approx(4 * np.pi)

    def test_density_inverse_length(self, table16):
        assert table16.rho * kz_length(16.0) == pytest.approx(1.0, abs=5e-3)

    def test_scales_object(self):
        s = KzScales.for_quench(16.0)
        assert s.l >= s.xi_hat
        assert s.c_const == pytest.approx(3.0934, abs=5e-5)
        assert s.l == pytest.approx(kz_length(16.0) * np.sqrt(
            1 + (3 * np.log(16.0) / (4 * np.pi)) ** 2))


class TestKinkDensity:
    def test_matches_closed_form(self):
        rho = kink_density(lz_spectrum(16.0))
        assert rho == pytest.approx(1.0 / (2 * np.pi * np.sqrt(32.0)), rel=5e-3)

    def test_empty_band(self):
        assert kink_density(flat_spectrum(0.0)) == 0.0

    def test_full_band(self):
        assert kink_density(flat_spectrum(1.0)) == pytest.approx(1.0)

    def test_finite_grid_converges_as_inverse_n(self):
        tau_q = 4.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            dense = kink_density(lz_spectrum(tau_q, n_points=1 << 14))
            errs = []
            for n in (32, 64, 128):
                k = momentum_grid(n)
                spec = lz_spectrum(tau_q, k=k[k > 0])
                errs.append(abs(kink_density(spec) - dense))
        assert errs[1] <= errs[0] / 2 + 1e-15
        assert all(e <= 1.0 / n for e, n in zip(errs, (32, 64, 128)))


class TestNormalCorrelator:
    def test_zero_separation_is_density(self, table16):
        assert table16.normal(0) == pytest.approx(kink_density(lz_spectrum(16.0)))

    def test_gaussian_value_at_xi(self):
        spec = lz_spectrum(16.0)
        xi = kz_length(16.0)
        r = int(round(xi))
        val = normal_correlator(spec, r)
        assert val == pytest.approx(np.exp(-np.pi * (r / xi) ** 2) / xi, rel=1e-3)

    def test_even_in_separation(self, table16):
        for r in (1, 5, 17):
            assert table16.normal(-r) == table16.normal(r)


class TestAnomalousCorrelator:
    def test_vanishes_at_zero_separation(self, table16):
        assert table16.anomalous(0) == 0
        assert table16.delta[0] == 0

    def test_odd_in_separation(self, table16):
        for r in (1, 5, 17):
            assert table16.anomalous(-r) == -table16.anomalous(r)

    def test_peak_matches_closed_form(self):
        tau_q = 16.0
        spec = lz_spectrum(tau_q)
        r_peak = int(round(dephasing_length(tau_q) / np.sqrt(3 * np.pi)))
        quad = anomalous_correlator(spec, r_peak)
        closed = anomalous_closed_form(tau_q, r_peak)
        assert abs(quad) == pytest.approx(abs(closed), rel=0.10)

    def test_gauge_shift_rotates_phase(self):
        spec = lz_spectrum(16.0)
        theta = 0.83
        shifted = spec.with_phase_offset(theta)
        a = anomalous_correlator(spec, 9)
        b = anomalous_correlator(shifted, 9)
        assert b == pytest.approx(a * np.exp(-1j * theta), abs=1e-12)
        assert abs(b) == pytest.approx(abs(a), abs=1e-12)

    def test_closed_form_tracks_quadrature_where_it_matters(self):
        # the closed form is a bulk approximation: it holds through the
        # peak and fails only in the far tail where |Delta| has decayed
        for tau_q in (16.0, 64.0):
            spec = lz_spectrum(tau_q)
            r = np.arange(1, int(1.1 * kz_length(tau_q)))
            quad = np.abs(anomalous_correlator(spec, r))
            closed = np.abs(anomalous_closed_form(tau_q, r))
            mask = quad >= 0.05 * quad.max()
            rel = np.abs(closed[mask] / quad[mask] - 1)
            assert rel.max() < 0.10, f"tau_q={tau_q}"


class TestClosedForm:
    def test_prefactor_constant(self):
        assert C_CONST == pytest.approx(3.0934, abs=5e-5)
        assert C_CONST == pytest.approx(57 * np.sqrt(6 * np.pi) / 80, rel=1e-15)

    def test_range_formula(self):
        tau_q = 16.0
        expected = kz_length(tau_q) * np.sqrt(1 + (3 * np.log(tau_q) / (4 * np.pi)) ** 2)
        assert dephasing_length(tau_q) == pytest.approx(expected, rel=1e-14)

    def test_suppressed_by_dephasing(self):
        vals = [abs(anomalous_closed_form(16.0, 12, shift=(0.0, b))) for b in
                (0.0, 2.0, 8.0, 40.0, 400.0)]
        assert all(x > y for x, y in zip(vals, vals[1:]))
        assert vals[-1] < 1e-6 * vals[0]

    def test_waiting_offset_enters_phase(self):
        base = anomalous_closed_form(16.0, 5, shift=(0.0, 0.0))
        shifted = anomalous_closed_form(16.0, 5, shift=(1.0, 0.0))
        # A-coefficient adds a pure phase A*tau_q
        assert abs(shifted) == pytest.approx(abs(base), rel=1e-12)
        assert shifted / base == pytest.approx(np.exp(-1j * 16.0), abs=1e-12)


class TestVariationalBand:
    def test_vanishes_at_zero(self):
        assert variational_band(16.0, 0.0) == 0.0

    def test_exact_band_maximum_is_half(self):
        k = np.linspace(1e-4, np.pi, 20001)
        p = np.exp(-2 * np.pi * 16.0 * k * k)
        band = np.sqrt(p * (1 - p))
        assert band.max() == pytest.approx(0.5, abs=1e-5)

    def test_l2_mismatch_small(self):
        tau_q = 16.0
        k = np.linspace(1e-5, np.pi, 200001)
        p = np.exp(-2 * np.pi * tau_q * k * k)
        exact = np.sqrt(p * (1 - p))
        approx = variational_band(tau_q, k)
        mismatch = np.linalg.norm(approx - exact) / np.linalg.norm(exact)
        assert mismatch < 0.05


class TestTable:
    def test_physicality(self, table16):
        table16.check_physical()
        assert np.all(np.abs(table16.delta) ** 2 <= table16.rho**2 + 1e-8)

    def test_normal_converges_with_grid(self):
        tau_q = 4.0
        r = 3
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            dense = normal_correlator(lz_spectrum(tau_q, n_points=1 << 14), r)
            errs = []
            for n in (32, 64, 128):
                k = momentum_grid(n)
                errs.append(abs(normal_correlator(lz_spectrum(tau_q, k=k[k > 0]), r) - dense))
        assert all(e <= 1.0 / n for e, n in zip(errs, (32, 64, 128)))

    def test_out_of_range_lookup_raises(self, table16):
        with pytest.raises(IndexError):
            table16.normal(table16.r_max + 1)

    def test_csv_export(self, tmp_path, table16):
        path = tmp_path / "table.csv"
        table16.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# tau_q")
        assert "R,N_R,re_Delta_R,im_Delta_R,abs_Delta_R" in lines

    def test_closed_form_table(self):
        t = CorrelatorTable.closed_form(16.0, r_max=20)
        assert t.method == "closed-form"
        assert t.delta[0] == 0
        assert t.n[0] == pytest.approx(1 / kz_length(16.0))


def test_connected_closed_form_limits():
    tau_q = 16.0
    xi = kz_length(tau_q)
    # full dephasing removes the coherence bump
    r = np.arange(1, 30)
    vals = connected_two_kink_closed_form(tau_q, r, shift=(0.0, 1e9))
    np.testing.assert_allclose(vals, -np.exp(-2 * np.pi * (r / xi) ** 2), atol=1e-12)
