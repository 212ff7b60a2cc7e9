import numpy as np
import pytest

from kzchain import kz_length, lz_spectrum
from kzchain.bdg import ModeSpectrum, uniform_kgrid
from kzchain.pairwave import (
    equilibrium_xi,
    pair_amplitude,
    pair_wavefunction,
    ramp_pair_wave,
    sudden_pair_wave,
    sudden_quench_spectrum,
)


class TestAmplitude:
    def test_unit_magnitude_at_half_filling(self):
        spec = lz_spectrum(16.0)
        k_half = np.sqrt(np.log(2.0) / (2 * np.pi * 16.0))
        assert abs(pair_amplitude(spec, k_half)) == pytest.approx(1.0, rel=1e-10)

    def test_sudden_from_infinity_is_cotangent(self):
        spec = sudden_quench_spectrum(np.inf)
        for k in (0.3, 1.1, 2.5):
            assert pair_amplitude(spec, k) == pytest.approx(1 / np.tan(k / 2), rel=1e-12)

    def test_small_k_divergence_coefficient(self):
        tau_q = 16.0
        spec = lz_spectrum(tau_q)
        for k in (1e-3, 5e-4):
            val = k * abs(pair_amplitude(spec, k))
            assert val == pytest.approx(1 / np.sqrt(2 * np.pi * tau_q), rel=1e-4)

    def test_pole_rejected(self):
        k = uniform_kgrid(64)
        spec = ModeSpectrum(tau_q=16.0, k=k, p=np.ones_like(k), phi=np.zeros_like(k))
        with pytest.raises(ValueError):
            pair_amplitude(spec, k[3])


class TestPositionRepresentation:
    def test_sudden_infinity_plateau(self):
        spec = sudden_quench_spectrum(np.inf)
        for n in (1, 2, 5, 40, -7):
            z = pair_wavefunction(spec, n)
            assert z == pytest.approx(-2.0 * np.sign(n), abs=1e-8)

    def test_antisymmetric(self):
        spec = lz_spectrum(16.0)
        z = pair_wavefunction(spec, [7, -7])
        assert z[0] == pytest.approx(-z[1], abs=1e-12)

    def test_zero_offset_rejected(self):
        spec = lz_spectrum(16.0)
        with pytest.raises(ValueError):
            pair_wavefunction(spec, 0)

    def test_gridded_spectrum_rejected(self):
        k = uniform_kgrid(64)
        spec = ModeSpectrum(tau_q=16.0, k=k, p=0.5 * np.ones_like(k),
                            phi=np.zeros_like(k))
        with pytest.raises(ValueError):
            pair_wavefunction(spec, 3)

    def test_ramp_plateau_value_and_phase(self):
        tau_q = 16.0
        spec = lz_spectrum(tau_q)
        xi = kz_length(tau_q)
        scale = 2 * np.sqrt(np.pi) / xi
        for n in (int(5 * xi), int(7 * xi)):
            z = pair_wavefunction(spec, n)
            assert abs(z) / scale == pytest.approx(1.0, abs=0.02)
            # plateau phase locks to the zero-mode dynamical phase
            phi0 = spec.phi_at(0.0)
            expected = -np.exp(-1j * phi0) * scale
            assert z == pytest.approx(expected, rel=0.02)


class TestSuddenQuenches:
    def test_paramagnetic_plateau_nonzero(self):
        wave = sudden_pair_wave(1.1, np.array([40, 50, 60]))
        plateau = np.abs(wave.z)
        assert plateau.min() > 0.1
        assert plateau.max() / plateau.min() < 1.02

    def test_plateau_scales_with_correlation_length(self):
        values = {}
        for eps in (0.05, 0.1):
            xi_eq = equilibrium_xi(1 + eps)
            n = int(round(5 * xi_eq))
            wave = sudden_pair_wave(1 + eps, [n])
            values[eps] = abs(wave.z[0]) * xi_eq
        assert values[0.05] == pytest.approx(values[0.1], rel=0.05)

    def test_ferromagnetic_pairs_stay_bound(self):
        for eps in (-0.05, -0.1):
            xi_eq = equilibrium_xi(1 + eps)
            ns = np.unique(np.concatenate([np.arange(1, 6),
                                           [int(10 * xi_eq)]]))
            wave = sudden_pair_wave(1 + eps, ns)
            mags = np.abs(wave.z)
            assert mags[-1] < 0.01 * mags.max()

    def test_ultraviolet_peak_at_first_site(self):
        # near-critical quenches develop an n = 1 peak from large-k modes
        for eps in (0.05, -0.05):
            wave = sudden_pair_wave(1 + eps, np.arange(1, 8))
            mags = np.abs(wave.z)
            assert np.argmax(mags) == 0

    def test_rejects_nonpositive_field(self):
        with pytest.raises(ValueError):
            sudden_quench_spectrum(0.0)


def test_pair_wave_csv(tmp_path):
    wave = sudden_pair_wave(1.1, np.arange(1, 5))
    path = tmp_path / "wave.csv"
    wave.to_csv(path)
    header = [l for l in path.read_text().splitlines() if not l.startswith("#")][0]
    assert header.split(",")[:4] == ["n", "re_Z_n", "im_Z_n", "abs_Z_n"]
    assert "n_over_xi_eq" in header

def test_ramp_pair_wave_csv(tmp_path):
    wave = ramp_pair_wave(lz_spectrum(16.0), np.arange(1, 4))
    path = tmp_path / "ramp_wave.csv"
    wave.to_csv(path)
    header = [l for l in path.read_text().splitlines() if not l.startswith("#")][0]
    assert "n_over_xi" in header
    assert "abs_Z_scaled" in header
