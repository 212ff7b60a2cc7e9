"""Kibble-Zurek quench observables for the transverse-field Ising chain.

Library layout:

* :mod:`kzchain.ramps` - transverse-field schedules;
* :mod:`kzchain.bdg` - momentum modes, exact evolution, analytic spectra;
* :mod:`kzchain.correlators` - quadratic kink correlators N_R, Delta_R;
* :mod:`kzchain.skewlinalg` - Pfaffians, Wick-matrix assembly;
* :mod:`kzchain.observables` - kink correlators, P_L, E_L;
* :mod:`kzchain.asymptotics` - tail laws, interpolation, prefactor fits;
* :mod:`kzchain.pairwave` - kink pair wave function;
* :mod:`kzchain.oracle` - spin-basis and finite-chain cross-checks;
* :mod:`kzchain.cli` - figure data, sweeps, verification.
"""

from .ramps import RampSpec, ramp_value
from .bdg import (
    ModeState,
    ModeSpectrum,
    momentum_grid,
    dispersion,
    stationary_modes,
    evolve_mode,
    extract_excitation,
    dephasing_shift,
    lz_spectrum,
    ode_spectrum,
    uniform_kgrid,
)
from .correlators import (
    CorrelatorTable,
    KzScales,
    kz_length,
    dephasing_length,
    kink_density,
    normal_correlator,
    anomalous_correlator,
    anomalous_closed_form,
    normal_closed_form,
    variational_band,
    connected_two_kink_closed_form,
    C_CONST,
)
from .skewlinalg import (
    SkewMatrix,
    LogComplex,
    pfaffian,
    pfaffian_log,
    assemble_mkink,
    assemble_domain,
    assemble_efp,
)
from .observables import (
    DistributionSeries,
    mkink_correlator,
    connected_two_kink,
    domain_distribution,
    efp,
    consistency_pl_efp,
    consistency_continuum,
    mean_domain_size,
    normalization,
)
from .asymptotics import AsymptoteSet, compute_beta, refit_interpolation, fit_alpha_law
from .pairwave import (
    PairWave,
    pair_amplitude,
    pair_wavefunction,
    sudden_quench_spectrum,
    ramp_pair_wave,
    sudden_pair_wave,
)
from .oracle import SpinChain, freefermion_finite_n, diff_oracle

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
