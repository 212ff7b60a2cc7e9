import warnings

import numpy as np
import pytest

from kzchain import CorrelatorTable, lz_spectrum


@pytest.fixture(scope="session")
def table16():
    return CorrelatorTable.from_spectrum(lz_spectrum(16.0))


@pytest.fixture(scope="session")
def table4():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = lz_spectrum(4.0)
    return CorrelatorTable.from_spectrum(spec)


@pytest.fixture(scope="session")
def geometric_table():
    """Uncorrelated kinks: N_R = rho * delta_{R0}, Delta = 0."""
    n = np.zeros(24)
    n[0] = 0.3
    return CorrelatorTable(tau_q=16.0, n=n, delta=np.zeros(24, dtype=complex),
                           method="quadrature")
