import math
import warnings

import numpy as np
import pytest

from cavsim.errors import TruncationWarning
from cavsim.states import (
    AtomState,
    ThermalParams,
    bell_state,
    coherent_coefficients,
    fock,
    mean_photon_from_temperature,
    thermal_atom,
    thermal_atom_populations,
    thermal_field,
    thermal_weights,
)


def test_atom_state_normalisation():
    assert AtomState.excited().vector.tolist() == [1, 0]
    assert AtomState.ground().vector.tolist() == [0, 1]
    np.testing.assert_allclose(np.abs(AtomState.equator(0.3).vector) ** 2, [0.5, 0.5])
    with pytest.raises(ValueError):
        AtomState(1.0, 1.0)


def test_fock_state():
    f = fock(2, 4)
    assert f.n_max == 4
    np.testing.assert_array_equal(f.weights, [0, 0, 1, 0, 0])
    with pytest.raises(ValueError):
        fock(5, 4)


def test_coherent_weights_are_poissonian():
    f = coherent_coefficients(math.sqrt(10.0), 100)
    n = np.arange(101)
    poisson = np.exp(-10.0 + n * math.log(10.0) - np.array([math.lgamma(k + 1) for k in n]))
    np.testing.assert_allclose(f.weights, poisson, rtol=1e-12, atol=1e-300)
    assert f.lost_mass < 1e-12
    assert np.sum(n * f.weights) == pytest.approx(10.0, abs=1e-10)


def test_coherent_truncation_warns():
    with pytest.warns(TruncationWarning):
        coherent_coefficients(math.sqrt(10.0), 10)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        coherent_coefficients(math.sqrt(10.0), 60)


def test_mean_photon_checkpoints():
    # 1/(exp(7.6382/T) - 1)
    assert mean_photon_from_temperature(ThermalParams(10.0)) == pytest.approx(0.8722501879, rel=1e-9)
    assert mean_photon_from_temperature(ThermalParams(1.0)) == pytest.approx(4.819268643e-4, rel=1e-9)
    assert mean_photon_from_temperature(ThermalParams(0.0)) == 0.0
    assert mean_photon_from_temperature(ThermalParams(1e-3)) == 0.0


def test_thermal_weights_geometric():
    w = thermal_weights(0.5, 3, renormalize=False)
    np.testing.assert_allclose(w, [2 / 3, 2 / 9, 2 / 27, 2 / 81])
    assert thermal_weights(0.5, 3).sum() == pytest.approx(1.0)
    np.testing.assert_array_equal(thermal_weights(0.0, 2), [1, 0, 0])


def test_thermal_field_padding_and_raw_weights():
    p = ThermalParams(5.0)
    rho = thermal_field(p, n_max=1, dim=3)
    assert rho.dims == (3,)
    assert rho.matrix[2, 2] == 0
    raw = thermal_field(p, n_max=1, renormalize=False)
    assert isinstance(raw, np.ndarray)
    assert np.trace(raw).real < 1.0
    with pytest.raises(ValueError):
        thermal_field(p, n_max=0)


def test_thermal_atom_is_logistic():
    p_e, p_g = thermal_atom_populations(ThermalParams(2.0))
    bw = 7.6382 / 2.0
    assert p_e == pytest.approx(1 / (math.exp(bw) + 1))
    assert p_e + p_g == pytest.approx(1.0)
    assert thermal_atom_populations(ThermalParams(0.0)) == (0.0, 1.0)
    np.testing.assert_allclose(np.diag(thermal_atom(ThermalParams(2.0)).matrix).real, [p_e, p_g])


def test_negative_temperature_rejected():
    with pytest.raises(ValueError):
        ThermalParams(-1.0)


def test_bell_states_orthonormal():
    kinds = ("psi+", "psi-", "phi+", "phi-")
    m = np.array([bell_state(k) for k in kinds])
    np.testing.assert_allclose(m @ m.conj().T, np.eye(4), atol=1e-15)
    padded = bell_state("psi-", dim=3)
    assert padded[1] == pytest.approx(1 / math.sqrt(2))
    assert padded[3] == pytest.approx(-1 / math.sqrt(2))
    with pytest.raises(ValueError):
        bell_state("chi")
