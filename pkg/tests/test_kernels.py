import math
import os
import subprocess
import sys

import numpy as np
import pytest

from cavsim import kernels
from cavsim.dynamics import evolve_resonant_closed
from cavsim.states import AtomState, coherent_coefficients

FIELD = coherent_coefficients(math.sqrt(6.0), 60)
T = np.linspace(0.0, 25.0, 101)
SMALL = coherent_coefficients(0.8, 12, tol=1.0).coefficients

CASES = {
    "inversion_series": (FIELD.weights, T),
    "dispersive_coherence": (FIELD.weights, T),
    "resonant_atom_reduced": (0.6 + 0j, 0.8j, np.ascontiguousarray(FIELD.coefficients), T),
    "two_cavity_amplitudes": (0.6 + 0j, 0.8j, np.ascontiguousarray(SMALL), np.ascontiguousarray(SMALL[:5]), 0.9, 0.4),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_jit_and_numpy_kernels_agree(name):
    args = CASES[name]
    ref = kernels.IMPLEMENTATIONS["numpy"][name](*args)
    got = kernels.IMPLEMENTATIONS["jit"][name](*args)
    assert np.shape(ref) == np.shape(got)
    np.testing.assert_allclose(got, ref, atol=1e-13, rtol=0)


def test_reduced_atom_matches_state_vector():
    atom = AtomState(0.8j, 0.6)
    rho = kernels.resonant_atom_reduced(atom.c_e, atom.c_g, FIELD.coefficients, [3.0])[0]
    psi = evolve_resonant_closed(atom, FIELD, 3.0).reshape(2, -1)
    np.testing.assert_allclose(rho, psi @ psi.conj().T, atol=1e-14)


def test_two_cavity_output_shape():
    out = kernels.two_cavity_amplitudes(1.0, 0.0, [1.0], [1.0], 0.3, 0.3)
    assert out.shape == (2, 2)


def test_scalar_time_accepted():
    assert kernels.inversion_series(FIELD.weights, 0.0).shape == (1,)


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("", "True")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, CAVSIM_DISABLE_JIT=flag)
    code = "from cavsim._jit import USE_JIT, HAVE_NUMBA; print(USE_JIT if HAVE_NUMBA else True)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
