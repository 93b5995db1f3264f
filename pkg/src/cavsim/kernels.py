"""Hot numeric kernels.

Every kernel exists twice: an explicit-loop version compiled by numba and a
vectorised numpy version. The module-level names point at the loop versions
when numba is active (see :mod:`cavsim._jit`), otherwise at the numpy ones.
Both are always importable so tests and the benchmark can compare them.

All inputs are plain numpy arrays; time arguments are the dimensionless
products lambda*t or chi*t.
"""
import numpy as np

from ._jit import USE_JIT, jit

__all__ = [
    "inversion_series",
    "dispersive_coherence",
    "resonant_atom_reduced",
    "two_cavity_amplitudes",
    "IMPLEMENTATIONS",
    "USE_JIT",
]


# --------------------------------------------------------------------------
# loop versions (numba)
# --------------------------------------------------------------------------

@jit
def _inversion_series_loop(weights, lambda_t):
    n_t = lambda_t.shape[0]
    out = np.empty(n_t)
    for i in range(n_t):
        acc = 0.0
        for n in range(weights.shape[0]):
            acc += weights[n] * np.cos(2.0 * lambda_t[i] * np.sqrt(n + 1.0))
        out[i] = acc
    return out


@jit
def _dispersive_coherence_loop(weights, chi_t):
    n_t = chi_t.shape[0]
    out = np.empty(n_t, dtype=np.complex128)
    for i in range(n_t):
        re = 0.0
        im = 0.0
        for n in range(weights.shape[0]):
            arg = chi_t[i] * (1.0 - 2.0 * n)
            re += weights[n] * np.cos(arg)
            im += weights[n] * np.sin(arg)
        out[i] = re + 1j * im
    return out


@jit
def _resonant_atom_reduced_loop(c_e, c_g, coeffs, lambda_t):
    n_lev = coeffs.shape[0]
    n_t = lambda_t.shape[0]
    out = np.zeros((n_t, 2, 2), dtype=np.complex128)
    for i in range(n_t):
        lt = lambda_t[i]
        ee = 0.0
        gg = 0.0
        eg = 0.0 + 0.0j
        for n in range(n_lev):
            up = lt * np.sqrt(n + 1.0)
            dn = lt * np.sqrt(1.0 * n)
            c_next = coeffs[n + 1] if n + 1 < n_lev else 0.0j
            c_prev = coeffs[n - 1] if n >= 1 else 0.0j
            amp_e = c_e * coeffs[n] * np.cos(up) - 1j * c_g * c_next * np.sin(up)
            amp_g = -1j * c_e * c_prev * np.sin(dn) + c_g * coeffs[n] * np.cos(dn)
            ee += amp_e.real ** 2 + amp_e.imag ** 2
            gg += amp_g.real ** 2 + amp_g.imag ** 2
            eg += amp_e * np.conj(amp_g)
        out[i, 0, 0] = ee
        out[i, 1, 1] = gg
        out[i, 0, 1] = eg
        out[i, 1, 0] = np.conj(eg)
    return out


@jit
def _two_cavity_amplitudes_loop(c_e, c_g, coeffs_a, coeffs_b, lt_a, lt_b):
    na = coeffs_a.shape[0]
    nb = coeffs_b.shape[0]
    out = np.zeros((na + 1, nb + 1), dtype=np.complex128)
    for n in range(na + 1):
        ca_n = coeffs_a[n] if n < na else 0.0j
        ca_up = coeffs_a[n + 1] if n + 1 < na else 0.0j
        ca_dn = coeffs_a[n - 1] if 1 <= n <= na else 0.0j
        cos_a_up = np.cos(lt_a * np.sqrt(n + 1.0))
        sin_a_up = np.sin(lt_a * np.sqrt(n + 1.0))
        cos_a = np.cos(lt_a * np.sqrt(1.0 * n))
        sin_a = np.sin(lt_a * np.sqrt(1.0 * n))
        for m in range(nb + 1):
            cb_m = coeffs_b[m] if m < nb else 0.0j
            cb_dn = coeffs_b[m - 1] if 1 <= m <= nb else 0.0j
            cos_b = np.cos(lt_b * np.sqrt(1.0 * m))
            sin_b = np.sin(lt_b * np.sqrt(1.0 * m))
            out[n, m] = (
                c_g * ca_n * cb_m * cos_a * cos_b
                - c_g * ca_up * cb_dn * sin_a_up * sin_b
                - 1j * c_e * ca_n * cb_dn * cos_a_up * sin_b
                - 1j * c_e * ca_dn * cb_m * sin_a * cos_b
            )
    return out


# --------------------------------------------------------------------------
# numpy versions
# --------------------------------------------------------------------------

def _inversion_series_np(weights, lambda_t):
    root = np.sqrt(np.arange(1, weights.shape[0] + 1))
    return np.cos(2.0 * np.outer(lambda_t, root)) @ weights


def _dispersive_coherence_np(weights, chi_t):
    n = np.arange(weights.shape[0])
    return np.exp(1j * np.outer(chi_t, 1.0 - 2.0 * n)) @ weights


def _resonant_atom_reduced_np(c_e, c_g, coeffs, lambda_t):
    n_lev = coeffs.shape[0]
    n = np.arange(n_lev)
    c_next = np.append(coeffs[1:], 0.0)
    c_prev = np.concatenate(([0.0], coeffs[:-1]))
    up = np.outer(lambda_t, np.sqrt(n + 1.0))
    dn = np.outer(lambda_t, np.sqrt(n))
    amp_e = c_e * coeffs * np.cos(up) - 1j * c_g * c_next * np.sin(up)
    amp_g = -1j * c_e * c_prev * np.sin(dn) + c_g * coeffs * np.cos(dn)
    out = np.empty((lambda_t.shape[0], 2, 2), dtype=np.complex128)
    out[:, 0, 0] = np.sum(np.abs(amp_e) ** 2, axis=1)
    out[:, 1, 1] = np.sum(np.abs(amp_g) ** 2, axis=1)
    out[:, 0, 1] = np.sum(amp_e * np.conj(amp_g), axis=1)
    out[:, 1, 0] = np.conj(out[:, 0, 1])
    return out


def _two_cavity_amplitudes_np(c_e, c_g, coeffs_a, coeffs_b, lt_a, lt_b):
    na = coeffs_a.shape[0]
    nb = coeffs_b.shape[0]
    # pad so that index k of each array is C_k for k in [0, len]; C_{-1} = 0
    pa = np.concatenate((coeffs_a, [0.0, 0.0]))
    pb = np.concatenate((coeffs_b, [0.0]))
    n = np.arange(na + 1)
    m = np.arange(nb + 1)
    ca_n = pa[n]
    ca_up = pa[n + 1]
    ca_dn = np.where(n >= 1, pa[n - 1], 0.0)
    cb_m = pb[m]
    cb_dn = np.where(m >= 1, pb[m - 1], 0.0)
    cos_a_up = np.cos(lt_a * np.sqrt(n + 1.0))
    sin_a_up = np.sin(lt_a * np.sqrt(n + 1.0))
    cos_a = np.cos(lt_a * np.sqrt(n))
    sin_a = np.sin(lt_a * np.sqrt(n))
    cos_b = np.cos(lt_b * np.sqrt(m))
    sin_b = np.sin(lt_b * np.sqrt(m))
    return (
        c_g * np.outer(ca_n * cos_a, cb_m * cos_b)
        - c_g * np.outer(ca_up * sin_a_up, cb_dn * sin_b)
        - 1j * c_e * np.outer(ca_n * cos_a_up, cb_dn * sin_b)
        - 1j * c_e * np.outer(ca_dn * sin_a, cb_m * cos_b)
    )


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

IMPLEMENTATIONS = {
    "jit": {
        "inversion_series": _inversion_series_loop,
        "dispersive_coherence": _dispersive_coherence_loop,
        "resonant_atom_reduced": _resonant_atom_reduced_loop,
        "two_cavity_amplitudes": _two_cavity_amplitudes_loop,
    },
    "numpy": {
        "inversion_series": _inversion_series_np,
        "dispersive_coherence": _dispersive_coherence_np,
        "resonant_atom_reduced": _resonant_atom_reduced_np,
        "two_cavity_amplitudes": _two_cavity_amplitudes_np,
    },
}

_active = IMPLEMENTATIONS["jit" if USE_JIT else "numpy"]


def inversion_series(weights, lambda_t):
    """Sum_n w_n cos(2 lambda_t sqrt(n+1)) for every entry of ``lambda_t``."""
    return _active["inversion_series"](
        np.ascontiguousarray(weights, dtype=np.float64),
        np.ascontiguousarray(np.atleast_1d(lambda_t), dtype=np.float64),
    )


def dispersive_coherence(weights, chi_t):
    """Sum_n w_n exp(i chi_t (1 - 2n)); the phase-free part of x1 + i x2."""
    return _active["dispersive_coherence"](
        np.ascontiguousarray(weights, dtype=np.float64),
        np.ascontiguousarray(np.atleast_1d(chi_t), dtype=np.float64),
    )


def resonant_atom_reduced(c_e, c_g, coeffs, lambda_t):
    """Reduced atomic density matrices, shape (T, 2, 2), basis {e, g}.

    Amplitudes follow the resonant closed-form solution with C_{-1} = C_{N+1} = 0,
    so the result is the exact dynamics restricted to the kept levels.
    """
    return _active["resonant_atom_reduced"](
        complex(c_e),
        complex(c_g),
        np.ascontiguousarray(coeffs, dtype=np.complex128),
        np.ascontiguousarray(np.atleast_1d(lambda_t), dtype=np.float64),
    )


def two_cavity_amplitudes(c_e, c_g, coeffs_a, coeffs_b, lt_a, lt_b):
    """Unnormalised cavity amplitudes after the atom is found in |g>.

    Signs follow exp(-i H_I t) in each cavity, the same convention as
    :func:`cavsim.dynamics.resonant_propagator`.

    Returns an array of shape (len(coeffs_a) + 1, len(coeffs_b) + 1): the atom
    can deposit one photon in each cavity, so each mode gains a level and the
    double sum is exact with no truncation loss.
    """
    return _active["two_cavity_amplitudes"](
        complex(c_e),
        complex(c_g),
        np.ascontiguousarray(coeffs_a, dtype=np.complex128),
        np.ascontiguousarray(coeffs_b, dtype=np.complex128),
        float(lt_a),
        float(lt_b),
    )
