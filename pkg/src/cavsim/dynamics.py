"""Jaynes-Cummings time evolution in a truncated Fock space.

Joint atom-field vectors have length 2(N+1) and index ``atom * (N+1) + n``
with atom 0 = |e>, 1 = |g>. Time is always the dimensionless product
lambda*t (resonant) or chi*t (dispersive, chi = lambda^2 / Delta).
"""
from functools import lru_cache

import numpy as np

from . import kernels
from .states import AtomState, FieldState
from .tensor import DensityMatrix, dag, kron, partial_trace

UNITARY_TOL = 1e-10

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T.copy()
SIGMA_3 = np.diag([1.0, -1.0]).astype(np.complex128)
PROJ_E = np.diag([1.0, 0.0]).astype(np.complex128)


def annihilation(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), 1).astype(np.complex128)


def number_op(n_max: int) -> np.ndarray:
    return np.diag(np.arange(n_max + 1)).astype(np.complex128)


# Hamiltonians as matrices (hbar = 1), used for documentation and as oracles.

def rabi_hamiltonian(omega0: float, omega: float, lam: float, n_max: int) -> np.ndarray:
    a = annihilation(n_max)
    eye_f = np.eye(n_max + 1)
    return (
        0.5 * omega0 * kron(SIGMA_3, eye_f)
        + omega * kron(np.eye(2), dag(a) @ a)
        + lam * kron(SIGMA_PLUS + SIGMA_MINUS, a + dag(a))
    )


def jcm_hamiltonian(omega: float, delta: float, lam: float, n_max: int) -> np.ndarray:
    a = annihilation(n_max)
    eye_f = np.eye(n_max + 1)
    return (
        0.5 * (omega + delta) * kron(SIGMA_3, eye_f)
        + omega * kron(np.eye(2), dag(a) @ a)
        + lam * (kron(SIGMA_PLUS, a) + kron(SIGMA_MINUS, dag(a)))
    )


def resonant_interaction_hamiltonian(n_max: int, lam: float = 1.0) -> np.ndarray:
    """lambda (sigma_+ a + sigma_- a^dagger)."""
    a = annihilation(n_max)
    return lam * (kron(SIGMA_PLUS, a) + kron(SIGMA_MINUS, dag(a)))


def dispersive_interaction_hamiltonian(n_max: int, chi: float = 1.0) -> np.ndarray:
    """chi (sigma_3 a^dagger a + |e><e|)."""
    n = number_op(n_max)
    return chi * (kron(SIGMA_3, n) + kron(PROJ_E, np.eye(n_max + 1)))


@lru_cache(maxsize=256)
def _propagator_cached(lambda_t: float, n_max: int) -> np.ndarray:
    d = n_max + 1
    n = np.arange(d)
    u = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    # |e,n> <-> |g,n+1| rotate by lambda_t sqrt(n+1); |g,0> is uncoupled.
    up = lambda_t * np.sqrt(n[:-1] + 1.0)
    u[n[:-1], n[:-1]] = np.cos(up)
    u[d + n[1:], d + n[1:]] = np.cos(up)
    u[n[:-1], d + n[1:]] = -1j * np.sin(up)
    u[d + n[1:], n[:-1]] = -1j * np.sin(up)
    u[d, d] = 1.0
    # |e,N> would couple to |g,N+1>, which is outside the space: leave it fixed.
    u[n_max, n_max] = 1.0
    u.setflags(write=False)
    return u


def resonant_propagator(lambda_t: float, n_max: int) -> np.ndarray:
    """Resonant evolution operator on {|e>,|g>} x {|0>..|N>}.

    Block form [[cos(lt sqrt(a a^+)), -i a sin(lt sqrt(a^+ a))/sqrt(a^+ a)],
    [-i a^+ sin(lt sqrt(a a^+))/sqrt(a a^+), cos(lt sqrt(a^+ a))]], with the
    operator functions evaluated on the number basis where they are diagonal.

    The pair (|e,N>, |g,N+1>) is cut by the truncation, so |e,N> is left
    invariant. The result is exactly exp(-i H_I lambda_t) of the truncated
    interaction Hamiltonian and is unitary on the kept space. Amplitude on
    |e,N> is therefore not propagated physically; see :func:`truncation_weight`.
    The returned array is read-only and cached per (lambda_t, n_max).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return _propagator_cached(float(lambda_t), int(n_max))


def dispersive_propagator(chi_t: float, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1)
    return np.diag(np.concatenate((np.exp(-1j * chi_t * (n + 1)), np.exp(1j * chi_t * n))))


def product_state(atom: AtomState, field: FieldState) -> np.ndarray:
    return kron(atom.vector, field.coefficients)


def evolve_resonant_closed(atom: AtomState, field: FieldState, lambda_t: float) -> np.ndarray:
    """Closed-form resonant solution, with C_{-1} = C_{N+1} = 0.

    This is the exact (untruncated) dynamics restricted to levels 0..N: the
    |g,N+1> amplitude fed from |e,N> is dropped, so the norm falls short of one
    by roughly the weight at n = N.
    """
    c = field.coefficients
    n = np.arange(c.size)
    c_next = np.append(c[1:], 0.0)
    c_prev = np.concatenate(([0.0], c[:-1]))
    up = lambda_t * np.sqrt(n + 1.0)
    dn = lambda_t * np.sqrt(n)
    amp_e = atom.c_e * c * np.cos(up) - 1j * atom.c_g * c_next * np.sin(up)
    amp_g = -1j * atom.c_e * c_prev * np.sin(dn) + atom.c_g * c * np.cos(dn)
    return np.concatenate((amp_e, amp_g))


def evolve_dispersive(atom: AtomState, field: FieldState, chi_t: float) -> np.ndarray:
    """Dispersive evolution: |e,n> picks up exp(-i chi_t (n+1)), |g,n> exp(+i chi_t n)."""
    c = field.coefficients
    n = np.arange(c.size)
    amp_e = atom.c_e * c * np.exp(-1j * chi_t * (n + 1))
    amp_g = atom.c_g * c * np.exp(1j * chi_t * n)
    return np.concatenate((amp_e, amp_g))


def evolve_density(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """U rho U^dagger."""
    u = np.asarray(u)
    if u.shape != rho.matrix.shape:
        raise ValueError(f"propagator shape {u.shape} does not match density matrix {rho.matrix.shape}")
    if np.max(np.abs(u @ dag(u) - np.eye(u.shape[0]))) > UNITARY_TOL:
        raise ValueError("evolve_density requires a unitary propagator")
    return DensityMatrix.from_unnormalized(u @ rho.matrix @ dag(u), rho.layout)


def _split(state: np.ndarray):
    state = np.asarray(state)
    if state.ndim != 1 or state.size % 2:
        raise ValueError("joint state must be a 1-D vector of length 2(N+1)")
    d = state.size // 2
    return state[:d], state[d:]


def atom_density(state: np.ndarray) -> DensityMatrix:
    """Reduced atomic state of a joint pure vector (renormalised)."""
    d = np.asarray(state).size // 2
    return partial_trace(DensityMatrix.from_vector(state, (2, d)), 0)


def atomic_inversion(rho_atom) -> float:
    """Tr[rho_a sigma_3], the excited minus ground population."""
    m = np.asarray(rho_atom)
    if m.shape != (2, 2):
        raise ValueError("atomic inversion needs a 2x2 atomic density matrix")
    return float((m[0, 0] - m[1, 1]).real)


def mean_photon_number(state: np.ndarray) -> float:
    amp_e, amp_g = _split(state)
    n = np.arange(amp_e.size)
    return float(np.sum(n * (np.abs(amp_e) ** 2 + np.abs(amp_g) ** 2)))


def total_excitation(state: np.ndarray) -> float:
    """(<sigma_3> + 1)/2 + <n>, i.e. P_e + <n>, for a normalised joint vector."""
    amp_e, _ = _split(state)
    return float(np.sum(np.abs(amp_e) ** 2)) + mean_photon_number(state)


def truncation_weight(state: np.ndarray) -> float:
    """Probability on the top Fock level N (both atomic states).

    Bounds the error of the truncated propagator: only |e,N> is mishandled,
    and the resulting state error in 2-norm is at most 2 * sqrt(weight).
    """
    amp_e, amp_g = _split(state)
    return float(abs(amp_e[-1]) ** 2 + abs(amp_g[-1]) ** 2)


def inversion_curve(field: FieldState, lambda_t) -> np.ndarray:
    """Atomic inversion of an initially excited atom, sum |C_n|^2 cos(2 lt sqrt(n+1))."""
    return kernels.inversion_series(field.weights, lambda_t)


def atom_trajectory(atom: AtomState, field: FieldState, lambda_t) -> np.ndarray:
    """Reduced atomic density matrices along a resonant trajectory, shape (T, 2, 2)."""
    return kernels.resonant_atom_reduced(atom.c_e, atom.c_g, field.coefficients, lambda_t)
