"""Initial states: atom superpositions, Fock and coherent fields, thermal
density operators and Bell states."""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import TruncationWarning
from .tensor import DensityMatrix

#: hbar / k_B in K/THz for angular frequencies, so that beta*omega = HBAR_OVER_KB / (T/omega).
HBAR_OVER_KB = 7.6382

#: Probability mass a truncated field may drop before a TruncationWarning.
TRUNCATION_TOL = 1e-9

NORM_TOL = 1e-12


@dataclass(frozen=True)
class AtomState:
    """Pure two-level atom C_g|g> + C_e|e>."""

    c_g: complex
    c_e: complex

    def __post_init__(self):
        norm = abs(self.c_g) ** 2 + abs(self.c_e) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"atom state not normalised (|c_g|^2 + |c_e|^2 = {norm})")

    @classmethod
    def excited(cls):
        return cls(0.0, 1.0)

    @classmethod
    def ground(cls):
        return cls(1.0, 0.0)

    @classmethod
    def equator(cls, phi: float = 0.0):
        """(|g> + e^{i phi}|e>)/sqrt(2)."""
        s = 1.0 / math.sqrt(2.0)
        return cls(s, s * np.exp(1j * phi))

    @property
    def vector(self) -> np.ndarray:
        """Amplitudes in {|e>, |g>} order."""
        return np.array([self.c_e, self.c_g], dtype=np.complex128)


class FieldState:
    """Truncated field sum_{n<=N} C_n |n>.

    Truncation may drop a little probability; more than ``tol`` triggers a
    :class:`~cavsim.errors.TruncationWarning`. A norm above one is an error.
    """

    def __init__(self, coefficients, tol: float = TRUNCATION_TOL):
        c = np.array(coefficients, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("field needs at least one coefficient")
        norm = float(np.sum(np.abs(c) ** 2))
        if norm > 1.0 + NORM_TOL:
            raise ValueError(f"field coefficients have norm {norm} > 1")
        if 1.0 - norm > tol:
            warnings.warn(
                f"field truncated at N={c.size - 1} drops {1.0 - norm:.3e} of probability",
                TruncationWarning,
                stacklevel=2,
            )
        c.setflags(write=False)
        self.coefficients = c
        self.lost_mass = max(0.0, 1.0 - norm)

    @property
    def n_max(self) -> int:
        return self.coefficients.size - 1

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2

    def __len__(self):
        return self.coefficients.size

    def __repr__(self):
        return f"FieldState(n_max={self.n_max}, lost_mass={self.lost_mass:.2e})"


def fock(n: int, n_max: int) -> FieldState:
    if not 0 <= n <= n_max:
        raise ValueError(f"Fock level {n} outside 0..{n_max}")
    c = np.zeros(n_max + 1, dtype=np.complex128)
    c[n] = 1.0
    return FieldState(c)


def coherent_coefficients(alpha: complex, n_max: int, tol: float = TRUNCATION_TOL) -> FieldState:
    """Coherent-state amplitudes C_0..C_N by the recurrence C_{n+1} = C_n alpha / sqrt(n+1)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    c = np.empty(n_max + 1, dtype=np.complex128)
    c[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(n_max):
        c[n + 1] = c[n] * alpha / math.sqrt(n + 1)
    return FieldState(c, tol=tol)


@dataclass(frozen=True)
class ThermalParams:
    """Scaled temperature T/omega in K/THz."""

    scaled_temperature: float
    hbar_over_kB: float = HBAR_OVER_KB

    def __post_init__(self):
        if math.isnan(self.scaled_temperature) or self.scaled_temperature < 0:
            raise ValueError("scaled temperature must be >= 0")

    @property
    def beta_omega(self) -> float:
        """beta * omega; infinite at zero temperature."""
        if self.scaled_temperature <= 0:
            return math.inf
        return self.hbar_over_kB / self.scaled_temperature


def mean_photon_from_temperature(p: ThermalParams) -> float:
    """Bose-Einstein occupation 1/(exp(beta omega) - 1); zero for T <= 0."""
    bw = p.beta_omega
    if bw > 700.0:
        return math.exp(-bw)
    return 1.0 / math.expm1(bw)


def thermal_weights(nbar: float, n_max: int, renormalize: bool = True) -> np.ndarray:
    """P_n = nbar^n / (1+nbar)^(n+1) for n = 0..n_max."""
    n = np.arange(n_max + 1)
    if nbar == 0:
        p = (n == 0).astype(float)
    else:
        p = np.exp(n * math.log(nbar) - (n + 1) * math.log1p(nbar))
    if renormalize:
        p = p / p.sum()
    return p


def thermal_field(p: ThermalParams, n_max: int = 1, renormalize: bool = True, dim=None) -> DensityMatrix:
    """Diagonal thermal field state on levels 0..n_max.

    ``dim`` zero-pads the matrix to a larger Fock space. With
    ``renormalize=False`` the raw truncated weights are kept; their trace is
    below one, so a bare array is returned instead of a DensityMatrix.
    """
    if n_max < 1:
        raise ValueError("thermal field needs n_max >= 1")
    dim = n_max + 1 if dim is None else int(dim)
    if dim < n_max + 1:
        raise ValueError("dim smaller than the populated levels")
    weights = thermal_weights(mean_photon_from_temperature(p), n_max, renormalize)
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[np.arange(n_max + 1), np.arange(n_max + 1)] = weights
    if not renormalize:
        return m
    return DensityMatrix(m, (dim,))


def thermal_atom_populations(p: ThermalParams):
    """(P_e, P_g) of the thermal atom."""
    bw = p.beta_omega
    if math.isinf(bw):
        return 0.0, 1.0
    # logistic forms stay finite for any beta*omega
    p_e = 1.0 / (math.exp(bw) + 1.0) if bw < 700.0 else math.exp(-bw)
    p_g = 1.0 / (math.exp(-bw) + 1.0)
    return p_e, p_g


def thermal_atom(p: ThermalParams) -> DensityMatrix:
    """diag(P_e, P_g) in the {|e>, |g>} basis."""
    p_e, p_g = thermal_atom_populations(p)
    return DensityMatrix(np.diag([p_e, p_g]).astype(np.complex128), (2,))


_BELL = {
    "psi+": ((0, 1, 1.0), (1, 0, 1.0)),
    "psi-": ((0, 1, 1.0), (1, 0, -1.0)),
    "phi+": ((0, 0, 1.0), (1, 1, 1.0)),
    "phi-": ((0, 0, 1.0), (1, 1, -1.0)),
}

BELL_KINDS = tuple(_BELL)


def bell_state(kind: str, dim: int = 2) -> np.ndarray:
    """Bell state over two modes, each zero-padded to ``dim`` levels.

    ``kind`` is one of ``psi+``, ``psi-``, ``phi+``, ``phi-``.
    """
    key = kind.lower().replace("plus", "+").replace("minus", "-")
    if key not in _BELL:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}")
    if dim < 2:
        raise ValueError("Bell states need at least two levels per mode")
    v = np.zeros(dim * dim, dtype=np.complex128)
    for i, j, sign in _BELL[key]:
        v[i * dim + j] = sign / math.sqrt(2.0)
    return v
