"""Entanglement and closeness measures. Entropies are in bits."""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvariantViolation
from .states import FieldState
from .tensor import DensityMatrix, clamp_eigenvalues, herm_eig, partial_transpose


def entropy_from_eigenvalues(evals) -> float:
    """-sum p log2 p over clamped eigenvalues, with 0 log 0 = 0."""
    p = clamp_eigenvalues(evals)
    p = p[p > 0.0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def von_neumann_entropy(rho) -> float:
    """S = -Tr[rho log2 rho]."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    evals, _ = herm_eig(m)
    return entropy_from_eigenvalues(evals)


def binary_entropy(p) -> np.ndarray:
    """Entropy in bits of the two-outcome distribution (p, 1 - p); vectorised."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        mask = q > 0
        out[mask] -= q[mask] * np.log2(q[mask])
    return out


def schmidt_entropy_dispersive(field: FieldState, phi: float, chi_t):
    """Atom-field entropy for (|g> + e^{i phi}|e>)/sqrt(2) with a dispersive field.

    The reduced atom has Bloch vector length r = sqrt(x1^2 + x2^2), with
    x1 + i x2 = sum |C_n|^2 exp(i(chi_t(1 - 2n) - phi)) and x3 = 0. Its two
    eigenvalues (Schmidt weights) are (1 +- r)/2. Returns a float for scalar
    ``chi_t`` and an array otherwise.
    """
    z = np.exp(-1j * phi) * kernels.dispersive_coherence(field.weights, chi_t)
    r = np.minimum(np.abs(z), 1.0)
    s = binary_entropy(0.5 * (1.0 + r))
    return float(s[0]) if np.ndim(chi_t) == 0 else s


@dataclass(frozen=True)
class NegativityValue:
    negativity: float
    log_negativity: float


def negativity_from_eigenvalues(evals) -> NegativityValue:
    evals = np.asarray(evals, dtype=float)
    neg = float(np.sum(np.abs(evals) - evals) / 2.0)
    return NegativityValue(neg, float(np.log2(2.0 * neg + 1.0)))


def log_negativity(rho, sub: int = 0, dims=None) -> NegativityValue:
    """Negativity and logarithmic negativity of a bipartite state.

    Either subsystem may be transposed; the spectrum of the partial
    transpose is the same up to rounding.
    """
    layout_dims = rho.dims if isinstance(rho, DensityMatrix) else tuple(dims)
    if len(layout_dims) != 2:
        raise ValueError(f"log_negativity needs a bipartite layout, got {layout_dims}")
    pt = partial_transpose(rho, sub, dims=dims)
    evals, _ = herm_eig(pt)
    return negativity_from_eigenvalues(evals)


def state_fidelity(rho, target) -> float:
    """<target|rho|target> for a pure, normalised target (no square root)."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    t = np.asarray(target, dtype=np.complex128).ravel()
    if m.shape != (t.size, t.size):
        raise ValueError(f"target of length {t.size} does not match matrix {m.shape}")
    val = np.vdot(t, m @ t)
    if abs(val.imag) > 1e-12:
        raise InvariantViolation(f"fidelity has imaginary part {val.imag:.3e}")
    return float(np.clip(val.real, 0.0, 1.0))
