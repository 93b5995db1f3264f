"""Teleportation of a|0> + b|1> over a shared cavity pair.

Alice holds cavity A and the unknown qubit C, Bob holds cavity B. Alice's
Bell measurement on AC has four outcomes, labelled as follows together with
Bob's correction:

    a: |Psi->_AC  -> identity
    b: |Phi->_AC  -> sigma_x
    c: |Phi+>_AC  -> i sigma_y
    d: |Psi+>_AC  -> sigma_z

All four branches are evaluated deterministically. The global factor of
i sigma_y is irrelevant because fidelities are phase-insensitive.
"""
import math
from dataclasses import dataclass

import numpy as np

from .states import ThermalParams, bell_state, thermal_atom_populations
from .tensor import DensityMatrix, dag, kron

OUTCOMES = ("a", "b", "c", "d")
MEASURED_BELL = {"a": "psi-", "b": "phi-", "c": "phi+", "d": "psi+"}
CORRECTIONS = {
    "a": np.eye(2, dtype=np.complex128),
    "b": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "c": np.array([[0, 1], [-1, 0]], dtype=np.complex128),
    "d": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

#: Branch probabilities below this are treated as impossible outcomes.
ZERO_PROBABILITY = 1e-14
#: Closed-form denominators (at most 1) below this count as zero.
DENOMINATOR_TOL = 1e-15
NORM_TOL = 1e-12


@dataclass(frozen=True)
class TeleportReport:
    """Per-outcome fidelities and probabilities.

    An outcome that cannot occur has fidelity ``nan`` (undefined), not 0.
    ``discarded_weight`` is the resource weight outside the two-qubit block.
    """

    fidelities: dict
    probabilities: dict
    discarded_weight: float = 0.0


def qubit_block(resource, dims=None):
    """Restrict a two-mode resource to {|0>,|1>} x {|0>,|1>} and renormalise.

    Returns ``(rho_4x4, discarded_weight)``.
    """
    if isinstance(resource, DensityMatrix):
        m, dims = resource.matrix, resource.dims
    else:
        m = np.asarray(resource, dtype=np.complex128)
        dims = (2, 2) if dims is None else tuple(dims)
    if len(dims) != 2 or min(dims) < 2:
        raise ValueError(f"resource must be two modes of at least two levels, got {dims}")
    da, db = dims
    idx = np.array([i * db + j for i in range(2) for j in range(2)])
    block = m[np.ix_(idx, idx)]
    total = np.trace(m).real
    kept = np.trace(block).real
    if kept <= 0:
        raise ValueError("resource has no weight in the two-qubit block")
    return block / kept, float(max(0.0, 1.0 - kept / total))


def _input_state(a: complex, b: complex) -> np.ndarray:
    psi = np.array([a, b], dtype=np.complex128)
    if abs(np.vdot(psi, psi).real - 1.0) > NORM_TOL:
        raise ValueError("input qubit must satisfy |a|^2 + |b|^2 = 1")
    return psi


def teleport(a: complex, b: complex, resource, dims=None) -> TeleportReport:
    """Run the protocol for input a|0> + b|1> over ``resource`` (A x B)."""
    psi = _input_state(a, b)
    rho_ab, discarded = qubit_block(resource, dims)
    t = kron(rho_ab, np.outer(psi, psi.conj())).reshape((2,) * 6)  # axes A B C A' B' C'
    fids, probs = {}, {}
    for key in OUTCOMES:
        beta = bell_state(MEASURED_BELL[key]).reshape(2, 2)  # [A, C]
        rho_b = np.einsum("ac,abcxyz,xz->by", beta.conj(), t, beta)
        p = float(np.trace(rho_b).real)
        probs[key] = p
        if p < ZERO_PROBABILITY:
            fids[key] = math.nan
            continue
        k = CORRECTIONS[key]
        corrected = k @ (rho_b / p) @ dag(k)
        fids[key] = float(np.vdot(psi, corrected @ psi).real)
    return TeleportReport(fids, probs, discarded)


def teleport_fidelity_closed_form(which: str, a: complex, b: complex,
                                  lambda_tau: float, thermal: ThermalParams) -> float:
    """Closed-form teleportation fidelity over the thermal-atom cavity state.

    F_a = F_d and F_b = F_c; the denominators carry only the zero-temperature
    branch norm, so for P_e > 0 these differ at O(P_e) from the normalised
    :func:`teleport` values. Returns ``nan`` when the denominator vanishes.
    """
    if which not in OUTCOMES:
        raise ValueError(f"outcome must be one of {OUTCOMES}")
    _input_state(a, b)
    p_e, p_g = thermal_atom_populations(thermal)
    a2, b2 = abs(a) ** 2, abs(b) ** 2
    c1, s1 = math.cos(lambda_tau), math.sin(lambda_tau)
    c2 = math.cos(lambda_tau * math.sqrt(2))
    thermal_term = p_e * a2 * b2 * c2 ** 2 * s1 ** 2
    cross = 2 * a2 * b2 * c1 * s1 ** 2
    if which in ("a", "d"):
        num = p_g * (a2 ** 2 * c1 ** 2 + cross + b2 ** 2 * s1 ** 4) + thermal_term
        den = a2 * c1 ** 2 + b2 * s1 ** 4
    else:
        num = p_g * (a2 ** 2 * s1 ** 4 + cross + b2 ** 2 * c1 ** 2) + thermal_term
        den = a2 * s1 ** 4 + b2 * c1 ** 2
    if den < DENOMINATOR_TOL:
        return math.nan
    return num / den


@dataclass(frozen=True)
class PurificationBound:
    """Lower bound N_min = M / E_N on the copies needed to distil M Bell pairs.

    This is necessary, not sufficient: purification may need more copies.
    ``n_min`` is ``inf`` when E_N <= 0 (no distillable entanglement bound).
    """

    m: int
    e_n: float
    n_min: float

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.n_min)


def purification_bound(m: int, e_n: float) -> PurificationBound:
    if m < 0:
        raise ValueError("M must be >= 0")
    n_min = m / e_n if e_n > 0 else math.inf
    return PurificationBound(m, float(e_n), n_min)
