"""Two-cavity entangling schemes.

An atom crosses cavity A for lambda*tau_A, then cavity B for lambda*tau_B,
and is measured; the run succeeds when it is found in |g>. Two protocols:

* ``bp`` (Browne-Plenio): atom |e>, cavities |0>_A|0>_B, target |Psi+>.
* ``new``: atom |g>, cavities |1>_A|0>_B, target |Psi->.

Post-selection is the projection <g|rho|g>; the success probability is the
trace before renormalisation. Fidelities use |<.|.>|^2, so global phases of
the post-selected states never matter.

Outcomes are always computed from the actual post-selected state. The
closed-form expressions are kept next to them (``closed_form_*`` fields).
For ``bp`` the two agree exactly. For ``new`` only the probability agrees:
the dynamics give s^2|01> - c|10> (s, c = sin, cos of lambda*tau), whose
Bell condition sin^2 = cos is the 0.288*pi time of :func:`ideal_time_thermal`,
whereas :func:`fidelity_new` and :func:`fidelity_unequal_times` describe
s^2|01> - c^2|10> (:func:`new_cavity_state_closed_form`).
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .dynamics import resonant_propagator
from .errors import ZeroProbabilityError
from .entanglement import NegativityValue, log_negativity, state_fidelity
from .states import (
    AtomState,
    FieldState,
    ThermalParams,
    bell_state,
    fock,
    thermal_atom,
    thermal_field,
    thermal_atom_populations,
)
from .tensor import DensityMatrix, dag, kron

SCHEMES = ("bp", "new")
TARGETS = {"bp": "psi+", "new": "psi-"}
THERMAL_TARGETS = {"bp": "cavities", "new": "atom"}


def _scheme_key(scheme: str) -> str:
    key = scheme.lower().replace("_", "-")
    aliases = {"browne-plenio": "bp", "brown-plenio": "bp", "newscheme": "new", "new-scheme": "new"}
    key = aliases.get(key, key)
    if key not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    return key


# --------------------------------------------------------------------------
# closed forms
# --------------------------------------------------------------------------

def fidelity_bp(lambda_tau):
    c = np.cos(lambda_tau)
    return 0.5 + c / (c ** 2 + 1.0)


def probability_bp(lambda_tau):
    return 1.0 - np.cos(lambda_tau) ** 4


def fidelity_new(lambda_tau):
    return 0.5 + np.sin(2 * lambda_tau) ** 2 / (np.cos(4 * lambda_tau) + 3.0)


def probability_new(lambda_tau):
    return 1.0 - 0.25 * np.sin(2 * lambda_tau) ** 2


def fidelity_closed_form(scheme: str, lambda_tau):
    return fidelity_bp(lambda_tau) if _scheme_key(scheme) == "bp" else fidelity_new(lambda_tau)


def probability_closed_form(scheme: str, lambda_tau):
    return probability_bp(lambda_tau) if _scheme_key(scheme) == "bp" else probability_new(lambda_tau)


def fidelity_unequal_times(scheme: str, lambda_tau, epsilon):
    """Closed-form fidelity with tau_B = tau_A (1 - epsilon)."""
    if np.any(np.asarray(epsilon) >= 1):
        raise ValueError("epsilon must be < 1")
    x = np.asarray(lambda_tau, dtype=float)
    xb = x * (1.0 - np.asarray(epsilon, dtype=float))
    if _scheme_key(scheme) == "bp":
        c, s, sb = np.cos(x), np.sin(x), np.sin(xb)
        return 0.5 + c * s * sb / (c ** 2 * sb ** 2 + s ** 2)
    return 0.5 + np.sin(2 * x) * np.sin(2 * xb) / (2 * np.cos(2 * x) * np.cos(2 * xb) + 2.0)


def bp_cavity_state(lambda_tau: float) -> np.ndarray:
    """Unnormalised cos(lt)|01> + |10> over the qubit pair A x B."""
    return np.array([0.0, np.cos(lambda_tau), 1.0, 0.0], dtype=np.complex128)


def new_cavity_state_closed_form(lambda_tau: float) -> np.ndarray:
    """sin^2(lt)|01> - cos^2(lt)|10>, the state behind :func:`fidelity_new`."""
    s, c = np.sin(lambda_tau), np.cos(lambda_tau)
    return np.array([0.0, s ** 2, -(c ** 2), 0.0], dtype=np.complex128)


def new_scheme_thermal_matrix(lambda_tau: float, thermal: ThermalParams) -> np.ndarray:
    """Unnormalised 6x6 cavity matrix of the thermal-atom new scheme.

    Basis {|00>, |01>, |10>, |11>, |20>, |21>} (A level, B level), with
    c_n = cos(lt sqrt n), s_n = sin(lt sqrt n).
    """
    p_e, p_g = thermal_atom_populations(thermal)
    c1, s1 = math.cos(lambda_tau), math.sin(lambda_tau)
    c2, s2 = math.cos(lambda_tau * math.sqrt(2)), math.sin(lambda_tau * math.sqrt(2))
    m = np.zeros((6, 6))
    m[1, 1] = p_g * s1 ** 4
    m[1, 2] = m[2, 1] = -p_g * c1 * s1 ** 2
    m[2, 2] = p_g * c1 ** 2
    m[3, 3] = p_e * c2 ** 2 * s1 ** 2
    m[3, 4] = m[4, 3] = p_e * c2 * s2 * s1
    m[4, 4] = p_e * s2 ** 2
    return m.astype(np.complex128)


def ideal_time_thermal(count: int = 1) -> list:
    """First ``count`` positive roots lambda*tau = 2(pi n +- atan(sqrt(sqrt 5 - 2))).

    These solve sin^4 = cos^2 = cos sin^2, i.e. sin^2(lt) = cos(lt) > 0;
    the lowest is about 0.2879 pi.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    a = math.atan(math.sqrt(math.sqrt(5.0) - 2.0))
    roots = [2.0 * (math.pi * n + sign * a) for n in range(count + 1) for sign in (1, -1)]
    return sorted(r for r in roots if r > 0)[:count]


def auxiliary_preparation(lambda_tau: float) -> float:
    """Probability that an excited auxiliary atom leaves |1>_A|0>_B behind: sin^2(lt)."""
    return float(np.sin(lambda_tau) ** 2)


# --------------------------------------------------------------------------
# exact post-selected states
# --------------------------------------------------------------------------

def general_two_cavity_state(atom: AtomState, field_a: FieldState, field_b: FieldState,
                             lambda_tau_a: float, lambda_tau_b: float):
    """Cavity state after the atom is found in |g>, with Omega_n = lt sqrt(n).

    Returns ``(amplitudes, probability)``; ``amplitudes[n, m]`` multiplies
    |n>_A|m>_B and has shape (len(field_a) + 1, len(field_b) + 1), and
    ``probability`` is its squared norm.
    """
    amps = kernels.two_cavity_amplitudes(
        atom.c_e, atom.c_g, field_a.coefficients, field_b.coefficients, lambda_tau_a, lambda_tau_b
    )
    return amps, float(np.sum(np.abs(amps) ** 2))


def _embedded_bell(kind: str, dims) -> np.ndarray:
    v = bell_state(kind).reshape(2, 2)
    out = np.zeros(dims, dtype=np.complex128)
    out[:2, :2] = v
    return out.ravel()


def _two_stage_density(rho_atom, rho_a, rho_b, lt_a: float, lt_b: float) -> np.ndarray:
    """Project <g| U_B (U_A (rho_atom x rho_a) U_A^+ x rho_b) U_B^+ |g>, unnormalised."""
    rho_atom, rho_a, rho_b = (np.asarray(r, dtype=np.complex128) for r in (rho_atom, rho_a, rho_b))
    da, db = rho_a.shape[0], rho_b.shape[0]
    ua = resonant_propagator(lt_a, da - 1)
    rho = ua @ kron(rho_atom, rho_a) @ dag(ua)
    rho = kron(rho, rho_b)
    ub = resonant_propagator(lt_b, db - 1).reshape(2, db, 2, db)
    ub_full = np.einsum("abcd,ij->aibcjd", ub, np.eye(da)).reshape(2 * da * db, 2 * da * db)
    rho = ub_full @ rho @ dag(ub_full)
    d = da * db
    return rho[d:, d:]


@dataclass(frozen=True)
class SchemeConfig:
    """Run parameters. ``lambda_tau_b`` defaults to lambda_tau_a (1 - epsilon).

    ``n_max`` is the thermal-field truncation level (levels 0..n_max are kept).
    """

    scheme: str
    lambda_tau_a: float
    lambda_tau_b: Optional[float] = None
    epsilon: float = 0.0
    thermal: Optional[ThermalParams] = None
    thermal_target: Optional[str] = None
    n_max: int = 1
    renormalize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "scheme", _scheme_key(self.scheme))
        if self.epsilon >= 1:
            raise ValueError("epsilon must be < 1")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.thermal is not None and self.thermal_target is None:
            object.__setattr__(self, "thermal_target", THERMAL_TARGETS[self.scheme])
        if self.thermal_target not in (None, "atom", "cavities"):
            raise ValueError(f"thermal target must be 'atom' or 'cavities', got {self.thermal_target!r}")

    @property
    def lt_b(self) -> float:
        if self.lambda_tau_b is not None:
            return float(self.lambda_tau_b)
        return float(self.lambda_tau_a) * (1.0 - self.epsilon)


@dataclass(frozen=True)
class SchemeOutcome:
    scheme: str
    target: str
    cavity_state: DensityMatrix
    success_probability: float
    fidelity_vs_target: float
    negativity: NegativityValue
    projected: np.ndarray = field(repr=False)
    closed_form_fidelity: Optional[float] = None
    closed_form_probability: Optional[float] = None


def _outcome(config: SchemeConfig, projected: np.ndarray, dims, closed=True) -> SchemeOutcome:
    prob = float(np.trace(projected).real)
    if prob <= 0.0:
        raise ZeroProbabilityError(f"atom is never found in |g> ({config.scheme}, lambda_tau = {config.lambda_tau_a})")
    state = DensityMatrix.from_unnormalized(projected, dims)
    target = TARGETS[config.scheme]
    cf_f = cf_p = None
    if closed:
        if config.lambda_tau_b is None and config.epsilon != 0.0:
            cf_f = float(fidelity_unequal_times(config.scheme, config.lambda_tau_a, config.epsilon))
        elif config.lambda_tau_b is None or config.lambda_tau_b == config.lambda_tau_a:
            cf_f = float(fidelity_closed_form(config.scheme, config.lambda_tau_a))
            cf_p = float(probability_closed_form(config.scheme, config.lambda_tau_a))
    return SchemeOutcome(
        scheme=config.scheme,
        target=target,
        cavity_state=state,
        success_probability=prob,
        fidelity_vs_target=state_fidelity(state, _embedded_bell(target, dims)),
        negativity=log_negativity(state, 0),
        projected=projected,
        closed_form_fidelity=cf_f,
        closed_form_probability=cf_p,
    )


def _pure_outcome(config: SchemeConfig, atom, field_a, field_b) -> SchemeOutcome:
    amps, _ = general_two_cavity_state(atom, field_a, field_b, config.lambda_tau_a, config.lt_b)
    psi = amps.ravel()
    return _outcome(config, np.outer(psi, psi.conj()), amps.shape)


def run_browne_plenio(config: SchemeConfig) -> SchemeOutcome:
    if config.scheme != "bp":
        raise ValueError("run_browne_plenio needs scheme='bp'")
    if config.thermal is not None:
        if config.thermal_target != "cavities":
            raise ValueError("the Browne-Plenio scheme supports thermal cavities only")
        return run_browne_plenio_thermal(config)
    return _pure_outcome(config, AtomState.excited(), fock(0, 0), fock(0, 0))


def run_new_scheme(config: SchemeConfig) -> SchemeOutcome:
    if config.scheme != "new":
        raise ValueError("run_new_scheme needs scheme='new'")
    if config.thermal is not None:
        if config.thermal_target != "atom":
            raise ValueError("the new scheme supports a thermal atom only")
        return run_new_scheme_thermal(config)
    return _pure_outcome(config, AtomState.ground(), fock(1, 1), fock(0, 0))


def run_scheme(config: SchemeConfig) -> SchemeOutcome:
    return run_browne_plenio(config) if config.scheme == "bp" else run_new_scheme(config)


def run_browne_plenio_thermal(config: SchemeConfig) -> SchemeOutcome:
    """Excited atom through two thermal cavities, each kept on levels 0..n_max.

    Each cavity gets one extra Fock level for the photon the atom may leave,
    so the evolution itself is exact; the only approximation is dropping
    thermal weight above n_max (renormalised unless ``config.renormalize``
    is False).
    """
    thermal = config.thermal or ThermalParams(0.0)
    dim = config.n_max + 2
    rho_f = thermal_field(thermal, config.n_max, renormalize=config.renormalize, dim=dim)
    rho_atom = np.diag([1.0, 0.0])
    projected = _two_stage_density(rho_atom, rho_f, rho_f, config.lambda_tau_a, config.lt_b)
    return _outcome(config, projected, (dim, dim), closed=False)


def run_new_scheme_thermal(config: SchemeConfig) -> SchemeOutcome:
    """Thermal atom, cavities |1>_A|0>_B; the 6x6 result is exact (no truncation)."""
    thermal = config.thermal or ThermalParams(0.0)
    rho_a = np.diag([0.0, 1.0, 0.0])
    rho_b = np.diag([1.0, 0.0])
    projected = _two_stage_density(thermal_atom(thermal), rho_a, rho_b, config.lambda_tau_a, config.lt_b)
    return _outcome(config, projected, (3, 2), closed=False)
