"""Parameter sweeps and figure reproduction, emitted as ``SweepResult`` tables."""
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dynamics import atom_trajectory, inversion_curve
from .entanglement import entropy_from_eigenvalues, schmidt_entropy_dispersive
from .errors import InvariantViolation
from .schemes import (
    SchemeConfig,
    fidelity_closed_form,
    fidelity_unequal_times,
    probability_closed_form,
    run_scheme,
)
from .states import HBAR_OVER_KB, AtomState, ThermalParams, coherent_coefficients
from .teleport import OUTCOMES, purification_bound, teleport, teleport_fidelity_closed_form
from .schemes import new_scheme_thermal_matrix

FIGURES = ("1a", "1b", "2", "4a", "4b", "5a", "5b", "6")

#: Interaction times used for the thermal figures.
BP_THERMAL_TIME = 0.01 * math.pi
NEW_THERMAL_TIME = 0.288 * math.pi


@dataclass
class SweepResult:
    """Rectangular table; the first column is the (outer) independent variable."""

    columns: list
    rows: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=float))

    def check(self, allow_nan=()):
        """Raise InvariantViolation unless the table is rectangular, finite and ordered."""
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.columns):
            raise InvariantViolation(
                f"sweep has {self.rows.shape[-1]} values per row but {len(self.columns)} columns"
            )
        for j, name in enumerate(self.columns):
            col = self.rows[:, j]
            bad = ~np.isfinite(col)
            if name in allow_nan:
                bad &= ~np.isnan(col)
            if bad.any():
                raise InvariantViolation(f"non-finite value in column {name!r}")
        if self.rows.shape[0] > 1 and np.any(np.diff(self.rows[:, 0]) < 0):
            raise InvariantViolation(f"independent variable {self.columns[0]!r} is not ascending")
        return self

    def to_csv(self, stream=None) -> str:
        out = io.StringIO() if stream is None else stream
        out.write(f"# cavsim {__version__}\n")
        for key in sorted(self.provenance):
            out.write(f"# {key} = {self.provenance[key]}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(repr(float(v)) for v in row) + "\n")
        return out.getvalue() if stream is None else ""


def _provenance(**kw):
    kw.setdefault("hbar_over_kB", f"{HBAR_OVER_KB} K/THz")
    return {k: (repr(v) if isinstance(v, float) else str(v)) for k, v in kw.items()}


def _time_grid(t_max, points):
    return np.linspace(0.0, float(t_max), int(points))


def temperature_grid(t_min=1e-2, t_max=10.0, points=100):
    return np.logspace(math.log10(t_min), math.log10(t_max), int(points))


# --------------------------------------------------------------------------
# single-atom dynamics
# --------------------------------------------------------------------------

def inversion_sweep(nbar=10.0, n_max=100, lambda_t_max=50.0, points=1000):
    field_ = coherent_coefficients(math.sqrt(nbar), n_max)
    t = _time_grid(lambda_t_max, points)
    inv = inversion_curve(field_, t)
    return SweepResult(
        ["lambda_t", "inversion"],
        np.column_stack((t, inv)),
        _provenance(quantity="atomic inversion, excited atom, coherent field", nbar=nbar,
                    n_max=n_max, lost_mass=f"{field_.lost_mass:.3e}"),
    )


def resonant_entropy_sweep(nbar=10.0, n_max=100, lambda_t_max=50.0, points=1000):
    field_ = coherent_coefficients(math.sqrt(nbar), n_max)
    t = _time_grid(lambda_t_max, points)
    rho = atom_trajectory(AtomState.excited(), field_, t)
    s = np.array([entropy_from_eigenvalues(np.linalg.eigvalsh(r / np.trace(r).real)) for r in rho])
    return SweepResult(
        ["lambda_t", "entropy"],
        np.column_stack((t, s)),
        _provenance(quantity="atom-field von Neumann entropy (bits), excited atom", nbar=nbar,
                    n_max=n_max, lost_mass=f"{field_.lost_mass:.3e}"),
    )


def dispersive_entropy_sweep(nbar=10.0, phi=0.0, n_max=100, chi_t_max=10.0, points=1000):
    field_ = coherent_coefficients(math.sqrt(nbar), n_max)
    t = _time_grid(chi_t_max, points)
    s = schmidt_entropy_dispersive(field_, phi, t)
    return SweepResult(
        ["chi_t", "entropy"],
        np.column_stack((t, s)),
        _provenance(quantity="dispersive atom-field entropy (bits)", nbar=nbar, phi=phi, n_max=n_max),
    )


# --------------------------------------------------------------------------
# cavity schemes
# --------------------------------------------------------------------------

def scheme_sweep(scheme, lambda_tau_max=math.pi, points=1000, epsilon=0.0):
    """Exact and closed-form fidelity/probability on (0, lambda_tau_max]."""
    lt = np.linspace(0.0, lambda_tau_max, int(points) + 1)[1:]
    rows = []
    for x in lt:
        out = run_scheme(SchemeConfig(scheme, float(x), epsilon=epsilon))
        if epsilon:
            cf_f, cf_p = float(fidelity_unequal_times(scheme, x, epsilon)), math.nan
        else:
            cf_f, cf_p = float(fidelity_closed_form(scheme, x)), float(probability_closed_form(scheme, x))
        rows.append((x, out.fidelity_vs_target, out.success_probability, cf_f, cf_p))
    return SweepResult(
        ["lambda_tau", "fidelity", "probability", "fidelity_closed_form", "probability_closed_form"],
        rows,
        _provenance(scheme=scheme, target=out.target, epsilon=epsilon),
    )


def contour_sweep(scheme, points=101, method="closed", eps_min=-1.0, eps_max=0.99):
    """Fidelity over the (lambda_tau, epsilon) plane, tau_B = tau_A (1 - epsilon)."""
    lt = np.linspace(0.0, math.pi, int(points) + 1)[1:]
    eps = np.linspace(eps_min, eps_max, int(points))
    rows = []
    for x in lt:
        if method == "closed":
            f = fidelity_unequal_times(scheme, x, eps)
        elif method == "exact":
            f = [run_scheme(SchemeConfig(scheme, float(x), epsilon=float(e))).fidelity_vs_target for e in eps]
        else:
            raise ValueError(f"method must be 'closed' or 'exact', got {method!r}")
        rows.extend(zip(np.full(eps.size, x), eps, f))
    return SweepResult(
        ["lambda_tau", "epsilon", "fidelity"],
        rows,
        _provenance(scheme=scheme, method=method, grid=f"{points}x{points}"),
    )


def thermal_negativity_sweep(scheme, lambda_tau=None, t_min=1e-2, t_max=10.0, points=100,
                             n_max=1, renormalize=True):
    if lambda_tau is None:
        lambda_tau = BP_THERMAL_TIME if scheme == "bp" else NEW_THERMAL_TIME
    temps = temperature_grid(t_min, t_max, points)
    rows = []
    for temp in temps:
        out = run_scheme(SchemeConfig(scheme, lambda_tau, thermal=ThermalParams(float(temp)),
                                      n_max=n_max, renormalize=renormalize))
        rows.append((temp, out.negativity.log_negativity, out.negativity.negativity,
                     out.success_probability, out.fidelity_vs_target))
    return SweepResult(
        ["T_over_omega0", "log_negativity", "negativity", "success_probability", "fidelity"],
        rows,
        _provenance(scheme=scheme, lambda_tau=float(lambda_tau), thermal_n_max=n_max,
                    renormalize=renormalize, grid="log-spaced"),
    )


# --------------------------------------------------------------------------
# teleportation
# --------------------------------------------------------------------------

def teleport_sweep(lambda_tau=NEW_THERMAL_TIME, a_squared=0.5, t_min=1e-2, t_max=10.0, points=100, pairs=1):
    """Teleportation fidelities over the thermal-atom resource versus temperature."""
    a = math.sqrt(a_squared)
    b = math.sqrt(1.0 - a_squared)
    rows = []
    for temp in temperature_grid(t_min, t_max, points):
        p = ThermalParams(float(temp))
        out = run_scheme(SchemeConfig("new", lambda_tau, thermal=p))
        rep = teleport(a, b, out.projected, dims=(3, 2))
        closed = [teleport_fidelity_closed_form(k, a, b, lambda_tau, p) for k in OUTCOMES]
        bound = purification_bound(pairs, out.negativity.log_negativity)
        rows.append((temp, *(rep.fidelities[k] for k in OUTCOMES), *closed,
                     out.negativity.log_negativity, bound.n_min))
    cols = ["T_over_omega0"] + [f"F_{k}" for k in OUTCOMES] + [f"F_{k}_closed_form" for k in OUTCOMES]
    return SweepResult(
        cols + ["log_negativity", "n_min"],
        rows,
        _provenance(lambda_tau=float(lambda_tau), a_squared=a_squared, pairs=pairs,
                    resource="thermal-atom new scheme, qubit block renormalised"),
    )


def teleport_grid(lambda_tau=NEW_THERMAL_TIME, t_min=1e-2, t_max=10.0, points=100, a_points=101,
                  method="closed"):
    """F_a (= F_d) over (temperature, |a|^2)."""
    rows = []
    a2_grid = np.linspace(0.0, 1.0, int(a_points))
    for temp in temperature_grid(t_min, t_max, points):
        p = ThermalParams(float(temp))
        resource = new_scheme_thermal_matrix(lambda_tau, p) if method == "exact" else None
        for a2 in a2_grid:
            a, b = math.sqrt(a2), math.sqrt(1.0 - a2)
            if method == "closed":
                f = teleport_fidelity_closed_form("a", a, b, lambda_tau, p)
            elif method == "exact":
                f = teleport(a, b, resource, dims=(3, 2)).fidelities["a"]
            else:
                raise ValueError(f"method must be 'closed' or 'exact', got {method!r}")
            rows.append((temp, a2, f))
    return SweepResult(
        ["T_over_omega0", "a_squared", "fidelity_a"],
        rows,
        _provenance(lambda_tau=float(lambda_tau), method=method, grid=f"{points}x{a_points}"),
    )


def reproduce_figure(fig_id: str, n_max=100, method="closed") -> SweepResult:
    """Table behind one figure, using the figure's stated parameters."""
    fig_id = str(fig_id).lower()
    if fig_id == "1a":
        res = inversion_sweep(10.0, n_max)
    elif fig_id == "1b":
        res = resonant_entropy_sweep(10.0, n_max)
    elif fig_id == "2":
        res = dispersive_entropy_sweep(10.0, 0.0, n_max)
    elif fig_id in ("4a", "4b"):
        res = contour_sweep("bp" if fig_id == "4a" else "new", method=method)
    elif fig_id == "5a":
        res = thermal_negativity_sweep("bp", BP_THERMAL_TIME)
        res = SweepResult(res.columns[:2], res.rows[:, :2], res.provenance)
    elif fig_id == "5b":
        res = thermal_negativity_sweep("new", NEW_THERMAL_TIME)
        res = SweepResult(res.columns[:2], res.rows[:, :2], res.provenance)
    elif fig_id == "6":
        res = teleport_grid(NEW_THERMAL_TIME, method=method)
    else:
        raise ValueError(f"unknown figure {fig_id!r}; expected one of {FIGURES}")
    res.provenance["figure"] = fig_id
    return res.check()
