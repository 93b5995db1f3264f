"""Command-line front end.

Every subcommand writes a CSV (to ``--output`` or stdout) except ``scheme``
and ``teleport`` given a single ``--lambda-tau`` / ``--temperature``, which
print a short report. Parameters come from flags, from a ``key = value``
file passed with ``--config``, or from built-in defaults, in that order of
precedence.

Exit status: 0 success, 2 configuration error, 3 numerical invariant violation.
"""
import argparse
import math
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from . import sweeps
from .errors import ConfigError, InvariantViolation
from .schemes import SchemeConfig, run_scheme
from .states import ThermalParams
from .teleport import OUTCOMES, purification_bound, teleport, teleport_fidelity_closed_form

DEFAULT_N_MAX = 100
N_MAX_ENV = "CAVSIM_N_MAX"


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# name -> (type, help)
PARAMS = {
    "nbar": (float, "mean photon number of the coherent field"),
    "alpha": (float, "coherent amplitude (nbar = alpha^2); alternative to --nbar"),
    "phi": (float, "atomic phase of (|g> + e^{i phi}|e>)/sqrt(2)"),
    "n-max": (int, "Fock truncation (coherent default 100 or $CAVSIM_N_MAX; thermal default 1)"),
    "lambda-t-max": (float, "upper end of the time axis (lambda t, chi t or lambda tau)"),
    "points": (int, "number of grid points"),
    "scheme": (str, "bp or new"),
    "lambda-tau": (float, "interaction time lambda*tau_A"),
    "epsilon": (float, "time mismatch, tau_B = tau_A (1 - epsilon)"),
    "temperature": (float, "single scaled temperature T/omega0 in K/THz"),
    "temperature-min": (float, "lowest T/omega0 of the log grid"),
    "temperature-max": (float, "highest T/omega0 of the log grid"),
    "a-squared": (float, "|a|^2 of the teleported qubit a|0> + b|1>"),
    "pairs": (int, "Bell pairs M for the purification bound"),
    "renormalize": (_bool, "renormalise the truncated thermal field (true/false)"),
    "method": (str, "closed or exact"),
    "id": (str, "figure id: " + ", ".join(sweeps.FIGURES)),
    "output": (str, "CSV output path (default stdout)"),
}

COMMANDS = {
    "inversion": ("atomic inversion for an excited atom in a coherent field",
                  ["nbar", "alpha", "n-max", "lambda-t-max", "points", "output"]),
    "entropy-resonant": ("atom-field entropy, resonant interaction",
                         ["nbar", "alpha", "n-max", "lambda-t-max", "points", "output"]),
    "entropy-dispersive": ("atom-field entropy, dispersive interaction",
                           ["nbar", "alpha", "phi", "n-max", "lambda-t-max", "points", "output"]),
    "scheme": ("fidelity and success probability of an entangling scheme",
               ["scheme", "lambda-tau", "epsilon", "temperature", "n-max", "lambda-t-max", "points",
                "output"]),
    "scheme-contour": ("fidelity over the (lambda tau, epsilon) plane",
                       ["scheme", "points", "method", "output"]),
    "thermal-negativity": ("log-negativity versus temperature",
                           ["scheme", "lambda-tau", "temperature-min", "temperature-max", "points",
                            "n-max", "renormalize", "output"]),
    "teleport": ("teleportation fidelities over the thermal resource",
                 ["lambda-tau", "a-squared", "temperature", "temperature-min", "temperature-max",
                  "points", "pairs", "output"]),
    "reproduce-figure": ("table behind one figure", ["id", "n-max", "method", "output"]),
}

REQUIRED = {
    "scheme": ("scheme",),
    "scheme-contour": ("scheme",),
    "thermal-negativity": ("scheme",),
    "reproduce-figure": ("id",),
}


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)


def default_n_max() -> int:
    raw = os.environ.get(N_MAX_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_N_MAX
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{N_MAX_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{N_MAX_ENV} must be >= 1")
    return value


def read_config_file(path) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    out = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("_", "-").lower()] = value
    return out


def _convert(key, value):
    if key not in PARAMS:
        raise ConfigError(f"unknown parameter {key!r}")
    typ = PARAMS[key][0]
    try:
        return typ(value)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid value for {key}: {value!r}") from None


def build_config(command, file_params: dict, flag_params: dict) -> RunConfig:
    """Merge file and flag values (flags win) and validate them."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    allowed = set(COMMANDS[command][1])
    params = {}
    for source in (file_params, flag_params):
        for key, value in source.items():
            if key not in allowed:
                raise ConfigError(f"parameter {key!r} does not apply to {command}")
            params[key] = value if not isinstance(value, str) or PARAMS[key][0] is str else _convert(key, value)
    for key in REQUIRED.get(command, ()):
        if key not in params:
            raise ConfigError(f"{command}: missing required parameter --{key}")
    for key, value in params.items():
        if isinstance(value, float) and not math.isfinite(value):
            raise ConfigError(f"{key} must be finite")
    if "points" in params and params["points"] < 2:
        raise ConfigError("points must be >= 2")
    if "n-max" in params and params["n-max"] < 1:
        raise ConfigError("n-max must be >= 1")
    if "a-squared" in params and not 0.0 <= params["a-squared"] <= 1.0:
        raise ConfigError("a-squared must lie in [0, 1]")
    if "nbar" in params and params["nbar"] < 0:
        raise ConfigError("nbar must be >= 0")
    if params.get("temperature", 0.0) < 0:
        raise ConfigError("temperature must be >= 0")
    for key in ("temperature-min", "temperature-max"):
        if key in params and params[key] <= 0:
            raise ConfigError(f"{key} must be > 0 on a log grid")
    if params.get("method", "closed") not in ("closed", "exact"):
        raise ConfigError("method must be 'closed' or 'exact'")
    return RunConfig(command, params)


def _nbar(cfg: RunConfig) -> float:
    if "alpha" in cfg.params:
        nbar = cfg.params["alpha"] ** 2
        if "nbar" in cfg.params and abs(cfg.params["nbar"] - nbar) > 1e-12 * max(1.0, nbar):
            raise ConfigError("nbar and alpha disagree; give one of them")
        return nbar
    return cfg.get("nbar", 10.0)


def _thermal_range(cfg):
    t_min = cfg.get("temperature-min", 1e-2)
    t_max = cfg.get("temperature-max", 10.0)
    if t_min > t_max:
        raise ConfigError("temperature-min exceeds temperature-max")
    return t_min, t_max


def _scheme_report(cfg: RunConfig) -> str:
    thermal = ThermalParams(cfg["temperature"]) if "temperature" in cfg.params else None
    sc = SchemeConfig(cfg["scheme"], cfg["lambda-tau"], epsilon=cfg.get("epsilon", 0.0),
                      thermal=thermal, n_max=cfg.get("n-max", 1))
    out = run_scheme(sc)
    lines = [
        f"scheme          {out.scheme}",
        f"target          {out.target}",
        f"lambda_tau      {sc.lambda_tau_a:.6g}",
        f"lambda_tau_b    {sc.lt_b:.6g}",
    ]
    if thermal is not None:
        lines.append(f"T_over_omega0   {thermal.scaled_temperature:.6g}")
    if out.closed_form_fidelity is not None:
        p = out.closed_form_probability
        p_txt = f"  P = {p:.4f}" if p is not None else ""
        lines.append(f"closed form     F = {out.closed_form_fidelity:.4f}{p_txt}")
    lines += [
        f"exact state     F = {out.fidelity_vs_target:.4f}  P = {out.success_probability:.4f}",
        f"log-negativity  {out.negativity.log_negativity:.4f}",
    ]
    return "\n".join(lines) + "\n"


def _teleport_report(cfg: RunConfig) -> str:
    lt = cfg.get("lambda-tau", sweeps.NEW_THERMAL_TIME)
    a2 = cfg.get("a-squared", 0.5)
    a, b = math.sqrt(a2), math.sqrt(1.0 - a2)
    p = ThermalParams(cfg["temperature"])
    out = run_scheme(SchemeConfig("new", lt, thermal=p))
    rep = teleport(a, b, out.projected, dims=(3, 2))
    bound = purification_bound(cfg.get("pairs", 1), out.negativity.log_negativity)
    lines = [f"lambda_tau {lt:.6g}  T_over_omega0 {p.scaled_temperature:.6g}  |a|^2 {a2:.6g}",
             "outcome  fidelity  closed_form  probability"]
    for k in OUTCOMES:
        cf = teleport_fidelity_closed_form(k, a, b, lt, p)
        lines.append(f"{k:7s}  {rep.fidelities[k]:.6f}  {cf:.6f}     {rep.probabilities[k]:.6f}")
    lines.append(f"log-negativity {out.negativity.log_negativity:.6f}")
    lines.append(f"N_min for M = {bound.m}: {bound.n_min:.6g}")
    return "\n".join(lines) + "\n"


def _sweep(cfg: RunConfig):
    cmd = cfg.command
    points = cfg.get("points")
    if cmd in ("inversion", "entropy-resonant", "entropy-dispersive"):
        n_max = cfg.get("n-max", default_n_max())
        nbar = _nbar(cfg)
        if cmd == "entropy-dispersive":
            return sweeps.dispersive_entropy_sweep(nbar, cfg.get("phi", 0.0), n_max,
                                                   cfg.get("lambda-t-max", 10.0), points or 1000)
        fn = sweeps.inversion_sweep if cmd == "inversion" else sweeps.resonant_entropy_sweep
        return fn(nbar, n_max, cfg.get("lambda-t-max", 50.0), points or 1000)
    if cmd == "scheme":
        return sweeps.scheme_sweep(cfg["scheme"], cfg.get("lambda-t-max", math.pi), points or 200,
                                   cfg.get("epsilon", 0.0))
    if cmd == "scheme-contour":
        return sweeps.contour_sweep(cfg["scheme"], points or 101, cfg.get("method", "closed"))
    if cmd == "thermal-negativity":
        t_min, t_max = _thermal_range(cfg)
        return sweeps.thermal_negativity_sweep(cfg["scheme"], cfg.get("lambda-tau"), t_min, t_max,
                                               points or 100, cfg.get("n-max", 1),
                                               cfg.get("renormalize", True))
    if cmd == "teleport":
        t_min, t_max = _thermal_range(cfg)
        return sweeps.teleport_sweep(cfg.get("lambda-tau", sweeps.NEW_THERMAL_TIME),
                                     cfg.get("a-squared", 0.5), t_min, t_max, points or 100,
                                     cfg.get("pairs", 1))
    if cmd == "reproduce-figure":
        if cfg["id"].lower() not in sweeps.FIGURES:
            raise ConfigError(f"unknown figure {cfg['id']!r}; expected one of {', '.join(sweeps.FIGURES)}")
        return sweeps.reproduce_figure(cfg["id"], cfg.get("n-max", default_n_max()),
                                       cfg.get("method", "closed"))
    raise ConfigError(f"unknown command {cmd!r}")  # pragma: no cover


def _emit(text: str, path, stdout):
    if path is None:
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one configured command; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        if cfg.command == "scheme" and "lambda-tau" in cfg.params:
            _emit(_scheme_report(cfg), cfg.get("output"), stdout)
            return 0
        if cfg.command == "teleport" and "temperature" in cfg.params:
            _emit(_teleport_report(cfg), cfg.get("output"), stdout)
            return 0
        if cfg.command == "scheme" and "temperature" in cfg.params:
            raise ConfigError("scheme: --temperature needs --lambda-tau")
        result = _sweep(cfg)
        result.provenance.update({f"config.{k}": str(v) for k, v in cfg.params.items() if k != "output"})
        result.provenance["command"] = cfg.command
        result.check(allow_nan=("probability_closed_form",))
        _emit(result.to_csv(), cfg.get("output"), stdout)
        return 0
    except InvariantViolation as exc:
        stderr.write(f"cavsim: invariant violation: {exc}\n")
        return 3
    except (ConfigError, ValueError) as exc:
        stderr.write(f"cavsim: configuration error: {exc}\n")
        return 2
    except OSError as exc:
        stderr.write(f"cavsim: cannot write output: {exc}\n")
        return 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value parameter file")
    parser = argparse.ArgumentParser(prog="cavsim", parents=[common],
                                     description="Cavity QED entanglement toolkit.")
    parser.add_argument("--version", action="version", version=f"cavsim {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, (help_text, keys) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common], argument_default=argparse.SUPPRESS)
        for key in keys:
            typ, h = PARAMS[key]
            p.add_argument(f"--{key}", type=typ, help=h, metavar=key.upper().replace("-", "_"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = vars(parser.parse_args(argv))
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    command = ns.pop("command", None)
    config_path = ns.pop("config", None)
    try:
        file_params = read_config_file(config_path) if config_path else {}
        file_command = file_params.pop("command", None)
        command = command or file_command
        if command is None:
            parser.print_usage(sys.stderr)
            sys.stderr.write("cavsim: error: no command given\n")
            return 2
        flags = {k.replace("_", "-"): v for k, v in ns.items()}
        cfg = build_config(command, file_params, flags)
    except ConfigError as exc:
        if command in COMMANDS:
            parser._subparsers._group_actions[0].choices[command].print_usage(sys.stderr)
        sys.stderr.write(f"cavsim: error: {exc}\n")
        return 2
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
