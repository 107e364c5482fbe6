"""Scenario configs, the experiment runner, and CSV emission.

A scenario is a YAML file naming the agent count, kernel, weight dynamics,
control strategy, and integrator settings.  Runs are reproducible: the
initial state is drawn from a counter-based Philox generator seeded by the
config (positions first, then weights), and all numeric CSV output is
written in full round-trip precision, so identical configs give
byte-identical files.

Subcommands:

    run         simulate one scenario, write trajectory/controls/summary CSVs
    compare     run several strategies from identical initial conditions
    acceptance  run the built-in verification suite and write its report
"""
from __future__ import annotations

import argparse
import csv
import importlib.resources
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import yaml

from .control import (ControlSet, ExtremalPairLaw, SteepestDescentLaw,
                      ZeroLaw, open_loop_weight_control)
from .integrate import (IntegratorConfig, SimulationError, Trajectory,
                        simulate)
from .model import InteractionKernel, MassDynamics

STRATEGIES = ("linf_um", "l1_um", "linf_free", "l1_free", "thm1", "thm2", "zero")

# barycenter counts as arrived below this distance in comparison tables
THRESHOLD = 0.05

_DEFAULT_COMPARE = ("linf_um", "l1_um", "linf_free", "l1_free")

_STRATEGY_NEEDS = {
    "linf_um": ("alpha",),
    "linf_free": ("alpha",),
    "thm1": ("alpha",),
    "l1_um": ("A",),
    "l1_free": ("A",),
    "thm2": ("alpha", "alpha_tilde"),
    "zero": (),
}


class ConfigError(ValueError):
    """Scenario file failed to parse or validate."""


# ---------------------------------------------------------------------------
# config loading and validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioConfig:
    seed: int
    N: int
    d: int
    strategy: str
    init: dict
    kernel_spec: dict
    psi_spec: dict
    target_spec: dict | None
    integrator: IntegratorConfig
    alpha: float | None = None
    A: float | None = None
    alpha_tilde: float | None = None
    clamp: bool = True
    tau_min: float = 1e-3


def _check_keys(section, allowed, where):
    if not isinstance(section, dict):
        raise ConfigError(f"'{where}' must be a mapping")
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key '{key}' in {where}")


def _get_float(section, key, where, required=True, default=None):
    if key not in section:
        if required:
            raise ConfigError(f"missing required key '{key}' in {where}")
        return default
    val = section[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"'{key}' in {where} must be a number")
    return float(val)


def _get_int(section, key, where):
    if key not in section:
        raise ConfigError(f"missing required key '{key}' in {where}")
    val = section[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"'{key}' in {where} must be an integer")
    return val


def _float_list(val, key, where):
    if not isinstance(val, (list, tuple)):
        raise ConfigError(f"'{key}' in {where} must be a list of numbers")
    out = []
    for item in val:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"'{key}' in {where} must be a list of numbers")
        out.append(float(item))
    return out


def _validate_init(init, n, d):
    if init is None:
        init = {"mode": "uniform_box"}
    _check_keys(init, {"mode", "box", "weight_range", "positions", "weights"}, "init")
    mode = init.get("mode", "uniform_box")
    if mode == "uniform_box":
        _check_keys(init, {"mode", "box", "weight_range"}, "init")
        box = init.get("box", [[0.0, 1.0]] * d)
        if not isinstance(box, (list, tuple)) or len(box) != d:
            raise ConfigError(f"'box' in init must list {d} [lo, hi] pairs")
        parsed_box = []
        for dim, pair in enumerate(box):
            vals = _float_list(pair, "box", "init")
            if len(vals) != 2 or not vals[0] < vals[1]:
                raise ConfigError(f"'box' entry {dim} in init must be [lo, hi] with lo < hi")
            parsed_box.append(vals)
        wr = _float_list(init.get("weight_range", [0.5, 1.5]), "weight_range", "init")
        if len(wr) != 2 or not (0 < wr[0] <= wr[1]):
            raise ConfigError("'weight_range' in init must be [lo, hi] with 0 < lo <= hi")
        return {"mode": "uniform_box", "box": parsed_box, "weight_range": wr}
    if mode == "explicit":
        _check_keys(init, {"mode", "positions", "weights"}, "init")
        if "positions" not in init or "weights" not in init:
            raise ConfigError("explicit init requires 'positions' and 'weights'")
        pos = np.asarray(init["positions"], dtype=float)
        if pos.shape != (n, d):
            raise ConfigError(f"'positions' in init must have shape ({n}, {d})")
        wts = np.asarray(_float_list(init["weights"], "weights", "init"))
        if wts.size != n:
            raise ConfigError(f"'weights' in init must have length {n}")
        if (wts <= 0).any():
            raise ConfigError("weights must be positive")
        return {"mode": "explicit", "positions": pos, "weights": wts}
    raise ConfigError(f"unknown init mode '{mode}'")


def _validate_kernel(spec):
    if spec is None or "kind" not in spec:
        raise ConfigError("missing required key 'kind' in kernel")
    kind = spec["kind"]
    if kind == "gaussian":
        _check_keys(spec, {"kind"}, "kernel")
        return {"kind": "gaussian"}
    if kind == "constant":
        _check_keys(spec, {"kind", "value"}, "kernel")
        value = _get_float(spec, "value", "kernel", required=False, default=1.0)
        if not value > 0:
            raise ConfigError("'value' in kernel must be positive")
        return {"kind": "constant", "value": value}
    if kind == "tabulated":
        _check_keys(spec, {"kind", "s", "a"}, "kernel")
        if "s" not in spec or "a" not in spec:
            raise ConfigError("tabulated kernel requires 's' and 'a'")
        s = _float_list(spec["s"], "s", "kernel")
        a = _float_list(spec["a"], "a", "kernel")
        if len(s) != len(a) or len(s) < 2:
            raise ConfigError("'s' and 'a' in kernel must be equal-length lists (>= 2)")
        return {"kind": "tabulated", "s": s, "a": a}
    raise ConfigError(f"unknown kernel kind '{kind}'")


def _validate_psi(spec, d):
    if spec is None:
        return {"kind": "zero"}
    _check_keys(spec, {"kind", "rate", "gain", "axis"}, "psi")
    kind = spec.get("kind", "zero")
    if kind == "zero":
        _check_keys(spec, {"kind"}, "psi")
        return {"kind": "zero"}
    if kind == "uniform_decay":
        _check_keys(spec, {"kind", "rate"}, "psi")
        rate = _get_float(spec, "rate", "psi")
        if rate < 0:
            raise ConfigError("'rate' in psi must be nonnegative")
        return {"kind": "uniform_decay", "rate": rate}
    if kind == "influence_gain":
        _check_keys(spec, {"kind"}, "psi")
        return {"kind": "influence_gain"}
    if kind == "coordinate_drift":
        _check_keys(spec, {"kind", "gain", "axis"}, "psi")
        gain = _get_float(spec, "gain", "psi")
        axis = spec.get("axis", 0)
        if isinstance(axis, bool) or not isinstance(axis, int) or not 0 <= axis < d:
            raise ConfigError(f"'axis' in psi must be an integer in [0, {d})")
        return {"kind": "coordinate_drift", "gain": gain, "axis": axis}
    raise ConfigError(f"unknown psi kind '{kind}'")


def _validate_target(spec, n, d, strategy):
    if spec is None:
        if strategy != "zero":
            raise ConfigError(f"missing required key 'target' for strategy '{strategy}'")
        return None
    _check_keys(spec, {"mode", "point", "coefficients"}, "target")
    mode = spec.get("mode")
    if mode == "point":
        _check_keys(spec, {"mode", "point"}, "target")
        if "point" not in spec:
            raise ConfigError("target mode 'point' requires 'point'")
        pt = _float_list(spec["point"], "point", "target")
        if len(pt) != d:
            raise ConfigError(f"'point' in target must have length {d}")
        return {"mode": "point", "point": pt}
    if mode == "blend":
        _check_keys(spec, {"mode", "coefficients"}, "target")
        if "coefficients" not in spec:
            raise ConfigError("target mode 'blend' requires 'coefficients'")
        co = np.asarray(_float_list(spec["coefficients"], "coefficients", "target"))
        if co.size != n:
            raise ConfigError(f"'coefficients' in target must have length {n}")
        if (co < 0).any() or co.sum() <= 0:
            raise ConfigError("'coefficients' in target must be nonnegative with positive sum")
        return {"mode": "blend", "coefficients": co / co.sum()}
    raise ConfigError(f"unknown target mode '{mode}'")


def _validate_strategy_params(cfg: ScenarioConfig):
    """Raise unless every parameter the strategy consumes is present."""
    for key in _STRATEGY_NEEDS[cfg.strategy]:
        if getattr(cfg, key) is None:
            raise ConfigError(f"missing required key '{key}' for strategy '{cfg.strategy}'")
    if cfg.strategy != "zero" and cfg.target_spec is None:
        raise ConfigError(f"missing required key 'target' for strategy '{cfg.strategy}'")


def load_config(path) -> ScenarioConfig:
    """Parse and validate a scenario file; every unknown key is an error."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")

    _check_keys(raw, {"seed", "N", "d", "init", "kernel", "psi", "strategy",
                      "alpha", "A", "alpha_tilde", "clamp", "tau_min",
                      "target", "integrator"}, "config")
    for key in ("seed", "N", "d", "strategy", "kernel", "integrator"):
        if key not in raw:
            raise ConfigError(f"missing required key '{key}' in config")

    seed = _get_int(raw, "seed", "config")
    n = _get_int(raw, "N", "config")
    d = _get_int(raw, "d", "config")
    if n < 1 or d < 1:
        raise ConfigError("'N' and 'd' must be positive integers")
    strategy = raw["strategy"]
    if strategy not in STRATEGIES:
        raise ConfigError(f"unknown strategy '{strategy}' (choose from {', '.join(STRATEGIES)})")

    integ = raw["integrator"]
    _check_keys(integ, {"h", "t_end", "stop_eps", "mass_floor", "mass_mode"}, "integrator")
    h = _get_float(integ, "h", "integrator")
    t_end = _get_float(integ, "t_end", "integrator")
    stop_eps = _get_float(integ, "stop_eps", "integrator", required=False, default=0.0)
    mass_floor = _get_float(integ, "mass_floor", "integrator", required=False, default=1e-12)
    mass_mode = integ.get("mass_mode", "joint_rk4")
    try:
        integrator = IntegratorConfig(h=h, t_end=t_end, stop_eps=stop_eps,
                                      mass_floor=mass_floor, mass_mode=mass_mode)
    except ValueError as exc:
        raise ConfigError(f"integrator: {exc}") from exc

    clamp = raw.get("clamp", True)
    if not isinstance(clamp, bool):
        raise ConfigError("'clamp' must be a boolean")
    tau_min = _get_float(raw, "tau_min", "config", required=False, default=1e-3)
    if not tau_min > 0:
        raise ConfigError("'tau_min' must be positive")
    for key in ("alpha", "A", "alpha_tilde"):
        val = _get_float(raw, key, "config", required=False)
        if val is not None and not val > 0:
            raise ConfigError(f"'{key}' must be positive")

    cfg = ScenarioConfig(
        seed=seed,
        N=n,
        d=d,
        strategy=strategy,
        init=_validate_init(raw.get("init"), n, d),
        kernel_spec=_validate_kernel(raw.get("kernel")),
        psi_spec=_validate_psi(raw.get("psi"), d),
        target_spec=_validate_target(raw.get("target"), n, d, strategy),
        integrator=integrator,
        alpha=_get_float(raw, "alpha", "config", required=False),
        A=_get_float(raw, "A", "config", required=False),
        alpha_tilde=_get_float(raw, "alpha_tilde", "config", required=False),
        clamp=clamp,
        tau_min=tau_min,
    )
    _validate_strategy_params(cfg)
    return cfg


def seed_scenario_path() -> Path:
    """Filesystem path of the bundled stand-in scenario."""
    return Path(str(importlib.resources.files("influencekit") / "data" / "seed_scenario.yaml"))


# ---------------------------------------------------------------------------
# building runs from a config
# ---------------------------------------------------------------------------

def initial_state(config: ScenarioConfig) -> tuple[np.ndarray, np.ndarray]:
    """Initial positions and weights.  Sampled draws come from a Philox
    counter-based generator; positions are drawn before weights, so the
    positions of a scenario do not change when only the weight range does."""
    init = config.init
    if init["mode"] == "explicit":
        return init["positions"].copy(), init["weights"].copy()
    rng = np.random.Generator(np.random.Philox(config.seed))
    box = np.asarray(init["box"], dtype=float)
    x0 = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((config.N, config.d))
    lo, hi = init["weight_range"]
    m0 = lo + (hi - lo) * rng.random(config.N)
    return x0, m0


def build_kernel(config: ScenarioConfig) -> InteractionKernel:
    spec = config.kernel_spec
    if spec["kind"] == "gaussian":
        return InteractionKernel.gaussian()
    if spec["kind"] == "constant":
        return InteractionKernel.constant(spec["value"])
    return InteractionKernel.tabulated(np.asarray(spec["s"]), np.asarray(spec["a"]))


def build_psi(config: ScenarioConfig, kernel: InteractionKernel) -> MassDynamics:
    spec = config.psi_spec
    if spec["kind"] == "zero":
        return MassDynamics.zero()
    if spec["kind"] == "uniform_decay":
        return MassDynamics.uniform_decay(spec["rate"])
    if spec["kind"] == "influence_gain":
        return MassDynamics.influence_gain(kernel)
    return MassDynamics.coordinate_drift(spec["gain"], spec["axis"])


def resolve_target(config: ScenarioConfig, x0: np.ndarray) -> np.ndarray | None:
    spec = config.target_spec
    if spec is None:
        return None
    if spec["mode"] == "point":
        return np.asarray(spec["point"], dtype=float)
    return spec["coefficients"] @ x0


def build_law(config: ScenarioConfig, x0, m0, target):
    strat = config.strategy
    if strat == "zero":
        return ZeroLaw(target=target)
    if strat == "linf_um":
        return SteepestDescentLaw(target, ControlSet.linf(config.alpha, mass_conserving=True))
    if strat == "l1_um":
        return SteepestDescentLaw(target, ControlSet.l1(config.A, mass_conserving=True))
    if strat == "linf_free":
        return SteepestDescentLaw(target, ControlSet.linf(config.alpha, mass_conserving=False))
    if strat == "l1_free":
        return SteepestDescentLaw(target, ControlSet.l1(config.A, mass_conserving=False))
    if strat == "thm1":
        return ExtremalPairLaw(target, config.alpha, clamp=config.clamp)
    if strat == "thm2":
        return open_loop_weight_control(x0, m0, target, config.alpha,
                                        config.alpha_tilde, config.tau_min)
    raise ConfigError(f"unknown strategy '{strat}'")


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    # repr round-trips doubles exactly, keeping reruns byte-identical
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def write_trajectory_csv(path: Path, traj: Trajectory):
    n, d = traj.x.shape[1], traj.x.shape[2]
    header = (["t"]
              + [f"x_{i}_{k}" for i in range(1, n + 1) for k in range(1, d + 1)]
              + [f"m_{i}" for i in range(1, n + 1)]
              + [f"bary_{k}" for k in range(1, d + 1)]
              + ["dist_target", "diameter", "total_mass"])
    rows = (
        [traj.t[s], *traj.x[s].ravel(), *traj.m[s], *traj.bary[s],
         traj.dist[s], traj.diameter[s], traj.total_mass[s]]
        for s in range(traj.n_samples)
    )
    _write_csv(path, header, rows)


def _objective_series(traj: Trajectory) -> np.ndarray:
    """Instantaneous derivative of the squared barycenter-target distance
    produced by the held control at each sample."""
    if traj.target is None:
        return np.full(traj.n_samples, math.nan)
    vals = np.empty(traj.n_samples)
    for s in range(traj.n_samples):
        xbar = traj.bary[s]
        g = (traj.x[s] - xbar) @ (xbar - traj.target)
        vals[s] = 2.0 * ((traj.m[s] * g) @ traj.u[s]) / traj.m[s].sum()
    return vals


def write_controls_csv(path: Path, traj: Trajectory):
    n = traj.u.shape[1]
    header = ["t"] + [f"u_{i}" for i in range(1, n + 1)] + ["active_count", "objective_dXdt"]
    obj = _objective_series(traj)
    rows = (
        [traj.t[s], *traj.u[s], int(traj.active_count[s]), obj[s]]
        for s in range(traj.n_samples)
    )
    _write_csv(path, header, rows)


SUMMARY_COLUMNS = ("strategy", "time_to_threshold", "final_dist",
                   "min_total_mass", "max_total_mass", "mean_active",
                   "clamped_steps")


def summary_row(strategy: str, traj: Trajectory) -> dict:
    reached = traj.dist <= THRESHOLD  # NaN distances never register
    ttt = float(traj.t[int(np.argmax(reached))]) if reached.any() else math.inf
    return {
        "strategy": strategy,
        "time_to_threshold": ttt,
        "final_dist": float(traj.dist[-1]),
        "min_total_mass": float(traj.total_mass.min()),
        "max_total_mass": float(traj.total_mass.max()),
        "mean_active": float(traj.active_count.mean()),
        "clamped_steps": int(traj.clamped.sum()),
    }


def _failure_row(strategy: str) -> dict:
    row = {col: math.nan for col in SUMMARY_COLUMNS}
    row["strategy"] = strategy
    return row


def write_summary_csv(path: Path, rows: list[dict]):
    _write_csv(path, list(SUMMARY_COLUMNS),
               ([row[c] for c in SUMMARY_COLUMNS] for row in rows))


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def run(config: ScenarioConfig, out_dir) -> dict:
    """Simulate one scenario and write the three CSVs into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    x0, m0 = initial_state(config)
    kernel = build_kernel(config)
    psi = build_psi(config, kernel)
    target = resolve_target(config, x0)
    law = build_law(config, x0, m0, target)
    traj = simulate(x0, m0, law, psi, kernel, config.integrator)
    write_trajectory_csv(out / "trajectory.csv", traj)
    write_controls_csv(out / "controls.csv", traj)
    row = summary_row(config.strategy, traj)
    write_summary_csv(out / "summary.csv", [row])
    return row


def compare(config: ScenarioConfig, strategies, out_dir) -> tuple[list[dict], list[tuple[str, str]]]:
    """Run each strategy from identical initial conditions.

    Per-strategy outputs land in out_dir/<strategy>/; the combined summary
    (one row per strategy, nan row when that run failed) in
    out_dir/summary.csv.  Returns (rows, failures).
    """
    for strat in strategies:
        if strat not in STRATEGIES:
            raise ConfigError(f"unknown strategy '{strat}' (choose from {', '.join(STRATEGIES)})")
        _validate_strategy_params(replace(config, strategy=strat))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    x0, m0 = initial_state(config)
    kernel = build_kernel(config)
    psi = build_psi(config, kernel)
    target = resolve_target(config, x0)

    rows: list[dict] = []
    failures: list[tuple[str, str]] = []
    for strat in strategies:
        sub = out / strat
        sub.mkdir(parents=True, exist_ok=True)
        try:
            law = build_law(replace(config, strategy=strat), x0, m0, target)
            traj = simulate(x0, m0, law, psi, kernel, config.integrator)
        except (SimulationError, ValueError, RuntimeError) as exc:
            failures.append((strat, str(exc)))
            rows.append(_failure_row(strat))
            continue
        write_trajectory_csv(sub / "trajectory.csv", traj)
        write_controls_csv(sub / "controls.csv", traj)
        row = summary_row(strat, traj)
        write_summary_csv(sub / "summary.csv", [row])
        rows.append(row)
    write_summary_csv(out / "summary.csv", rows)
    return rows, failures


def _format_table(rows: list[dict]) -> str:
    cells = [[_cell(row[c]) if not isinstance(row[c], float) else f"{row[c]:.6g}"
              for c in SUMMARY_COLUMNS] for row in rows]
    table = [list(SUMMARY_COLUMNS)] + cells
    widths = [max(len(r[j]) for r in table) for j in range(len(SUMMARY_COLUMNS))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
                     for r in table)


def acceptance(out_dir, criteria=None) -> int:
    """Run the verification suite, print one line per criterion, and write
    acceptance_report.csv.  Returns 0 when everything passed."""
    from . import acceptance as suite

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results = suite.run_all(criteria)
    _write_csv(out / "acceptance_report.csv",
               ["criterion", "measured", "bound", "passed", "detail"],
               ([r.name, r.measured, r.bound, int(r.passed), r.detail] for r in results))
    for r in results:
        verdict = "PASS" if r.passed else "FAIL"
        print(f"{verdict} {r.name}: measured={r.measured:.6g} bound={r.bound:.6g} ({r.detail})")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} criterion(s) failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    print(f"all {len(results)} criteria passed")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="influencekit",
        description="Simulate and steer weighted opinion-dynamics systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario and write CSVs")
    p_run.add_argument("--config", required=True, help="scenario YAML file")
    p_run.add_argument("--out", required=True, help="output directory")

    p_cmp = sub.add_parser("compare", help="run several strategies from the same start")
    p_cmp.add_argument("--config", required=True, help="scenario YAML file")
    p_cmp.add_argument("--strategies", default=",".join(_DEFAULT_COMPARE),
                       help="comma-separated strategy list")
    p_cmp.add_argument("--out", required=True, help="output directory")

    p_acc = sub.add_parser("acceptance", help="run the verification suite")
    p_acc.add_argument("--out", required=True, help="directory for the report")
    p_acc.add_argument("--criteria", default=None,
                       help="comma-separated subset of criterion names")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            config = load_config(args.config)
            row = run(config, args.out)
            print(_format_table([row]))
            return 0
        if args.command == "compare":
            config = load_config(args.config)
            strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
            if not strategies:
                raise ConfigError("no strategies requested")
            rows, failures = compare(config, strategies, args.out)
            print(_format_table(rows))
            for strat, msg in failures:
                print(f"run failed for {strat}: {msg}", file=sys.stderr)
            return 1 if failures else 0
        criteria = None
        if args.criteria:
            criteria = [c.strip() for c in args.criteria.split(",") if c.strip()]
        return acceptance(args.out, criteria)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"simulation failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
