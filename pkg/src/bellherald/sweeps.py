"""Batch sweeps: config resolution, grid evaluation, CSV emission.

Scenarios
---------
sweep_tau / sweep_tau_weak   heralding scalars vs interaction time, the sweep
                             axis being ombar*tau/(2 pi); the weak preset uses
                             delta = 5 ombar0 by default
sweep_loss                   heralding scalars vs gamma*T at a fixed
                             interaction time tau_factor * 2 pi / ombar0
single_point                 one sweep_tau row at grid.start
fiber_transfer               transfer fidelity vs fiber mode count

Every grid point is independent; with workers > 1 the points are evaluated in
a process pool and rows are sorted by sweep value before writing, so the
output is deterministic (the wall_ms column excepted).
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, fiber, linearized
from .dynamics import InteractionParams, joint_pure_state
from .errors import ConfigError
from .loss import LossParams, LossyPipeline
from .povm import povm_result

SCENARIOS = ("sweep_tau", "sweep_tau_weak", "sweep_loss", "fiber_transfer", "single_point")

POVM_COLUMNS = (
    "sweep_value",
    "p_prior",
    "p_bell",
    "e_min",
    "f_opt",
    "t1_rank",
    "lin_valid",
    "lin_p",
    "wall_ms",
)

FIBER_COLUMNS = (
    "sweep_value",
    "fidelity",
    "fidelity_plain",
    "residual_fiber",
    "cavity_a_leftover",
    "pole_abs_dev",
    "wall_ms",
)


@dataclass
class PhysicsConfig:
    nbar: float = 100.0
    delta_over_omega0: float = 0.0
    g_mag: float = 1.0
    g_phase: float = 0.0
    omega: float = 0.0
    n_max: int = None
    tau_factor: float = 23.0 / 4.0  # sweep_loss interaction time, units 2 pi / ombar0


@dataclass
class GridConfig:
    start: float = 0.0
    stop: float = 12.0
    steps: int = 200


@dataclass
class FiberSection:
    gamma: float = 1.0
    gamma_dwell: float = 12.0
    band_center_ratio: float = 12.0


@dataclass
class SweepConfig:
    scenario: str = "sweep_tau"
    physics: PhysicsConfig = field(default_factory=PhysicsConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    fiber: FiberSection = field(default_factory=FiberSection)
    output_path: str = "sweep.csv"
    workers: int = 1

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")
        if self.physics.nbar <= 0.0:
            raise ConfigError("physics.nbar must be positive")
        if self.physics.g_mag <= 0.0:
            raise ConfigError("physics.g_mag must be positive")
        if self.physics.delta_over_omega0 < 0.0:
            raise ConfigError("physics.delta_over_omega0 must be >= 0")
        if not np.isfinite(self.grid.start) or not np.isfinite(self.grid.stop):
            raise ConfigError("grid bounds must be finite")
        if self.grid.start < 0.0:
            raise ConfigError("grid.start must be >= 0 (negative interaction times are invalid)")
        if self.scenario != "single_point":
            if self.grid.steps < 2:
                raise ConfigError("grid.steps must be >= 2")
            if self.grid.stop <= self.grid.start:
                raise ConfigError("grid.stop must exceed grid.start")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        return self

    def resolved_dict(self):
        d = asdict(self)
        if self.scenario != "fiber_transfer":
            d.pop("fiber")
        return d


_SECTION_TYPES = {"physics": PhysicsConfig, "grid": GridConfig, "fiber": FiberSection}
_SCALAR_KEYS = {"scenario", "output_path", "workers"}


def _apply_section(obj, data, prefix):
    known = obj.__dataclass_fields__
    for key, val in data.items():
        if key not in known:
            raise ConfigError(f"unknown key {prefix}.{key}")
        default = known[key].default
        try:
            if val is not None and default is not None:
                val = type(default)(val)
            setattr(obj, key, val)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {prefix}.{key}: {exc}") from exc


def parse_config(path=None, overrides=None):
    """Resolve a SweepConfig from an optional JSON file plus flat overrides.

    Unknown keys are rejected (fail closed); overrides use dotted names like
    "grid.steps" or top-level names like "scenario".
    """
    cfg = SweepConfig()
    if path is not None:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        for key, val in data.items():
            if key in _SECTION_TYPES:
                if not isinstance(val, dict):
                    raise ConfigError(f"{key} must be an object")
                _apply_section(getattr(cfg, key), val, key)
            elif key in _SCALAR_KEYS:
                setattr(cfg, key, val)
            else:
                raise ConfigError(f"unknown key {key}")
    for dotted, val in (overrides or {}).items():
        if val is None:
            continue
        if "." in dotted:
            section, key = dotted.split(".", 1)
            if section not in _SECTION_TYPES:
                raise ConfigError(f"unknown key {dotted}")
            _apply_section(getattr(cfg, section), {key: val}, section)
        elif dotted in _SCALAR_KEYS:
            setattr(cfg, dotted, val)
        else:
            raise ConfigError(f"unknown key {dotted}")
    if cfg.scenario == "sweep_tau_weak" and cfg.physics.delta_over_omega0 == 0.0:
        cfg.physics.delta_over_omega0 = 5.0
    return cfg.validate()


def interaction_params(cfg: SweepConfig, tau):
    phys = cfg.physics
    om0 = phys.g_mag * np.sqrt(phys.nbar)
    return InteractionParams(
        alpha=np.sqrt(phys.nbar),
        g_mag=phys.g_mag,
        g_phase=phys.g_phase,
        delta=phys.delta_over_omega0 * om0,
        omega=phys.omega,
        tau=tau,
        n_max=phys.n_max,
    )


def _linearized_columns(params):
    try:
        valid, _ = linearized.linearization_valid(params)
        lin_p = linearized.approx_prior(params)
    except ValueError:
        return 0, float("nan")
    return int(valid), lin_p


def _povm_point(cfg, sweep_value):
    """One lossless row; sweep_value is ombar*tau/(2 pi)."""
    t0 = time.perf_counter()
    params = interaction_params(cfg, tau=0.0)
    tau = sweep_value * 2.0 * np.pi / params.omega_bar
    params = params.with_tau(tau)
    r = povm_result(joint_pure_state(params))
    lin_valid, lin_p = _linearized_columns(params)
    return {
        "sweep_value": sweep_value,
        "p_prior": r.p_prior,
        "p_bell": r.p_bell,
        "e_min": r.e_min,
        "f_opt": r.f_opt,
        "t1_rank": r.t1_rank,
        "lin_valid": lin_valid,
        "lin_p": lin_p,
        "wall_ms": (time.perf_counter() - t0) * 1e3,
    }


_LOSS_PIPE = None  # (physics-key, pipeline, params), cached per worker


def _loss_init(cfg):
    global _LOSS_PIPE
    key = json.dumps(asdict(cfg.physics), sort_keys=True)
    if _LOSS_PIPE is not None and _LOSS_PIPE[0] == key:
        return
    params = interaction_params(cfg, tau=1.0)
    tau = cfg.physics.tau_factor * 2.0 * np.pi / params.omega_bar0
    params = params.with_tau(tau)
    _LOSS_PIPE = (key, LossyPipeline(params), params)


def _loss_point(cfg, gamma_t):
    _loss_init(cfg)
    _, pipe, params = _LOSS_PIPE
    t0 = time.perf_counter()
    r = pipe.result(LossParams(gamma_t))
    lin_valid, lin_p = _linearized_columns(params)
    return {
        "sweep_value": gamma_t,
        "p_prior": r.p_prior,
        "p_bell": r.p_bell,
        "e_min": r.e_min,
        "f_opt": r.f_opt,
        "t1_rank": r.t1_rank,
        "lin_valid": lin_valid,
        "lin_p": lin_p,
        "wall_ms": (time.perf_counter() - t0) * 1e3,
    }


def _fiber_point(cfg, n_modes):
    t0 = time.perf_counter()
    n_modes = int(round(n_modes))
    if n_modes % 2 == 0:
        n_modes += 1
    fc = cfg.fiber
    base = fiber.build_fiber(
        fiber.transfer_lattice_config(
            gamma=fc.gamma,
            n_modes=n_modes,
            gamma_t=fc.gamma_dwell,
            band_center_ratio=fc.band_center_ratio,
        )
    )
    eng = fiber.with_engineered_couplings(base)
    res = fiber.transfer_amplitude(eng, 1.0)
    res_plain = fiber.transfer_amplitude(base, 1.0)
    return {
        "sweep_value": n_modes,
        "fidelity": res.fidelity,
        "fidelity_plain": res_plain.fidelity,
        "residual_fiber": res.residual_fiber,
        "cavity_a_leftover": res.cavity_a_leftover,
        "pole_abs_dev": abs(res.alpha_out - res.alpha_pole),
        "wall_ms": (time.perf_counter() - t0) * 1e3,
    }


def grid_values(cfg: SweepConfig):
    if cfg.scenario == "single_point":
        return np.array([cfg.grid.start])
    return np.linspace(cfg.grid.start, cfg.grid.stop, cfg.grid.steps)


def run_sweep(cfg: SweepConfig, output_path=None):
    """Evaluate the configured grid and write the CSV; returns the rows."""
    cfg.validate()
    values = grid_values(cfg)
    if cfg.scenario in ("sweep_tau", "sweep_tau_weak", "single_point"):
        point, columns, init = _povm_point, POVM_COLUMNS, None
    elif cfg.scenario == "sweep_loss":
        point, columns, init = _loss_point, POVM_COLUMNS, _loss_init
    else:
        point, columns, init = _fiber_point, FIBER_COLUMNS, None

    if cfg.workers > 1:
        with ProcessPoolExecutor(
            max_workers=cfg.workers, initializer=init, initargs=(cfg,) if init else ()
        ) as pool:
            rows = list(pool.map(_PointTask(point, cfg), values))
    else:
        if init is not None:
            init(cfg)
        rows = [point(cfg, v) for v in values]
    rows.sort(key=lambda r: r["sweep_value"])

    path = output_path or cfg.output_path
    write_csv(path, cfg, columns, rows)
    return rows


class _PointTask:
    """Picklable per-point callable for the process pool."""

    def __init__(self, point, cfg):
        self.point = point
        self.cfg = cfg

    def __call__(self, value):
        return self.point(self.cfg, value)


def format_cell(col, val):
    if col == "t1_rank" or col == "lin_valid":
        return str(int(val))
    if col == "sweep_value":
        return f"{val:.12g}"
    if col == "wall_ms":
        return f"{val:.3f}"
    return f"{val:.12e}"


def write_csv(path, cfg, columns, rows):
    from . import fock

    n_max = cfg.physics.n_max
    if n_max is None and cfg.scenario != "fiber_transfer":
        n_max = fock.default_n_max(cfg.physics.nbar)
    lines = [
        f"# bellherald {__version__}",
        f"# n_max = {n_max}",
        f"# config = {json.dumps(cfg.resolved_dict(), sort_keys=True)}",
        ",".join(columns),
    ]
    for row in rows:
        lines.append(",".join(format_cell(c, row[c]) for c in columns))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
