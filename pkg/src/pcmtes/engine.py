"""Shared numerics and run orchestration: damped Newton, fixed-step RK4 with
event localisation, scenario sequencing and model comparison.

Runs are deterministic: fixed-step integration, state-independent iteration
rules, and no wall-clock anywhere near the outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

_SQRT_EPS = math.sqrt(np.finfo(float).eps)


class SolverError(RuntimeError):
    """Newton iteration failed to converge within its budget."""

    def __init__(self, message: str, residual_norm: float = math.nan):
        super().__init__(message)
        self.residual_norm = residual_norm


class UnsupportedOperationError(RuntimeError):
    """Requested operation outside a model's validity (e.g. cycle reversal)."""


def newton_solve(residual: Callable, guess, rel_tol: float = 1.0e-8,
                 max_iter: int = 50, *, scale=None,
                 clamp: Optional[Callable] = None) -> np.ndarray:
    """Damped Newton iteration with a forward-difference Jacobian.

    Convergence when ||residual||_inf / scale < rel_tol; the step is halved up
    to 8 times whenever the scaled residual norm would increase. ``clamp`` may
    project iterates back into the admissible region. Raises SolverError with
    the final residual norm on failure.
    """
    x = np.atleast_1d(np.asarray(guess, dtype=float)).copy()
    scalar_input = np.ndim(guess) == 0
    if clamp is not None:
        x = np.atleast_1d(np.asarray(clamp(x), dtype=float))

    def eval_res(xv):
        out = np.atleast_1d(np.asarray(residual(xv[0] if scalar_input else xv),
                                       dtype=float))
        if out.shape != x.shape:
            raise ValueError("newton_solve: residual shape mismatch")
        return out

    f = eval_res(x)
    if not np.all(np.isfinite(f)):
        raise SolverError("newton_solve: residual not finite at initial guess")
    if scale is None:
        scale_arr = np.maximum(1.0, np.abs(f))
    else:
        scale_arr = np.broadcast_to(np.asarray(scale, dtype=float), x.shape)
        scale_arr = np.maximum(scale_arr, 1.0e-300)
    norm = float(np.max(np.abs(f) / scale_arr))

    for _ in range(max_iter):
        if norm < rel_tol:
            return x[0] if scalar_input else x
        jac = _fd_jacobian(eval_res, x, f)
        try:
            dx = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            raise SolverError("newton_solve: singular Jacobian", norm) from None
        lam = 1.0
        x_new, f_new, norm_new = x, f, norm
        for halving in range(9):
            x_try = x + lam * dx
            if clamp is not None:
                x_try = np.atleast_1d(np.asarray(clamp(x_try), dtype=float))
            f_try = eval_res(x_try)
            if np.all(np.isfinite(f_try)):
                norm_try = float(np.max(np.abs(f_try) / scale_arr))
                if norm_try < norm or halving == 8:
                    x_new, f_new, norm_new = x_try, f_try, norm_try
                    break
            if halving == 8:
                raise SolverError("newton_solve: damping exhausted on "
                                  "non-finite residual", norm)
            lam *= 0.5
        x, f, norm = x_new, f_new, norm_new

    if norm < rel_tol:
        return x[0] if scalar_input else x
    raise SolverError(
        f"newton_solve: no convergence after {max_iter} iterations "
        f"(scaled residual {norm:.3e})", norm,
    )


def _fd_jacobian(eval_res, x, f):
    n = x.size
    jac = np.empty((n, n))
    for j in range(n):
        h = _SQRT_EPS * max(abs(x[j]), 1.0)
        xp = x.copy()
        xp[j] += h
        jac[:, j] = (eval_res(xp) - f) / h
    return jac


def solve_scalar(residual: Callable[[float], float], guess: float,
                 rel_tol: float = 1.0e-8, max_iter: int = 50, *,
                 scale: float = 1.0, lo: float = -math.inf,
                 hi: float = math.inf) -> float:
    """Scalar damped Newton with interval clamping (hot-path specialisation
    of newton_solve; same damping and tolerance semantics)."""
    x = min(max(guess, lo), hi)
    f = residual(x)
    if not math.isfinite(f):
        raise SolverError("solve_scalar: residual not finite at initial guess")
    scale = max(scale, 1.0e-300)
    norm = abs(f) / scale
    for _ in range(max_iter):
        if norm < rel_tol:
            return x
        h = _SQRT_EPS * max(abs(x), 1.0)
        if x + h > hi:
            h = -h
        fp = residual(min(max(x + h, lo), hi))
        dfdx = (fp - f) / h
        if dfdx == 0.0 or not math.isfinite(dfdx):
            raise SolverError("solve_scalar: singular derivative", norm)
        dx = -f / dfdx
        lam = 1.0
        for halving in range(9):
            x_try = min(max(x + lam * dx, lo), hi)
            f_try = residual(x_try)
            if math.isfinite(f_try):
                norm_try = abs(f_try) / scale
                if norm_try < norm or halving == 8:
                    x, f, norm = x_try, f_try, norm_try
                    break
            if halving == 8:
                raise SolverError("solve_scalar: damping exhausted on "
                                  "non-finite residual", norm)
            lam *= 0.5
    if norm < rel_tol:
        return x
    raise SolverError(
        f"solve_scalar: no convergence after {max_iter} iterations "
        f"(scaled residual {norm:.3e})", norm,
    )


# --- RK4 integration with event localisation ---------------------------------

EVENT_RESOLUTION = 0.01  # s


def rk4_step(deriv: Callable, y: np.ndarray, h: float) -> np.ndarray:
    """One classical four-stage Runge-Kutta step."""
    k1 = deriv(y)
    k2 = deriv(y + 0.5 * h * k1)
    k3 = deriv(y + 0.5 * h * k2)
    k4 = deriv(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _advance(deriv, y, dt, substeps):
    h = dt / substeps
    for _ in range(substeps):
        y = rk4_step(deriv, y, h)
    return y


def integrate_rk4(deriv: Callable, state: np.ndarray, dt: float,
                  events: Sequence[tuple[str, Callable[[np.ndarray], float]]] = (),
                  substeps: int = 1,
                  resolution: float = EVENT_RESOLUTION):
    """Advance the state by up to dt, truncating at the first event crossing.

    Each event is (name, predicate); a sign change of the predicate between
    the interval start and end fires it, and the crossing time is bisected to
    ``resolution``. Returns (state, time_advanced, fired_names). The step is
    truncated just past the earliest crossing so callers can resume.
    """
    if dt <= 0.0:
        raise ValueError("integrate_rk4: dt must be positive")
    y0 = np.asarray(state, dtype=float)
    g0 = [fn(y0) for _, fn in events]
    y1 = _advance(deriv, y0, dt, substeps)
    fired = _crossings(events, g0, y1)
    if not fired:
        return y1, dt, []

    lo, hi, y_hi = 0.0, dt, y1
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        sub_mid = max(1, math.ceil(substeps * mid / dt))
        y_mid = _advance(deriv, y0, mid, sub_mid)
        if _crossings(events, g0, y_mid):
            hi, y_hi = mid, y_mid
        else:
            lo = mid
    return y_hi, hi, _crossings(events, g0, y_hi)


def _crossings(events, g0, y):
    fired = []
    for (name, fn), g_start in zip(events, g0):
        g_end = fn(y)
        if g_start > 0.0 and g_end <= 0.0 or g_start < 0.0 and g_end >= 0.0:
            fired.append(name)
    return fired


# --- scenario machinery -------------------------------------------------------

CHARGE = "charge"
DISCHARGE = "discharge"
STANDBY = "standby"
STEP_MODES = (CHARGE, DISCHARGE, STANDBY)


@dataclass(frozen=True)
class ScenarioStep:
    """One constant-inputs segment of a run."""

    mode: str
    duration: float  # s
    inputs: dict = field(default_factory=dict)  # OperatingInputs overrides

    def __post_init__(self):
        if self.mode not in STEP_MODES:
            raise ValueError(f"ScenarioStep.mode must be one of {STEP_MODES}")
        if self.duration <= 0.0:
            raise ValueError("ScenarioStep.duration must be positive")
        if self.mode == CHARGE and self.inputs.get("mdot_sec", 0.0) != 0.0:
            raise ValueError("charge steps must not set a secondary mass flow")
        if self.mode == DISCHARGE and self.inputs.get("mdot_ref", 0.0) != 0.0:
            raise ValueError("discharge steps must not set a refrigerant mass flow")
        if self.mode == STANDBY:
            for key in ("mdot_ref", "mdot_sec"):
                if self.inputs.get(key, 0.0) != 0.0:
                    raise ValueError("standby steps must not set any mass flow")


@dataclass(frozen=True)
class Event:
    name: str
    t: float          # s from run start
    detail: str = ""


@dataclass(frozen=True)
class StepRecord:
    """State and per-step algebraic solution at one time-grid point."""

    t: float
    scenario_mode: str
    state: dict            # model state snapshot (plain floats/lists)
    solution: object       # AlgebraicSolution
    gamma: float
    htc: object            # HtcSnapshot


@dataclass
class RunResult:
    model: str
    dt: float
    times: np.ndarray
    records: list
    events: list
    summary: dict


def run_scenario(scenario: Sequence[ScenarioStep], model: str, config) -> RunResult:
    """Run a charge/stand-by/discharge sequence with the selected model.

    ``config`` is a resolved RunConfig. Identical configs give bit-identical
    results. The continuous model refuses sequences that would reverse an
    incomplete cycle (its structural limitation); the error names the
    alternative.
    """
    from . import continuous, discrete

    if model == "continuous":
        stepper = continuous.ContinuousModel(config.params)
    elif model == "discrete":
        stepper = discrete.DiscreteModel(config.params, config.n_layers)
    else:
        raise ValueError(f"unknown model {model!r}")

    state = stepper.initial_state(config.initial_condition, config.initial_t_int)
    dt = config.dt
    t = 0.0
    records: list[StepRecord] = []
    events: list[Event] = []
    cycle_starts: dict[str, float] = {}
    durations: list[dict] = []

    first_mode = scenario[0].mode if scenario else STANDBY
    first_inputs = (config.operating_for(scenario[0])
                    if scenario else config.operating_for(None))
    state = stepper.prepare_for(state, first_mode, events, t, cycle_starts)
    records.append(stepper.record(t, first_mode, state, first_inputs))

    for step_def in scenario:
        inputs = config.operating_for(step_def)
        state = stepper.prepare_for(state, step_def.mode, events, t, cycle_starts)
        n_grid = round(step_def.duration / dt)
        if abs(n_grid * dt - step_def.duration) > 1e-9 * max(1.0, step_def.duration):
            raise ValueError("scenario step duration must be a multiple of dt")
        for _ in range(n_grid):
            state, new_events = stepper.step(state, inputs, dt, t)
            t += dt
            for ev in new_events:
                events.append(ev)
                if ev.name == "cycle_complete":
                    form = ev.detail or "cycle"
                    start = cycle_starts.pop(form, 0.0)
                    durations.append({"form": form, "start_s": start,
                                      "end_s": ev.t, "duration_s": ev.t - start})
            records.append(stepper.record(t, step_def.mode, state, inputs))

    times = np.array([rec.t for rec in records])
    summary = _summarise(config, model, times, records, events, durations)
    return RunResult(model=model, dt=dt, times=times, records=records,
                     events=events, summary=summary)


def _trapezoid(times, values):
    if len(times) < 2:
        return 0.0
    v = np.nan_to_num(np.asarray(values, dtype=float), nan=0.0)
    return float(np.trapezoid(v, np.asarray(times)))


def _summarise(config, model, times, records, events, durations):
    n_ref = config.params.ref_pipe.count
    n_sec = config.params.sec_pipe.count
    n_pcm = config.params.capsule.n_capsules
    q_ref = [r.solution.q_ref if r.solution.q_ref is not None else 0.0 for r in records]
    q_sec = [r.solution.q_sec if r.solution.q_sec is not None else 0.0 for r in records]
    q_pcm = [r.solution.q_pcm for r in records]
    summary = {
        "run_id": config.run_id,
        "model": model,
        "n_layers": config.n_layers if model == "discrete" else None,
        "dt_s": config.dt,
        "final": {
            "t_s": float(times[-1]),
            "gamma": records[-1].gamma,
            "t_int_c": records[-1].state["t_int"],
        },
        "energy_j": {
            "refrigerant_total": _trapezoid(times, [n_ref * q for q in q_ref]),
            "secondary_total": _trapezoid(times, [n_sec * q for q in q_sec]),
            "pcm_total": _trapezoid(times, [n_pcm * q for q in q_pcm]),
            "pcm_abs_total": _trapezoid(times, [n_pcm * abs(q) for q in q_pcm]),
        },
        "cycle_durations": durations,
        "events": [{"name": e.name, "t_s": e.t, "detail": e.detail} for e in events],
    }
    return summary


def cumulative_pcm_energy(result: RunResult) -> np.ndarray:
    """Cumulative |heat| exchanged across the whole capsule population, J."""
    n_pcm = 0
    for rec in result.records:
        n_pcm = rec.state.get("n_pcm", n_pcm) or n_pcm
    q = np.array([abs(rec.solution.q_pcm) for rec in result.records])
    t = result.times
    out = np.zeros_like(t)
    if len(t) > 1:
        mids = 0.5 * (q[1:] + q[:-1]) * np.diff(t)
        out[1:] = np.cumsum(mids)
    return out * (n_pcm if n_pcm else 1)


@dataclass
class ComparisonReport:
    """Continuous-vs-discrete comparison of cumulative transferred energy."""

    window_s: float
    continuous: RunResult
    discrete: dict            # n_lay -> RunResult
    rel_error: dict           # n_lay -> np.ndarray on the shared grid
    max_rel_error: dict       # n_lay -> float


def compare_models(scenario: Sequence[ScenarioStep], config,
                   n_layers: Sequence[int] = (10, 20, 50)) -> ComparisonReport:
    """Run both models on a pure full charge (or discharge) and report the
    per-time relative error of cumulative transferred PCM energy.

    The comparison window ends when the continuous model completes its cycle
    (or at the scenario end); relative errors are evaluated where at least 1%
    of the window's final energy has been transferred, which keeps the ratio
    meaningful near t = 0.
    """
    modes = {s.mode for s in scenario}
    if len(modes) != 1 or STANDBY in modes:
        raise UnsupportedOperationError(
            "compare_models requires a pure full-charge or full-discharge scenario")

    cont = run_scenario(scenario, "continuous", config)
    e_cont = _with_population(cont, config)
    t_end = cont.times[-1]
    for ev in cont.events:
        if ev.name == "cycle_complete":
            t_end = ev.t
            break
    window = cont.times <= t_end + 1e-9

    rel = {}
    max_rel = {}
    runs = {}
    for n_lay in n_layers:
        cfg = config.with_layers(n_lay)
        disc = run_scenario(scenario, "discrete", cfg)
        e_disc = _with_population(disc, config)
        e_c = e_cont[window]
        e_d = e_disc[window]
        floor = 0.01 * e_c[-1] if e_c[-1] > 0.0 else 1.0
        valid = e_c >= floor
        err = np.zeros_like(e_c)
        err[valid] = np.abs(e_d[valid] - e_c[valid]) / e_c[valid]
        rel[n_lay] = err
        max_rel[n_lay] = float(err.max()) if err.size else 0.0
        runs[n_lay] = disc

    return ComparisonReport(window_s=float(t_end), continuous=cont,
                            discrete=runs, rel_error=rel, max_rel_error=max_rel)


def _with_population(result: RunResult, config) -> np.ndarray:
    q = np.array([abs(rec.solution.q_pcm) for rec in result.records])
    t = result.times
    out = np.zeros_like(t)
    if len(t) > 1:
        out[1:] = np.cumsum(0.5 * (q[1:] + q[:-1]) * np.diff(t))
    return out * config.params.capsule.n_capsules
