"""Fixed-step reference integrator and differential-comparison tooling.

Integrates the exact coupled equations

    i da_j/dt = E_j a_j + V(t) sum_k r_jk a_k

with classical 4th-order Runge-Kutta.  This is the ground truth the
closed-form degenerate solutions are checked against, and the instrument
for measuring how finite level splitting degrades the transfer.

Steps never straddle an envelope breakpoint: integration is carved into
segments between breakpoints so the local smoothness RK4 needs holds
inside every step.  Piecewise-constant envelopes are sampled at segment
midpoints, which keeps the open/closed convention at the edges from
leaking into the stencil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import Trajectory
from .coupling import CouplingModel
from .errors import (DomainError, GridMismatch, PointwiseUndefined,
                     UnresolvedTimescale)
from .pulses import (DeltaKickPulse, HarmonicPulse, RectKickPulse,
                     SampledPulse)

_RESOLVE_DIVISOR = 200.0
_KICK_STEP_FRACTION = 50.0


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step integration parameters.

    ``renormalize`` rescales the state to unit (weighted) norm after
    every step; off by default so norm drift stays visible as an error
    signal.
    """

    dt: float
    t_end: float
    method: str = "rk4"
    renormalize: bool = False

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        if self.method != "rk4":
            raise ValueError("only the rk4 method is available")


def resolution_bound(model: CouplingModel) -> float:
    """Largest admissible dt for this model's pulse and strength matrix.

    The step must resolve both the envelope's own timescale and the
    fastest dressed phase at peak envelope: 1/200 of each period, plus
    1/50 of the kick width for rectangular kicks.
    """
    z_max = _spectral_radius(model)
    pulse = model.pulse
    if isinstance(pulse, HarmonicPulse):
        scales = [2.0 * math.pi / pulse.omega]
        peak = z_max * abs(pulse.chi)
        if peak > 0:
            scales.append(2.0 * math.pi / peak)
        return min(scales) / _RESOLVE_DIVISOR
    if isinstance(pulse, RectKickPulse):
        bounds = [pulse.width / _KICK_STEP_FRACTION]
        peak = z_max * abs(pulse.height)
        if peak > 0:
            bounds.append(2.0 * math.pi / peak / _RESOLVE_DIVISOR)
        return min(bounds)
    if isinstance(pulse, SampledPulse):
        gaps = np.diff(pulse.times)
        bounds = [float(gaps.min())]
        peak = z_max * float(np.max(np.abs(pulse.values_)))
        if peak > 0:
            bounds.append(2.0 * math.pi / peak / _RESOLVE_DIVISOR)
        return min(bounds)
    raise PointwiseUndefined(
        "pulse has no pointwise envelope; integration needs one")


def integrate(model: CouplingModel, config: IntegratorConfig) -> Trajectory:
    """RK4 trajectory from the ground state under the model's pulse.

    Samples at every accepted step.  Raises UnresolvedTimescale when dt
    exceeds :func:`resolution_bound`, PointwiseUndefined for an
    instantaneous-kick pulse (use a rectangular kick instead).
    """
    if isinstance(model.pulse, DeltaKickPulse):
        raise PointwiseUndefined(
            "instantaneous kick cannot be integrated; use a rectangular kick")
    bound = resolution_bound(model)
    if config.dt > bound * (1.0 + 1e-12):
        raise UnresolvedTimescale(
            f"dt={config.dt} exceeds the resolvable bound {bound}")

    weights = model.closure_weights
    h_static = np.diag(model.energies.astype(complex))
    r = model.r.astype(complex)
    pulse = model.pulse
    flat = isinstance(pulse, RectKickPulse)

    def deriv(t: float, a: np.ndarray, v_const: float | None) -> np.ndarray:
        v = v_const if v_const is not None else pulse.value(t)
        return -1j * (h_static @ a + v * (r @ a))

    a = np.zeros(model.n, dtype=complex)
    a[0] = 1.0
    times = [0.0]
    amps = [a.copy()]
    for lo, hi in _segments(pulse, config.t_end):
        length = hi - lo
        nsteps = max(1, math.ceil(length / config.dt - 1e-9))
        h = length / nsteps
        v_const = pulse.value(0.5 * (lo + hi)) if flat else None
        t = lo
        for k in range(nsteps):
            k1 = deriv(t, a, v_const)
            k2 = deriv(t + 0.5 * h, a + 0.5 * h * k1, v_const)
            k3 = deriv(t + 0.5 * h, a + 0.5 * h * k2, v_const)
            k4 = deriv(t + h, a + h * k3, v_const)
            a = a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t = lo + (k + 1) * h
            if config.renormalize:
                a = a / math.sqrt(float(weights @ (np.abs(a) ** 2)))
            times.append(t)
            amps.append(a.copy())

    times_arr = np.array(times)
    amps_arr = np.array(amps)
    probs = np.abs(amps_arr) ** 2
    closure = probs @ weights
    return Trajectory(times_arr, amps_arr, probs, closure)


def compare(a: Trajectory, b: Trajectory) -> float:
    """Max absolute per-state population deviation on a shared grid."""
    if a.times.shape != b.times.shape or not np.array_equal(a.times, b.times):
        raise GridMismatch("trajectories use different time grids")
    return float(np.max(np.abs(a.probabilities - b.probabilities)))


def leakage_scan(model_family, ratios) -> list[tuple[float, float]]:
    """Transfer shortfall 1 - P2 at the action peak versus splitting.

    ``model_family`` maps a level splitting omega21 to a two-state model
    driven by a harmonic pulse; ``ratios`` lists carrier-to-splitting
    ratios omega/omega21 (math.inf selects the degenerate limit).  Each
    entry of the result is (ratio, 1 - P2(quarter period)).
    """
    out = []
    for ratio in ratios:
        if not ratio > 0:
            raise DomainError("ratios must be positive")
        probe = model_family(0.0)
        pulse = probe.pulse
        if not isinstance(pulse, HarmonicPulse):
            raise DomainError("leakage scan needs a harmonic pulse")
        omega21 = 0.0 if math.isinf(ratio) else pulse.omega / ratio
        model = model_family(omega21)
        t0 = pulse.quarter_period
        dt = min(resolution_bound(model), 4.0 * t0 / 20000.0)
        traj = integrate(model, IntegratorConfig(dt=dt, t_end=t0))
        out.append((float(ratio), float(1.0 - traj.probabilities[-1, 1])))
    return out


def kick_convergence(model: CouplingModel, a0: float, t0: float,
                     widths, dt: float | None = None) -> list[tuple[float, float]]:
    """Post-kick transfer versus kick width, for rectangular kicks.

    Swaps a rectangular kick of area ``a0`` centered at ``t0`` into the
    model for each width and integrates through the kick.  With no dt
    given, the step shrinks as width^2 so the integration error falls
    off as width^4 and convergence toward the instantaneous-kick value is
    monotone.  An explicit dt must resolve the narrowest kick
    (dt <= width/50).
    """
    widths = [float(w) for w in widths]
    if not widths or any(w <= 0 for w in widths):
        raise DomainError("widths must be positive")
    if any(b >= a for a, b in zip(widths, widths[1:])):
        raise DomainError("widths must be strictly decreasing")
    w_max = widths[0]
    z_max = _spectral_radius(model)
    phase_scale = max(1.0, z_max * abs(a0) / (2.0 * math.pi))
    out = []
    for w in widths:
        if dt is not None and dt > w / _KICK_STEP_FRACTION:
            raise UnresolvedTimescale(
                f"dt={dt} does not resolve kick width {w}")
        step = dt if dt is not None else (w / 200.0) * (w / w_max) / phase_scale
        kicked = model.with_pulse(RectKickPulse(area=a0, center=t0, width=w))
        traj = integrate(kicked, IntegratorConfig(dt=step, t_end=t0 + 0.5 * w))
        out.append((w, float(traj.probabilities[-1, 1])))
    return out


def _segments(pulse, t_end: float) -> list[tuple[float, float]]:
    """Cut [0, t_end] at the pulse's breakpoints."""
    if t_end == 0.0:
        return []
    cuts = sorted({b for b in pulse.breakpoints() if 0.0 < b < t_end})
    edges = [0.0, *cuts, t_end]
    return list(zip(edges[:-1], edges[1:]))


def _spectral_radius(model: CouplingModel) -> float:
    if model.reduced_multiplicity is None:
        z = np.linalg.eigvalsh(model.r)
    else:
        z = np.linalg.eigvals(model.r).real
    return float(np.max(np.abs(z)))
