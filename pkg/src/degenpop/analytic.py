"""Closed-form propagation in the dressed basis, and related formulas.

The whole time dependence enters through the envelope action A(t): bare
amplitudes at action A are ``a(A) = M^-1 diag(exp(-i z A)) M a(0)``.
Starting from state 1 the needed matrix elements are just the first
column of M (all ones), so propagation reduces to one complex
matrix-vector product per requested action value.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .coupling import CouplingModel
from .dressed import DressedBasis
from .errors import DimensionTooSmall, DomainError, OutOfDomain
from .pulses import action_values

CLOSURE_TOL = 1e-9


@dataclass(frozen=True)
class Trajectory:
    """Time series of populations with the closure diagnostic.

    ``probabilities[k, j]`` is the population of bare state j at
    ``times[k]``; ``closure[k]`` is the multiplicity-weighted population
    sum, which equals 1 up to roundoff for exact propagation.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    probabilities: np.ndarray
    closure: np.ndarray


def amplitudes_at(basis: DressedBasis, action: float) -> np.ndarray:
    """Bare amplitudes at a single action value, starting from state 1."""
    phases = np.exp(-1j * basis.z * float(action))
    return basis.m_inv @ phases


def amplitudes_many(basis: DressedBasis, actions: np.ndarray) -> np.ndarray:
    """Bare amplitudes at many action values; rows index the actions."""
    actions = np.asarray(actions, dtype=float)
    phases = np.exp(-1j * np.outer(actions, basis.z))
    return phases @ basis.m_inv.T


def probabilities_at(basis: DressedBasis, action: float,
                     multiplicity: int | None = None) -> np.ndarray:
    """Populations |a_j|^2 at one action value, optionally closure-checked.

    ``multiplicity`` is the manifold size carried by the last state in a
    reduced model; when given, the weighted sum (weight 1 per explicit
    state, ``multiplicity`` on the last) is asserted to equal 1.
    """
    p = np.abs(amplitudes_at(basis, action)) ** 2
    if multiplicity is not None:
        weights = np.ones(basis.n)
        weights[-1] = multiplicity
        total = float(weights @ p)
        if abs(total - 1.0) > CLOSURE_TOL:
            raise ArithmeticError(f"closure sum {total!r} deviates from 1")
    return p


def probabilities_cosine_form(basis: DressedBasis, action: float,
                              state: int) -> float:
    """Population of ``state`` via the explicit double cosine sum.

    Cross-check path: expands |sum_i (M^-1)_{state,i} e^{-i z_i A}|^2 into
    a double sum over cosine terms instead of squaring the complex value.
    """
    row = basis.m_inv[state - 1]
    total = 0.0
    for i in range(basis.n):
        for j in range(basis.n):
            total += row[i] * row[j] * np.cos((basis.z[i] - basis.z[j]) * action)
    return float(total)


def probabilities_2state(eps: float, action) -> np.ndarray:
    """Equal-diagonal two-state populations at given action(s).

    With both diagonal strengths equal to ``eps`` the populations are
    (cos^2 A, sin^2 A); eps only contributes a global phase and drops
    out, so it is accepted purely for signature symmetry.
    """
    del eps  # global phase only
    a = np.atleast_1d(np.asarray(action, dtype=float))
    p2 = np.sin(a) ** 2
    out = np.stack([1.0 - p2, p2], axis=-1)
    return out[0] if np.asarray(action).ndim == 0 else out


def probabilities_nstate_sym(n: int, theta) -> np.ndarray:
    """Reduced symmetric-model populations as functions of the phase angle.

    Columns are (P1, P2, P3) with P3 per single manifold state:

        P1 = (3 + cos(theta) + 4 cos(theta/2)) / 8
        P2 = (3 + cos(theta) - 4 cos(theta/2)) / 8
        P3 = sin^2(theta/2) / (2 (n - 2))

    so that P1 + P2 + (n-2) P3 = 1 identically.
    """
    if n < 3:
        raise DimensionTooSmall("need n >= 3")
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    c, ch = np.cos(th), np.cos(0.5 * th)
    p1 = (3.0 + c + 4.0 * ch) / 8.0
    p2 = (3.0 + c - 4.0 * ch) / 8.0
    p3 = np.sin(0.5 * th) ** 2 / (2.0 * (n - 2))
    out = np.stack([p1, p2, p3], axis=-1)
    return out[0] if np.asarray(theta).ndim == 0 else out


def trajectory(model: CouplingModel, basis: DressedBasis,
               times) -> Trajectory:
    """Exact populations along a time grid under the model's pulse."""
    times = np.asarray(times, dtype=float)
    if times.size and times[0] < 0.0:
        raise OutOfDomain("times must be non-negative")
    if np.any(np.diff(times) < 0.0):
        raise OutOfDomain("times must be non-decreasing")
    actions = action_values(model.pulse, times)
    amps = amplitudes_many(basis, actions)
    probs = np.abs(amps) ** 2
    closure = probs @ model.closure_weights
    return Trajectory(times, amps, probs, closure)


def trajectory_to_csv(traj: Trajectory) -> str:
    """Serialize a trajectory as CSV: t, per-state populations, closure."""
    n = traj.probabilities.shape[1]
    buf = io.StringIO()
    cols = ",".join(f"P{j + 1}" for j in range(n))
    buf.write(f"t,{cols},closure\n")
    for k in range(traj.times.size):
        vals = [traj.times[k], *traj.probabilities[k], traj.closure[k]]
        buf.write(",".join(f"{v:.17g}" for v in vals) + "\n")
    return buf.getvalue()


def flat_top_quartic(omega: float, tau: float) -> float:
    """Quartic approximation to the transfer dip near a harmonic peak.

    At ``tau`` past the quarter period the exact transferred population is
    ``sin^2((pi/2) cos(omega tau))``; expanding in ``u = omega tau`` gives
    ``1 - (pi^2/16) u^4``.
    """
    u = omega * tau
    return 1.0 - (np.pi ** 2 / 16.0) * u ** 4


def leakage_estimate(omega21: float, omega: float) -> float:
    """Order-of-magnitude bound on the off-resonant population loss.

    Treats the detuned neighbor as accumulating phase-slip amplitude of
    order ``(pi/2)^3 omega21 / omega`` over the transfer; squaring gives
    ``(1/4) (pi/2)^6 (omega21/omega)^2``.
    """
    return 0.25 * (np.pi / 2.0) ** 6 * (omega21 / omega) ** 2


def flatness_frequency(p_cr: float, t_s: float) -> float:
    """Carrier frequency keeping the transfer dip below ``p_cr`` over a
    hold window of half-width ``t_s``.

    Inverts the quartic dip formula at the window edge:
    ``omega t_s = (16 p_cr / pi^2)^(1/4) = sqrt(4/pi) p_cr^(1/4)``.
    ``p_cr = 1`` is the degenerate bound where the dip reaches the full
    population.
    """
    if not 0.0 < p_cr <= 1.0:
        raise DomainError("p_cr must lie in (0, 1]")
    if t_s <= 0.0:
        raise DomainError("t_s must be positive")
    return math.sqrt(4.0 / np.pi) * p_cr ** 0.25 / t_s


def delta_kick_response(t, t0: float) -> np.ndarray:
    """Two-state populations under an instantaneous quarter-cycle kick.

    The kick carries action pi/2, so transfer is complete and immediate:
    (1, 0) before the kick time, (0, 1) from it on (right-continuous).
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    after = (t_arr >= t0).astype(float)
    out = np.stack([1.0 - after, after], axis=-1)
    return out[0] if np.asarray(t).ndim == 0 else out
