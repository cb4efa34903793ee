"""Stationary SWP clock times, dwell time and related closed forms.

The transmission clock time is ``-hbar * d(phi_t)/dV0``; the reflection time
adds the asymmetry time ``t_0 = -hbar * d(phi_0)/dV0``.  Closed forms are
evaluated by the backend kernels (compiled or numpy), which use real
trigonometric expressions for propagating modes and real hyperbolic ones
for evanescent modes.  :func:`clock_time_fd_oracle` differentiates the phases
of :func:`~swpclock.scattering.scatter` numerically and serves as the
independent check of those closed forms.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    InvalidParameter,
    RegimeMismatch,
    StepTooLarge,
    SymmetricBarrier,
    TransmissionUndefined,
)
from .scattering import (
    BarrierConfig,
    Regime,
    ScatteringContext,
    _scatter_raw,
    wave_numbers,
)


class Channel(enum.Enum):
    TRANSMISSION = "transmission"
    REFLECTION = "reflection"


@dataclass(frozen=True)
class StationaryTimes:
    """Clock and dwell times for one incident wave number.

    ``t_cr = t_ct + t_0`` and ``tau_d = t_ct + R t_0``.  When ``extrapolated``
    is set (energy below the right level) only ``t_cr`` and ``tau_d`` are
    defined; they come from continuing k3 to the imaginary axis.
    """

    t_ct: float
    t_0: float
    t_cr: float
    tau_d: float
    t_coeff: float
    r_coeff: float
    regime: Regime
    extrapolated: bool = False


@dataclass(frozen=True)
class DensityOfStatesResult:
    nu: float
    t_coeff: float
    t_ct: float
    r_minus: float
    r_plus: float
    t_cr_minus: float
    t_cr_plus: float


_REGIMES = {kernels.PROPAGATING: Regime.PROPAGATING,
            kernels.EVANESCENT: Regime.EVANESCENT,
            kernels.BELOW_RIGHT_LEVEL: Regime.BELOW_RIGHT_LEVEL}


def _times_raw(k1, v0, v1, a, hbar, mu):
    rg, T, R, t_ct, t_0, t_cr, tau_d = kernels.barrier_times(np.array([k1], dtype=float), v0, v1, a, hbar, mu)
    regime = _REGIMES[int(rg[0])]
    return StationaryTimes(float(t_ct[0]), float(t_0[0]), float(t_cr[0]), float(tau_d[0]),
                           float(T[0]), float(R[0]), regime, regime is Regime.BELOW_RIGHT_LEVEL)


def stationary_times(ctx: ScatteringContext, barrier: BarrierConfig, k1: float,
                     *, allow_extrapolated: bool = False) -> StationaryTimes:
    """Stationary clock times ``t_ct``, ``t_0``, ``t_cr`` and dwell time ``tau_d``.

    Parameters
    ----------
    ctx, barrier
        Unit system and barrier.
    k1
        Incident wave number, ``k1 > 0``.
    allow_extrapolated
        Below the right level (``v1 > 0``, ``E <= v1``) there is no transmitted
        wave.  By default this raises :class:`TransmissionUndefined`; with the
        flag set the continued reflection time is returned and the result is
        marked ``extrapolated``.
    """
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is Regime.BELOW_RIGHT_LEVEL and not allow_extrapolated:
        raise TransmissionUndefined(
            f"E = {ctx.energy(k1):.6g} is not above the right level v1 = {barrier.v1:.6g}"
        )
    return _times_raw(k1, barrier.v0, barrier.v1, barrier.a, ctx.hbar, ctx.mu)


def _channel_phase(res, channel):
    return res.phi_t if channel is Channel.TRANSMISSION else res.phi_r


def _nearest_branch(phase, reference):
    return phase + 2.0 * math.pi * round((reference - phase) / (2.0 * math.pi))


def clock_time_fd_oracle(ctx: ScatteringContext, barrier: BarrierConfig, k1: float,
                         channel: Channel, eps: float | None = None,
                         *, allow_extrapolated: bool = False) -> float:
    """Clock time by a central difference of the scattering phase in ``V0``.

    The phases at ``V0 +- eps`` are moved to the branch nearest the
    unperturbed phase before differencing.
    """
    if eps is None:
        eps = 1e-6 * max(barrier.v0, 1.0)
    if not eps > 0:
        raise InvalidParameter(f"eps must be positive, got {eps}")
    if eps > barrier.v0 / 10.0:
        raise StepTooLarge(f"eps={eps} exceeds v0/10={barrier.v0 / 10.0}")
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is Regime.BELOW_RIGHT_LEVEL:
        if channel is Channel.TRANSMISSION or not allow_extrapolated:
            raise TransmissionUndefined(
                f"E = {ctx.energy(k1):.6g} is not above the right level v1 = {barrier.v1:.6g}"
            )

    def phase(v0):
        return _channel_phase(_scatter_raw(k1, v0, barrier.v1, barrier.a, ctx.hbar, ctx.mu), channel)

    ref = phase(barrier.v0)
    up = _nearest_branch(phase(barrier.v0 + eps), ref)
    down = _nearest_branch(phase(barrier.v0 - eps), ref)
    return -ctx.hbar * (up - down) / (2.0 * eps)


def resonance_widths(ctx: ScatteringContext, barrier: BarrierConfig, k1: float, n_max: int) -> list[float]:
    """Barrier widths ``n pi / k2`` (n = 1..n_max) at which ``k2 a = n pi``."""
    if n_max < 1:
        raise InvalidParameter(f"n_max must be >= 1, got {n_max}")
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is not Regime.PROPAGATING or waves.k2.real == 0:
        raise RegimeMismatch("resonance widths exist only for propagating modes")
    k2 = waves.k2.real
    return [n * math.pi / k2 for n in range(1, n_max + 1)]


def resonance_reflection_time(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> float:
    """Reflection clock time at a resonance, ``-(2 mu k1 a / hbar k2^2)(V0 - V1)/V1``.

    ``barrier.a`` is taken to be a resonance width; the value is not checked.
    """
    if barrier.symmetric:
        raise SymmetricBarrier("resonance reflection time closed form divides by v1")
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is not Regime.PROPAGATING or waves.k2.real == 0:
        raise RegimeMismatch("resonances exist only for propagating modes")
    k2 = waves.k2.real
    return -(2.0 * ctx.mu * k1 * barrier.a / (ctx.hbar * k2 * k2)) * (barrier.v0 - barrier.v1) / barrier.v1


def transparent_reflection_time(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> float:
    """Leading thin-barrier behaviour of the reflection time, ``2 hbar k1 a / V1``."""
    if barrier.symmetric:
        raise SymmetricBarrier("thin-barrier reflection asymptote divides by v1")
    return 2.0 * ctx.hbar * k1 * barrier.a / barrier.v1


def density_of_states(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> DensityOfStatesResult:
    """Average density of energy per unit length in the barrier region.

    Assembled from ``2 pi hbar a nu = 2 T t_ct + R_- t_cr_- + R_+ t_cr_+``
    where ``+`` is incidence from the right, computed on the mirrored
    profile with incident wave number ``k3``.
    """
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is not Regime.PROPAGATING:
        raise RegimeMismatch("density of states relation needs E > V0")
    left = _times_raw(k1, barrier.v0, barrier.v1, barrier.a, ctx.hbar, ctx.mu)
    k3 = waves.k3.real
    right = _times_raw(k3, barrier.v0 - barrier.v1, -barrier.v1, barrier.a, ctx.hbar, ctx.mu)
    total = 2.0 * left.t_coeff * left.t_ct + left.r_coeff * left.t_cr + right.r_coeff * right.t_cr
    nu = total / (2.0 * math.pi * ctx.hbar * barrier.a)
    return DensityOfStatesResult(nu, left.t_coeff, left.t_ct, left.r_coeff, right.r_coeff, left.t_cr, right.t_cr)
