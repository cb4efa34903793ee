"""Gaussian wave-packet averages of clock and dwell times over post-selected channels.

For a packet with momentum amplitude ``A(k)``, the transmitted sub-ensemble
has density ``rho_T = |A|^2 T / int |A|^2 T dk`` (``R`` for reflection), and

    <t_c^T>   = int rho_T t_ct        <t_c^R>   = int rho_R t_cr
    <tau_D>_T = int rho_T tau_d       <tau_D>_R = int rho_R tau_d

All eight needed integrals are computed in one adaptive pass on a window of
``k_window`` momentum standard deviations around ``k0``, restricted to
positive wave numbers.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .clock import Channel, stationary_times
from .errors import InvalidParameter, VanishingChannel
from .quadrature import integrate
from .scattering import BarrierConfig, ScatteringContext

K_FLOOR = 1e-6
NEGATIVE_K_LIMIT = 1e-6

# integrand columns, see kernels.ensemble_integrand
W, WT, WR, WT_TCT, WR_TCR, WT_TAU, WR_TAU, WTR_T0 = range(8)


class NegativeKDominance(UserWarning):
    """A noticeable part of the packet sits at negative wave numbers."""


@dataclass(frozen=True)
class GaussianPacket:
    """Right-moving Gaussian packet: centre wave number, spatial width, initial centre."""

    k0: float
    sigma: float
    z0: float = 0.0

    def __post_init__(self):
        if not self.k0 > 0:
            raise InvalidParameter(f"k0 must be positive, got {self.k0}")
        if not self.sigma > 0:
            raise InvalidParameter(f"sigma must be positive, got {self.sigma}")

    @property
    def k_std(self):
        """Standard deviation of ``|A(k)|^2``."""
        return 1.0 / (2.0 * self.sigma)

    def amplitude(self, k):
        k = np.asarray(k, dtype=float)
        d = k - self.k0
        return (2.0 * self.sigma**2 / np.pi) ** 0.25 * np.exp(-1j * self.z0 * d - self.sigma**2 * d * d)

    def density(self, k):
        k = np.asarray(k, dtype=float)
        d = k - self.k0
        return math.sqrt(2.0 / math.pi) * self.sigma * np.exp(-2.0 * self.sigma**2 * d * d)

    def weight_below(self, k):
        """``int_{-inf}^{k} |A|^2``."""
        return 0.5 * math.erfc(math.sqrt(2.0) * self.sigma * (self.k0 - k))


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    k_window: float = 10.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidParameter("tolerances must be positive")
        if not self.k_window >= 6:
            raise InvalidParameter(f"k_window must be >= 6, got {self.k_window}")
        if self.max_subdivisions < 1:
            raise InvalidParameter("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class EnsembleAverages:
    avg_tct: float
    avg_tcr: float
    avg_taud_t: float
    avg_taud_r: float
    p_t: float
    p_r: float
    negk_weight: float
    avg_rt0_t: float
    negative_k_dominance: bool
    n_intervals: int


def integration_window(packet: GaussianPacket, quad: QuadratureSpec, k_floor: float = K_FLOOR):
    half = quad.k_window * packet.k_std
    lo = max(packet.k0 - half, k_floor)
    return lo, packet.k0 + half


def break_points(ctx: ScatteringContext, barrier: BarrierConfig, lo: float, hi: float):
    """Window ends plus band edges and resonance wave numbers that fall inside."""
    inside = [lo, hi]
    scale = 2.0 * ctx.mu / ctx.hbar**2
    k_v0 = math.sqrt(scale * barrier.v0)
    inside.append(k_v0)
    if barrier.v1 > 0:
        inside.append(math.sqrt(scale * barrier.v1))
    # k2 a = n pi  <=>  k1^2 = k_v0^2 + (n pi / a)^2
    n = 1
    while True:
        k = math.sqrt(k_v0**2 + (n * math.pi / barrier.a) ** 2)
        if k >= hi:
            break
        inside.append(k)
        n += 1
    return sorted(x for x in set(inside) if lo <= x <= hi)


def _integrals(packet, ctx, barrier, quad):
    lo, hi = integration_window(packet, quad)
    pts = break_points(ctx, barrier, lo, hi)

    def f(k):
        return kernels.ensemble_integrand(k, packet.k0, packet.sigma, barrier.v0, barrier.v1,
                                          barrier.a, ctx.hbar, ctx.mu)

    def floor(total):
        # averages are ratios; absolute tolerance is in units of the averaged quantity
        den = np.empty_like(total)
        den[[W, WT, WR]] = abs(total[W])
        den[[WT_TCT, WT_TAU, WTR_T0]] = abs(total[WT])
        den[[WR_TCR, WR_TAU]] = abs(total[WR])
        return quad.abs_tol * den

    return integrate(f, pts, rel_tol=quad.rel_tol, floor=floor, max_subdivisions=quad.max_subdivisions)


def _channel_column(channel):
    return WT if channel is Channel.TRANSMISSION else WR


def _channel_weight(packet, ctx, barrier, quad, channel):
    res = _integrals(packet, ctx, barrier, quad)
    return res.value[_channel_column(channel)], res.value[W]


def _channel_values(ctx, barrier, k, channel):
    _, T, R, *_ = kernels.barrier_times(k, barrier.v0, barrier.v1, barrier.a, ctx.hbar, ctx.mu)
    return T if channel is Channel.TRANSMISSION else R


class ChannelDensity:
    """Post-selected density ``rho(k)`` with its normalisation computed once."""

    def __init__(self, packet: GaussianPacket, ctx: ScatteringContext, barrier: BarrierConfig,
                 channel: Channel, quad: QuadratureSpec | None = None):
        self.packet, self.ctx, self.barrier, self.channel = packet, ctx, barrier, channel
        self.quad = quad or QuadratureSpec()
        weight, _ = _channel_weight(packet, ctx, barrier, self.quad, channel)
        if not weight >= 1e-300:
            raise VanishingChannel(f"{channel.value} channel carries no probability ({weight:.3g})")
        self.normalization = weight

    def __call__(self, k):
        k = np.atleast_1d(np.asarray(k, dtype=float))
        return self.packet.density(k) * _channel_values(self.ctx, self.barrier, k, self.channel) / self.normalization


def channel_density(packet: GaussianPacket, ctx: ScatteringContext, barrier: BarrierConfig, k1,
                    channel: Channel, quad: QuadratureSpec | None = None):
    """``|A(k)|^2 W(k) / int |A|^2 W dk`` with ``W`` = T or R.  Accepts scalar or array ``k1``."""
    rho = ChannelDensity(packet, ctx, barrier, channel, quad)(k1)
    return float(rho[0]) if np.ndim(k1) == 0 else rho


def total_probability(packet: GaussianPacket, ctx: ScatteringContext, barrier: BarrierConfig,
                      channel: Channel, quad: QuadratureSpec | None = None) -> float:
    """Channel probability normalised to the packet weight inside the window."""
    weight, norm = _channel_weight(packet, ctx, barrier, quad or QuadratureSpec(), channel)
    return float(weight / norm)


def ensemble_averages(packet: GaussianPacket, ctx: ScatteringContext, barrier: BarrierConfig,
                      quad: QuadratureSpec | None = None, *, warn: bool = True) -> EnsembleAverages:
    """All four channel averages, channel probabilities and diagnostics in one pass.

    Warns with :class:`NegativeKDominance` when more than 1e-6 of ``|A|^2``
    lies at ``k < 0``, where the averages are not meaningful; the flag is
    set on the result either way.
    """
    quad = quad or QuadratureSpec()
    res = _integrals(packet, ctx, barrier, quad)
    v = res.value
    for col, channel in ((WT, Channel.TRANSMISSION), (WR, Channel.REFLECTION)):
        if not v[col] >= 1e-300:
            raise VanishingChannel(f"{channel.value} channel carries no probability ({v[col]:.3g})")
    negk = packet.weight_below(0.0)
    dominated = negk > NEGATIVE_K_LIMIT
    if dominated and warn:
        warnings.warn(f"{negk:.3g} of the packet weight is at negative k", NegativeKDominance, stacklevel=2)
    return EnsembleAverages(
        avg_tct=float(v[WT_TCT] / v[WT]),
        avg_tcr=float(v[WR_TCR] / v[WR]),
        avg_taud_t=float(v[WT_TAU] / v[WT]),
        avg_taud_r=float(v[WR_TAU] / v[WR]),
        p_t=float(v[WT] / v[W]),
        p_r=float(v[WR] / v[W]),
        negk_weight=negk,
        avg_rt0_t=float(v[WTR_T0] / v[WT]),
        negative_k_dominance=dominated,
        n_intervals=res.n_intervals,
    )


def stationary_reference(packet: GaussianPacket, ctx: ScatteringContext, barrier: BarrierConfig):
    """Stationary times at the packet centre (continued below the right level)."""
    return stationary_times(ctx, barrier, packet.k0, allow_extrapolated=True)
