"""Stationary scattering by the asymmetric rectangular barrier.

The potential is 0 for z < 0, ``v0`` on (0, a) and ``v1`` for z > a, with a
particle of wave number ``k1 > 0`` incident from the left::

    psi_I   = exp(i k1 z) + B exp(-i k1 z)
    psi_III = C exp(i k3 z)

Amplitudes come from a single complex code path: a 2x2 transfer matrix acting
on (psi, psi') across the barrier, written with ``cos(k2 a)`` and
``a * sinc(k2 a)`` so that it stays regular at the band edge ``k2 = 0``.
For evanescent modes the matrix is divided by ``cosh(q2 a)``, which keeps
opaque barriers finite.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import (
    DegenerateMatch,
    InvalidParameter,
    NonPositiveWaveNumber,
    RegimeMismatch,
)


class Regime(enum.Enum):
    PROPAGATING = 0
    EVANESCENT = 1
    BELOW_RIGHT_LEVEL = 2


@dataclass(frozen=True)
class ScatteringContext:
    """Unit system: reduced Planck constant and particle mass (atomic units)."""

    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.mu > 0):
            raise InvalidParameter(f"hbar and mu must be positive, got {self.hbar}, {self.mu}")

    def energy(self, k):
        return self.hbar**2 * k * k / (2.0 * self.mu)

    def wave_number(self, energy):
        if energy <= 0:
            raise NonPositiveWaveNumber(f"energy must be positive, got {energy}")
        return math.sqrt(2.0 * self.mu * energy) / self.hbar


@dataclass(frozen=True)
class BarrierConfig:
    """Barrier height ``v0`` on (0, a) and right asymptotic level ``v1``."""

    v0: float
    v1: float
    a: float

    def __post_init__(self):
        if not self.v0 > 0:
            raise InvalidParameter(f"v0 must be positive, got {self.v0}")
        if not abs(self.v1) < self.v0:
            raise InvalidParameter(f"|v1| must be below v0, got v1={self.v1}, v0={self.v0}")
        if not self.a > 0:
            raise InvalidParameter(f"a must be positive, got {self.a}")

    @property
    def symmetric(self):
        return abs(self.v1) < 1e-300

    def with_width(self, a):
        return BarrierConfig(self.v0, self.v1, a)


@dataclass(frozen=True)
class WaveNumbers:
    k1: float
    k2: complex
    k3: complex
    regime: Regime


@dataclass(frozen=True)
class ScatteringResult:
    c: complex
    b: complex
    g: complex
    phi_t: float
    phi_0: float
    phi_r: float
    t_coeff: float
    r_coeff: float
    waves: WaveNumbers


def _wrap(phase):
    """Map to (-pi, pi]."""
    w = math.remainder(phase, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


def _branch_sqrt(ksq):
    # physical branch: +sqrt for ksq >= 0, +i*sqrt(-ksq) otherwise
    if ksq >= 0:
        return complex(math.sqrt(ksq), 0.0)
    return complex(0.0, math.sqrt(-ksq))


def _wave_numbers_raw(k1, v0, v1, hbar, mu):
    if not k1 > 0:
        raise NonPositiveWaveNumber(f"k1 must be positive, got {k1}")
    scale = 2.0 * mu / (hbar * hbar)
    k2sq = k1 * k1 - scale * v0
    k3sq = k1 * k1 - scale * v1
    if v1 > 0 and k3sq <= 0:
        regime = Regime.BELOW_RIGHT_LEVEL
    elif k2sq >= 0:
        regime = Regime.PROPAGATING
    else:
        regime = Regime.EVANESCENT
    return WaveNumbers(k1, _branch_sqrt(k2sq), _branch_sqrt(k3sq), regime)


def wave_numbers(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> WaveNumbers:
    """Wave numbers in the three regions and the energy regime of ``k1``.

    ``k2`` and ``k3`` are returned as complex numbers on the physical branch:
    positive real for propagating waves, ``+i q`` with ``q > 0`` for
    evanescent ones.
    """
    return _wave_numbers_raw(k1, barrier.v0, barrier.v1, ctx.hbar, ctx.mu)


def _sinc(z):
    if abs(z) < 1e-4:
        w = z * z
        return 1.0 - w / 6.0 + w * w / 120.0
    return cmath.sin(z) / z


def _scatter_raw(k1, v0, v1, a, hbar, mu):
    waves = _wave_numbers_raw(k1, v0, v1, hbar, mu)
    k2, k3 = waves.k2, waves.k3
    u = k2 * a
    # (psi, psi')(a) = M (psi, psi')(0), divided by cosh(q2 a) when evanescent
    # so it stays finite for opaque barriers; B is unaffected, C rescaled back
    if waves.regime is Regime.PROPAGATING:
        scale = 1.0
        m11 = cmath.cos(u)
        m12 = a * _sinc(u)
    else:
        x = u.imag
        scale = math.cosh(x) if x < 700.0 else math.inf
        m11 = complex(1.0)
        m12 = complex(a * (math.tanh(x) / x if x > 1e-4 else 1.0 - x * x / 3.0))
    m21 = -(k2 * k2) * m12
    m22 = m11
    # psi(0) = 1 + B, psi'(0) = i k1 (1 - B); psi(a) = c~, psi'(a) = i k3 c~
    alpha = m11 + 1j * k1 * m12
    beta = m11 - 1j * k1 * m12
    gamma = m21 + 1j * k1 * m22
    delta = m21 - 1j * k1 * m22
    det = 1j * k3 * beta - delta
    if det == 0:
        raise DegenerateMatch(f"singular matching system at k1={k1}")
    b = (gamma - 1j * k3 * alpha) / det
    # Cramer with det M = 1 (unscaled); avoids cancelling alpha + beta * b
    c_scaled = 2j * k1 / det  # C exp(i k3 a) * scale
    c_tilde = c_scaled / scale
    c = c_tilde * cmath.exp(-1j * k3 * a)
    g = b / c_tilde if c_tilde != 0 else complex(math.inf, math.inf)

    phi_t = cmath.phase(c_scaled)
    # arg G from the finite factors; scale > 0 drops out
    phi_0 = _wrap(cmath.phase(b) - phi_t)
    phi_r = _wrap(phi_t + phi_0)
    if waves.regime is Regime.BELOW_RIGHT_LEVEL:
        t_coeff, r_coeff = 0.0, abs(b) ** 2
    else:
        t_coeff = (k3.real / k1) * abs(c) ** 2
        r_coeff = abs(b) ** 2
    return ScatteringResult(c, b, g, phi_t, phi_0, phi_r, t_coeff, r_coeff, waves)


def scatter(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> ScatteringResult:
    """Amplitudes, phases and coefficients for incidence from the left.

    Phases follow ``C = |C| exp(i[phi_t - k3 a])``, ``B = C G exp(i k3 a)``,
    ``phi_0 = arg G`` and ``phi_r = phi_t + phi_0``, all in (-pi, pi].
    Below the right level C is the decaying region-III amplitude and
    ``t_coeff`` is 0.
    """
    return _scatter_raw(k1, barrier.v0, barrier.v1, barrier.a, ctx.hbar, ctx.mu)


def scatter_from_right(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> ScatteringResult:
    """Scattering for incidence from the right at the same energy as ``k1``.

    The mirrored profile (left level v1, barrier v0, right level 0) is shifted
    by ``-v1`` so the incident region sits at zero; the incident wave number
    is the region-III wave number ``k3`` of the direct problem.
    """
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is Regime.BELOW_RIGHT_LEVEL:
        raise RegimeMismatch("no incident wave from the right below the right level")
    return _scatter_raw(waves.k3.real, barrier.v0 - barrier.v1, -barrier.v1, barrier.a, ctx.hbar, ctx.mu)


def _continuous_arctan(numer_coef, denom_coef, u):
    """arctan[(numer/denom) tan u], made continuous in u >= 0 with value 0 at u = 0."""
    n = math.floor(u / math.pi + 0.5)
    if denom_coef == 0:
        if numer_coef == 0:
            return 0.0
        # tan-coefficient is infinite: phase is +-pi/2 for u in (0, pi), jumps at multiples of pi
        half = math.copysign(0.5 * math.pi, numer_coef)
        return half + math.copysign(math.pi, numer_coef) * math.floor(u / math.pi) if u > 0 else 0.0
    coef = numer_coef / denom_coef
    return math.atan(coef * math.tan(u)) + math.copysign(n * math.pi, coef)


def _analytic_phase(ctx, barrier, k1, sign):
    waves = wave_numbers(ctx, barrier, k1)
    if waves.regime is not Regime.PROPAGATING:
        raise RegimeMismatch(f"analytic phase needs a propagating mode, got {waves.regime.name}")
    k2 = waves.k2.real
    k3 = sign * waves.k3.real
    return _continuous_arctan(k2 * k2 + k1 * k3, k2 * (k1 + k3), k2 * barrier.a)


def phase_t_analytic(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> float:
    """Closed-form transmission phase for propagating modes, continuous in ``a``."""
    return _analytic_phase(ctx, barrier, k1, +1.0)


def phase_0_analytic(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> float:
    """Phase of the asymmetry factor G: the transmission phase with k3 -> -k3."""
    return _analytic_phase(ctx, barrier, k1, -1.0)


def phase_r_analytic(ctx: ScatteringContext, barrier: BarrierConfig, k1: float) -> float:
    return phase_t_analytic(ctx, barrier, k1) + phase_0_analytic(ctx, barrier, k1)
