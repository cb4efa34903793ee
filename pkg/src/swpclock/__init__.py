"""Salecker-Wigner-Peres clock times for one-dimensional asymmetric rectangular barriers.

Stationary transmission/reflection clock times and dwell times, their
wave-packet averages over post-selected channels, and a sweep CLI.
"""
__version__ = "0.1.0"

from .clock import (
    Channel,
    DensityOfStatesResult,
    StationaryTimes,
    clock_time_fd_oracle,
    density_of_states,
    resonance_reflection_time,
    resonance_widths,
    stationary_times,
    transparent_reflection_time,
)
from .ensemble import (
    ChannelDensity,
    EnsembleAverages,
    GaussianPacket,
    NegativeKDominance,
    QuadratureSpec,
    channel_density,
    ensemble_averages,
    total_probability,
)
from .errors import (
    DegenerateMatch,
    InvalidParameter,
    NonPositiveWaveNumber,
    QuadratureFailure,
    RegimeMismatch,
    StepTooLarge,
    SWPClockError,
    SymmetricBarrier,
    TransmissionUndefined,
    VanishingChannel,
)
from .scattering import (
    BarrierConfig,
    Regime,
    ScatteringContext,
    ScatteringResult,
    WaveNumbers,
    phase_0_analytic,
    phase_r_analytic,
    phase_t_analytic,
    scatter,
    scatter_from_right,
    wave_numbers,
)
