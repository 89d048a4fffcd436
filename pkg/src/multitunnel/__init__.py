"""Tunnelling through arrays of rectangular barriers, in the wave and particle limits."""

from .amplitudes import (
    BarrierAmplitudes,
    PhaseDerivative,
    ScatterParams,
    Side,
    asymmetric_pair_transmission,
    barrier_amplitudes,
    phase_derivative,
    positioned_reflection,
    single_barrier,
)
from .multibarrier import (
    ArrayAmplitudes,
    ContinuityMismatch,
    InterferenceState,
    ParticleLimit,
    TransferMatrix,
    array_amplitudes,
    build_transfer_matrix,
    closed_form_transmission,
    interference_state,
    n_barrier_amplitudes,
    particle_limit_probabilities,
    transmission_amplitude,
    transmission_denominator,
)
from .paths import (
    Monomial,
    PathTerm,
    Reflect,
    SeriesTerm,
    Transmit,
    enumerate_paths,
    grouped_series_terms,
    incoherent_sum,
    path_partial_sum,
    remainder_bound,
    series_coefficients,
    series_terms,
)
from .resonance import (
    Extremum,
    extrema_closed_form,
    extrema_numeric_scan,
    resonance_distances,
    wave_probability,
    wave_reflection_probability,
)
from .wavepacket import (
    PacketSpec,
    QuadratureError,
    SpmPrediction,
    TransitionTable,
    separated_packets_setup,
    resonance_exit_time,
    spatial_probability_integral,
    spm_predictions,
    summed_phase_stationary_point,
    total_transmission_probability,
    transition_scan,
    transmission_probabilities,
    transmitted_profile,
    transmitted_wavefunction,
)

__version__ = "0.1.0"
