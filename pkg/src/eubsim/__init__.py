"""Two-qubit quantum-memory simulator: a measured qubit A entangled with a
memory B that dissipates into a detuned Lorentzian cavity.  Computes the time
evolution of concurrence, quantum discord, Holevo quantities and the
memory-assisted entropic uncertainty bound in both the Markovian and
non-Markovian regimes."""

from .correlations import (
    CorrelationReport,
    MeasurementBasis,
    concurrence_general,
    concurrence_x_state,
    correlation_report,
    discord_oracle,
    discord_x_state,
    mutual_information,
)
from .dynamics import (
    DecayEnvelope,
    EnvironmentParams,
    InitialStateParams,
    KrausPair,
    analytic_x_state,
    big_omega,
    correlation_kernel,
    envelope,
    evolve,
    initial_state,
    kraus_pair,
    master_equation_oracle,
    master_equation_trajectory,
    spectral_density,
    volterra_oracle,
)
from .errors import (
    ConfigError,
    IntegrationError,
    InvalidEnvelopeError,
    InvalidInputError,
    InvalidStateError,
    SweepNumericalError,
)
from .qmath import binary_entropy, eig_hermitian, partial_trace, von_neumann_entropy
from .sweep import SweepConfig, TimeSeriesRecord, figure_preset, run_sweep
from .uncertainty import UncertaintyReport, conditional_entropy, eub, holevo_quantity, post_measurement_state

__version__ = "0.1.0"
