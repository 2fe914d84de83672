"""Classical correlation and quantum discord of Bell-diagonal two-qubit states
under local phase-flip, bit-flip and bit-phase-flip noise."""

from ._accel import USE_NUMBA
from .channels import ChannelKind, KrausSet, apply_channel, evolve_coefficients, kraus_set, p_from_time
from .correlations import (
    ConditionalSpectrum,
    CorrelationRecord,
    MeasurementBasis,
    analytic_record,
    classical_correlation_analytic,
    classical_correlation_numeric,
    conditional_entropy,
    conditional_spectrum_analytic,
    mutual_information,
    numeric_correlations,
    quantum_discord_analytic,
)
from .dynamics import (
    RegimeReport,
    SweepResult,
    classify_regime,
    commutation_condition,
    operational_discord,
    sudden_change_time,
    surface,
    sweep,
)
from .errors import (
    BellShapeError,
    InvalidArgumentError,
    NotAStateError,
    QDiscordError,
    UnsupportedStateError,
)
from .linalg import hermitian_eigenvalues, partial_trace, tensor, von_neumann_entropy
from .states import (
    BellVector,
    EvolvedCoefficients,
    bell_state_matrix,
    coefficients_from_matrix,
    spectrum_from_coefficients,
)

__version__ = "0.1.0"
