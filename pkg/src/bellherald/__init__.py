"""Heralded Bell-pair creation between two cavities, simulated exactly.

Two distant three-level systems interact in sequence with a shared coherent
field mode; an optimal two-outcome field measurement then postselects the
maximally entangled state of the two lower levels.  The package computes the
exact joint state, the minimum-error measurement and its figures of merit,
their degradation under photon loss in the handover, and the dressed-mode
physics of the cavity-fiber-cavity link that motivates the lossless handover
idealization.
"""

__version__ = "0.1.0"

from .dynamics import (  # noqa: F401
    BranchSet,
    InteractionParams,
    JointState,
    PhaseSet,
    branch_states,
    effective_rabi,
    jc_unitary_oracle,
    joint_pure_state,
)
from .errors import ConfigError, DegeneratePriorError, NumericsError, TruncationError  # noqa: F401
from .fiber import (  # noqa: F401
    FiberConfig,
    FiberModel,
    TransferResult,
    build_fiber,
    engineered_couplings,
    transfer_amplitude,
    with_engineered_couplings,
)
from .fock import SpectralDecomp, coherent_state, hermitian_eig, trace_norm  # noqa: F401
from .linearized import (  # noqa: F401
    LinearizedParams,
    approx_branches,
    approx_overlaps,
    approx_prior,
    coherent_shift_overlap,
    linearization_valid,
    resonant_zero_times,
)
from .loss import (  # noqa: F401
    JointDensity,
    LossParams,
    LossyPipeline,
    damp_coherent_coherence,
    damp_number_matrix,
    gammaT_to_fiber_length,
    lossy_scenario,
)
from .povm import (  # noqa: F401
    FieldComponents,
    PovmResult,
    bell_fidelity,
    bell_success,
    field_components,
    helstrom_projector,
    min_error,
    postselected_state,
    povm_result,
)
