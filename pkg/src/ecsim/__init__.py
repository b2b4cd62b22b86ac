"""Exact simulator for GHZ- and W-type entangled coherent states of cavity fields."""

from .states import (
    Branch,
    DensityHybrid,
    FockVector,
    HybridState,
    ShapeMismatchError,
    ZeroNormError,
    branch_overlap,
    coherent_fock,
    coherent_product,
    cross_gram,
    default_cutoff,
    density_eigenvalues,
    density_trace,
    fidelity_pure,
    fock_inner,
    fock_norm2,
    gram,
    hybrid_inner,
    hybrid_to_fock,
    mode_mean_photon,
    norm2,
    normalize,
    overlap,
    prune,
    to_density,
    vacuum,
)
from .protocols import (
    DispersiveParams,
    OutcomeRecord,
    ProtocolResult,
    ToleranceError,
    dispersive_transit,
    inject,
    measure,
    ramsey,
    reference_ghz,
    reference_w,
    run_ghz,
    run_w,
    w_atom_register,
    w_outcome_signs,
)
from .jc import (
    JCBlockPropagator,
    jc_evolve,
    jc_interaction_propagator,
    lindblad_damp_oracle,
    phase_compensated_fidelity,
)
from .damping import (
    TimescaleParams,
    damp,
    damp_all,
    damped_fidelity,
    experiment_timescales,
    timescale_report,
)
from .entanglement import (
    AmplitudeOffGridError,
    QubitizedState,
    entanglement_sweep,
    negativity,
    qubit_inner,
    qubitize,
    reduced_density,
    reduced_entropy,
)

__version__ = "0.1.0"
