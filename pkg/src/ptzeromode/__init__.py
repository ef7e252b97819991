"""Exact zero modes, mode entanglement and entanglement generation in a
PT-symmetric dimerized chain with end-site gain and loss."""

from .errors import (
    BracketError,
    ConvergenceError,
    NumericalError,
    ParameterError,
    PTChainError,
    ShapeError,
)
from .states import StateVector
from .lattice import (
    ChainSpec,
    OpenGainLoss,
    Ring,
    SymmetryOperator,
    build_hamiltonian,
    critical_gamma,
    critical_lambda,
    hermiticity_defect,
    parity_operator,
    pt_commutator_norm,
    time_reversal,
)
from .spectra import (
    Phase,
    PhaseClassification,
    Spectrum,
    biorthogonal_overlap,
    classify_phase,
    eigendecompose,
    find_ep,
    midgap_splitting,
    null_space_dimension,
)
from .zeromode import (
    EvanescentSolution,
    adjoint_zero_mode,
    analytic_zero_mode,
    dirac_profile,
    edge_states,
    evanescent_k,
    hermitian_zero_pair,
    normalization_constant,
    residual,
)
from .modeent import (
    EntanglementReport,
    SpatialModePair,
    bell_target,
    fidelity_closed_form,
    fidelity_numeric,
    spatial_modes,
)
from .dynamics import (
    EvolutionPlan,
    EvolutionTrace,
    fig4_scenario,
    propagate,
    steady_state_check,
)

__version__ = "0.1.0"
