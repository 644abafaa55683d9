"""Exact simulation of the Aharonov-Bohm effect with a quantized, post-selected source."""
from .dynamics import EncircleAngle, coherence_factor, encircle, reduced_charge, visibility
from .errors import (
    AbfluxError,
    AllZeroAmplitudes,
    NonFiniteInput,
    NonpositiveRadius,
    OrthogonalPostSelection,
    UnequalArms,
)
from .hilbert import (
    ChargeDensityMatrix,
    Coupling,
    CylinderState,
    JointState,
    PathAmplitudes,
    eigenstate,
    make_cylinder,
    overlap,
    tensor,
)
from .postselect import (
    PostselectedCharge,
    TrialRecord,
    analytic_pL,
    analytic_pR,
    postselect_exact,
    postselect_weak_approx,
    run_trials,
)
from .ring import RingDistribution, ground_state_amplitude, p_final, p_initial
from .weakvalues import (
    EigenstateSource,
    ExpectationSource,
    WeakSource,
    WeakValueReport,
    effective_vector_potential,
    expectation_P_eta,
    weak_value_P_eta,
)

__version__ = "0.1.0"
