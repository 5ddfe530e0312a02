"""Phase-modulated dynamical decoupling: Tn phase sequences, SU(2) simulation and robustness scans."""

from .phase import Phase
from .pulses import (
    IntegrationError,
    RectPulse,
    ShapedPulse,
    free_propagator,
    integrate_propagator,
    make_ae_pulse,
    make_lz_pulse,
    rect_propagator,
)
from .sequences import (
    BEYOND_RESOLUTION,
    ConditionReport,
    PhaseList,
    check_conditions,
    check_palindrome_pi_shift,
    check_pi_pairing,
    check_sum_condition,
    detuning_order,
    get_sequence,
    reference_phases,
    tn_phases,
    verify_identity_all_orders,
)
from .simulator import (
    Protocol,
    ScanResult,
    SequenceSpec,
    robust_width,
    run_protocol,
    scan_1d,
    scan_2d,
    six_state_scan,
)
from .su2 import (
    Unitary2,
    commutator_m,
    compose,
    dagger,
    rephasing_error,
    rephasing_error_up_to_sign,
    resonant_pulse,
    transition_probability,
)

__version__ = "0.1.0"
