"""catembed: exact-arithmetic catalytic embeddings of quantum circuits.

The package constructs catalytic embeddings -- circuits that implement
otherwise-unrepresentable unitaries in the presence of a reusable catalyst
state -- verifies their algebraic conditions with no floating-point error,
and applies them to two compilation targets: an order-3 phase gate over
Clifford+T and the quantum Fourier transform over {H, X, CX, CCX}.
"""

from .circuits import (
    Circuit,
    Gate,
    GateRef,
    GateSet,
    Identity,
    Par,
    Seq,
    Swap,
    circuit_parse,
    circuit_print,
    clifford_t,
    clifford_t_extended,
    clifford_t_plus_E,
    evaluate,
    gate_count,
    gate_ref,
    par,
    qft_target_gates,
    rx3_gateset,
    seq,
    toffoli_gates,
)
from .companion import (
    CatalogEntry,
    catalog_all,
    catalog_get,
    catalog_ids,
    shift_companion,
    shifted_rotation_companion,
    sum_of_squares_companion,
)
from .compilers import (
    CompiledProgram,
    CostReport,
    build_QFT,
    compile_E,
    compile_inverse_QFT,
    compile_QFT,
    cost_model,
    dft_matrix,
)
from .cyclotomic import (
    CycElement,
    GaloisAutomorphism,
    conjugation,
    cos_2pi_over,
    imag_unit,
    omega3,
    omega8,
    rational,
    sqrt2,
    sqrt3,
    sqrt5,
    zeta,
)
from .embedding import (
    ClassificationReport,
    GateEmbedding,
    PreEmbedding,
    PreEmbeddingError,
    catalytic_check,
    classify,
    concat,
    lift_circuit,
    lift_gateset,
    phi_apply,
    preembed_make,
    projector_family,
)
from .matrix import Eigenspace, ExactMatrix, Polynomial, mat_galois, swap_matrix
from .rings import RingSpec, RingTower, make_tower, min_poly
from .simulate import (
    ExactState,
    apply_circuit,
    basis_state,
    check_catalytic_action,
    check_galois_action,
    state_make,
    tensor_states,
)

__version__ = "0.1.0"
