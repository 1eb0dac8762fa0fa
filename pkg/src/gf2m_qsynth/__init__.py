"""Ancilla-free quantum squaring and inversion circuits over GF(2^n)."""

from .circuit import (
    Circuit,
    CostReport,
    Gate,
    Schedule,
    append_gate,
    cnot,
    compute_schedule,
    emit_qasm,
    parse_qasm,
    reverse_circuit,
    toffoli,
)
from .exponentiation import ExpoCircuit, expo_cost, synth_exponentiation, verify_exponentiation
from .gf2m import (
    BinaryPolynomial,
    FieldElement,
    FieldSpec,
    ReducibleModulusError,
    frobenius_matrix,
    gf_add,
    gf_exp_fermat,
    gf_mul,
    gf_square,
    is_irreducible,
    poly_mod,
)
from .multiplier import MultiplierCircuit, mult_gate_cost, synth_mult
from .sim import exhaustive_check, extract_linear, simulate
from .squaring import (
    OutputAssignment,
    SquaringCircuit,
    assign_outputs,
    emit_cnots,
    reduction_rows,
    synth_square,
    verify_linear,
)

__version__ = "0.1.0"
