import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gf2m_qsynth.circuit import (
    Circuit,
    CircuitBuilder,
    CostReport,
    Gate,
    Segment,
    append_gate,
    cnot,
    compute_schedule,
    cost_report,
    emit_qasm,
    flatten_schedule,
    parse_qasm,
    reverse_circuit,
    toffoli,
)
from gf2m_qsynth.gf2m import FieldSpec
from gf2m_qsynth.sim import basis_columns, simulate, simulate_columns
from gf2m_qsynth.squaring import synth_square


def random_circuit(rng: random.Random, width: int, count: int, toffolis: bool = True) -> Circuit:
    gates = []
    for _ in range(count):
        if toffolis and width >= 3 and rng.random() < 0.3:
            gates.append(toffoli(*rng.sample(range(width), 3)))
        else:
            gates.append(cnot(*rng.sample(range(width), 2)))
    return Circuit(width, tuple(gates))


@st.composite
def circuits(draw, max_width=8, max_gates=30):
    width = draw(st.integers(3, max_width))
    seed = draw(st.integers(0, 2**32))
    count = draw(st.integers(0, max_gates))
    return random_circuit(random.Random(seed), width, count)


class TestGates:
    def test_append(self):
        c = append_gate(Circuit(2), cnot(0, 1))
        assert c.gates == (cnot(0, 1),)
        c3 = append_gate(Circuit(3), toffoli(0, 1, 2))
        assert len(c3) == 1 and c3.toffoli_count == 1

    def test_control_equals_target(self):
        with pytest.raises(ValueError):
            cnot(0, 0)
        with pytest.raises(ValueError):
            toffoli(0, 1, 1)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            append_gate(Circuit(2), cnot(0, 2))

    def test_output_labels_distinct(self):
        with pytest.raises(ValueError):
            Circuit(2, output_labels={0: "Y_0", 1: "Y_0"})


class TestReverse:
    def test_order(self):
        c = Circuit(4, (cnot(0, 1), cnot(2, 3)))
        assert reverse_circuit(c).gates == (cnot(2, 3), cnot(0, 1))

    @given(circuits())
    def test_involution(self, c):
        assert reverse_circuit(reverse_circuit(c)) == c

    def test_squarer_then_reverse_is_identity(self):
        sq = synth_square(FieldSpec.parse("x^10+x^3+1")).circuit
        rev = reverse_circuit(sq)
        rng = random.Random(7)
        for _ in range(100):
            x = rng.getrandbits(10)
            assert simulate(rev, simulate(sq, x)) == x

    def test_segments_mirror(self):
        b = CircuitBuilder(3)
        b.begin("first")
        b.add(cnot(0, 1))
        b.begin("second")
        b.add(cnot(1, 2))
        b.add(cnot(0, 2))
        c = b.build()
        r = reverse_circuit(c)
        assert r.segments == (Segment("second", 0, 2), Segment("first", 2, 3))


class TestSchedule:
    def test_n10_squarer_depth(self):
        sq = synth_square(FieldSpec.parse("x^10+x^3+1"))
        assert compute_schedule(sq.circuit).depth == 2

    def test_disjoint_gates_one_layer(self):
        c = Circuit(6, (cnot(0, 1), cnot(2, 3), cnot(4, 5)))
        assert compute_schedule(c).layers == ((0, 1, 2),)

    def test_dependent_pair(self):
        c = Circuit(3, (cnot(0, 1), cnot(1, 2)))
        assert compute_schedule(c).layers == ((0,), (1,))

    def test_no_jump_over_noncommuting(self):
        # gate 2 is disjoint from gate 0 but would overtake gate 1, which writes its control
        c = Circuit(4, (cnot(0, 1), cnot(1, 2), cnot(2, 3)))
        assert compute_schedule(c).layers == ((0,), (1,), (2,))

    def test_shared_controls_commute(self):
        c = Circuit(4, (cnot(0, 1), cnot(0, 2), cnot(3, 2)))
        # gate 1 shares control 0 with gate 0; gate 2 shares target 2 with gate 1
        assert compute_schedule(c).layers == ((0, 2), (1,))

    def test_empty(self):
        assert compute_schedule(Circuit(3)).depth == 0

    @given(circuits(max_width=7, max_gates=40))
    def test_schedule_preserves_semantics(self, c):
        s = compute_schedule(c)
        for layer in s.layers:
            qs = [q for i in layer for q in c.gates[i].qubits]
            assert len(qs) == len(set(qs))
        flat = flatten_schedule(c, s)
        cols = basis_columns(c.width, 0, 1 << c.width)
        assert (simulate_columns(flat, cols) == simulate_columns(c, cols)).all()


class TestQasm:
    def test_single_cnot(self):
        text = emit_qasm(Circuit(2, (cnot(0, 1),)))
        assert text.count("cx q[0],q[1];") == 1
        assert "qreg q[2];" in text
        assert text.startswith("OPENQASM 2.0;")

    def test_n10_squarer(self):
        sq = synth_square(FieldSpec.parse("x^10+x^3+1"))
        lines = emit_qasm(sq.circuit).splitlines()
        assert sum(l.startswith("cx ") for l in lines) == 6
        assert sum(l.startswith("ccx ") for l in lines) == 0
        assert "// f(x) = x^10+x^3+1" in lines
        assert "// output q[9] Y_1" in lines

    def test_toffoli_line(self):
        assert "ccx q[2],q[0],q[1];" in emit_qasm(Circuit(3, (toffoli(2, 0, 1),)))

    @given(circuits())
    def test_round_trip(self, c):
        assert parse_qasm(emit_qasm(c)) == c

    def test_round_trip_with_metadata(self):
        b = CircuitBuilder(4)
        b.begin("a")
        b.add(cnot(0, 1))
        b.begin("empty")
        b.begin("b")
        b.add(toffoli(0, 1, 3))
        c = b.build(output_labels={0: "A_0", 3: "B[0]_0"}, ancillae={3}, comment="f(x) = x^2+x+1")
        assert parse_qasm(emit_qasm(c)) == c

    def test_rejects_unknown_gate(self):
        with pytest.raises(ValueError):
            parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n")


class TestCostReport:
    def test_breakdown_must_sum(self):
        with pytest.raises(ValueError):
            CostReport("f", 2, 3, 3, 0, 2, 1, {"squaring": 2})

    def test_json_fields(self):
        c = Circuit(3, (cnot(0, 1), toffoli(0, 1, 2)))
        d = cost_report(c, "x^2+x+1", 2, {"a": 1, "b": 1}).to_dict()
        for key in ("field", "n", "gate_count", "cnot_count", "toffoli_count", "qubit_count", "depth", "breakdown"):
            assert key in d
        assert d["cnot_count"] == 1 and d["toffoli_count"] == 1 and d["depth"] == 2
