import random

import pytest

from gf2m_qsynth.circuit import compute_schedule, reverse_circuit
from gf2m_qsynth.gf2m import BinaryPolynomial, FieldElement, FieldSpec, gf_mul, low_weight_irreducible
from gf2m_qsynth.multiplier import mult_gate_cost, synth_mult
from gf2m_qsynth.sim import basis_columns, exhaustive_check, simulate, simulate_columns

import oracles

GF4 = FieldSpec.parse("x^2+x+1")
GF16 = FieldSpec.parse("x^4+x+1")


def brute_force_cost(spec):
    f = spec.modulus.coeffs
    n = spec.n
    return sum(bin(oracles.x_power_mod(i + j, f)).count("1") for i in range(n) for j in range(n))


def test_gf4_gate_list():
    m = synth_mult(GF4)
    got = [(g.controls, g.target - 4) for g in m.circuit.gates]
    assert got == [((0, 2), 0), ((0, 3), 1), ((1, 2), 1), ((1, 3), 0), ((1, 3), 1)]


def test_costs():
    assert mult_gate_cost(GF4) == 5
    # enumeration: x^4 = x + 1, x^5 = x^2 + x, x^6 = x^3 + x^2 each weigh 2
    assert mult_gate_cost(GF16) == brute_force_cost(GF16) == 22


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 10, 16, 33])
def test_cost_matches_brute_force_and_circuit(n):
    spec = FieldSpec(low_weight_irreducible(n))
    assert mult_gate_cost(spec) == brute_force_cost(spec) == len(synth_mult(spec).circuit)
    assert mult_gate_cost(spec) >= n * n


def test_all_toffolis_commute_depth_bound():
    m = synth_mult(GF16)
    assert m.circuit.toffoli_count == len(m.circuit)
    for g in m.circuit.gates:
        assert set(g.controls) <= set(m.a) | set(m.b) and g.target in m.c


def test_zero_operand_leaves_c():
    m = synth_mult(GF16)
    for a in range(16):
        s = m.pack(a, 0, 0)
        assert simulate(m.circuit, s) == s


def oracle_for(m):
    spec = m.field

    def oracle(state):
        a, b, c = m.unpack(state)
        return m.pack(a, b, c ^ gf_mul(FieldElement(a, spec), FieldElement(b, spec)).value)

    return oracle


def test_gf16_products_against_schoolbook():
    m = synth_mult(GF16)
    f = GF16.modulus.coeffs
    for a in range(16):
        for b in range(16):
            _, _, c = m.unpack(simulate(m.circuit, m.pack(a, b, 0)))
            assert c == oracles.field_mul(a, b, f)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_exhaustive_all_fields(n):
    for p in oracles.sieve_irreducibles(n)[n]:
        m = synth_mult(FieldSpec(BinaryPolynomial(p)))
        rep = exhaustive_check(m.circuit, oracle_for(m))
        assert rep.passed and rep.exhaustive


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_sampled(n):
    m = synth_mult(FieldSpec(low_weight_irreducible(n)))
    rep = exhaustive_check(m.circuit, oracle_for(m), limit=10_000)
    assert rep.passed and rep.checked == 10_000


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reverse_uncomputes(n):
    m = synth_mult(FieldSpec(low_weight_irreducible(n)))
    rev = reverse_circuit(m.circuit)
    cols = basis_columns(3 * n, 0, 1 << (3 * n))
    assert (simulate_columns(rev, simulate_columns(m.circuit, cols)) == cols).all()
    spec = m.field
    for a in range(spec.order):
        for b in range(spec.order):
            prod = gf_mul(FieldElement(a, spec), FieldElement(b, spec)).value
            assert simulate(rev, m.pack(a, b, prod)) == m.pack(a, b, 0)


def test_nonzero_initial_c():
    m = synth_mult(FieldSpec(low_weight_irreducible(8)))
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = rng.getrandbits(8), rng.getrandbits(8), rng.getrandbits(8)
        assert simulate(m.circuit, m.pack(a, b, c)) == oracle_for(m)(m.pack(a, b, c))


def test_cost_report():
    r = synth_mult(GF16).cost()
    assert r.toffoli_count == 22 and r.qubit_count == 12 and r.breakdown == {"multiplication": 22}
