"""In-place, ancilla-free CNOT squaring circuits for GF(2^n).

Squaring is linear over GF(2): ``A^2 = sum_i α_i x^(2i) mod f``.  Each input
qubit ``i`` is relabelled to hold one output coefficient ``σ(i)`` that its
own row ``x^(2i) mod f`` touches, and every other set bit of the row becomes
a CNOT from qubit ``i`` onto the qubit that will hold that coefficient.  No
extra qubits are needed; the outputs simply come out permuted.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .circuit import Circuit, CostReport, Gate, Schedule, cnot, compute_schedule, cost_report
from .gf2m import BinaryPolynomial, FieldSpec, frobenius_matrix, poly_mod
from .linalg import elimination_ops
from .sim import NonlinearCircuitError, extract_linear

__all__ = [
    "ReductionRow",
    "OutputAssignment",
    "SquaringCircuit",
    "NoPerfectMatchingError",
    "SynthesisError",
    "reduction_rows",
    "assign_outputs",
    "precedence_order",
    "emit_cnots",
    "gaussian_cnots",
    "synth_square",
    "verify_linear",
    "formula_gate_count",
]


class NoPerfectMatchingError(ValueError):
    """No relabelling gives every qubit a distinct output; the modulus is not irreducible."""


class SynthesisError(RuntimeError):
    """A synthesized circuit failed its own post-synthesis verification."""


@dataclass(frozen=True)
class ReductionRow:
    source_qubit: int
    bits: BinaryPolynomial


@dataclass(frozen=True)
class OutputAssignment:
    """``sigma[i]`` is the output coefficient that qubit ``i`` ends up holding."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"not a permutation: {self.sigma}")

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.sigma)
        for i, k in enumerate(self.sigma):
            inv[k] = i
        return tuple(inv)

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.sigma))

    def __len__(self) -> int:
        return len(self.sigma)


def reduction_rows(spec: FieldSpec) -> list[ReductionRow]:
    """Row ``i`` is ``x^(2i) mod f(x)``: the outputs qubit ``i`` contributes to."""
    return [
        ReductionRow(i, poly_mod(BinaryPolynomial(1 << (2 * i)), spec.modulus))
        for i in range(spec.n)
    ]


def assign_outputs(rows: list[ReductionRow]) -> OutputAssignment:
    """Choose ``σ`` by bipartite matching.

    Qubits with ``2i < n`` keep ``σ(i) = 2i``.  The rest are matched to the
    remaining outputs along set bits of their rows; among perfect matchings
    the lexicographically smallest (rows ascending, outputs ascending) wins.
    """
    n = len(rows)
    sigma: list[int | None] = [None] * n
    owner: list[int | None] = [None] * n
    for i in range(n):
        if 2 * i < n:
            owner[2 * i] = i
            sigma[i] = 2 * i
    high = [i for i in range(n) if 2 * i >= n]
    adj = {i: [k for k in rows[i].bits.exponents() if owner[k] is None] for i in high}
    fixed: set[int] = set(range(n)) - set(high)

    def augment(row: int, seen: set[int]) -> bool:
        for k in adj[row]:
            if k in seen:
                continue
            seen.add(k)
            holder = owner[k]
            if holder is None or (holder not in fixed and augment(holder, seen)):
                owner[k] = row
                sigma[row] = k
                return True
        return False

    for i in high:
        if not augment(i, set()):
            raise NoPerfectMatchingError(
                f"qubit {i} cannot be given a distinct output; the modulus is not irreducible"
            )

    for i in high:
        fixed.add(i)
        for k in adj[i]:
            current = sigma[i]
            if k == current:
                break
            # hand k to i and let k's holder find another output, possibly `current`
            holder = owner[k]
            if holder in fixed:
                continue
            saved_sigma, saved_owner = list(sigma), list(owner)
            owner[current] = None
            owner[k] = i
            sigma[i] = k
            if augment(holder, {k}):
                break
            sigma[:], owner[:] = saved_sigma, saved_owner
    return OutputAssignment(tuple(sigma))


def _raw_cnots(rows: list[ReductionRow], assignment: OutputAssignment) -> list[Gate]:
    inv = assignment.inverse
    gates = []
    for row in rows:
        i = row.source_qubit
        for k in row.bits.exponents():
            if k != assignment.sigma[i]:
                gates.append(cnot(i, inv[k]))
    return gates


def precedence_order(rows: list[ReductionRow], assignment: OutputAssignment) -> list[Gate] | None:
    """CNOTs ordered so each qubit is read before it is written, or ``None`` if cyclic.

    A CNOT sourced at ``q`` must see ``α_q``, so all gates controlled by ``q``
    precede all gates targeting ``q``.  Ties keep row order.
    """
    gates = _raw_cnots(rows, assignment)
    by_control: dict[int, list[int]] = {}
    for idx, g in enumerate(gates):
        by_control.setdefault(g.controls[0], []).append(idx)
    indegree = [len(by_control.get(g.target, ())) for g in gates]
    successors: dict[int, list[int]] = {}
    for idx, g in enumerate(gates):
        for h in by_control.get(g.target, ()):
            successors.setdefault(h, []).append(idx)
    ready = [idx for idx, d in enumerate(indegree) if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        idx = heapq.heappop(ready)
        order.append(gates[idx])
        for s in successors.get(idx, ()):
            indegree[s] -= 1
            if indegree[s] == 0:
                heapq.heappush(ready, s)
    if len(order) != len(gates):
        return None
    return order


def gaussian_cnots(target: np.ndarray) -> list[Gate]:
    """CNOT sequence realizing the invertible bit matrix ``target`` in place."""
    return [cnot(src, dst) for src, dst in reversed(elimination_ops(target))]


def emit_cnots(rows: list[ReductionRow], assignment: OutputAssignment) -> Circuit:
    """The squaring CNOT network on ``n`` qubits.

    Falls back to Gaussian-elimination synthesis when the read-before-write
    constraints are cyclic; :attr:`SquaringCircuit.used_fallback` records it.
    """
    n = len(rows)
    gates = precedence_order(rows, assignment)
    if gates is None:
        m = np.zeros((n, n), dtype=np.uint8)
        for row in rows:
            for k in row.bits.exponents():
                m[k, row.source_qubit] = 1
        gates = gaussian_cnots(m[list(assignment.sigma)])
    labels = {q: f"Y_{k}" for q, k in enumerate(assignment.sigma)}
    return Circuit(n, tuple(gates), labels)


def formula_gate_count(rows: list[ReductionRow]) -> int:
    n = len(rows)
    return sum(r.bits.weight - 1 for r in rows if 2 * r.source_qubit >= n)


@dataclass(frozen=True)
class SquaringCircuit:
    circuit: Circuit
    assignment: OutputAssignment
    field: FieldSpec
    rows: tuple[ReductionRow, ...]
    schedule: Schedule
    used_fallback: bool = False

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def gate_count(self) -> int:
        return len(self.circuit.gates)

    @property
    def depth(self) -> int:
        return self.schedule.depth

    @property
    def width(self) -> int:
        return self.circuit.width

    @property
    def ancilla_count(self) -> int:
        return len(self.circuit.ancillae)

    @property
    def formula_gate_count(self) -> int:
        return formula_gate_count(list(self.rows))

    def decode(self, state: int) -> int:
        """Field value held by an output basis state (undoes the relabelling)."""
        y = 0
        for q, k in enumerate(self.assignment.sigma):
            y |= ((state >> q) & 1) << k
        return y

    def encode(self, value: int) -> int:
        """Basis state in which qubit ``q`` carries coefficient ``σ(q)`` of ``value``."""
        s = 0
        for q, k in enumerate(self.assignment.sigma):
            s |= ((value >> k) & 1) << q
        return s

    def cost(self) -> CostReport:
        return cost_report(
            self.circuit,
            str(self.field),
            self.n,
            {"squaring": self.gate_count},
            self.schedule,
            gaussian_fallback=self.used_fallback,
            formula_gate_count=self.formula_gate_count,
            sigma=list(self.assignment.sigma),
        )


def verify_linear(sq: SquaringCircuit) -> bool:
    """True iff the circuit's linear map, read through ``σ``, is the squaring matrix."""
    if not sq.circuit.is_linear:
        raise NonlinearCircuitError("squaring circuit must be CNOT-only")
    m = extract_linear(sq.circuit)
    permuted = np.empty_like(m)
    permuted[list(sq.assignment.sigma)] = m
    return bool(np.array_equal(permuted, frobenius_matrix(sq.field)))


@lru_cache(maxsize=64)
def synth_square(spec: FieldSpec) -> SquaringCircuit:
    """Build, schedule and self-verify the squaring circuit for ``spec``."""
    if spec.n < 2:
        raise ValueError("squaring synthesis needs n >= 2")
    rows = reduction_rows(spec)
    assignment = assign_outputs(rows)
    used_fallback = precedence_order(rows, assignment) is None
    circuit = emit_cnots(rows, assignment)
    circuit = Circuit(
        circuit.width, circuit.gates, circuit.output_labels, comment=f"f(x) = {spec.modulus}"
    )
    sq = SquaringCircuit(
        circuit, assignment, spec, tuple(rows), compute_schedule(circuit), used_fallback
    )
    if not verify_linear(sq):
        raise SynthesisError(f"squaring circuit for {spec} does not realize A^2")
    return sq
