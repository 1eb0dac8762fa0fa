"""Toffoli partial-product multiplier ``(A, B, C) -> (A, B, A·B + C)``.

Each partial product ``α_i β_j`` is the coefficient of ``x^(i+j)``; after
reduction it lands on every set bit of ``x^(i+j) mod f``.  One Toffoli per
(i, j, set bit) XORs it straight into ``C``.  Controls live only on A and B
and targets only on C, so every gate commutes with every other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .circuit import Circuit, CostReport, Gate, cost_report, toffoli
from .gf2m import FieldSpec, poly_divmod

__all__ = ["MultiplierCircuit", "synth_mult", "mult_gate_cost", "multiplier_gates"]


def _reduced_powers(spec: FieldSpec) -> list[list[int]]:
    f = spec.modulus.coeffs
    out = []
    for k in range(2 * spec.n - 1):
        r = poly_divmod(1 << k, f)[1]
        out.append([t for t in range(spec.n) if (r >> t) & 1])
    return out


def multiplier_gates(
    spec: FieldSpec, a: Sequence[int], b: Sequence[int], c: Sequence[int]
) -> list[Gate]:
    """Toffolis computing ``C ^= A·B``; ``a[i]`` is the qubit holding ``α_i`` etc.

    Order is row-major: ``i``, then ``j``, then target bit ascending.
    """
    n = spec.n
    powers = _reduced_powers(spec)
    return [
        toffoli(a[i], b[j], c[t])
        for i in range(n)
        for j in range(n)
        for t in powers[i + j]
    ]


def mult_gate_cost(spec: FieldSpec) -> int:
    """Toffoli count ``sum_{i,j} wt(x^(i+j) mod f)``."""
    n = spec.n
    powers = _reduced_powers(spec)
    return sum(len(powers[k]) * (min(k, 2 * n - 2 - k) + 1) for k in range(2 * n - 1))


@dataclass(frozen=True)
class MultiplierCircuit:
    """Width ``3n``: qubits ``[0, n)`` = A, ``[n, 2n)`` = B, ``[2n, 3n)`` = C."""

    circuit: Circuit
    field: FieldSpec

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def a(self) -> range:
        return range(0, self.n)

    @property
    def b(self) -> range:
        return range(self.n, 2 * self.n)

    @property
    def c(self) -> range:
        return range(2 * self.n, 3 * self.n)

    def pack(self, a: int, b: int, c: int) -> int:
        n = self.n
        return a | (b << n) | (c << 2 * n)

    def unpack(self, state: int) -> tuple[int, int, int]:
        n = self.n
        mask = (1 << n) - 1
        return state & mask, (state >> n) & mask, (state >> 2 * n) & mask

    def cost(self) -> CostReport:
        return cost_report(self.circuit, str(self.field), self.n, {"multiplication": len(self.circuit)})


@lru_cache(maxsize=64)
def synth_mult(spec: FieldSpec) -> MultiplierCircuit:
    n = spec.n
    a, b, c = range(n), range(n, 2 * n), range(2 * n, 3 * n)
    labels = {q: f"A_{q}" for q in a}
    labels.update({q: f"B_{q - n}" for q in b})
    labels.update({q: f"C_{q - 2 * n}" for q in c})
    circuit = Circuit(
        3 * n,
        tuple(multiplier_gates(spec, a, b, c)),
        labels,
        comment=f"f(x) = {spec.modulus}",
    )
    return MultiplierCircuit(circuit, spec)
