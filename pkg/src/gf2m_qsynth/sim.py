"""Exact basis-state simulation of CNOT/Toffoli circuits.

Every gate in scope is a classical reversible gate, so a computational basis
state maps to a single basis state.  States are Python ints (bit ``q`` is
qubit ``q``); batches are boolean arrays of shape ``(batch, width)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .circuit import Circuit

__all__ = [
    "NonlinearCircuitError",
    "simulate",
    "simulate_batch",
    "simulate_columns",
    "basis_columns",
    "ints_to_bits",
    "bits_to_ints",
    "extract_linear",
    "apply_linear",
    "Mismatch",
    "CheckReport",
    "exhaustive_check",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 20170707


class NonlinearCircuitError(ValueError):
    """Linear-map extraction was asked of a circuit containing Toffolis."""


def simulate(c: Circuit, state: int) -> int:
    if state < 0 or state >> c.width:
        raise ValueError(f"state does not fit in {c.width} qubits")
    for g in c.gates:
        if g.is_cnot:
            if (state >> g.controls[0]) & 1:
                state ^= 1 << g.target
        elif (state >> g.controls[0]) & (state >> g.controls[1]) & 1:
            state ^= 1 << g.target
    return state


def simulate_columns(c: Circuit, cols: np.ndarray) -> np.ndarray:
    """Column-major batch simulation: ``cols[q]`` holds qubit ``q`` across the batch."""
    cols = np.array(cols, dtype=bool, copy=True)
    if cols.ndim != 2 or cols.shape[0] != c.width:
        raise ValueError(f"expected shape ({c.width}, batch), got {cols.shape}")
    for g in c.gates:
        if g.is_cnot:
            cols[g.target] ^= cols[g.controls[0]]
        else:
            cols[g.target] ^= cols[g.controls[0]] & cols[g.controls[1]]
    return cols


def simulate_batch(c: Circuit, bits: np.ndarray) -> np.ndarray:
    """Simulate every row of a ``(batch, width)`` boolean array; returns a copy."""
    bits = np.asarray(bits, dtype=bool)
    if bits.ndim != 2 or bits.shape[1] != c.width:
        raise ValueError(f"expected shape (batch, {c.width}), got {bits.shape}")
    return np.ascontiguousarray(simulate_columns(c, bits.T).T)


def basis_columns(width: int, start: int, stop: int) -> np.ndarray:
    """Column-major bits of the basis states ``start .. stop-1`` (width < 63)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((width, stop - start), dtype=bool)
    for q in range(width):
        out[q] = (idx >> q) & 1
    return out


def ints_to_bits(states: Sequence[int], width: int) -> np.ndarray:
    nbytes = max(1, (width + 7) // 8)
    buf = b"".join(int(s).to_bytes(nbytes, "little") for s in states)
    raw = np.frombuffer(buf, dtype=np.uint8).reshape(len(states), nbytes)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :width].astype(bool)


def bits_to_ints(bits: np.ndarray) -> list[int]:
    packed = np.packbits(np.asarray(bits, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def extract_linear(c: Circuit) -> np.ndarray:
    """GF(2) matrix ``M`` with ``M @ x % 2 == simulate(c, x)`` for every ``x``.

    Built by simulating the unit vectors; column ``i`` is the image of ``e_i``.
    """
    if not c.is_linear:
        raise NonlinearCircuitError("circuit contains Toffoli gates; its map is not linear")
    images = simulate_batch(c, np.eye(c.width, dtype=bool))
    return images.T.astype(np.uint8)


def apply_linear(m: np.ndarray, state: int) -> int:
    width = m.shape[1]
    x = ints_to_bits([state], width)[0].astype(np.uint8)
    return bits_to_ints(((m @ x) % 2).astype(bool)[None, :])[0]


@dataclass(frozen=True)
class Mismatch:
    input: int
    expected: int
    actual: int

    def __str__(self) -> str:
        return f"input={self.input:#x} expected={self.expected:#x} actual={self.actual:#x}"


@dataclass
class CheckReport:
    checked: int
    exhaustive: bool
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def first(self) -> Mismatch | None:
        return self.mismatches[0] if self.mismatches else None


def exhaustive_check(
    c: Circuit,
    oracle: Callable[[int], int],
    limit: int = 1 << 16,
    seed: int = DEFAULT_SEED,
    inputs: Sequence[int] | None = None,
    chunk: int = 1 << 14,
) -> CheckReport:
    """Compare ``simulate`` against ``oracle``.

    All ``2**width`` basis states are tried when that is at most ``limit``,
    otherwise ``limit`` states drawn from a fixed-seed generator.  An explicit
    ``inputs`` sequence overrides both.
    """
    if inputs is not None:
        states = list(inputs)
        exhaustive = False
    elif c.width < 63 and (1 << c.width) <= limit:
        states = range(1 << c.width)
        exhaustive = True
    else:
        rng = random.Random(seed)
        states = [rng.getrandbits(c.width) for _ in range(limit)]
        exhaustive = False
    report = CheckReport(checked=0, exhaustive=exhaustive)
    for lo in range(0, len(states), chunk):
        batch = list(states[lo:lo + chunk])
        out = bits_to_ints(simulate_batch(c, ints_to_bits(batch, c.width)))
        for s, actual in zip(batch, out):
            expected = oracle(s)
            if expected != actual:
                report.mismatches.append(Mismatch(s, expected, actual))
        report.checked += len(batch)
    return report
