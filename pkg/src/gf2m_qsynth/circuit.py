"""Gate-level IR for CNOT/Toffoli circuits: scheduling, cost, OpenQASM."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "Gate",
    "cnot",
    "toffoli",
    "Segment",
    "Circuit",
    "CircuitBuilder",
    "Schedule",
    "CostReport",
    "append_gate",
    "reverse_circuit",
    "compute_schedule",
    "flatten_schedule",
    "cost_report",
    "emit_qasm",
    "parse_qasm",
]


@dataclass(frozen=True)
class Gate:
    """A CNOT (one control) or Toffoli (two controls)."""

    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if len(self.controls) not in (1, 2):
            raise ValueError(f"gate needs 1 or 2 controls, got {len(self.controls)}")
        qs = (*self.controls, self.target)
        if any(q < 0 for q in qs):
            raise ValueError(f"negative qubit index in {qs}")
        if len(set(qs)) != len(qs):
            raise ValueError(f"controls and target must be distinct, got {qs}")

    @property
    def is_cnot(self) -> bool:
        return len(self.controls) == 1

    @property
    def name(self) -> str:
        return "cx" if self.is_cnot else "ccx"

    @property
    def qubits(self) -> tuple[int, ...]:
        return (*self.controls, self.target)

    def remap(self, mapping) -> "Gate":
        return Gate(tuple(mapping[c] for c in self.controls), mapping[self.target])

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.qubits))})"


def cnot(control: int, target: int) -> Gate:
    return Gate((control,), target)


def toffoli(c1: int, c2: int, target: int) -> Gate:
    return Gate((c1, c2), target)


@dataclass(frozen=True)
class Segment:
    """Named half-open gate-index range ``[start, stop)``."""

    name: str
    start: int
    stop: int


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = ()
    output_labels: Mapping[int, str] = field(default_factory=dict)
    ancillae: frozenset[int] = frozenset()
    segments: tuple[Segment, ...] = ()
    comment: str = ""

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be nonnegative")
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "ancillae", frozenset(self.ancillae))
        for g in self.gates:
            _check_gate(g, self.width)
        labels = dict(self.output_labels)
        if any(not 0 <= q < self.width for q in labels):
            raise ValueError("output label on a qubit outside the circuit")
        if len(set(labels.values())) != len(labels):
            raise ValueError("output labels must be distinct")
        object.__setattr__(self, "output_labels", labels)

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def cnot_count(self) -> int:
        return sum(1 for g in self.gates if g.is_cnot)

    @property
    def toffoli_count(self) -> int:
        return len(self.gates) - self.cnot_count

    @property
    def is_linear(self) -> bool:
        return all(g.is_cnot for g in self.gates)

    def segment(self, name: str) -> Segment:
        for s in self.segments:
            if s.name == name:
                return s
        raise KeyError(name)

    def slice(self, start: int, stop: int) -> "Circuit":
        return Circuit(self.width, self.gates[start:stop], ancillae=self.ancillae, comment=self.comment)


def _check_gate(g: Gate, width: int) -> None:
    for q in g.qubits:
        if q >= width:
            raise IndexError(f"{g} touches qubit {q} outside width {width}")


class CircuitBuilder:
    """Mutable accumulator for large circuits; call :meth:`build` once done."""

    def __init__(self, width: int):
        self.width = width
        self.gates: list[Gate] = []
        self.segments: list[Segment] = []
        self._open: tuple[str, int] | None = None

    def add(self, g: Gate) -> None:
        _check_gate(g, self.width)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.add(g)

    def begin(self, name: str) -> None:
        self.end()
        self._open = (name, len(self.gates))

    def end(self) -> None:
        if self._open is not None:
            name, start = self._open
            self.segments.append(Segment(name, start, len(self.gates)))
            self._open = None

    def build(self, **kwargs) -> Circuit:
        self.end()
        return Circuit(self.width, tuple(self.gates), segments=tuple(self.segments), **kwargs)


def append_gate(c: Circuit, g: Gate) -> Circuit:
    _check_gate(g, c.width)
    return Circuit(
        c.width, c.gates + (g,), c.output_labels, c.ancillae, c.segments, c.comment
    )


def reverse_circuit(c: Circuit) -> Circuit:
    """Run the gates backwards; CNOT and Toffoli are their own inverses."""
    total = len(c.gates)
    segments = tuple(
        Segment(s.name, total - s.stop, total - s.start) for s in reversed(c.segments)
    )
    return Circuit(c.width, c.gates[::-1], c.output_labels, c.ancillae, segments, c.comment)


@dataclass(frozen=True)
class Schedule:
    layers: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.layers)


def compute_schedule(c: Circuit) -> Schedule:
    """Greedy in-order layering.

    The first unplaced gate opens a layer.  A later gate joins it when it
    is qubit-disjoint from the layer and commutes with every earlier gate
    left behind, i.e. none of its controls is a target of a skipped gate
    and its target is not a control of one.  Skipped gates form the next
    round.
    """
    remaining = list(range(len(c.gates)))
    layers = []
    while remaining:
        layer: list[int] = []
        used: set[int] = set()
        skipped: list[int] = []
        skipped_controls: set[int] = set()
        skipped_targets: set[int] = set()
        for idx in remaining:
            g = c.gates[idx]
            blocked = (
                any(q in used for q in g.qubits)
                or g.target in skipped_controls
                or any(q in skipped_targets for q in g.controls)
            )
            if blocked:
                skipped.append(idx)
                skipped_controls.update(g.controls)
                skipped_targets.add(g.target)
            else:
                layer.append(idx)
                used.update(g.qubits)
        layers.append(tuple(layer))
        remaining = skipped
    return Schedule(tuple(layers))


def flatten_schedule(c: Circuit, schedule: Schedule) -> Circuit:
    """The circuit with its gates reordered layer by layer."""
    order = [i for layer in schedule.layers for i in layer]
    if sorted(order) != list(range(len(c.gates))):
        raise ValueError("schedule does not partition the circuit's gates")
    return Circuit(c.width, tuple(c.gates[i] for i in order), c.output_labels, c.ancillae, (), c.comment)


@dataclass
class CostReport:
    """Gate/qubit/depth summary.  One CNOT or one Toffoli counts as one gate."""

    field: str
    n: int
    gate_count: int
    cnot_count: int
    toffoli_count: int
    qubit_count: int
    depth: int | None
    breakdown: dict[str, int]
    ancilla_count: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if sum(self.breakdown.values()) != self.gate_count:
            raise ValueError("breakdown does not sum to gate_count")
        if self.cnot_count + self.toffoli_count != self.gate_count:
            raise ValueError("cnot_count + toffoli_count != gate_count")

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(d.pop("extra"))
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def cost_report(c: Circuit, field_name: str, n: int, breakdown: dict[str, int] | None = None,
                schedule: Schedule | None = None, **extra) -> CostReport:
    if schedule is None:
        schedule = compute_schedule(c)
    if breakdown is None:
        breakdown = {"gates": len(c.gates)}
    return CostReport(
        field=field_name,
        n=n,
        gate_count=len(c.gates),
        cnot_count=c.cnot_count,
        toffoli_count=c.toffoli_count,
        qubit_count=c.width,
        depth=schedule.depth,
        breakdown=dict(breakdown),
        ancilla_count=len(c.ancillae),
        extra=extra,
    )


def emit_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text with one register ``q``.

    Header comments carry the circuit comment (e.g. the modulus), output
    labels and ancilla markers; segment boundaries appear inline as comments.
    """
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if c.comment:
        lines += [f"// {line}" for line in c.comment.splitlines()]
    for q in sorted(c.output_labels):
        lines.append(f"// output q[{q}] {c.output_labels[q]}")
    if c.ancillae:
        lines.append("// ancillae " + " ".join(str(q) for q in sorted(c.ancillae)))
    lines.append(f"qreg q[{c.width}];")
    starts: dict[int, list[Segment]] = {}
    stops: dict[int, list[Segment]] = {}
    for s in c.segments:
        starts.setdefault(s.start, []).append(s)
        if s.stop > s.start:
            stops.setdefault(s.stop, []).append(s)

    def markers(i: int) -> None:
        for s in stops.get(i, ()):
            lines.append(f"// end {s.name}")
        for s in starts.get(i, ()):
            lines.append(f"// begin {s.name}")
            if s.stop == s.start:
                lines.append(f"// end {s.name}")

    for i, g in enumerate(c.gates):
        markers(i)
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{g.name} {args};")
    markers(len(c.gates))
    return "\n".join(lines) + "\n"


_GATE_LINE = re.compile(r"^(cx|ccx)\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;$")
_QREG = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")
_OUTPUT = re.compile(r"^//\s*output q\[(\d+)\] (\S+)$")


def parse_qasm(text: str) -> Circuit:
    """Read back the subset of OpenQASM 2.0 that :func:`emit_qasm` writes."""
    width = None
    gates: list[Gate] = []
    labels: dict[int, str] = {}
    ancillae: set[int] = set()
    comment: list[str] = []
    segments: list[Segment] = []
    open_segments: dict[str, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("OPENQASM", "include")):
            continue
        if line.startswith("//"):
            if m := _OUTPUT.match(line):
                labels[int(m[1])] = m[2]
            elif line.startswith("// ancillae"):
                ancillae.update(int(t) for t in line.split()[2:])
            elif line.startswith("// begin "):
                open_segments[line[9:]] = len(gates)
            elif line.startswith("// end "):
                name = line[7:]
                segments.append(Segment(name, open_segments.pop(name), len(gates)))
            elif width is None:
                comment.append(line[2:].strip())
            continue
        if m := _QREG.match(line):
            width = int(m[1])
            continue
        m = _GATE_LINE.match(line)
        if m is None:
            raise ValueError(f"unsupported QASM line: {raw!r}")
        qs = [int(t) for t in re.findall(r"\d+", m[2])]
        expected = 2 if m[1] == "cx" else 3
        if len(qs) != expected:
            raise ValueError(f"{m[1]} takes {expected} qubits: {raw!r}")
        gates.append(Gate(tuple(qs[:-1]), qs[-1]))
    if width is None:
        raise ValueError("no qreg declaration found")
    segments.sort(key=lambda s: (s.start, s.stop))
    return Circuit(width, tuple(gates), labels, frozenset(ancillae), tuple(segments), "\n".join(comment))
