"""Gate-level IR: pulse-train emission, rotation merging, serialization.

Gates are either the global entangling pulse ``MS`` (always acts on every
qubit, so it carries no qubit index) or single-qubit ``RX``/``RY``/``RZ``/``H``.
Circuits are immutable; builders return fresh objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .su2 import canonical_angle
from .synthesis import CompilationPlan, crot_angles

MS = "MS"
RX = "RX"
RY = "RY"
RZ = "RZ"
H = "H"
_ROTATIONS = (RX, RY, RZ)


class CircuitFormatError(ValueError):
    """Serialized circuit cannot be parsed."""


class UnknownGateError(CircuitFormatError):
    """Serialized circuit names a gate this IR does not define."""


class QubitIndexError(CircuitFormatError):
    """A gate references a qubit outside the circuit."""


class PhaseResetError(RuntimeError):
    """Plan would leak control-dependent phases (tau * L not a 2*pi multiple)."""


@dataclass(frozen=True)
class Gate:
    kind: str
    qubit: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind == MS:
            if self.qubit is not None or self.angle is None:
                raise ValueError("MS is global: needs tau, takes no qubit index")
        elif self.kind in _ROTATIONS:
            if self.qubit is None or self.angle is None:
                raise ValueError(f"{self.kind} needs a qubit index and an angle")
        elif self.kind == H:
            if self.qubit is None or self.angle is not None:
                raise ValueError("H needs a qubit index and takes no angle")
        else:
            raise UnknownGateError(f"unknown gate kind {self.kind!r}")
        if self.angle is not None:
            object.__setattr__(self, "angle", float(self.angle))

    @classmethod
    def ms(cls, tau: float) -> Gate:
        return cls(MS, angle=tau)

    @classmethod
    def rx(cls, qubit: int, angle: float) -> Gate:
        return cls(RX, qubit, angle)

    @classmethod
    def ry(cls, qubit: int, angle: float) -> Gate:
        return cls(RY, qubit, angle)

    @classmethod
    def rz(cls, qubit: int, angle: float) -> Gate:
        return cls(RZ, qubit, angle)

    @classmethod
    def h(cls, qubit: int) -> Gate:
        return cls(H, qubit)

    def touches(self, qubit: int) -> bool:
        return self.kind == MS or self.qubit == qubit


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...]
    target_qubit: int = 0
    ancilla_qubits: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        if not 0 <= self.target_qubit < self.num_qubits:
            raise QubitIndexError(f"target qubit {self.target_qubit} out of range")
        for q in self.ancilla_qubits:
            if not 0 <= q < self.num_qubits:
                raise QubitIndexError(f"ancilla qubit {q} out of range")
        for gate in self.gates:
            if gate.qubit is not None and not 0 <= gate.qubit < self.num_qubits:
                raise QubitIndexError(
                    f"{gate.kind} on qubit {gate.qubit} out of range for {self.num_qubits} qubits"
                )
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "ancilla_qubits", frozenset(self.ancilla_qubits))

    def ms_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == MS)


def _pulse_train(num_qubits: int, target: int, tau: float, h: float, phis) -> list[Gate]:
    """Hadamard sandwich on the controls around L pulse blocks.

    Pulses run j = L down to 1; each block is Rz(-phi_j), MS(tau), Rx(h),
    Rz(phi_j) on the target, and Rz(phi_0) closes the train.
    """
    controls = [q for q in range(num_qubits) if q != target]
    gates = [Gate.h(q) for q in controls]
    for phi in reversed(phis[1:]):
        gates.append(Gate.rz(target, -phi))
        gates.append(Gate.ms(tau))
        gates.append(Gate.rx(target, h))
        gates.append(Gate.rz(target, phi))
    gates.extend(Gate.h(q) for q in controls)
    gates.append(Gate.rz(target, phis[0]))
    return gates


def build_crot_circuit(plan: CompilationPlan, target: int = 0) -> Circuit:
    """Emit the controlled-rotation pulse train for a compiled plan."""
    if not plan.is_phase_reset_valid():
        raise PhaseResetError(
            f"tau * L = {plan.tau * plan.num_pulses:.6f} is not a multiple of 2*pi; "
            "the circuit would leak control-dependent phases"
        )
    gates = _pulse_train(plan.n, target, plan.tau, plan.h, plan.phis)
    return Circuit(plan.n, tuple(gates), target_qubit=target)


def plan_merged_angles(plan: CompilationPlan) -> list[float]:
    """Combined z-rotations of the train, listed in reverse time order.

    Entry 0 absorbs phi_0 into the last slot; entry 2N equals -phi_L and is
    applied first.  This matches the orientation used by
    ``build_from_merged``.
    """
    phis = plan.phis
    L = plan.num_pulses
    merged = [phis[0] + phis[1] if L else phis[0]]
    merged += [phis[j + 1] - phis[j] for j in range(1, L)]
    if L:
        merged.append(-phis[L])
    return [canonical_angle(m) for m in merged]


def build_from_merged(n: int, tau: float, h: float, merged_phis) -> Circuit:
    """Pulse train in merged form: one z-rotation per slot.

    ``merged_phis`` has 2N+1 entries; the last entry is applied first in
    time, then alternating [MS + Rx(h)] blocks and z-slots down to entry 0.
    """
    merged = [float(m) for m in merged_phis]
    if len(merged) != 2 * n + 1:
        raise ValueError(f"need 2N+1 = {2 * n + 1} merged angles, got {len(merged)}")
    controls = list(range(1, n))
    gates = [Gate.h(q) for q in controls]
    gates.append(Gate.rz(0, merged[-1]))
    for m in reversed(merged[:-1]):
        gates.append(Gate.ms(tau))
        gates.append(Gate.rx(0, h))
        gates.append(Gate.rz(0, m))
    gates.extend(Gate.h(q) for q in controls)
    return Circuit(n, tuple(gates), target_qubit=0)


def merge_adjacent_rz(circuit: Circuit) -> Circuit:
    """Sum consecutive z-rotations on a qubit; drop rotations that vanish.

    Two RZ gates merge whenever no gate between them touches their qubit
    (the global pulse touches every qubit).
    """
    out: list[Gate] = []
    for gate in circuit.gates:
        if gate.kind != RZ:
            out.append(gate)
            continue
        merged = False
        for i in range(len(out) - 1, -1, -1):
            if out[i].kind == RZ and out[i].qubit == gate.qubit:
                angle = canonical_angle(out[i].angle + gate.angle)
                if abs(angle) < 1e-12:
                    out.pop(i)
                else:
                    out[i] = Gate.rz(gate.qubit, angle)
                merged = True
                break
            if out[i].touches(gate.qubit):
                break
        if not merged:
            angle = canonical_angle(gate.angle)
            if abs(angle) >= 1e-12:
                out.append(Gate.rz(gate.qubit, angle))
    return Circuit(circuit.num_qubits, tuple(out), circuit.target_qubit, circuit.ancilla_qubits)


def build_toffoli_circuit(n: int) -> Circuit:
    """N-qubit Toffoli (n-1 controls, target = qubit 0) with one ancilla.

    A controlled Rz(2*pi) with all n logical qubits as controls puts a -1
    on the all-ones control state while returning the ancilla (qubit n,
    the rotation target) to |0>; conjugating the Toffoli target with
    Hadamards turns that controlled phase into a bitflip.  Costs 2(n+1)
    global pulses.
    """
    if n < 2:
        raise ValueError(f"Toffoli needs at least 2 qubits, got {n}")
    plan = crot_angles(n + 1, 2.0 * np.pi)
    inner = _pulse_train(n + 1, target=n, tau=plan.tau, h=plan.h, phis=plan.phis)
    gates = [Gate.h(0), *inner, Gate.h(0)]
    return Circuit(n + 1, tuple(gates), target_qubit=0, ancilla_qubits=frozenset({n}))


def _gate_to_json(gate: Gate) -> dict:
    if gate.kind == MS:
        return {"type": MS, "tau": gate.angle}
    if gate.kind == H:
        return {"type": H, "qubit": gate.qubit}
    return {"type": gate.kind, "qubit": gate.qubit, "angle": gate.angle}


def serialize(circuit: Circuit) -> bytes:
    """Canonical JSON encoding (lossless round-trip of double angles)."""
    doc = {
        "version": 1,
        "num_qubits": circuit.num_qubits,
        "target_qubit": circuit.target_qubit,
        "ancilla_qubits": sorted(circuit.ancilla_qubits),
        "gates": [_gate_to_json(g) for g in circuit.gates],
    }
    return json.dumps(doc, indent=1).encode()


def deserialize(data: bytes | str) -> Circuit:
    """Parse the JSON encoding; malformed input raises CircuitFormatError."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CircuitFormatError("top level must be an object")
    if doc.get("version") != 1:
        raise CircuitFormatError(f"unsupported format version {doc.get('version')!r}")
    try:
        num_qubits = int(doc["num_qubits"])
        target = int(doc.get("target_qubit", 0))
        ancillas = frozenset(int(q) for q in doc.get("ancilla_qubits", []))
        raw_gates = doc["gates"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CircuitFormatError(f"missing or malformed field: {exc}") from exc
    gates = []
    for entry in raw_gates:
        if not isinstance(entry, dict) or "type" not in entry:
            raise CircuitFormatError(f"gate entry {entry!r} lacks a type")
        kind = entry["type"]
        try:
            if kind == MS:
                gates.append(Gate.ms(float(entry["tau"])))
            elif kind == H:
                gates.append(Gate.h(int(entry["qubit"])))
            elif kind in _ROTATIONS:
                gates.append(Gate(kind, int(entry["qubit"]), float(entry["angle"])))
            else:
                raise UnknownGateError(f"unknown gate type {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CircuitFormatError):
                raise
            raise CircuitFormatError(f"malformed {kind!r} gate: {exc}") from exc
    return Circuit(num_qubits, tuple(gates), target, ancillas)


def to_text(circuit: Circuit) -> str:
    """Write-only text export: one gate per line."""
    lines = []
    for gate in circuit.gates:
        if gate.kind == MS:
            lines.append(f"ms {gate.angle!r}")
        elif gate.kind == H:
            lines.append(f"h {gate.qubit}")
        else:
            lines.append(f"{gate.kind.lower()} {gate.qubit} {gate.angle!r}")
    return "\n".join(lines) + "\n"
