"""Exact statevector simulation and ideal reference unitaries.

Qubit 0 is the least significant bit of the basis-state index, so with the
default target qubit 0 the index reads (controls << 1) | target_bit.

The global pulse exp(-i*tau/4 * (sum_j X_j)^2) is diagonal in the X basis:
a basis state with m qubits along -X picks up the phase
exp(-i*tau*(N-2m)^2/4).  Application is therefore Hadamard-all, a diagonal
phase by Hamming weight, Hadamard-all; the j = k self-terms of the double
sum are kept, contributing a global phase per pulse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import H, MS, RX, RY, RZ, Circuit, Gate
from .su2 import HADAMARD, rx, ry, rz

MAX_UNITARY_QUBITS = 14


def _apply_single(amps: np.ndarray, u2: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Apply a 2x2 gate on one qubit of the row index of amps."""
    shape = amps.shape
    cols = 1 if amps.ndim == 1 else shape[1]
    m = amps.reshape(2 ** (n - 1 - qubit), 2, (2**qubit) * cols)
    out = np.tensordot(u2, m, axes=([1], [1])).transpose(1, 0, 2)
    return np.ascontiguousarray(out).reshape(shape)


def _hadamard_all(amps: np.ndarray, n: int) -> np.ndarray:
    for q in range(n):
        amps = _apply_single(amps, HADAMARD, q, n)
    return amps


def _ms_phases(n: int, tau: float) -> np.ndarray:
    weight = np.bitwise_count(np.arange(2**n, dtype=np.uint64)).astype(float)
    return np.exp(-0.25j * tau * (n - 2.0 * weight) ** 2)


def _gate_matrix(gate: Gate) -> np.ndarray:
    if gate.kind == RX:
        return rx(gate.angle)
    if gate.kind == RY:
        return ry(gate.angle)
    if gate.kind == RZ:
        return rz(gate.angle)
    if gate.kind == H:
        return HADAMARD
    raise ValueError(f"no matrix for gate kind {gate.kind!r}")


@dataclass(frozen=True)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n,):
            raise ValueError(f"need 2^{self.n} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, index: int = 0) -> StateVector:
        amps = np.zeros(2**n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """New state with one gate applied; the input state is left untouched."""
    if gate.kind == MS:
        amps = _hadamard_all(state.amplitudes, state.n)
        amps = amps * _ms_phases(state.n, gate.angle)
        amps = _hadamard_all(amps, state.n)
    else:
        amps = _apply_single(state.amplitudes, _gate_matrix(gate), gate.qubit, state.n)
    return StateVector(state.n, amps)


def run_circuit(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    if state is None:
        state = StateVector.basis(circuit.num_qubits)
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full unitary; column j is the circuit applied to basis state |j>.

    Internally tracks whether the accumulated matrix is held in the X
    frame so that each global pulse costs one diagonal multiply instead of
    two full Hadamard layers.
    """
    n = circuit.num_qubits
    if n > MAX_UNITARY_QUBITS:
        raise ValueError(f"refusing to build a 2^{n} x 2^{n} unitary (limit {MAX_UNITARY_QUBITS})")
    mat = np.eye(2**n, dtype=complex)
    in_x_frame = False
    phase_cache: dict[float, np.ndarray] = {}
    for gate in circuit.gates:
        if gate.kind == MS:
            if not in_x_frame:
                mat = _hadamard_all(mat, n)
                in_x_frame = True
            tau = gate.angle
            if tau not in phase_cache:
                phase_cache[tau] = _ms_phases(n, tau)
            mat = phase_cache[tau][:, None] * mat
        else:
            u2 = _gate_matrix(gate)
            if in_x_frame:
                u2 = HADAMARD @ u2 @ HADAMARD
            mat = _apply_single(mat, u2, gate.qubit, n)
    if in_x_frame:
        mat = _hadamard_all(mat, n)
    return mat


def _control_index(indices: np.ndarray, target: int) -> np.ndarray:
    """Basis index with the target bit squeezed out."""
    high = (indices >> (target + 1)) << target
    low = indices & ((1 << target) - 1)
    return high | low


def ideal_crot(n: int, alpha: float, target: int = 0) -> np.ndarray:
    """Identity except Rz(alpha) on the target when all controls are |1>."""
    dim = 2**n
    idx = np.arange(dim)
    ctrl_mask = (dim - 1) ^ (1 << target)
    sel = (idx & ctrl_mask) == ctrl_mask
    tbit = (idx >> target) & 1
    diag = np.ones(dim, dtype=complex)
    diag[sel & (tbit == 0)] = np.exp(-0.5j * alpha)
    diag[sel & (tbit == 1)] = np.exp(+0.5j * alpha)
    return np.diag(diag)


def ideal_toffoli(n: int) -> np.ndarray:
    """Bitflip on qubit 0 when qubits 1..n-1 are all |1>."""
    if n < 2:
        raise ValueError(f"Toffoli needs at least 2 qubits, got {n}")
    dim = 2**n
    idx = np.arange(dim)
    ctrl_mask = dim - 2
    flip = np.where((idx & ctrl_mask) == ctrl_mask, idx ^ 1, idx)
    u = np.zeros((dim, dim))
    u[flip, idx] = 1.0
    return u.astype(complex)


def ideal_weighted(n: int, alphas, target: int = 0) -> np.ndarray:
    """Block-diagonal Rx(alphas[q]) on the target at control weight q."""
    alphas = [float(a) for a in alphas]
    if len(alphas) != n:
        raise ValueError(f"need {n} angles, got {len(alphas)}")
    dim = 2**n
    u = np.zeros((dim, dim), dtype=complex)
    for ctrl in range(dim // 2):
        q = int(ctrl).bit_count()
        i0 = ((ctrl >> target) << (target + 1)) | (ctrl & ((1 << target) - 1))
        pair = [i0, i0 | (1 << target)]
        u[np.ix_(pair, pair)] = rx(alphas[q])
    return u


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - |tr(U^dag V)| / dim: zero iff U and V agree up to a global phase."""
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch {u.shape} vs {v.shape}")
    dim = u.shape[0]
    return max(0.0, 1.0 - abs(np.trace(u.conj().T @ v)) / dim)


def project_ancilla(u: np.ndarray, ancilla: int, bit: int) -> tuple[np.ndarray, float]:
    """Block with the ancilla entering and leaving in the given bit state.

    Leakage is the worst column-norm deficit of that block: zero iff the
    ancilla is restored exactly on every input.
    """
    dim = u.shape[0]
    n = dim.bit_length() - 1
    idx = np.arange(dim)
    keep = idx[((idx >> ancilla) & 1) == bit]
    block = u[np.ix_(keep, keep)]
    leakage = max(0.0, 1.0 - float(np.min(np.linalg.norm(block, axis=0))))
    return block, leakage


def control_blocks(u: np.ndarray, target: int = 0):
    """Iterate (control_pattern, 2x2 target block) over all control states."""
    dim = u.shape[0]
    for ctrl in range(dim // 2):
        i0 = ((ctrl >> target) << (target + 1)) | (ctrl & ((1 << target) - 1))
        pair = [i0, i0 | (1 << target)]
        yield ctrl, u[np.ix_(pair, pair)]


def max_off_block(u: np.ndarray, target: int = 0) -> float:
    """Largest matrix element connecting different control bitstrings."""
    dim = u.shape[0]
    ctrl = _control_index(np.arange(dim), target)
    mask = ctrl[:, None] != ctrl[None, :]
    return float(np.max(np.abs(u[mask]))) if mask.any() else 0.0
