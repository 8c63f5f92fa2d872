import json

import numpy as np
import pytest

from mscompile import (
    Circuit,
    CircuitFormatError,
    CompilationPlan,
    Gate,
    PhaseResetError,
    QubitIndexError,
    UnknownGateError,
    build_crot_circuit,
    build_from_merged,
    build_toffoli_circuit,
    circuit_unitary,
    crot_angles,
    deserialize,
    ideal_toffoli,
    merge_adjacent_rz,
    phase_distance,
    plan_merged_angles,
    project_ancilla,
    serialize,
    to_text,
)

PI = np.pi


def _counts(circ):
    out = {}
    for g in circ.gates:
        out[g.kind] = out.get(g.kind, 0) + 1
    return out


class TestBuildCrot:
    def test_empty_train(self):
        plan = CompilationPlan(2, PI / 2, -PI / 2, (0.7,))
        circ = build_crot_circuit(plan)
        assert circ.ms_count() == 0
        assert _counts(circ) == {"H": 2, "RZ": 1}

    def test_n3_pulse_count(self):
        circ = build_crot_circuit(crot_angles(3, PI))
        assert circ.ms_count() == 6

    def test_gate_count_structure(self):
        for n, alpha in [(3, 0.3), (5, PI)]:
            plan = crot_angles(n, alpha)
            circ = build_crot_circuit(plan)
            counts = _counts(circ)
            length = plan.num_pulses
            assert counts["H"] == 2 * (n - 1)
            assert counts["MS"] == length == 2 * n
            assert counts["RX"] == length
            assert counts["RZ"] == 2 * length + 1

    def test_refuses_phase_leak(self):
        plan = CompilationPlan(3, PI / 3, -PI / 3, (0.0, 0.1, 0.2, 0.3, 0.4))
        with pytest.raises(PhaseResetError):
            build_crot_circuit(plan)


class TestMergeAdjacentRz:
    def test_plain_pair(self):
        circ = Circuit(1, (Gate.rz(0, 0.3), Gate.rz(0, 0.5)))
        merged = merge_adjacent_rz(circ)
        assert len(merged.gates) == 1
        assert merged.gates[0].angle == pytest.approx(0.8)

    def test_merges_across_disjoint_support(self):
        circ = Circuit(2, (Gate.rz(0, 0.3), Gate.h(1), Gate.rz(0, 0.5)))
        merged = merge_adjacent_rz(circ)
        kinds = [g.kind for g in merged.gates]
        assert kinds == ["RZ", "H"]
        assert merged.gates[0].angle == pytest.approx(0.8)

    def test_ms_blocks_merging(self):
        circ = Circuit(2, (Gate.rz(0, 0.3), Gate.ms(0.1), Gate.rz(0, 0.5)))
        assert sum(1 for g in merge_adjacent_rz(circ).gates if g.kind == "RZ") == 2

    def test_cancellation_is_dropped(self):
        circ = Circuit(1, (Gate.rz(0, 0.4), Gate.rz(0, -0.4)))
        assert merge_adjacent_rz(circ).gates == ()

    def test_crot_slot_count(self):
        plan = crot_angles(3, PI)
        merged_circ = merge_adjacent_rz(build_crot_circuit(plan))
        slots = plan_merged_angles(plan)
        assert len(slots) == 2 * 3 + 1  # Table-style phi~ count, trailing zero included
        nonzero = sum(1 for s in slots if abs(s) > 1e-12)
        assert sum(1 for g in merged_circ.gates if g.kind == "RZ") == nonzero

    def test_preserves_unitary(self):
        for n, alpha in [(2, 0.3), (3, PI), (4, -PI), (4, 2 * PI)]:
            circ = build_crot_circuit(crot_angles(n, alpha))
            assert phase_distance(circuit_unitary(circ), circuit_unitary(merge_adjacent_rz(circ))) < 1e-12


class TestBuildFromMerged:
    def test_length_check(self):
        with pytest.raises(ValueError):
            build_from_merged(3, PI / 3, -PI / 3, [0.0] * 6)

    def test_structure(self):
        circ = build_from_merged(3, PI / 3, -PI / 3, [0.1] * 7)
        counts = _counts(circ)
        assert counts == {"H": 4, "RZ": 7, "MS": 6, "RX": 6}

    def test_matches_unmerged_circuit(self):
        for n, alpha in [(3, -PI), (4, 0.3), (5, 2 * PI)]:
            plan = crot_angles(n, alpha)
            direct = circuit_unitary(build_crot_circuit(plan))
            merged = circuit_unitary(build_from_merged(n, plan.tau, plan.h, plan_merged_angles(plan)))
            assert phase_distance(direct, merged) < 1e-12

    def test_table1_n3_row(self):
        from mscompile import ideal_crot

        row = [-1.855, -2.118, -0.525, -2.118, -1.855, -PI, 0.0]
        circ = build_from_merged(3, PI / 3, -PI / 3, row)
        dist = phase_distance(circuit_unitary(circ), ideal_crot(3, -PI))
        assert dist < 1e-2


class TestToffoli:
    def test_rejects_small(self):
        with pytest.raises(ValueError):
            build_toffoli_circuit(1)

    def test_n2_matches_controlled_x(self):
        circ = build_toffoli_circuit(2)
        assert circ.ms_count() == 6
        block, leakage = project_ancilla(circuit_unitary(circ), 2, 0)
        assert leakage < 1e-10
        assert phase_distance(block, ideal_toffoli(2)) < 1e-6

    def test_n3_matches_ideal(self):
        circ = build_toffoli_circuit(3)
        block, leakage = project_ancilla(circuit_unitary(circ), 3, 0)
        assert leakage < 1e-10
        assert phase_distance(block, ideal_toffoli(3)) < 1e-6

    def test_n4_ms_count(self):
        assert build_toffoli_circuit(4).ms_count() == 10

    def test_ancilla_metadata(self):
        circ = build_toffoli_circuit(3)
        assert circ.ancilla_qubits == frozenset({3})
        assert circ.target_qubit == 0


class TestSerialization:
    def test_round_trip(self):
        for circ in (
            build_crot_circuit(crot_angles(3, 0.3)),
            build_toffoli_circuit(2),
            Circuit(1, ()),
        ):
            assert deserialize(serialize(circ)) == circ

    def test_unknown_gate_named(self):
        doc = {"version": 1, "num_qubits": 2, "target_qubit": 0, "ancilla_qubits": [], "gates": [{"type": "CZ", "qubit": 0}]}
        with pytest.raises(UnknownGateError, match="CZ"):
            deserialize(json.dumps(doc))

    def test_empty_circuit_valid(self):
        doc = {"version": 1, "num_qubits": 1, "target_qubit": 0, "ancilla_qubits": [], "gates": []}
        circ = deserialize(json.dumps(doc))
        assert circ.num_qubits == 1 and circ.gates == ()

    def test_malformed_json(self):
        with pytest.raises(CircuitFormatError):
            deserialize(b"{not json")

    def test_index_out_of_range(self):
        doc = {"version": 1, "num_qubits": 2, "target_qubit": 0, "ancilla_qubits": [], "gates": [{"type": "H", "qubit": 5}]}
        with pytest.raises(QubitIndexError):
            deserialize(json.dumps(doc))

    def test_bad_version(self):
        with pytest.raises(CircuitFormatError):
            deserialize(json.dumps({"version": 7, "num_qubits": 1, "gates": []}))

    def test_angles_survive_round_trip_exactly(self):
        circ = build_crot_circuit(crot_angles(4, 0.12345678901234567))
        back = deserialize(serialize(circ))
        for g1, g2 in zip(circ.gates, back.gates):
            assert g1.angle == g2.angle  # bitwise equality

    def test_text_export(self):
        circ = Circuit(2, (Gate.h(1), Gate.rz(0, 0.5), Gate.ms(0.25), Gate.rx(0, -0.5)))
        lines = to_text(circ).splitlines()
        assert lines == ["h 1", "rz 0 0.5", "ms 0.25", "rx 0 -0.5"]


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("MS", qubit=0, angle=0.1)
    with pytest.raises(ValueError):
        Gate("RZ", qubit=0)
    with pytest.raises(UnknownGateError):
        Gate("CNOT", qubit=0, angle=0.1)
    with pytest.raises(QubitIndexError):
        Circuit(2, (Gate.h(3),))
