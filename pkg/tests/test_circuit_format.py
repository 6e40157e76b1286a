import numpy as np
import pytest
from numpy.testing import assert_allclose

from qstages.circuit import circuit_validate
from qstages.circuit_format import (
    format_basis_label,
    parse_amplitude_lines,
    parse_circuit,
    parse_input_spec,
)
from qstages.engine import eval_efficient
from qstages.errors import (
    DimensionMismatchError,
    NotNormalizedError,
    ParseError,
    ValidationError,
)
from qstages.gates import gate_cnot
from qstages.linalg import StateVector

BELL = """\
# Bell-state preparation
registers 2 2
stage h 1 | id 1
stage cnot
"""


class TestParse:
    def test_bell_document(self):
        doc = parse_circuit(BELL)
        assert doc.register_dims == (2, 2)
        assert len(doc.circuit.stages) == 2
        circuit_validate(doc.circuit)
        out, _ = eval_efficient(doc.circuit, StateVector.basis((2, 2), 0))
        assert_allclose(out.amps, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)], atol=1e-12)

    def test_stage_covering_too_many_wires(self):
        with pytest.raises(ValidationError):
            parse_circuit("registers 2 2\nstage h 3\n")

    def test_stage_covering_too_few_wires(self):
        with pytest.raises(ValidationError):
            parse_circuit("registers 2 2\nstage h 1\n")

    def test_qft_on_matching_wire(self):
        doc = parse_circuit("registers 6\nstage qft 6\n")
        circuit_validate(doc.circuit)
        assert doc.circuit.stages[0].gates[0].dim == 6

    def test_qft_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            parse_circuit("registers 4\nstage qft 6\n")

    def test_unknown_gate_reports_line(self):
        with pytest.raises(ParseError) as err:
            parse_circuit("registers 2\nstage toffoli\n")
        assert err.value.line == 2

    def test_unknown_directive(self):
        with pytest.raises(ParseError):
            parse_circuit("wires 2 2\n")

    def test_missing_registers(self):
        with pytest.raises(ParseError):
            parse_circuit("stage h 1\n")

    def test_mixed_radix_document(self):
        doc = parse_circuit("registers 4 4 5\nstage qft 4 | qft 4 | id 1\n")
        circuit_validate(doc.circuit)
        assert doc.circuit.stages[0].gates[2].wire_dims == (5,)

    def test_id_spans_wires_of_register_dims(self):
        doc = parse_circuit("registers 2 3\nstage id 2\n")
        gate = doc.circuit.stages[0].gates[0]
        assert gate.wire_dims == (2, 3)

    def test_zero_stage_document(self):
        doc = parse_circuit("registers 2 2\n")
        assert doc.circuit.stages == ()

    def test_cnot_needs_qubit_wires(self):
        with pytest.raises(ValidationError):
            parse_circuit("registers 3 2\nstage cnot\n")


class TestGateFiles:
    def test_perm_file(self):
        aux = {"swap23.perm": "0 0\n1 1\n2 3\n3 2\n"}
        doc = parse_circuit("registers 2 2\nstage perm swap23.perm\n", aux.get)
        assert np.array_equal(doc.circuit.stages[0].gates[0].matrix, gate_cnot().matrix)

    def test_perm_file_span_inference(self):
        aux = {"rot.perm": "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n"}
        doc = parse_circuit("registers 2 3\nstage perm rot.perm\n", aux.get)
        assert doc.circuit.stages[0].gates[0].wire_dims == (2, 3)

    def test_perm_not_bijective(self):
        aux = {"bad.perm": "0 0\n1 0\n"}
        with pytest.raises(ValidationError):
            parse_circuit("registers 2\nstage perm bad.perm\n", aux.get)

    def test_unitary_file(self):
        s = 1 / np.sqrt(2)
        content = f"{s} 0\n{s} 0\n{s} 0\n{-s} 0\n"
        doc = parse_circuit("registers 2\nstage unitary h.mat\n", {"h.mat": content}.get)
        gate = doc.circuit.stages[0].gates[0]
        assert np.max(np.abs(gate.matrix - np.array([[s, s], [s, -s]]))) <= 1e-12

    def test_unitary_file_rejected_when_not_unitary(self):
        content = "1 0\n1 0\n1 0\n1 0\n"
        with pytest.raises(ValidationError):
            parse_circuit("registers 2\nstage unitary bad.mat\n", {"bad.mat": content}.get)

    def test_missing_file(self):
        with pytest.raises(ParseError):
            parse_circuit("registers 2\nstage perm nowhere.perm\n")

    def test_span_overrun(self):
        aux = {"big.perm": "\n".join(f"{i} {i}" for i in range(8))}
        with pytest.raises(ValidationError):
            parse_circuit("registers 2 2\nstage perm big.perm\n", aux.get)


class TestRoundTrip:
    def test_serialize_and_reparse(self):
        doc = parse_circuit(BELL)
        text = doc.to_text()
        again = parse_circuit(text)
        assert again.register_dims == doc.register_dims
        assert again.stages == doc.stages
        for s1, s2 in zip(doc.circuit.stages, again.circuit.stages):
            for g1, g2 in zip(s1.gates, s2.gates):
                assert g1.name == g2.name
                assert np.array_equal(g1.matrix, g2.matrix)

    def test_file_specs_survive(self):
        aux = {"swap23.perm": "0 0\n1 1\n2 3\n3 2\n"}
        doc = parse_circuit("registers 2 2\nstage perm swap23.perm\n", aux.get)
        assert "perm swap23.perm" in doc.to_text()


class TestInputSpec:
    def test_qubit_label(self):
        v = parse_input_spec("|10>", (2, 2))
        assert v.amps[2] == 1

    def test_label_needs_qubits(self):
        with pytest.raises(ValidationError):
            parse_input_spec("|10>", (2, 3))

    def test_basis_index(self):
        v = parse_input_spec("basis:4", (2, 3))
        assert v.amps[4] == 1

    def test_basis_out_of_range(self):
        with pytest.raises(ValidationError):
            parse_input_spec("basis:6", (2, 3))

    def test_explicit_amplitudes(self):
        s = 1 / np.sqrt(2)
        v = parse_input_spec("ignored", (2,), [complex(s, 0), complex(0, s)])
        assert abs(v.norm() - 1) <= 1e-12

    def test_amplitudes_must_be_normalized(self):
        with pytest.raises(NotNormalizedError):
            parse_input_spec("ignored", (2,), [complex(1, 0), complex(1, 0)])

    def test_amplitude_count_checked(self):
        with pytest.raises(DimensionMismatchError):
            parse_input_spec("ignored", (2, 2), [complex(1, 0)])

    def test_bad_spec(self):
        with pytest.raises(ValidationError):
            parse_input_spec("third state please", (2,))


class TestAmplitudeLines:
    def test_parse(self):
        amps = parse_amplitude_lines("0.6 0\n0 0.8\n")
        assert amps == [complex(0.6, 0), complex(0, 0.8)]

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_amplitude_lines("0.6\n")


class TestLabels:
    def test_qubit_labels(self):
        assert format_basis_label(0, (2, 2)) == "|00>"
        assert format_basis_label(2, (2, 2)) == "|10>"
        assert format_basis_label(5, (2, 2, 2)) == "|101>"

    def test_mixed_radix_labels(self):
        assert format_basis_label(4, (2, 3)) == "|1,1>"
        assert format_basis_label(5, (2, 3)) == "|1,2>"
