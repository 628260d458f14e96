# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

import numpy as np
import pytest
from hypothesis import assume, given, settings

from circuit import Gate, cnot, compose, inverse, not_gate, toffoli
from constants import (
    BackendMismatchError,
    CircuitValidationError,
    GateKind,
    WidthCapExceededError,
)
from ctrl_add import build_ctrl_add
from multiplier import build_multiplier
from simulate import (
    BasisState,
    encode_inputs,
    run_reversible,
    run_reversible_batch,
    run_statevector,
    truth_table,
    unitary_equiv,
)

from .helpers import ALL_KINDS, circuits, one_register, run_registers


def test_basis_state_string_is_wire_zero_first():
    state = BasisState.from_string("110")
    assert state.bits == (1, 1, 0)
    assert state.to_int() == 0b011
    assert str(BasisState.from_int(0b011, 3)) == "110"


@pytest.mark.parametrize("text", ["", "012", "ab"])
def test_basis_state_rejects_non_binary(text):
    with pytest.raises(ValueError):
        BasisState.from_string(text)


def test_empty_circuit_keeps_input():
    state = BasisState.from_string("1011")
    assert run_reversible(one_register(4), state) == state


def test_toffoli_ands_into_target():
    circuit = one_register(3, [toffoli(0, 1, 2)])
    assert str(run_reversible(circuit, BasisState.from_string("110"))) == "111"
    assert str(run_reversible(circuit, BasisState.from_string("100"))) == "100"


def test_reversible_backend_rejects_phase_gates():
    circuit = one_register(2, [cnot(0, 1), Gate(GateKind.T, (1,))])
    with pytest.raises(BackendMismatchError, match="statevector"):
        run_reversible(circuit, BasisState.from_int(0, 2))


def test_input_width_must_match():
    with pytest.raises(CircuitValidationError):
        run_reversible(one_register(3), BasisState.from_string("10"))


def test_multiplier_on_one_input():
    circuit = build_multiplier(4)
    [out] = run_registers(circuit, [{"a": 11, "b": 13}])
    assert out == {"b": 13, "a": 11, "p": 143}


def test_batch_matches_single_runs():
    circuit = build_ctrl_add(3)
    indices = list(range(0, 1 << circuit.width, 37))
    batch = run_reversible_batch(circuit, indices)
    single = [
        run_reversible(circuit, BasisState.from_int(i, circuit.width)).to_int() for i in indices
    ]
    assert batch.tolist() == single


def test_batch_beyond_int64_lanes():
    circuit = build_multiplier(16)
    assert circuit.width == 65
    [out] = run_registers(circuit, [{"a": 65535, "b": 65535}])
    assert out["p"] == 65535 * 65535


def test_truth_table_of_empty_circuit():
    assert truth_table(one_register(2)).tolist() == [0, 1, 2, 3]


def test_truth_table_of_not():
    assert truth_table(one_register(1, [not_gate(0)])).tolist() == [1, 0]


def test_truth_table_cap():
    with pytest.raises(WidthCapExceededError):
        truth_table(one_register(5), cap=4)


@settings(max_examples=30)
@given(circuits())
def test_truth_table_is_a_permutation(circuit):
    table = truth_table(circuit)
    assert sorted(table.tolist()) == list(range(1 << circuit.width))


@settings(max_examples=30)
@given(circuits())
def test_circuit_then_inverse_is_identity(circuit):
    table = truth_table(compose(circuit, inverse(circuit)))
    assert table.tolist() == list(range(1 << circuit.width))


def test_statevector_empty_circuit():
    vector = run_statevector(one_register(2))
    assert vector.amplitude(0) == 1
    assert vector.nonzero() == [(0, 1 + 0j)]


def test_statevector_hadamard():
    vector = run_statevector(one_register(1, [Gate(GateKind.H, (0,))]))
    np.testing.assert_allclose(vector.amplitudes, [2**-0.5, 2**-0.5], atol=1e-12)


def test_hadamard_on_a_high_wire():
    circuit = one_register(3, [Gate(GateKind.H, (2,))])
    vector = run_statevector(circuit, BasisState.from_string("100"))
    assert [index for index, _ in vector.nonzero()] == [0b001, 0b101]
    assert vector.amplitude(0b101) == pytest.approx(2**-0.5)


@pytest.mark.parametrize("kind,phase", [(GateKind.T, np.exp(1j * np.pi / 4)), (GateKind.S, 1j)])
def test_phase_gates(kind, phase):
    vector = run_statevector(one_register(1, [Gate(kind, (0,))]), BasisState.from_string("1"))
    assert vector.amplitude(1) == pytest.approx(phase)


@pytest.mark.parametrize("start", range(4))
def test_t_then_tdg_is_identity(start):
    circuit = one_register(2, [Gate(GateKind.T, (0,)), Gate(GateKind.TDG, (0,))])
    vector = run_statevector(circuit, start)
    assert abs(vector.amplitude(start) - 1) < 1e-12
    assert abs(vector.norm() - 1) < 1e-12


def test_statevector_cap():
    with pytest.raises(WidthCapExceededError):
        run_statevector(one_register(6), cap=5)


@settings(max_examples=20, deadline=None)
@given(circuits(max_width=5))
def test_backends_agree_on_reversible_circuits(circuit):
    for index in range(1 << circuit.width):
        expected = run_reversible(circuit, BasisState.from_int(index, circuit.width)).to_int()
        vector = run_statevector(circuit, index)
        assert abs(vector.amplitude(expected) - 1) < 1e-12


def test_unitary_equiv_is_reflexive():
    circuit = one_register(3, [Gate(GateKind.H, (0,)), toffoli(0, 1, 2), Gate(GateKind.T, (2,))])
    assert unitary_equiv(circuit, circuit, tol=1e-15)


@settings(max_examples=15, deadline=None)
@given(circuits(kinds=ALL_KINDS, max_width=4, max_gates=8), circuits(max_width=4, max_gates=8))
def test_unitary_equiv_is_symmetric(first, second):
    assume(first.width == second.width)
    assert unitary_equiv(first, second) == unitary_equiv(second, first)


def test_global_phase_allowance():
    s_squared = one_register(1, [Gate(GateKind.S, (0,)), Gate(GateKind.S, (0,))])
    # S.S = Z; X.Z.X = -Z differs from Z only by a global phase
    conjugated = one_register(
        1, [not_gate(0), Gate(GateKind.S, (0,)), Gate(GateKind.S, (0,)), not_gate(0)]
    )
    assert not unitary_equiv(s_squared, conjugated)
    assert unitary_equiv(s_squared, conjugated, up_to_global_phase=True)


def test_unitary_equiv_rejects_width_mismatch_and_bad_tolerance():
    with pytest.raises(CircuitValidationError):
        unitary_equiv(one_register(1), one_register(2))
    with pytest.raises(ValueError):
        unitary_equiv(one_register(1), one_register(1), tol=0)


def test_encode_inputs_leaves_other_registers_zero():
    circuit = build_ctrl_add(2)
    [index] = encode_inputs(circuit, [{"ctrl": 1, "a": 3}])
    assert circuit.registers.unpack(index) == {"ctrl": 1, "b": 0, "a": 3, "anc": 0}


@pytest.mark.parametrize("index", [-1, 8])
def test_statevector_rejects_out_of_range_index(index):
    with pytest.raises(ValueError):
        run_statevector(one_register(3), index)


def test_statevector_accepts_integer_index():
    vector = run_statevector(one_register(3, [not_gate(0)]), 6)
    assert vector.amplitude(7) == pytest.approx(1)
