# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

from hypothesis import given, settings

from circuit import Gate, cnot
from clifford_t import (
    TOFFOLI_TEMPLATE,
    DecompositionTemplate,
    expand_toffolis,
    toffoli_reference,
    toffoli_unitary_check,
)
from constants import GateKind
from ctrl_add import build_ctrl_add
from resources import report
from simulate import unitary_equiv

from .helpers import ALL_KINDS, circuits


def test_template_has_seven_t_gates():
    assert TOFFOLI_TEMPLATE.t_count == 7
    assert len(TOFFOLI_TEMPLATE.gates) == 16
    kinds = [gate.kind for gate in TOFFOLI_TEMPLATE.gates]
    assert kinds.count(GateKind.H) == 2
    assert kinds.count(GateKind.CNOT) == 7
    assert kinds[0] == kinds[-1] == GateKind.H


def test_template_equals_toffoli_exactly():
    assert toffoli_unitary_check(tol=1e-10)
    assert unitary_equiv(TOFFOLI_TEMPLATE.as_circuit(), toffoli_reference(), tol=1e-10)


def test_broken_template_is_detected():
    gates = list(TOFFOLI_TEMPLATE.gates)
    gates[1] = Gate(GateKind.TDG, gates[1].operands)
    assert not toffoli_unitary_check(DecompositionTemplate(tuple(gates)))


def test_instantiate_places_wires():
    gates = TOFFOLI_TEMPLATE.instantiate(5, 9, 2)
    assert gates[0] == Gate(GateKind.H, (2,))
    assert gates[4] == cnot(9, 5)


def test_expanded_ctrl_add_counts():
    result = report(expand_toffolis(build_ctrl_add(4)))
    assert result.t_count == 98
    assert result.counts["Toffoli"] == 0


def test_expanded_ctrl_add_is_unitarily_equivalent():
    circuit = build_ctrl_add(2)
    assert circuit.width == 7
    assert unitary_equiv(circuit, expand_toffolis(circuit), tol=1e-10)


@settings(max_examples=25)
@given(circuits(kinds=ALL_KINDS))
def test_expansion_adds_seven_t_per_toffoli(circuit):
    expanded = expand_toffolis(circuit)
    added = 7 * circuit.count(GateKind.TOFFOLI)
    before = circuit.count(GateKind.T) + circuit.count(GateKind.TDG)
    assert expanded.count(GateKind.T) + expanded.count(GateKind.TDG) == before + added
    assert expanded.count(GateKind.TOFFOLI) == 0
    assert expand_toffolis(expanded) == expanded
