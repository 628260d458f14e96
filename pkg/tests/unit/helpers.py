# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

from hypothesis import strategies as st

from circuit import Circuit, CircuitBuilder, Gate
from constants import GateKind
from simulate import encode_inputs, run_reversible_batch

ADDER_WIDTHS = [2, 3, 4, 5, 6]
MULT_WIDTHS = [2, 3, 4]
REVERSIBLE_KINDS = [GateKind.NOT, GateKind.CNOT, GateKind.TOFFOLI]
ALL_KINDS = list(GateKind)


def one_register(width: int, gates=()) -> Circuit:
    """Circuit with a single register "q" covering every wire."""
    return CircuitBuilder(width, {"q": range(width)}).extend(gates).build()


def run_registers(circuit: Circuit, rows):
    """Run register assignments through the reversible backend and decode every output."""
    registers = circuit.registers
    outputs = run_reversible_batch(circuit, encode_inputs(circuit, rows))
    return [registers.unpack(int(state)) for state in outputs]


@st.composite
def circuits(draw, kinds=REVERSIBLE_KINDS, min_width=3, max_width=6, max_gates=20):
    """Random valid circuits over one register."""
    width = draw(st.integers(min_width, max_width))
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        kind = draw(st.sampled_from(kinds))
        wires = draw(st.permutations(range(width)))
        gates.append(Gate(kind, tuple(wires[: kind.arity])))
    return one_register(width, gates)
