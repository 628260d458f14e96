# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Expansion of Toffoli gates into the exact 7-T Clifford+T realization.

The template acts on three abstract wires: 0 and 1 are the controls, 2 is the target.
Between the two Hadamards on the target, the CNOT network and the T/T† layer implement
the phase polynomial x + y + z - (x^y) - (x^z) - (y^z) + (x^y^z) in units of pi/4, which
is pi * xyz, i.e. a controlled-controlled-Z.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from circuit import Circuit, CircuitBuilder, Gate, cnot, toffoli
from constants import GateKind
from simulate import unitary_distance

logger = logging.getLogger(__name__)

_C1, _C2, _TARGET = 0, 1, 2


def _single(kind: GateKind, wire: int) -> Gate:
    return Gate(kind, (wire,))


@dataclass(frozen=True)
class DecompositionTemplate:
    """Gate list over the abstract wires (control1, control2, target)."""

    gates: Tuple[Gate, ...]

    @property
    def t_count(self) -> int:
        """Number of T and T† gates."""
        return sum(1 for gate in self.gates if gate.kind in (GateKind.T, GateKind.TDG))

    def instantiate(self, control1: int, control2: int, target: int) -> Tuple[Gate, ...]:
        """Place the template on concrete wires."""
        wires = (control1, control2, target)
        return tuple(gate.relabel(wires) for gate in self.gates)

    def as_circuit(self) -> Circuit:
        """The template as a 3-wire circuit."""
        return CircuitBuilder(3, {"c1": [_C1], "c2": [_C2], "t": [_TARGET]}).extend(
            self.gates
        ).build()


TOFFOLI_TEMPLATE = DecompositionTemplate(
    (
        _single(GateKind.H, _TARGET),
        _single(GateKind.T, _C1),
        _single(GateKind.T, _C2),
        _single(GateKind.T, _TARGET),
        cnot(_C2, _C1),
        cnot(_TARGET, _C2),
        cnot(_C1, _TARGET),
        _single(GateKind.TDG, _C2),
        cnot(_C1, _C2),
        _single(GateKind.TDG, _C1),
        _single(GateKind.TDG, _C2),
        _single(GateKind.T, _TARGET),
        cnot(_TARGET, _C2),
        cnot(_C1, _TARGET),
        cnot(_C2, _C1),
        _single(GateKind.H, _TARGET),
    )
)


def expand_toffolis(
    circuit: Circuit, template: DecompositionTemplate = TOFFOLI_TEMPLATE
) -> Circuit:
    """Replace every Toffoli, in place, by the template on its three operands.

    All other gates are kept as they are, so the result's T-count is 7 per Toffoli plus
    the T/T† gates already present. Expanding an expanded circuit changes nothing.
    """
    builder = CircuitBuilder(circuit.width, circuit.registers)
    expanded = 0
    for gate in circuit.gates:
        if gate.kind == GateKind.TOFFOLI:
            builder.extend(template.instantiate(*gate.operands))
            expanded += 1
        else:
            builder.append(gate)
    logger.debug("expanded %d Toffoli gates into %d gates", expanded, len(builder))
    return builder.build()


def toffoli_reference() -> Circuit:
    """A single Toffoli on the template's wire layout."""
    return CircuitBuilder(3, {"c1": [_C1], "c2": [_C2], "t": [_TARGET]}).append(
        toffoli(_C1, _C2, _TARGET)
    ).build()


def toffoli_unitary_check(
    template: DecompositionTemplate = TOFFOLI_TEMPLATE,
    tol: float = 1e-10,
    up_to_global_phase: bool = False,
) -> bool:
    """Check the template's 8x8 unitary against the Toffoli unitary.

    True iff the maximum entrywise modulus of the difference is at most `tol`, computed
    by statevector application to all 8 basis states. The phase allowance exists only
    for diagnostics; the template is exact.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    distance = unitary_distance(
        template.as_circuit(), toffoli_reference(), up_to_global_phase=up_to_global_phase
    )
    logger.debug("template deviates from Toffoli by %g", distance)
    return distance <= tol
