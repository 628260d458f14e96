# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Execution backends for circuits.

Two backends share one convention: wire k is bit k of the basis index, so wire 0 is the
least significant bit.

- The reversible backend executes {NOT, CNOT, Toffoli} circuits as permutations of basis
  states, one state at a time or vectorized over a numpy array of states.
- The statevector backend applies the Clifford+T matrices to a dense amplitude vector.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from circuit import Circuit, Gate
from constants import (
    BackendMismatchError,
    CircuitValidationError,
    GateKind,
    InvariantViolationError,
    WidthCapExceededError,
)
from settings import get_settings

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
# Widest circuit the batch backend runs on int64 lanes; wider ones fall back to Python ints.
_INT64_WIDTH = 62

_SQRT2_INV = 1 / np.sqrt(2)
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
_PHASES = {
    GateKind.T: np.exp(1j * np.pi / 4),
    GateKind.TDG: np.exp(-1j * np.pi / 4),
    GateKind.S: 1j,
    GateKind.SDG: -1j,
}


@dataclass(frozen=True)
class BasisState:
    """Computational basis state; bits[k] is the value of wire k."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"basis state bits must be 0 or 1, got {self.bits}")

    @property
    def width(self) -> int:
        """Number of wires."""
        return len(self.bits)

    @classmethod
    def from_int(cls, value: int, width: int) -> "BasisState":
        """Build from a basis index."""
        if not 0 <= value < (1 << width):
            raise ValueError(f"basis index {value} does not fit {width} wires")
        return cls(tuple((value >> k) & 1 for k in range(width)))

    @classmethod
    def from_string(cls, text: str) -> "BasisState":
        """Build from a binary string written wire 0 first."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"expected a binary string, got {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def to_int(self) -> int:
        """Basis index of this state."""
        return sum(bit << k for k, bit in enumerate(self.bits))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass
class StateVector:
    """Dense amplitudes over 2**width basis states."""

    width: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        """L2 norm of the amplitudes."""
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, state: Union[BasisState, int]) -> complex:
        """Amplitude of one basis state."""
        index = state.to_int() if isinstance(state, BasisState) else state
        return complex(self.amplitudes[index])

    def nonzero(self, tol: float = 1e-12) -> List[Tuple[int, complex]]:
        """Basis indices with non-negligible amplitude, in index order."""
        return [
            (int(i), complex(self.amplitudes[i]))
            for i in np.flatnonzero(np.abs(self.amplitudes) > tol)
        ]


def _masks(gate: Gate) -> Tuple[int, int]:
    control_mask = 0
    for q in gate.controls:
        control_mask |= 1 << q
    return control_mask, 1 << gate.target


def _reversible_program(circuit: Circuit) -> List[Tuple[int, int]]:
    program = []
    for position, gate in enumerate(circuit.gates):
        if not gate.kind.reversible:
            raise BackendMismatchError(
                f"gate {position} is {gate}; circuits with H/T/S gates need the "
                "statevector backend"
            )
        program.append(_masks(gate))
    return program


def _check_width(circuit: Circuit, state: BasisState) -> None:
    if state.width != circuit.width:
        raise CircuitValidationError(
            f"input has {state.width} bits but the circuit has {circuit.width} wires"
        )


def run_reversible(circuit: Circuit, state: BasisState) -> BasisState:
    """Apply each gate's boolean action to a basis state.

    Raises:
        BackendMismatchError: the circuit contains H, T or S family gates.
    """
    _check_width(circuit, state)
    value = state.to_int()
    for control_mask, target_mask in _reversible_program(circuit):
        if value & control_mask == control_mask:
            value ^= target_mask
    return BasisState.from_int(value, circuit.width)


def run_reversible_batch(circuit: Circuit, states: Iterable[int]) -> np.ndarray:
    """Run many basis indices through a reversible circuit at once.

    The result is aligned with the input order. Circuits wider than 62 wires run on
    Python integers held in an object array.
    """
    program = _reversible_program(circuit)
    dtype = np.int64 if circuit.width <= _INT64_WIDTH else object
    values = np.array(list(states) if not isinstance(states, np.ndarray) else states, dtype=dtype)
    values = values.copy()
    for control_mask, target_mask in program:
        fire = (values & control_mask) == control_mask
        values[fire] ^= target_mask
    return values


def truth_table(circuit: Circuit, cap: Optional[int] = None) -> np.ndarray:
    """Return the full input-to-output permutation of a reversible circuit.

    Raises:
        WidthCapExceededError: the circuit is wider than the truth-table cap.
        InvariantViolationError: the map is not a bijection.
    """
    cap = cap or get_settings().truth_table_cap
    if circuit.width > cap:
        raise WidthCapExceededError(f"width {circuit.width} exceeds truth-table cap {cap}")
    table = run_reversible_batch(circuit, np.arange(1 << circuit.width, dtype=np.int64))
    if np.unique(table).size != table.size:
        raise InvariantViolationError("reversible circuit induced a non-bijective map")
    return table


def _apply_gate(amplitudes: np.ndarray, gate: Gate, indices: np.ndarray) -> np.ndarray:
    if gate.kind.reversible:
        control_mask, target_mask = _masks(gate)
        source = np.where((indices & control_mask) == control_mask, indices ^ target_mask, indices)
        return amplitudes[source]
    if gate.kind == GateKind.H:
        # (high bits, bit k, low bits) view of the index
        view = amplitudes.reshape(-1, 2, 1 << gate.target)
        return np.einsum("ij,ajb->aib", _HADAMARD, view).reshape(-1)
    phases = np.where(indices & (1 << gate.target), _PHASES[gate.kind], 1)
    return amplitudes * phases


def _initial_amplitudes(width: int, state: Union[BasisState, int]) -> np.ndarray:
    if not isinstance(state, BasisState):
        state = BasisState.from_int(state, width)
    amplitudes = np.zeros(1 << width, dtype=complex)
    amplitudes[state.to_int()] = 1
    return amplitudes


def run_statevector(
    circuit: Circuit,
    state: Union[BasisState, int] = 0,
    cap: Optional[int] = None,
) -> StateVector:
    """Apply every gate matrix to the basis state.

    Raises:
        WidthCapExceededError: the circuit is wider than the statevector cap.
        ValueError: an integer state is not a basis index of the circuit.
        InvariantViolationError: the norm drifted from 1 by more than 1e-12.
    """
    cap = cap or get_settings().statevector_cap
    if circuit.width > cap:
        raise WidthCapExceededError(f"width {circuit.width} exceeds statevector cap {cap}")
    if isinstance(state, BasisState):
        _check_width(circuit, state)
    amplitudes = _initial_amplitudes(circuit.width, state)
    indices = np.arange(1 << circuit.width)
    for position, gate in enumerate(circuit.gates):
        amplitudes = _apply_gate(amplitudes, gate, indices)
        drift = abs(np.linalg.norm(amplitudes) - 1)
        if drift > NORM_TOLERANCE:
            raise InvariantViolationError(f"norm drifted by {drift} after gate {position}")
    return StateVector(circuit.width, amplitudes)


def unitary(circuit: Circuit, cap: Optional[int] = None) -> np.ndarray:
    """Dense unitary; column j is the image of basis state j."""
    columns = [
        run_statevector(circuit, j, cap=cap).amplitudes for j in range(1 << circuit.width)
    ]
    return np.stack(columns, axis=1)


def unitary_distance(
    first: Circuit,
    second: Circuit,
    up_to_global_phase: bool = False,
    cap: Optional[int] = None,
) -> float:
    """Maximum entrywise modulus of the difference of two circuit unitaries.

    With `up_to_global_phase`, the second unitary is first rotated by the phase that
    aligns it with the first on the largest-modulus entry of the first column.
    """
    if first.width != second.width:
        raise CircuitValidationError(f"width mismatch: {first.width} vs {second.width}")
    u1, u2 = unitary(first, cap=cap), unitary(second, cap=cap)
    if up_to_global_phase:
        k = int(np.argmax(np.abs(u1[:, 0])))
        if abs(u2[k, 0]) > 0:
            ratio = u1[k, 0] / u2[k, 0]
            u2 = u2 * (ratio / abs(ratio))
    return float(np.max(np.abs(u1 - u2)))


def unitary_equiv(
    first: Circuit,
    second: Circuit,
    tol: float = 1e-10,
    up_to_global_phase: bool = False,
    cap: Optional[int] = None,
) -> bool:
    """Compare the unitaries induced by two circuits column by column."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return unitary_distance(first, second, up_to_global_phase, cap=cap) <= tol


def encode_inputs(circuit: Circuit, rows: Sequence[dict]) -> List[int]:
    """Basis indices for rows of per-register values; unnamed registers start at 0."""
    return [circuit.registers.pack(row) for row in rows]
