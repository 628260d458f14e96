# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Gate-level intermediate representation of reversible and Clifford+T circuits.

A circuit is an immutable, value-comparable gate sequence over a fixed number of wires,
plus a register map that names ordered groups of wires. Inside a register, position 0
is the least significant bit. Circuits are built with `CircuitBuilder` (single-threaded,
mutable) or with the functional helpers `new_circuit`, `append`, `compose` and `inverse`.
"""

import json
import logging
import re
from collections.abc import Mapping
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from jinja2 import Environment, FileSystemLoader, exceptions
from pydantic import BaseModel, ValidationError, validator

from constants import (
    QASM_TEMPLATE,
    CircuitValidationError,
    DesignKind,
    GateKind,
    NetlistFormat,
    NetlistParseError,
    RegisterError,
    UnknownRegisterError,
)
from settings import get_settings

logger = logging.getLogger(__name__)

QASM_NAMES = {
    GateKind.NOT: "x",
    GateKind.CNOT: "cx",
    GateKind.TOFFOLI: "ccx",
    GateKind.H: "h",
    GateKind.T: "t",
    GateKind.TDG: "tdg",
    GateKind.S: "s",
    GateKind.SDG: "sdg",
}
_QASM_KINDS = {name: kind for kind, name in QASM_NAMES.items()}
_QASM_GATE = re.compile(r"^(?P<name>[a-z]+)\s+(?P<args>q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;$")
_QASM_QREG = re.compile(r"^qreg\s+q\[(?P<size>\d+)\]\s*;$")
_QASM_OPERAND = re.compile(r"q\[(\d+)\]")

Relabeling = Union[Sequence[int], Mapping]


@dataclass(frozen=True, slots=True)
class Gate:
    """A gate kind applied to an ordered operand tuple (controls first, target last)."""

    kind: GateKind
    operands: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) != self.kind.arity:
            raise CircuitValidationError(
                f"{self.kind.value} takes {self.kind.arity} operands, got {self.operands}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise CircuitValidationError(
                f"{self.kind.value} operands must be distinct, got {self.operands}"
            )
        if any(q < 0 for q in self.operands):
            raise CircuitValidationError(f"negative operand in {self.operands}")

    @property
    def target(self) -> int:
        """The wire the gate acts on; for controlled gates, the last operand."""
        return self.operands[-1]

    @property
    def controls(self) -> Tuple[int, ...]:
        """Control wires of the reversible kinds (empty for single-qubit gates)."""
        return self.operands[:-1]

    def dagger(self) -> "Gate":
        """Return the Hermitian transpose."""
        if self.kind.dagger == self.kind:
            return self
        return Gate(self.kind.dagger, self.operands)

    def relabel(self, relabeling: Relabeling) -> "Gate":
        """Return the same gate with every operand mapped through the relabeling."""
        return Gate(self.kind, tuple(relabeling[q] for q in self.operands))

    def __str__(self) -> str:
        return f"{self.kind.value}({','.join(str(q) for q in self.operands)})"


def not_gate(target: int) -> Gate:
    """Not gate on one wire."""
    return Gate(GateKind.NOT, (target,))


def cnot(control: int, target: int) -> Gate:
    """Feynman gate: target ^= control."""
    return Gate(GateKind.CNOT, (control, target))


def toffoli(control1: int, control2: int, target: int) -> Gate:
    """Toffoli gate: target ^= control1 * control2."""
    return Gate(GateKind.TOFFOLI, (control1, control2, target))


class RegisterMap(Mapping):
    """Named, ordered groups of wire indices.

    The map is immutable and preserves insertion order. Index position i inside a
    register is the wire holding bit i of that register's value.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[Mapping] = None):
        items = []
        for name, indices in (entries or {}).items():
            if not isinstance(name, str) or not name:
                raise RegisterError(f"register names must be non-empty strings, got {name!r}")
            indices = tuple(int(i) for i in indices)
            if len(set(indices)) != len(indices):
                raise RegisterError(f"register {name!r} repeats a wire: {indices}")
            if any(i < 0 for i in indices):
                raise RegisterError(f"register {name!r} has a negative wire: {indices}")
            items.append((name, indices))
        self._entries = tuple(items)

    def __getitem__(self, name: str) -> Tuple[int, ...]:
        for key, indices in self._entries:
            if key == name:
                return indices
        raise UnknownRegisterError(f"unknown register {name!r}")

    def __iter__(self) -> Iterator[str]:
        return (name for name, _ in self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name) -> bool:
        return any(key == name for key, _ in self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, RegisterMap):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"RegisterMap({dict(self._entries)!r})"

    def to_dict(self) -> Dict[str, List[int]]:
        """Plain dict form used by the JSON netlist."""
        return {name: list(indices) for name, indices in self._entries}

    def check(self, width: int) -> None:
        """Validate the registers against a circuit width.

        Raises:
            RegisterError: a register is out of range, two registers overlap, or some
                wire belongs to no register.
        """
        owner: Dict[int, str] = {}
        for name, indices in self._entries:
            for i in indices:
                if i >= width:
                    raise RegisterError(
                        f"register {name!r} wire {i} is out of range for width {width}"
                    )
                if i in owner:
                    raise RegisterError(
                        f"register {name!r} overlaps register {owner[i]!r} on wire {i}"
                    )
                owner[i] = name
        if len(owner) != width:
            missing = sorted(set(range(width)) - set(owner))
            raise RegisterError(f"wires {missing} are not covered by any register")

    def with_register(self, name: str, indices: Sequence[int]) -> "RegisterMap":
        """Return a copy with one more register appended."""
        if name in self:
            raise RegisterError(f"register {name!r} already exists")
        return RegisterMap({**self.to_dict(), name: list(indices)})

    def pack(self, values: Mapping) -> int:
        """Encode register values into a basis index (wire k is bit k of the index)."""
        state = 0
        for name, value in values.items():
            indices = self[name]
            if not 0 <= value < (1 << len(indices)):
                raise RegisterError(
                    f"value {value} does not fit register {name!r} of {len(indices)} wires"
                )
            for position, wire in enumerate(indices):
                state |= ((value >> position) & 1) << wire
        return state

    def unpack(self, state: int) -> Dict[str, int]:
        """Decode every register's value from a basis index."""
        return {
            name: sum(((state >> wire) & 1) << position for position, wire in enumerate(indices))
            for name, indices in self._entries
        }


@dataclass(frozen=True, slots=True)
class Circuit:
    """Ordered gate sequence over a fixed number of wires."""

    width: int
    gates: Tuple[Gate, ...]
    registers: RegisterMap

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if not isinstance(self.registers, RegisterMap):
            object.__setattr__(self, "registers", RegisterMap(self.registers))
        if self.width < 1:
            raise CircuitValidationError(f"width must be positive, got {self.width}")
        self.registers.check(self.width)
        for gate in self.gates:
            _check_operands(gate, self.width)

    def __len__(self) -> int:
        return len(self.gates)

    def count(self, kind: GateKind) -> int:
        """Number of gates of one kind."""
        return sum(1 for gate in self.gates if gate.kind == kind)

    @property
    def reversible(self) -> bool:
        """Whether every gate is in {NOT, CNOT, Toffoli}."""
        return all(gate.kind.reversible for gate in self.gates)


def _check_operands(gate: Gate, width: int) -> None:
    if max(gate.operands) >= width:
        raise CircuitValidationError(f"{gate} has an operand outside width {width}")


def gate_counts(circuit: Circuit) -> Dict[GateKind, int]:
    """Per-kind census, with a zero entry for every kind."""
    counts = {kind: 0 for kind in GateKind}
    for gate in circuit.gates:
        counts[gate.kind] += 1
    return counts


def new_circuit(width: int, registers: Mapping) -> Circuit:
    """Create an empty circuit whose width and registers are fixed for its lifetime."""
    return Circuit(width, (), RegisterMap(registers))


def append(circuit: Circuit, gate: Gate) -> Circuit:
    """Return a new circuit with the gate appended at the end."""
    _check_operands(gate, circuit.width)
    return Circuit(circuit.width, circuit.gates + (gate,), circuit.registers)


def inverse(circuit: Circuit) -> Circuit:
    """Return the logical reverse: gates in reverse order, each replaced by its dagger."""
    return Circuit(
        circuit.width, tuple(gate.dagger() for gate in reversed(circuit.gates)), circuit.registers
    )


def _check_relabeling(relabeling: Relabeling, source_width: int, target_width: int) -> None:
    try:
        images = [relabeling[q] for q in range(source_width)]
    except (IndexError, KeyError):
        raise CircuitValidationError(
            f"relabeling does not cover all {source_width} wires of the second circuit"
        )
    if len(set(images)) != len(images):
        raise CircuitValidationError(f"relabeling is not injective: {images}")
    if any(not 0 <= q < target_width for q in images):
        raise CircuitValidationError(f"relabeling leaves width {target_width}: {images}")


def compose(first: Circuit, second: Circuit, relabeling: Optional[Relabeling] = None) -> Circuit:
    """Apply `first`, then `second`.

    Without a relabeling both circuits must have the same width and register map. With
    one, wire k of `second` is placed on wire relabeling[k] of `first`, and the result
    keeps the registers of `first`.
    """
    if relabeling is None:
        if first.width != second.width:
            raise CircuitValidationError(f"width mismatch: {first.width} vs {second.width}")
        if first.registers != second.registers:
            raise CircuitValidationError("register maps differ; supply a relabeling")
        return Circuit(first.width, first.gates + second.gates, first.registers)
    _check_relabeling(relabeling, second.width, first.width)
    moved = tuple(gate.relabel(relabeling) for gate in second.gates)
    return Circuit(first.width, first.gates + moved, first.registers)


class CircuitBuilder:
    """Mutable, single-threaded circuit builder.

    Gates are validated on the way in; `build` returns the immutable circuit. Named
    blocks record the gate index range emitted inside a `with builder.block(name)`.
    """

    def __init__(self, width: int, registers: Mapping):
        self.width = width
        self.registers = RegisterMap(registers)
        if width < 1:
            raise CircuitValidationError(f"width must be positive, got {width}")
        self.registers.check(width)
        self._gates: List[Gate] = []
        self._blocks: List["Block"] = []

    def __len__(self) -> int:
        return len(self._gates)

    def append(self, gate: Gate) -> "CircuitBuilder":
        """Append one gate."""
        _check_operands(gate, self.width)
        self._gates.append(gate)
        return self

    def extend(self, gates) -> "CircuitBuilder":
        """Append gates in order."""
        for gate in gates:
            self.append(gate)
        return self

    def compose(
        self, circuit: Circuit, relabeling: Optional[Relabeling] = None
    ) -> "CircuitBuilder":
        """Append every gate of another circuit, optionally relabeling its wires."""
        if relabeling is None:
            if circuit.width != self.width:
                raise CircuitValidationError(
                    f"width mismatch: {self.width} vs {circuit.width}"
                )
            return self.extend(circuit.gates)
        _check_relabeling(relabeling, circuit.width, self.width)
        return self.extend(gate.relabel(relabeling) for gate in circuit.gates)

    @contextmanager
    def block(self, name: str):
        """Record the gates emitted inside the context as a named block."""
        start = len(self._gates)
        yield self
        self._blocks.append(Block(name, start, len(self._gates)))
        logger.debug("block %s: gates [%d, %d)", name, start, len(self._gates))

    @property
    def blocks(self) -> Tuple["Block", ...]:
        """Blocks recorded so far."""
        return tuple(self._blocks)

    def build(self) -> Circuit:
        """Freeze the gates into a circuit."""
        return Circuit(self.width, tuple(self._gates), self.registers)


@dataclass(frozen=True)
class Block:
    """A contiguous gate range [start, stop) produced by one construction step."""

    name: str
    start: int
    stop: int


@dataclass(frozen=True)
class Design:
    """A generated circuit and what its builder documents about it.

    Ancilla registers must be preconditioned to 0 by the caller. The result register
    holds the function output and is what a Bennett wrap copies out.
    """

    kind: DesignKind
    n: int
    circuit: Circuit
    ancilla_registers: Tuple[str, ...]
    result_register: str
    blocks: Tuple[Block, ...] = field(default_factory=tuple)

    @property
    def ancillae(self) -> int:
        """Number of wires that must start at 0."""
        return sum(len(self.circuit.registers[name]) for name in self.ancilla_registers)

    def block(self, name: str) -> Block:
        """Look a block up by name."""
        for block in self.blocks:
            if block.name == name:
                return block
        raise KeyError(name)

    def block_gates(self, name: str) -> Tuple[Gate, ...]:
        """Gates emitted by one block."""
        block = self.block(name)
        return self.circuit.gates[block.start : block.stop]


class _GateModel(BaseModel):
    kind: GateKind
    operands: List[int]


class NetlistModel(BaseModel):
    """JSON netlist schema: {width, registers: {name: [indices]}, gates: [{kind, operands}]}."""

    width: int
    registers: Dict[str, List[int]]
    gates: List[_GateModel]

    @validator("width")
    @classmethod
    def width_must_be_positive(cls, value):
        """Reject empty circuits of no wires."""
        if value < 1:
            raise ValueError("width must be positive")
        return value


def _render(src_template_file: str, values: Dict) -> str:
    templates_dir = get_settings().templates_dir
    template_env = Environment(
        loader=FileSystemLoader(templates_dir), keep_trailing_newline=True
    )
    try:
        template = template_env.get_template(src_template_file)
    except exceptions.TemplateNotFound as e:
        logger.error("template %s not found in %s", src_template_file, templates_dir)
        raise e
    return template.render(values)


def _qasm_line(gate: Gate) -> str:
    args = ",".join(f"q[{q}]" for q in gate.operands)
    return f"{QASM_NAMES[gate.kind]} {args};"


def serialize(circuit: Circuit, fmt: NetlistFormat = NetlistFormat.JSON) -> str:
    """Render a circuit as JSON netlist or OpenQASM 2.0 text (newline terminated)."""
    fmt = NetlistFormat(fmt)
    if fmt == NetlistFormat.QASM:
        text = _render(
            QASM_TEMPLATE,
            {"width": circuit.width, "lines": [_qasm_line(gate) for gate in circuit.gates]},
        )
    else:
        payload = {
            "width": circuit.width,
            "registers": circuit.registers.to_dict(),
            "gates": [
                {"kind": gate.kind.value, "operands": list(gate.operands)}
                for gate in circuit.gates
            ],
        }
        text = json.dumps(payload)
    return text if text.endswith("\n") else text + "\n"


def _parse_json(text: str) -> Circuit:
    try:
        model = NetlistModel.parse_raw(text)
    except ValidationError as e:
        raise NetlistParseError(f"invalid JSON netlist: {e}")
    return Circuit(
        model.width,
        tuple(Gate(gate.kind, tuple(gate.operands)) for gate in model.gates),
        RegisterMap(model.registers),
    )


def _parse_qasm(text: str) -> Circuit:
    width = None
    gates = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if match := _QASM_QREG.match(line):
            if width is not None:
                raise NetlistParseError(f"line {number}: only one qreg is supported")
            width = int(match.group("size"))
            continue
        match = _QASM_GATE.match(line)
        if not match or match.group("name") not in _QASM_KINDS:
            raise NetlistParseError(f"line {number}: unsupported statement {line!r}")
        if width is None:
            raise NetlistParseError(f"line {number}: gate before qreg declaration")
        operands = tuple(int(q) for q in _QASM_OPERAND.findall(match.group("args")))
        gates.append(Gate(_QASM_KINDS[match.group("name")], operands))
    if width is None:
        raise NetlistParseError("missing qreg declaration")
    return Circuit(width, tuple(gates), RegisterMap({"q": range(width)}))


def parse(text: str, fmt: NetlistFormat = NetlistFormat.JSON) -> Circuit:
    """Parse a JSON netlist or the emitted OpenQASM dialect.

    Raises:
        NetlistParseError: the text is malformed. IR violations inside a well-formed
            netlist surface as CircuitValidationError.
    """
    fmt = NetlistFormat(fmt)
    if fmt == NetlistFormat.QASM:
        return _parse_qasm(text)
    return _parse_json(text)
