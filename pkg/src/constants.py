# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""This module contains the constants, errors and models shared by the qarith modules."""

from enum import Enum, IntEnum
from typing import Dict, List, Optional

from pydantic import BaseModel, root_validator

VALID_LOG_LEVELS = ["info", "debug", "warning", "error", "critical"]

STATEVECTOR_WIDTH_CAP = 16
TRUTH_TABLE_WIDTH_CAP = 24
EXHAUSTIVE_INPUT_BITS = 20

# Widths printed in the T-count comparison tables and in the qubit/ancilla tables.
TCOUNT_TABLE_WIDTHS = [4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048]
QUBIT_TABLE_WIDTHS = [4, 8, 16, 32, 64, 128]

# The garbageless Babu multiplier has no closed form for qubits and ancillae.
BABU_ANCILLAE = {4: 18, 8: 57, 16: 178, 32: 608, 64: 2210, 128: 8368}
BABU_QUBITS = {4: 42, 8: 90, 16: 243, 32: 737, 64: 2467, 128: 8881}

QASM_TEMPLATE = "circuit.qasm.j2"


class QarithError(Exception):
    """Base error for circuit synthesis and verification."""


class CircuitValidationError(QarithError):
    """A gate or circuit violates the IR invariants."""


class RegisterError(CircuitValidationError):
    """A register is out of range, overlaps another register or leaves wires uncovered."""


class UnknownRegisterError(QarithError, KeyError):
    """The named register does not exist in the circuit."""


class UnsupportedWidthError(QarithError):
    """The operand width is outside what the construction supports."""


class BackendMismatchError(QarithError):
    """The circuit holds gates the selected simulator cannot execute."""


class WidthCapExceededError(QarithError):
    """The circuit is wider than the configured simulator cap."""


class InvariantViolationError(QarithError):
    """An internal invariant failed, which indicates a bug in the IR or a builder."""


class CostDomainError(QarithError):
    """A cost model was evaluated outside its domain."""


class UnknownTableError(QarithError):
    """The requested comparison table does not exist."""


class NetlistParseError(QarithError):
    """A netlist could not be parsed."""


class InfeasibleVerificationError(QarithError):
    """The requested verification run is too large or malformed."""


class InvalidSettingsError(QarithError):
    """A QARITH_* environment variable holds an invalid value."""


class GateKind(Enum):
    """Gate kinds of the IR: the reversible {NOT, CNOT, Toffoli} family plus Clifford+T."""

    NOT = "NOT"
    CNOT = "CNOT"
    TOFFOLI = "Toffoli"
    H = "H"
    T = "T"
    TDG = "TDG"
    S = "S"
    SDG = "SDG"

    @property
    def arity(self) -> int:
        """Number of qubit operands."""
        if self == GateKind.CNOT:
            return 2
        if self == GateKind.TOFFOLI:
            return 3
        return 1

    @property
    def dagger(self) -> "GateKind":
        """Kind of the Hermitian transpose."""
        return _DAGGER.get(self, self)

    @property
    def reversible(self) -> bool:
        """Whether the gate permutes basis states."""
        return self in (GateKind.NOT, GateKind.CNOT, GateKind.TOFFOLI)


_DAGGER = {
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
}


class NetlistFormat(Enum):
    """Serialization formats."""

    JSON = "json"
    QASM = "qasm"


class DesignKind(Enum):
    """Circuits the builders generate."""

    ADDER = "adder"
    MULT = "mult"


class VerifyMode(Enum):
    """How the verification input set is chosen."""

    EXHAUSTIVE = "exhaustive"
    SAMPLE = "sample"


class TableId(Enum):
    """Comparison tables that can be reproduced."""

    I = "I"  # noqa: E741
    II = "II"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"


class DesignId(Enum):
    """Designs covered by the cost models."""

    PROPOSED_ADDER = "proposed-adder"
    LIN_ADDER = "lin-adder"
    JAYASHREE_ADDER = "jayashree-adder"
    PROPOSED_MULT = "proposed-mult"
    LIN_MULT = "lin-mult"
    JAYASHREE_MULT = "jayashree-mult"
    BABU_GARBAGELESS_MULT = "babu-garbageless-mult"


class ExitCode(IntEnum):
    """Exit codes of the command line front end."""

    SUCCESS = 0
    VERIFICATION_FAILED = 1
    USAGE = 2


def _bits(value: int, count: int) -> List[int]:
    return [(value >> i) & 1 for i in range(count)]


class CtrlAddOracle(BaseModel):
    """Arithmetic reference model of the conditional adder.

    Only n, ctrl, a and b are given; the carries c_0..c_n and the sum bits s_0..s_n are
    derived by the validator.
    """

    n: int
    ctrl: int
    a: int
    b: int
    c: Optional[List[int]]
    s: Optional[List[int]]

    @root_validator()
    @classmethod
    def derive_carries_and_sums(cls, field_values):
        """Derive the carry and sum sequences."""
        n, ctrl = field_values.get("n"), field_values.get("ctrl")
        a, b = field_values.get("a"), field_values.get("b")
        if n is None or n < 1:
            raise UnsupportedWidthError(f"oracle width must be positive, got {n}")
        if ctrl not in (0, 1):
            raise ValueError(f"ctrl must be a bit, got {ctrl}")
        for name, value in (("a", a), ("b", b)):
            if value is None or not 0 <= value < (1 << n):
                raise ValueError(f"{name}={value} does not fit in {n} bits")

        a_bits, b_bits = _bits(a, n), _bits(b, n)
        carries = [0]
        for i in range(1, n + 1):
            x, y, c = a_bits[i - 1], b_bits[i - 1], carries[i - 1]
            carries.append((x & y) ^ (y & c) ^ (x & c))
        if ctrl:
            sums = [a_bits[i] ^ b_bits[i] ^ carries[i] for i in range(n)] + [carries[n]]
        else:
            sums = b_bits + [0]

        field_values["c"] = carries
        field_values["s"] = sums
        return field_values

    @property
    def sum_value(self) -> int:
        """Integer value of s_0..s_{n-1}, the final content of the b register."""
        return sum(bit << i for i, bit in enumerate(self.s[: self.n]))

    @property
    def carry_out(self) -> int:
        """Final content of the first ancilla wire: c_n when ctrl is set, else 0."""
        return self.s[self.n]

    def expected_registers(self) -> Dict[str, int]:
        """Register values the adder must leave behind when its ancillae start at 0."""
        return {
            "ctrl": self.ctrl,
            "a": self.a,
            "b": self.sum_value,
            "anc": self.carry_out,
        }


class MultOracle(BaseModel):
    """Arithmetic reference model of the shift-and-add multiplier."""

    n: int
    a: int
    b: int
    p: Optional[int]

    @root_validator()
    @classmethod
    def derive_product(cls, field_values):
        """Derive the product by accumulating (a and b_i) shifted by i."""
        n, a, b = field_values.get("n"), field_values.get("a"), field_values.get("b")
        if n is None or n < 1:
            raise UnsupportedWidthError(f"oracle width must be positive, got {n}")
        for name, value in (("a", a), ("b", b)):
            if value is None or not 0 <= value < (1 << n):
                raise ValueError(f"{name}={value} does not fit in {n} bits")
        p = 0
        for i, b_i in enumerate(_bits(b, n)):
            p += (a * b_i) << i
        field_values["p"] = p
        return field_values

    @property
    def p_bits(self) -> List[int]:
        """Bits p_0..p_{2n-1} of the product."""
        return _bits(self.p, 2 * self.n)

    def expected_registers(self) -> Dict[str, int]:
        """Register values the multiplier must leave behind when p starts at 0."""
        return {"a": self.a, "b": self.b, "p": self.p}
