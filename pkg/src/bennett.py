# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Compute, copy out, uncompute."""

import logging
from dataclasses import dataclass

from circuit import Block, Circuit, CircuitBuilder, Design, RegisterMap, cnot, inverse
from constants import CostDomainError, RegisterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BennettPlan:
    """A source circuit, the register holding its result and the fresh copy register."""

    source: Circuit
    result_register: str
    copy_register: str = "y"

    def __post_init__(self):
        # raises UnknownRegisterError
        self.source.registers[self.result_register]
        if self.copy_register in self.source.registers:
            raise RegisterError(f"copy register {self.copy_register!r} already exists")

    @property
    def result_wires(self):
        """Wires of the result register in the source."""
        return self.source.registers[self.result_register]

    @property
    def copy_wires(self):
        """Fresh wires placed above the source's width."""
        return tuple(range(self.source.width, self.source.width + len(self.result_wires)))

    @property
    def registers(self) -> RegisterMap:
        """Source registers plus the copy register."""
        return self.source.registers.with_register(self.copy_register, self.copy_wires)

    def build(self) -> Circuit:
        """Source, one CNOT per result wire into its copy wire, then the inverse source."""
        width = self.source.width + len(self.result_wires)
        builder = CircuitBuilder(width, self.registers)
        identity = list(range(self.source.width))
        builder.compose(self.source, identity)
        for result, copy in zip(self.result_wires, self.copy_wires):
            builder.append(cnot(result, copy))
        builder.compose(inverse(self.source), identity)
        logger.debug(
            "wrapped %d-wire circuit, copying %r into %r",
            self.source.width,
            self.result_register,
            self.copy_register,
        )
        return builder.build()


def bennett_wrap(source: Circuit, result_register: str, copy_register: str = "y") -> Circuit:
    """Wrap `source` so every source wire is restored and the copy register holds the result.

    Raises:
        UnknownRegisterError: `result_register` is not a register of `source`.
    """
    return BennettPlan(source, result_register, copy_register).build()


def bennett_design(design: Design, copy_register: str = "y") -> Design:
    """Wrap a generated design around its result register.

    The wrapped design has "compute", "copy" and "uncompute" blocks, counts the copy
    register among its ancillae and returns its result in the copy register.
    """
    plan = BennettPlan(design.circuit, design.result_register, copy_register)
    k, copies = len(design.circuit), len(plan.result_wires)
    return Design(
        kind=design.kind,
        n=design.n,
        circuit=plan.build(),
        ancilla_registers=design.ancilla_registers + (copy_register,),
        result_register=copy_register,
        blocks=(
            Block("compute", 0, k),
            Block("copy", k, k + copies),
            Block("uncompute", k + copies, 2 * k + copies),
        ),
    )


def babu_garbageless_tcount(n: int) -> int:
    """T-count of the garbage-free Babu multiplier: 42n^2 - 48n + 48."""
    if n < 2:
        raise CostDomainError(f"Babu cost model needs n >= 2, got n={n}")
    return 42 * n * n - 48 * n + 48
