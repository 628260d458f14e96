# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Garbageless quantum conditional adder (Ctrl-Add) with no input carry.

Wire layout for width n: ctrl on wire 0, then b_i and a_i interleaved (b_i on 2i+1, a_i
on 2i+2), then the two ancillae: A_n on wire 2n+1 and A_{n+1} on wire 2n+2.

With both ancillae starting at 0 the circuit leaves s_0..s_{n-1} on the b register,
c_n * ctrl on A_n, and restores ctrl, a and A_{n+1}. When ctrl is 0 the b register keeps
its value.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from circuit import Circuit, CircuitBuilder, Design, cnot, toffoli
from constants import DesignKind, UnsupportedWidthError

logger = logging.getLogger(__name__)

TOFFOLI_T_COUNT = 7
CTRL = 0


def _require_width(n: int) -> None:
    if n < 2:
        raise UnsupportedWidthError(f"Ctrl-Add needs n >= 2, got n={n}")


def _b(i: int) -> int:
    return 2 * i + 1


def _a(i: int) -> int:
    return 2 * i + 2


def _ancillae(n: int) -> Tuple[int, int]:
    return 2 * n + 1, 2 * n + 2


def ctrl_add_registers(n: int) -> Dict[str, List[int]]:
    """Register map of the n-bit adder."""
    _require_width(n)
    return {
        "ctrl": [CTRL],
        "b": [_b(i) for i in range(n)],
        "a": [_a(i) for i in range(n)],
        "anc": list(_ancillae(n)),
    }


def ctrl_add_wire_map(n: int) -> Dict[str, int]:
    """Wire of every named input: ctrl, b_i, a_i, A_n and A_{n+1}."""
    _require_width(n)
    wires = {"ctrl": CTRL}
    for i in range(n):
        wires[f"b_{i}"] = _b(i)
        wires[f"a_{i}"] = _a(i)
    wires[f"A_{n}"], wires[f"A_{n + 1}"] = _ancillae(n)
    return wires


@lru_cache(maxsize=None)
def ctrl_add_design(n: int) -> Design:
    """Build the adder and record one block per construction step."""
    _require_width(n)
    builder = CircuitBuilder(2 * n + 3, ctrl_add_registers(n))
    carry, scratch = _ancillae(n)

    with builder.block("step1"):
        for i in range(1, n):
            builder.append(cnot(_a(i), _b(i)))

    with builder.block("step2"):
        builder.append(toffoli(CTRL, _a(n - 1), carry))
        for i in range(n - 2, 0, -1):
            builder.append(cnot(_a(i), _a(i + 1)))

    with builder.block("step3"):
        for i in range(n - 1):
            builder.append(toffoli(_b(i), _a(i), _a(i + 1)))

    with builder.block("step4"):
        builder.append(toffoli(_b(n - 1), _a(n - 1), scratch))
        builder.append(toffoli(CTRL, scratch, carry))
        builder.append(toffoli(_b(n - 1), _a(n - 1), scratch))
        builder.append(toffoli(CTRL, _a(n - 1), _b(n - 1)))

    with builder.block("step5"):
        for i in range(n - 2, -1, -1):
            builder.append(toffoli(_b(i), _a(i), _a(i + 1)))
            builder.append(toffoli(CTRL, _a(i), _b(i)))

    with builder.block("step6"):
        for i in range(1, n - 1):
            builder.append(cnot(_a(i), _a(i + 1)))

    with builder.block("step7"):
        for i in range(1, n):
            builder.append(cnot(_a(i), _b(i)))

    logger.debug("built %d-bit Ctrl-Add with %d gates", n, len(builder))
    return Design(
        kind=DesignKind.ADDER,
        n=n,
        circuit=builder.build(),
        ancilla_registers=("anc",),
        result_register="b",
        blocks=builder.blocks,
    )


def build_ctrl_add(n: int) -> Circuit:
    """The n-bit Ctrl-Add circuit: 3n+2 Toffolis and 4n-6 CNOTs over 2n+3 wires.

    Raises:
        UnsupportedWidthError: n < 2.
    """
    return ctrl_add_design(n).circuit


def ctrl_add_step_tcounts(n: int) -> Dict[str, int]:
    """T-count contributed by each construction step."""
    _require_width(n)
    return {
        "step1": 0,
        "step2": TOFFOLI_T_COUNT,
        "step3": TOFFOLI_T_COUNT * (n - 1),
        "step4": 4 * TOFFOLI_T_COUNT,
        "step5": 2 * TOFFOLI_T_COUNT * (n - 1),
        "step6": 0,
        "step7": 0,
    }


def ctrl_add_tcount(n: int) -> int:
    """Closed-form T-count of the expanded adder: 21n + 14."""
    _require_width(n)
    return 21 * n + 14
