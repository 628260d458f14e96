# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Shift-and-add integer multiplier built from a Toffoli array and n-1 Ctrl-Add blocks.

Wires: b on 0..n-1, a on n..2n-1, p on 2n..4n (p_k is wire 2n+k). The p register must
start at 0. Iteration j adds a into p_j..p_{j+n-1} under control b_j; the carry lands on
p_{n+j} and p_{n+j+1} is the adder's scratch wire, both still 0 at that point because
the partial product is below 2^(n+j).
"""

import logging
from functools import lru_cache
from typing import Dict, List

from circuit import Circuit, CircuitBuilder, Design, toffoli
from constants import DesignKind, UnsupportedWidthError
from ctrl_add import ctrl_add_design

logger = logging.getLogger(__name__)


def _require_width(n: int) -> None:
    if n < 2:
        raise UnsupportedWidthError(f"multiplier needs n >= 2, got n={n}")


def multiplier_registers(n: int) -> Dict[str, List[int]]:
    """Register map of the n-bit multiplier."""
    _require_width(n)
    return {
        "b": list(range(n)),
        "a": list(range(n, 2 * n)),
        "p": list(range(2 * n, 4 * n + 1)),
    }


def build_toffoli_array(n: int) -> Circuit:
    """Standalone Toffoli array: b_i ^= a_i * ctrl for every i.

    Registers are ctrl:[0], a:[1..n], b:[n+1..2n].
    """
    _require_width(n)
    builder = CircuitBuilder(
        2 * n + 1,
        {"ctrl": [0], "a": list(range(1, n + 1)), "b": list(range(n + 1, 2 * n + 1))},
    )
    for i in range(n):
        builder.append(toffoli(0, 1 + i, n + 1 + i))
    return builder.build()


def _toffoli_array_relabeling(n: int) -> List[int]:
    # ctrl -> b_0, a_i -> a_i, b_i -> p_i
    return [0] + [n + i for i in range(n)] + [2 * n + i for i in range(n)]


def _ctrl_add_relabeling(n: int, j: int) -> List[int]:
    relabeling = [j]
    for i in range(n):
        relabeling.append(2 * n + j + i)  # adder b_i -> p_{j+i}
        relabeling.append(n + i)  # adder a_i -> a_i
    relabeling.append(3 * n + j)
    relabeling.append(3 * n + j + 1)
    return relabeling


@lru_cache(maxsize=None)
def multiplier_design(n: int) -> Design:
    """Build the multiplier with a "toffoli-array" block and one "ctrl-add[j]" per j."""
    _require_width(n)
    builder = CircuitBuilder(4 * n + 1, multiplier_registers(n))
    with builder.block("toffoli-array"):
        builder.compose(build_toffoli_array(n), _toffoli_array_relabeling(n))
    adder = ctrl_add_design(n).circuit
    for j in range(1, n):
        with builder.block(f"ctrl-add[{j}]"):
            builder.compose(adder, _ctrl_add_relabeling(n, j))
    logger.debug("built %d-bit multiplier with %d gates", n, len(builder))
    return Design(
        kind=DesignKind.MULT,
        n=n,
        circuit=builder.build(),
        ancilla_registers=("p",),
        result_register="p",
        blocks=builder.blocks,
    )


def build_multiplier(n: int) -> Circuit:
    """The n-bit multiplier over 4n+1 wires; p must start at 0.

    Raises:
        UnsupportedWidthError: n < 2.
    """
    return multiplier_design(n).circuit


def multiplier_tcount(n: int) -> int:
    """Closed-form T-count of the expanded multiplier: 21n^2 - 14."""
    _require_width(n)
    return 21 * n * n - 14


def multiplier_qubits(n: int) -> int:
    """Total wires: 4n + 1."""
    _require_width(n)
    return 4 * n + 1


def multiplier_ancillae(n: int) -> int:
    """Wires that must start at 0 (the p register): 2n + 1."""
    _require_width(n)
    return 2 * n + 1
