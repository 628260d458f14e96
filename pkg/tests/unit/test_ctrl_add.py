# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

from itertools import product

import pytest
from parameterized import parameterized

from circuit import cnot, compose, inverse, toffoli
from clifford_t import expand_toffolis
from constants import CtrlAddOracle, DesignKind, GateKind, UnsupportedWidthError
from ctrl_add import (
    build_ctrl_add,
    ctrl_add_design,
    ctrl_add_step_tcounts,
    ctrl_add_tcount,
    ctrl_add_wire_map,
)
from resources import report
from simulate import truth_table
from verify import verify

from .helpers import ADDER_WIDTHS, run_registers


@pytest.mark.parametrize("n", ADDER_WIDTHS)
def test_exhaustive_against_oracle(n):
    circuit = build_ctrl_add(n)
    rows = [
        {"ctrl": ctrl, "a": a, "b": b}
        for ctrl, a, b in product(range(2), range(1 << n), range(1 << n))
    ]
    outputs = run_registers(circuit, rows)
    for row, out in zip(rows, outputs):
        assert out == CtrlAddOracle(n=n, **row).expected_registers(), row


@parameterized.expand(
    [
        ("add", 4, 1, 5, 9, 14, 0),
        ("no_add", 4, 0, 5, 9, 9, 0),
        ("carry_out", 4, 1, 15, 1, 0, 1),
        ("carry_suppressed", 4, 0, 15, 1, 1, 0),
        ("two_bits", 2, 1, 3, 3, 2, 1),
    ]
)
def test_examples(_, n, ctrl, a, b, b_out, carry):
    [out] = run_registers(build_ctrl_add(n), [{"ctrl": ctrl, "a": a, "b": b}])
    assert out == {"ctrl": ctrl, "a": a, "b": b_out, "anc": carry}


def test_oracle_sum_bits():
    oracle = CtrlAddOracle(n=4, ctrl=1, a=15, b=1)
    assert oracle.c == [0, 1, 1, 1, 1]
    assert oracle.s == [0, 0, 0, 0, 1]
    assert CtrlAddOracle(n=4, ctrl=0, a=15, b=1).s == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("n", [2, 3, 5, 16, 64])
def test_gate_counts(n):
    circuit = build_ctrl_add(n)
    assert circuit.width == 2 * n + 3
    assert circuit.count(GateKind.TOFFOLI) == 3 * n + 2
    assert circuit.count(GateKind.CNOT) == 4 * n - 6
    assert len(circuit) == 7 * n - 4


def test_two_bit_gate_sequence():
    # ctrl=0, b0=1, a0=2, b1=3, a1=4, A2=5, A3=6
    assert build_ctrl_add(2).gates == (
        cnot(4, 3),
        toffoli(0, 4, 5),
        toffoli(1, 2, 4),
        toffoli(3, 4, 6),
        toffoli(0, 6, 5),
        toffoli(3, 4, 6),
        toffoli(0, 4, 3),
        toffoli(1, 2, 4),
        toffoli(0, 2, 1),
        cnot(4, 3),
    )


def test_registers_and_wire_map():
    registers = build_ctrl_add(3).registers
    assert registers.to_dict() == {
        "ctrl": [0],
        "b": [1, 3, 5],
        "a": [2, 4, 6],
        "anc": [7, 8],
    }
    wires = ctrl_add_wire_map(3)
    assert wires["A_3"] == 7
    assert wires["A_4"] == 8
    assert wires["b_2"] == 5
    assert wires["a_0"] == 2


@pytest.mark.parametrize("n", [0, 1, -3])
def test_rejects_narrow_widths(n):
    for func in (build_ctrl_add, ctrl_add_tcount, ctrl_add_step_tcounts, ctrl_add_wire_map):
        with pytest.raises(UnsupportedWidthError):
            func(n)


@pytest.mark.parametrize("n,expected", [(2, 56), (4, 98), (8, 182), (2048, 43022)])
def test_tcount_formula(n, expected):
    assert ctrl_add_tcount(n) == expected


def test_tcount_formula_matches_census(census_max_n):
    for n in range(2, census_max_n + 1):
        assert report(expand_toffolis(build_ctrl_add(n))).t_count == ctrl_add_tcount(n), n


@pytest.mark.parametrize("n", [2, 3, 7])
def test_step_tcounts_match_blocks(n):
    steps = ctrl_add_step_tcounts(n)
    assert sum(steps.values()) == ctrl_add_tcount(n)
    design = ctrl_add_design(n)
    assert [block.name for block in design.blocks] == [f"step{i}" for i in range(1, 8)]
    assert report(design.circuit, design).block_t_counts == steps


def test_design_metadata():
    design = ctrl_add_design(4)
    assert design.ancilla_registers == ("anc",)
    assert design.ancillae == 2
    assert design.result_register == "b"
    assert design.block_gates("step4")[1] == toffoli(0, 10, 9)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bijective_including_dirty_ancillae(n):
    table = truth_table(build_ctrl_add(n))
    assert sorted(table.tolist()) == list(range(1 << (2 * n + 3)))


def test_composed_with_inverse_is_identity():
    circuit = build_ctrl_add(2)
    table = truth_table(compose(circuit, inverse(circuit)))
    assert table.tolist() == list(range(128))


def test_dirty_first_ancilla_is_xored():
    # A_n starting at 1 ends as 1 ^ carry; A_{n+1} must still start at 0
    [out] = run_registers(build_ctrl_add(3), [{"ctrl": 1, "a": 7, "b": 1, "anc": 1}])
    assert out == {"ctrl": 1, "a": 7, "b": 0, "anc": 0}


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8, 9])
def test_exhaustive_at_the_enumeration_limit(n):
    summary = verify(DesignKind.ADDER, n)
    assert summary.ok
    assert summary.total == 1 << (2 * n + 1)
