# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Gate census, closed-form cost models and the comparison tables built from them."""

import csv
import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from pydantic import BaseModel, root_validator

from bennett import babu_garbageless_tcount
from circuit import Circuit, Design, gate_counts
from clifford_t import TOFFOLI_TEMPLATE, expand_toffolis
from constants import (
    BABU_ANCILLAE,
    BABU_QUBITS,
    QUBIT_TABLE_WIDTHS,
    TCOUNT_TABLE_WIDTHS,
    CostDomainError,
    DesignId,
    GateKind,
    InvariantViolationError,
    TableId,
    UnknownTableError,
)
from ctrl_add import build_ctrl_add, ctrl_add_tcount
from multiplier import build_multiplier, multiplier_ancillae, multiplier_qubits, multiplier_tcount

logger = logging.getLogger(__name__)

CROSS_CHECK_MAX_N = 64
NOT_AVAILABLE = "NA"
_CENT = Decimal("0.01")


class ResourceReport(BaseModel):
    """Resource census of one circuit.

    `counts` is keyed by gate kind value. `block_t_counts` is the post-expansion T-count of
    each builder block and is only filled when the report is built from a Design.
    """

    t_count: int
    counts: Dict[str, int]
    toffoli_count_pre_expansion: int
    width: int
    ancillae: int = 0
    garbage: int = 0
    block_t_counts: Dict[str, int] = {}

    @root_validator()
    @classmethod
    def check_census(cls, field_values):
        """Keep the T-count tied to the per-kind counts."""
        counts = field_values.get("counts") or {}
        if any(value < 0 for value in counts.values()):
            raise ValueError(f"gate counts must be non-negative, got {counts}")
        expected = counts.get(GateKind.T.value, 0) + counts.get(GateKind.TDG.value, 0)
        if field_values.get("t_count") != expected:
            raise ValueError(f"t_count {field_values.get('t_count')} != T + TDG = {expected}")
        return field_values


def _expanded_t_count(gates) -> int:
    total = 0
    for gate in gates:
        if gate.kind == GateKind.TOFFOLI:
            total += TOFFOLI_TEMPLATE.t_count
        elif gate.kind in (GateKind.T, GateKind.TDG):
            total += 1
    return total


def report(circuit: Circuit, design: Optional[Design] = None) -> ResourceReport:
    """Count the gates of `circuit`.

    With a `design`, ancillae come from its preconditioned registers and the Toffoli
    count and block T-counts come from the design's unexpanded circuit, so the same
    design describes both its raw and its expanded netlist.
    """
    counts = {kind.value: count for kind, count in gate_counts(circuit).items()}
    toffolis = counts[GateKind.TOFFOLI.value]
    ancillae = 0
    block_t_counts: Dict[str, int] = {}
    if design is not None:
        toffolis = design.circuit.count(GateKind.TOFFOLI)
        ancillae = design.ancillae
        block_t_counts = {
            block.name: _expanded_t_count(design.block_gates(block.name))
            for block in design.blocks
        }
    return ResourceReport(
        t_count=counts[GateKind.T.value] + counts[GateKind.TDG.value],
        counts=counts,
        toffoli_count_pre_expansion=toffolis,
        width=circuit.width,
        ancillae=ancillae,
        block_t_counts=block_t_counts,
    )


def improvement_ratio(baseline: int, proposed: int) -> Fraction:
    """Exact 100 * (baseline - proposed) / baseline.

    Raises:
        CostDomainError: baseline is not positive.
    """
    if baseline <= 0:
        raise CostDomainError(f"baseline must be positive, got {baseline}")
    return Fraction(100 * (baseline - proposed), baseline)


def _round_pct(value: Fraction) -> Decimal:
    return (Decimal(value.numerator) / Decimal(value.denominator)).quantize(
        _CENT, rounding=ROUND_HALF_UP
    )


def improvement_pct(baseline: int, proposed: int) -> Decimal:
    """Improvement of `proposed` over `baseline` in percent, rounded half-up to 0.01."""
    return _round_pct(improvement_ratio(baseline, proposed))


@dataclass(frozen=True)
class CostModel:
    """Closed-form costs of one design; a missing formula is None and prints as NA."""

    design: DesignId
    label: str
    t_count: Callable[[int], int]
    t_count_formula: str
    qubits: Optional[Callable[[int], int]] = None
    qubits_formula: Optional[str] = None
    ancillae: Optional[Callable[[int], int]] = None
    ancillae_formula: Optional[str] = None

    def _evaluate(self, formula: Optional[Callable[[int], int]], n: int) -> Optional[int]:
        if n < 2:
            raise CostDomainError(f"{self.design.value} cost model needs n >= 2, got n={n}")
        return None if formula is None else formula(n)

    def t(self, n: int) -> int:
        """T-count at width n."""
        return self._evaluate(self.t_count, n)

    def total_qubits(self, n: int) -> Optional[int]:
        """Total qubits at width n, or None when no closed form exists."""
        return self._evaluate(self.qubits, n)

    def ancilla_count(self, n: int) -> Optional[int]:
        """Ancillae at width n, or None when no closed form exists."""
        return self._evaluate(self.ancillae, n)


COST_MODELS: Dict[DesignId, CostModel] = {
    model.design: model
    for model in (
        CostModel(
            DesignId.LIN_ADDER, "Lin", lambda n: 56 * n, "56n",
            lambda n: 2 * n + 1, "2n+1", lambda n: 2, "2",
        ),
        CostModel(
            DesignId.JAYASHREE_ADDER, "Jayashree", lambda n: 28 * n + 7, "28n+7",
            lambda n: 2 * n + 1, "2n+1", lambda n: 2, "2",
        ),
        CostModel(
            DesignId.PROPOSED_ADDER, "Proposed", ctrl_add_tcount, "21n+14",
            lambda n: 2 * n + 1, "2n+1", lambda n: 2, "2",
        ),
        CostModel(
            DesignId.LIN_MULT, "Lin", lambda n: 56 * n * n, "56n^2",
            lambda n: 5 * n + 1, "5n+1", lambda n: 3 * n + 1, "3n+1",
        ),
        CostModel(
            DesignId.JAYASHREE_MULT, "Jayashree", lambda n: 28 * n * n + 7 * n, "28n^2+7n",
            lambda n: 4 * n + 1, "4n+1", lambda n: 2 * n + 1, "2n+1",
        ),
        CostModel(
            DesignId.BABU_GARBAGELESS_MULT, "Babu (garbageless)",
            babu_garbageless_tcount, "42n^2-48n+48",
        ),
        CostModel(
            DesignId.PROPOSED_MULT, "Proposed", multiplier_tcount, "21n^2-14",
            multiplier_qubits, "4n+1", multiplier_ancillae, "2n+1",
        ),
    )
}  # fmt: skip


class TableRow(BaseModel):
    """One width of a comparison table: cost values, then improvement percentages."""

    n: int
    values: List[int]
    improvements: List[Decimal]

    def cells(self) -> List[str]:
        """CSV cells of the row."""
        values = [str(v) for v in self.values]
        return [str(self.n)] + values + [f"{p:.2f}" for p in self.improvements]


class FormulaRow(BaseModel):
    """One metric of a closed-form table, one formula per design."""

    metric: str
    formulas: List[str]


class ComparisonTable(BaseModel):
    """A reproduced table.

    Numeric tables fill `rows` and `averages`; closed-form tables fill `formula_rows`.
    """

    table_id: TableId
    title: str
    columns: List[str]
    rows: List[TableRow] = []
    averages: List[Decimal] = []
    formula_rows: List[FormulaRow] = []

    def row(self, n: int) -> TableRow:
        """Row for width n."""
        for row in self.rows:
            if row.n == n:
                return row
        raise KeyError(n)

    def csv_rows(self) -> List[List[str]]:
        """Header, data rows and, for numeric tables, the average row."""
        lines = [list(self.columns)]
        if self.formula_rows:
            lines.extend([row.metric] + row.formulas for row in self.formula_rows)
            return lines
        lines.extend(row.cells() for row in self.rows)
        padding = len(self.columns) - 1 - len(self.averages)
        lines.append(["average"] + [""] * padding + [f"{p:.2f}" for p in self.averages])
        return lines


def _numeric_table(
    table_id: TableId,
    title: str,
    widths: Sequence[int],
    baselines: Sequence[tuple],
    proposed: Callable[[int], int],
    proposed_label: str,
) -> ComparisonTable:
    rows, ratios = [], [[] for _ in baselines]
    for n in widths:
        baseline_values = [value(n) for _, value in baselines]
        ours = proposed(n)
        exact = [improvement_ratio(b, ours) for b in baseline_values]
        for column, ratio in zip(ratios, exact):
            column.append(ratio)
        rows.append(
            TableRow(
                n=n,
                values=baseline_values + [ours],
                improvements=[_round_pct(r) for r in exact],
            )
        )
    averages = [_round_pct(sum(column, Fraction(0)) / len(column)) for column in ratios]
    columns = ["n"] + [label for label, _ in baselines] + [proposed_label]
    columns += [f"impr_vs_{label.split()[0].lower()}" for label, _ in baselines]
    logger.debug("table %s: %d rows, averages %s", table_id.value, len(rows), averages)
    return ComparisonTable(
        table_id=table_id, title=title, columns=columns, rows=rows, averages=averages
    )


def _formula_table(table_id: TableId, title: str, designs: Sequence[DesignId]) -> ComparisonTable:
    models = [COST_MODELS[design] for design in designs]
    metrics = (
        ("T-count", lambda m: m.t_count_formula),
        ("qubits", lambda m: m.qubits_formula),
        ("ancillae", lambda m: m.ancillae_formula),
    )
    return ComparisonTable(
        table_id=table_id,
        title=title,
        columns=["metric"] + [model.label for model in models],
        formula_rows=[
            FormulaRow(metric=name, formulas=[pick(m) or NOT_AVAILABLE for m in models])
            for name, pick in metrics
        ],
    )


def _cross_check(table: ComparisonTable, build: Callable[[int], Circuit], limit: int) -> None:
    for row in table.rows:
        if row.n > limit:
            continue
        counted = report(expand_toffolis(build(row.n))).t_count
        if counted != row.values[-1]:
            raise InvariantViolationError(
                f"table {table.table_id.value} n={row.n}: formula {row.values[-1]} "
                f"but the expanded circuit has T-count {counted}"
            )
        logger.debug("table %s n=%d: census agrees (%d)", table.table_id.value, row.n, counted)


def reproduce_table(table_id, cross_check_max_n: int = CROSS_CHECK_MAX_N) -> ComparisonTable:
    """Rebuild one comparison table from the cost models.

    The proposed column of the T-count tables is checked against expanded circuits up to
    `cross_check_max_n`; pass 0 to skip the census.

    Raises:
        UnknownTableError: `table_id` names no table.
        InvariantViolationError: a formula disagrees with the counted circuit.
    """
    try:
        table_id = TableId(table_id.value if isinstance(table_id, TableId) else table_id)
    except ValueError:
        raise UnknownTableError(f"unknown table {table_id!r}")

    models = COST_MODELS
    if table_id == TableId.I:
        return _formula_table(
            table_id,
            "Comparison of Ctrl-Add circuits",
            [DesignId.LIN_ADDER, DesignId.JAYASHREE_ADDER, DesignId.PROPOSED_ADDER],
        )
    if table_id == TableId.IV:
        return _formula_table(
            table_id,
            "Comparison of integer multiplication circuits",
            [
                DesignId.LIN_MULT,
                DesignId.JAYASHREE_MULT,
                DesignId.BABU_GARBAGELESS_MULT,
                DesignId.PROPOSED_MULT,
            ],
        )
    if table_id == TableId.II:
        table = _numeric_table(
            table_id,
            "T-count comparison of Ctrl-Add circuits",
            TCOUNT_TABLE_WIDTHS,
            [
                ("Lin", models[DesignId.LIN_ADDER].t),
                ("Jayashree", models[DesignId.JAYASHREE_ADDER].t),
            ],
            models[DesignId.PROPOSED_ADDER].t,
            "Proposed",
        )
        _cross_check(table, build_ctrl_add, cross_check_max_n)
        return table
    if table_id == TableId.V:
        table = _numeric_table(
            table_id,
            "T-count comparison of integer multiplication circuits",
            TCOUNT_TABLE_WIDTHS,
            [
                ("Lin", models[DesignId.LIN_MULT].t),
                ("Jayashree", models[DesignId.JAYASHREE_MULT].t),
                ("Babu", models[DesignId.BABU_GARBAGELESS_MULT].t),
            ],
            models[DesignId.PROPOSED_MULT].t,
            "Proposed",
        )
        _cross_check(table, build_multiplier, cross_check_max_n)
        return table
    if table_id == TableId.VI:
        return _numeric_table(
            table_id,
            "Ancillae of the garbageless Babu multiplier and the proposed multiplier",
            QUBIT_TABLE_WIDTHS,
            [("Babu", BABU_ANCILLAE.__getitem__)],
            models[DesignId.PROPOSED_MULT].ancilla_count,
            "Proposed",
        )
    return _numeric_table(
        table_id,
        "Total qubits of the garbageless Babu multiplier and the proposed multiplier",
        QUBIT_TABLE_WIDTHS,
        [("Babu", BABU_QUBITS.__getitem__)],
        models[DesignId.PROPOSED_MULT].total_qubits,
        "Proposed",
    )


def write_csv(table: ComparisonTable, stream: TextIO) -> None:
    """Write the table as comma-separated text with "\\n" line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerows(table.csv_rows())
