# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

"""Oracle comparison of the generated adder and multiplier circuits.

Inputs are enumerated (exhaustive mode) or drawn from a seeded generator (sample mode),
run through the reversible backend with every ancilla at 0 and compared register by
register against CtrlAddOracle or MultOracle.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from circuit import Design
from constants import (
    CtrlAddOracle,
    DesignKind,
    InfeasibleVerificationError,
    MultOracle,
    VerifyMode,
)
from ctrl_add import ctrl_add_design
from multiplier import multiplier_design
from settings import get_settings
from simulate import encode_inputs, run_reversible_batch

logger = logging.getLogger(__name__)

Case = Dict[str, int]


class Counterexample(BaseModel):
    """First failing input with the expected and observed register values."""

    inputs: Dict[str, int]
    expected: Dict[str, int]
    observed: Dict[str, int]


class VerificationSummary(BaseModel):
    """Outcome of one verification run."""

    kind: DesignKind
    n: int
    mode: VerifyMode
    total: int
    passed: int
    counterexample: Optional[Counterexample]

    @property
    def ok(self) -> bool:
        """True iff every evaluated input matched the oracle."""
        return self.passed == self.total

    def render(self) -> str:
        """Deterministic text summary."""
        lines = [
            f"verify {self.kind.value} n={self.n} mode={self.mode.value}: "
            f"{self.passed}/{self.total} pass"
        ]
        if self.counterexample is not None:
            c = self.counterexample
            lines.append(f"counterexample inputs={c.inputs}")
            lines.append(f"  expected={c.expected}")
            lines.append(f"  observed={c.observed}")
        return "\n".join(lines) + "\n"


def design_for(kind: DesignKind, n: int) -> Design:
    """The builder output for a design kind."""
    return ctrl_add_design(n) if kind == DesignKind.ADDER else multiplier_design(n)


def _operands(kind: DesignKind, n: int) -> List[Tuple[str, int]]:
    if kind == DesignKind.ADDER:
        return [("ctrl", 1), ("a", n), ("b", n)]
    return [("a", n), ("b", n)]


def input_bits(kind: DesignKind, n: int) -> int:
    """Number of free input bits: 2n+1 for the adder, 2n for the multiplier."""
    return sum(bits for _, bits in _operands(kind, n))


def _expected(kind: DesignKind, n: int, case: Case) -> Dict[str, int]:
    if kind == DesignKind.ADDER:
        return CtrlAddOracle(n=n, **case).expected_registers()
    return MultOracle(n=n, **case).expected_registers()


def exhaustive_cases(kind: DesignKind, n: int) -> List[Case]:
    """Every operand combination, in lexicographic order of the operand names."""
    names = [name for name, _ in _operands(kind, n)]
    ranges = [range(1 << bits) for _, bits in _operands(kind, n)]
    return [dict(zip(names, values)) for values in product(*ranges)]


def sampled_cases(kind: DesignKind, n: int, samples: int, seed: int) -> List[Case]:
    """Uniform operand draws; the same seed always yields the same cases."""
    rng = np.random.default_rng(seed)
    operands = _operands(kind, n)
    bits = rng.integers(0, 2, size=(samples, sum(width for _, width in operands)))
    weights = [1 << i for i in range(max(width for _, width in operands))]
    cases = []
    for row in bits.tolist():
        case, offset = {}, 0
        for name, width in operands:
            case[name] = sum(w * b for w, b in zip(weights, row[offset : offset + width]))
            offset += width
        cases.append(case)
    return cases


def check_cases(
    kind: DesignKind, n: int, cases: Sequence[Case]
) -> Tuple[int, Optional[Tuple[int, Counterexample]]]:
    """Run a batch of cases; return the pass count and the first failure with its index."""
    design = design_for(kind, n)
    registers = design.circuit.registers
    outputs = run_reversible_batch(design.circuit, encode_inputs(design.circuit, cases))
    passed, first = 0, None
    for index, (case, state) in enumerate(zip(cases, outputs)):
        expected = _expected(kind, n, case)
        unpacked = registers.unpack(int(state))
        observed = {name: unpacked[name] for name in expected}
        if observed == expected:
            passed += 1
        elif first is None:
            first = (index, Counterexample(inputs=case, expected=expected, observed=observed))
            logger.warning("mismatch on %s: expected %s, observed %s", case, expected, observed)
    return passed, first


def _check_chunk(args):
    kind_value, n, cases = args
    return check_cases(DesignKind(kind_value), n, cases)


def _chunks(cases: List[Case], count: int) -> List[List[Case]]:
    size = -(-len(cases) // count)
    return [cases[i : i + size] for i in range(0, len(cases), size)]


def verify(
    kind: DesignKind,
    n: int,
    mode: VerifyMode = VerifyMode.EXHAUSTIVE,
    samples: int = 1000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> VerificationSummary:
    """Compare the circuit with its oracle over the chosen input set.

    The summary is the same for any number of workers.

    Raises:
        InfeasibleVerificationError: exhaustive mode over more input bits than allowed, or
            sample mode with fewer than one sample.
        UnsupportedWidthError: n < 2.
    """
    settings = get_settings()
    workers = workers or settings.workers
    design_for(kind, n)
    if mode == VerifyMode.EXHAUSTIVE:
        bits = input_bits(kind, n)
        if bits > settings.exhaustive_bits:
            raise InfeasibleVerificationError(
                f"exhaustive {kind.value} n={n} needs 2^{bits} inputs; the limit is "
                f"2^{settings.exhaustive_bits}, use --mode sample"
            )
        cases = exhaustive_cases(kind, n)
    else:
        if samples < 1:
            raise InfeasibleVerificationError(f"sample mode needs samples >= 1, got {samples}")
        cases = sampled_cases(kind, n, samples, seed)

    if workers > 1 and len(cases) > 1:
        chunks = _chunks(cases, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_chunk, [(kind.value, n, c) for c in chunks]))
    else:
        results = [check_cases(kind, n, cases)]

    passed, counterexample = 0, None
    for count, first in results:
        passed += count
        if first is not None and counterexample is None:
            counterexample = first[1]
    logger.info("verified %s n=%d: %d/%d pass", kind.value, n, passed, len(cases))
    return VerificationSummary(
        kind=kind,
        n=n,
        mode=mode,
        total=len(cases),
        passed=passed,
        counterexample=counterexample,
    )
