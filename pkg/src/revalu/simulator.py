"""Classical simulation of reversible circuits.

States are packed into unsigned integers with line 0 as the least significant
bit, so a whole sweep of input states is a single ``uint64`` array and each
gate is a handful of vectorized word operations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import BudgetExceeded, StructuralError
from .gates import BitState, LineId
from .netlist import Circuit

__all__ = [
    "BitState", "Permutation", "Verdict", "EXHAUSTIVE_LIMIT", "SAMPLE_SIZE",
    "run", "run_batch", "extract_permutation", "check_bijective",
    "check_ancilla_clean", "check_equivalent", "input_states", "sample_states",
]

EXHAUSTIVE_LIMIT = 22
SAMPLE_SIZE = 100_000
_WORD = 64

StateLike = Union[BitState, int]


@dataclass(frozen=True)
class Verdict:
    passed: bool
    method: str  # "exhaustive" or "sampled"
    checked: int
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        s = f"{'PASS' if self.passed else 'FAIL'} ({self.method}, {self.checked} states)"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass(frozen=True, eq=False)
class Permutation:
    """``table[i]`` is the packed output state for packed input ``i``."""

    table: np.ndarray

    def __len__(self) -> int:
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def is_bijective(self) -> bool:
        return np.array_equal(np.sort(self.table), np.arange(len(self.table), dtype=self.table.dtype))

    def inverse(self) -> Permutation:
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(len(self.table), dtype=self.table.dtype)
        return Permutation(inv)


def run(c: Circuit, s: StateLike) -> BitState:
    """Apply every gate of ``c`` left to right to a single state."""
    if isinstance(s, BitState):
        if s.width != c.line_count:
            raise StructuralError(
                f"state has {s.width} lines, circuit has {c.line_count}")
        value = s.value
    else:
        value = int(s)
    state = BitState(value, c.line_count)
    v = state.value
    for g in c.gates:
        v = g.apply_int(v)
    return BitState(v, c.line_count)


def _compiled(c: Circuit):
    ops = []
    for g in c.gates:
        pos, neg = g.masks
        ops.append((np.uint64(pos), np.uint64(neg), np.uint64(g.target)))
    return ops


def run_batch(c: Circuit, states: np.ndarray) -> np.ndarray:
    """Vectorized :func:`run` over an array of packed states."""
    if c.line_count > _WORD:
        raise StructuralError(f"batch simulation supports at most {_WORD} lines")
    s = np.array(states, dtype=np.uint64, copy=True)
    zero = np.uint64(0)
    for pos, neg, t in _compiled(c):
        fire = (s & pos) == pos
        if neg:
            fire &= (s & neg) == zero
        s ^= fire.astype(np.uint64) << t
    return s


def _check_budget(line_count: int) -> None:
    if line_count > EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(
            f"{line_count} lines exceeds the exhaustive limit of {EXHAUSTIVE_LIMIT}")


def extract_permutation(c: Circuit) -> Permutation:
    _check_budget(c.line_count)
    return Permutation(run_batch(c, np.arange(1 << c.line_count, dtype=np.uint64)))


def _fixed_mask(line_count: int, fixed: Mapping[LineId, int]) -> tuple[list[int], int]:
    base = 0
    for line, bit in fixed.items():
        if not 0 <= line < line_count:
            raise StructuralError(f"fixed line {line} out of range")
        base |= (bit & 1) << line
    free = [i for i in range(line_count) if i not in fixed]
    return free, base


def _scatter(idx: np.ndarray, free: list[int], base: int) -> np.ndarray:
    out = np.full(idx.shape, base, dtype=np.uint64)
    one = np.uint64(1)
    for j, line in enumerate(free):
        out |= ((idx >> np.uint64(j)) & one) << np.uint64(line)
    return out


def input_states(line_count: int, fixed: Mapping[LineId, int] | None = None) -> np.ndarray:
    """Every packed state whose ``fixed`` lines hold the given bits."""
    free, base = _fixed_mask(line_count, fixed or {})
    _check_budget(len(free))
    return _scatter(np.arange(1 << len(free), dtype=np.uint64), free, base)


def sample_states(line_count: int, fixed: Mapping[LineId, int] | None,
                  count: int, seed: int) -> np.ndarray:
    """``count`` distinct random packed states honouring ``fixed`` (seeded)."""
    free, base = _fixed_mask(line_count, fixed or {})
    if count > (1 << len(free)):
        raise ValueError(f"cannot draw {count} distinct states from 2^{len(free)}")
    rng = np.random.default_rng(seed)
    mask = np.uint64((1 << len(free)) - 1)
    got = np.empty(0, dtype=np.uint64)
    while len(got) < count:
        draw = rng.integers(0, np.iinfo(np.uint64).max, size=count,
                            dtype=np.uint64, endpoint=True) & mask
        got = np.unique(np.concatenate([got, draw]))
    got = rng.permutation(got)[:count]
    return _scatter(got, free, base)


def _inputs(c: Circuit, fixed: Mapping[LineId, int], seed: int | None):
    free = c.line_count - len(fixed)
    if free <= EXHAUSTIVE_LIMIT:
        return input_states(c.line_count, fixed), "exhaustive"
    if seed is None:
        raise ValueError(
            f"{free} free lines exceeds the exhaustive limit; a seed is required for sampling")
    return sample_states(c.line_count, fixed, SAMPLE_SIZE, seed), "sampled"


def check_bijective(c: Circuit | Permutation, seed: int | None = None) -> Verdict:
    """Exhaustive image check up to the budget, seeded injectivity sampling beyond."""
    if isinstance(c, Permutation):
        ok = c.is_bijective()
        dup = len(c.table) - len(np.unique(c.table))
        return Verdict(ok, "exhaustive", len(c.table), "" if ok else f"{dup} collisions")
    states, method = _inputs(c, {}, seed)
    out = run_batch(c, states)
    if method == "exhaustive":
        return check_bijective(Permutation(out))
    collisions = len(out) - len(np.unique(out))
    return Verdict(collisions == 0, method, len(out),
                   "" if collisions == 0 else f"{collisions} collisions")


def check_ancilla_clean(c: Circuit, fixed: Mapping[LineId, int] | None = None,
                        seed: int | None = None) -> Verdict:
    """Ancilla lines that enter at their declared constant must leave at it.

    ``fixed`` optionally pins further input lines (for example carries at 0).
    """
    constants = {}
    for r in c.ancilla_registers:
        for line in r.lines:
            constants[line] = r.constant
    pinned = {**(fixed or {}), **constants}
    states, method = _inputs(c, pinned, seed)
    if not constants:
        return Verdict(True, method, len(states), "no ancilla lines")
    out = run_batch(c, states)
    mask = np.uint64(sum(1 << line for line in constants))
    want = np.uint64(sum(bit << line for line, bit in constants.items()))
    bad = np.flatnonzero((out & mask) != want)
    if len(bad):
        return Verdict(False, method, len(states),
                       f"{len(bad)} dirty outputs, first input {int(states[bad[0]])}")
    return Verdict(True, method, len(states))


def check_equivalent(c1: Circuit, c2: Circuit, fixed: Mapping[LineId, int] | None = None,
                     seed: int | None = None) -> Verdict:
    """Compare two circuits state by state over all (or sampled) inputs."""
    if c1.line_count != c2.line_count or c1.registers != c2.registers:
        raise StructuralError("circuits differ in line count or register geometry")
    states, method = _inputs(c1, dict(fixed or {}), seed)
    o1, o2 = run_batch(c1, states), run_batch(c2, states)
    bad = np.flatnonzero(o1 != o2)
    if len(bad):
        return Verdict(False, method, len(states),
                       f"{len(bad)} disagreements, first input {int(states[bad[0]])}")
    return Verdict(True, method, len(states))
