"""Controlled-NOT family gates and their action on classical bit states.

A gate flips its target bit when every control is satisfied. Controls carry
a polarity: a positive control fires on 1, a negative one fires on 0. With
no controls the gate is a NOT, with one a Feynman (CNOT) gate, with two a
Toffoli gate, and with more a multi-controlled NOT.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import StructuralError

LineId = int


class Control(NamedTuple):
    line: LineId
    positive: bool = True

    def __str__(self) -> str:
        return f"{'' if self.positive else '!'}{self.line}"


ControlLike = Union[Control, int]


def neg(line: LineId) -> Control:
    """Negative-polarity control on ``line``."""
    return Control(line, False)


def _as_control(c: ControlLike) -> Control:
    if isinstance(c, Control):
        return c
    return Control(int(c), True)


@dataclass(frozen=True)
class BitState:
    """One classical bit per line, packed into an integer (line 0 = bit 0)."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise StructuralError(f"negative state width {self.width}")
        if self.value < 0 or self.value >> self.width:
            raise StructuralError(
                f"value {self.value} does not fit in {self.width} lines")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitState:
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise StructuralError(f"bit {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(value, len(bits))

    @classmethod
    def zeros(cls, width: int) -> BitState:
        return cls(0, width)

    def __getitem__(self, line: LineId) -> int:
        self._check(line)
        return (self.value >> line) & 1

    def __int__(self) -> int:
        return self.value

    def __len__(self) -> int:
        return self.width

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def set(self, line: LineId, bit: int) -> BitState:
        self._check(line)
        return BitState((self.value & ~(1 << line)) | ((bit & 1) << line), self.width)

    def update(self, assignments: Mapping[LineId, int]) -> BitState:
        s = self
        for line, bit in assignments.items():
            s = s.set(line, bit)
        return s

    def _check(self, line: LineId) -> None:
        if not 0 <= line < self.width:
            raise StructuralError(f"line {line} out of range for {self.width}-line state")


@dataclass(frozen=True)
class Gate:
    target: LineId
    controls: tuple[Control, ...] = ()

    def __post_init__(self):
        controls = tuple(_as_control(c) for c in self.controls)
        object.__setattr__(self, "controls", controls)
        if self.target < 0:
            raise StructuralError(f"negative target line {self.target}")
        seen = set()
        for c in controls:
            if c.line < 0:
                raise StructuralError(f"negative control line {c.line}")
            if c.line == self.target:
                raise StructuralError(f"target {self.target} also used as a control")
            if c.line in seen:
                raise StructuralError(f"duplicate control on line {c.line}")
            seen.add(c.line)

    @property
    def arity(self) -> int:
        return len(self.controls)

    @property
    def lines(self) -> tuple[LineId, ...]:
        return tuple(c.line for c in self.controls) + (self.target,)

    @property
    def masks(self) -> tuple[int, int]:
        """Bit masks of the positive and negative control lines."""
        pos = neg_ = 0
        for c in self.controls:
            if c.positive:
                pos |= 1 << c.line
            else:
                neg_ |= 1 << c.line
        return pos, neg_

    def fires(self, value: int) -> bool:
        pos, neg_ = self.masks
        return (value & pos) == pos and not (value & neg_)

    def apply_int(self, value: int) -> int:
        if self.fires(value):
            return value ^ (1 << self.target)
        return value

    def remap(self, mapping: Mapping[LineId, LineId]) -> Gate:
        """Copy of the gate with every line renamed through ``mapping``."""
        return Gate(mapping[self.target],
                    tuple(Control(mapping[c.line], c.positive) for c in self.controls))

    def __str__(self) -> str:
        name = {0: "x", 1: "cx", 2: "ccx"}.get(self.arity, "mcx")
        return " ".join([name, *map(str, self.controls), str(self.target)])


def x(target: LineId) -> Gate:
    return Gate(target)


def cx(control: ControlLike, target: LineId) -> Gate:
    return Gate(target, (control,))


def ccx(c1: ControlLike, c2: ControlLike, target: LineId) -> Gate:
    return Gate(target, (c1, c2))


def mcx(controls: Iterable[ControlLike], target: LineId) -> Gate:
    return Gate(target, tuple(controls))


def apply_gate(gate: Gate, state: BitState) -> BitState:
    """Flip the target of ``state`` iff all of the gate's controls are satisfied."""
    for line in gate.lines:
        if line >= state.width:
            raise StructuralError(
                f"gate {gate} references line {line} of a {state.width}-line state")
    return BitState(gate.apply_int(state.value), state.width)


def gate_inverse(gate: Gate) -> Gate:
    # every controlled-NOT is an involution
    return gate
