"""Circuit container, composition, cost accounting and the RNL text format.

RNL is a line-oriented ASCII netlist::

    rnl 1
    lines 8
    label 0 a1
    reg A 0 1
    ccx 0 2 6
    cx !0 2

Line indices are 0-based, ``!`` marks a negative control and ``#`` starts a
comment. Emission is canonical so documents can be diffed and golden-tested.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, StructuralError
from .gates import Control, Gate, LineId, gate_inverse

CONTROL_NAMES = ("C_carryxor", "C_snot", "C_aANDb", "C_bnot", "C_SUB")
_PLAIN_ROLES = ("A", "B", "CARRY", "ANC0", "ANC1")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_valid_role(role: str) -> bool:
    if role in _PLAIN_ROLES:
        return True
    return role.startswith("CTRL:") and role[5:] in CONTROL_NAMES


def ctrl(name: str) -> str:
    """Role string of the control register named ``name``."""
    return f"CTRL:{name}"


@dataclass(frozen=True)
class Register:
    role: str
    lo: LineId
    hi: LineId  # inclusive

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    @property
    def lines(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def is_control(self) -> bool:
        return self.role.startswith("CTRL:")

    @property
    def constant(self) -> int | None:
        """Declared input/output constant for ancilla roles, else None."""
        return {"ANC0": 0, "ANC1": 1}.get(self.role)

    def read(self, value):
        """Register contents of a packed state (int or uint64 array); bit 1 is the LSB."""
        mask = (1 << self.width) - 1
        if isinstance(value, int):
            return (value >> self.lo) & mask
        import numpy as np
        return (value >> np.uint64(self.lo)) & np.uint64(mask)

    def write(self, value: int, contents: int) -> int:
        if contents < 0 or contents >> self.width:
            raise StructuralError(
                f"{contents} does not fit in {self.width}-line register {self.role}")
        mask = ((1 << self.width) - 1) << self.lo
        return (value & ~mask) | (contents << self.lo)


def check_registers(registers: Sequence[Register], line_count: int) -> None:
    """Raise StructuralError unless the registers tile ``range(line_count)``."""
    if not registers:
        return
    owner: dict[int, str] = {}
    roles = set()
    for r in registers:
        if not is_valid_role(r.role):
            raise StructuralError(f"unknown register role {r.role!r}")
        if r.role in roles:
            raise StructuralError(f"register role {r.role} declared twice")
        roles.add(r.role)
        if r.lo > r.hi:
            raise StructuralError(f"register {r.role} has lo {r.lo} > hi {r.hi}")
        if r.lo < 0 or r.hi >= line_count:
            raise StructuralError(
                f"register {r.role} [{r.lo}, {r.hi}] exceeds {line_count} lines")
        for line in r.lines:
            if line in owner:
                raise StructuralError(
                    f"line {line} in both {owner[line]} and {r.role}")
            owner[line] = r.role
        if r.is_control and r.width != 1:
            raise StructuralError(f"control register {r.role} must be one line wide")
    missing = [i for i in range(line_count) if i not in owner]
    if missing:
        raise StructuralError(f"lines {missing} belong to no register")


@dataclass(frozen=True)
class Circuit:
    """Ordered gates over ``line_count`` lines.

    ``labels`` maps line index to a display name (unlabelled lines are allowed);
    ``registers`` is either empty or a disjoint cover of all lines.
    """

    line_count: int
    gates: tuple[Gate, ...] = ()
    registers: tuple[Register, ...] = ()
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "registers", tuple(self.registers))
        object.__setattr__(self, "labels", MappingProxyType(dict(sorted(self.labels.items()))))
        if self.line_count < 1:
            raise StructuralError(f"line count must be positive, got {self.line_count}")
        for i, name in self.labels.items():
            if not 0 <= i < self.line_count:
                raise StructuralError(f"label for line {i} out of range")
            if not _NAME_RE.match(name):
                raise StructuralError(f"bad label name {name!r}")
        check_registers(self.registers, self.line_count)
        control_lines = {r.lo for r in self.registers if r.is_control}
        for k, g in enumerate(self.gates):
            for line in g.lines:
                if line >= self.line_count:
                    raise StructuralError(
                        f"gate {k} ({g}) references line {line} of {self.line_count}")
            if g.target in control_lines:
                raise StructuralError(f"gate {k} ({g}) targets control line {g.target}")

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.line_count, self.gates, self.registers, dict(self.labels)) == (
            other.line_count, other.gates, other.registers, dict(other.labels))

    def __hash__(self):
        return hash((self.line_count, self.gates, self.registers))

    def __len__(self) -> int:
        return len(self.gates)

    def label(self, line: LineId) -> str:
        return self.labels.get(line, f"q{line}")

    def register(self, role: str) -> Register:
        for r in self.registers:
            if r.role == role:
                return r
        raise KeyError(role)

    def has_register(self, role: str) -> bool:
        return any(r.role == role for r in self.registers)

    @property
    def control_registers(self) -> tuple[Register, ...]:
        return tuple(r for r in self.registers if r.is_control)

    @property
    def ancilla_registers(self) -> tuple[Register, ...]:
        return tuple(r for r in self.registers if r.constant is not None)

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.line_count, tuple(gates), self.registers, self.labels)


def empty_like(c: Circuit) -> Circuit:
    return c.with_gates(())


def compose(first: Circuit, second: Circuit) -> Circuit:
    """``first`` followed by ``second``."""
    if first.line_count != second.line_count:
        raise StructuralError(
            f"cannot compose {first.line_count}-line and {second.line_count}-line circuits")
    if first.registers != second.registers:
        raise StructuralError("cannot compose circuits with different register maps")
    return first.with_gates(first.gates + second.gates)


def inverse(c: Circuit) -> Circuit:
    return c.with_gates(gate_inverse(g) for g in reversed(c.gates))


# quantum cost by number of controls; k >= 4 follows 2**(k+1) - 3
_COST = {0: 1, 1: 1, 2: 5, 3: 13}


def gate_cost(arity: int) -> int:
    return _COST.get(arity, 2 ** (arity + 1) - 3)


@dataclass(frozen=True)
class CostReport:
    gate_count_total: int
    counts_by_arity: Mapping[int, int]
    quantum_cost: int

    def to_text(self) -> str:
        names = {0: "NOT", 1: "CNOT", 2: "Toffoli"}
        out = [f"gates {self.gate_count_total}"]
        for k, cnt in sorted(self.counts_by_arity.items()):
            out.append(f"arity {k} ({names.get(k, f'MCX{k}')}) {cnt}")
        out.append(f"quantum_cost {self.quantum_cost}")
        return "\n".join(out) + "\n"


def cost_report(c: Circuit) -> CostReport:
    counts: dict[int, int] = {}
    for g in c.gates:
        counts[g.arity] = counts.get(g.arity, 0) + 1
    cost = sum(gate_cost(k) * n for k, n in counts.items())
    return CostReport(len(c.gates), dict(sorted(counts.items())), cost)


# --- RNL text format -------------------------------------------------------

_GATE_ARITY = {"x": 0, "cx": 1, "ccx": 2}


def emit_text(c: Circuit) -> str:
    out = ["rnl 1", f"lines {c.line_count}"]
    out += [f"label {i} {name}" for i, name in c.labels.items()]
    out += [f"reg {r.role} {r.lo} {r.hi}" for r in c.registers]
    out += [str(g) for g in c.gates]
    return "\n".join(out) + "\n"


def _int(tok: str, lineno: int, what: str) -> int:
    if not tok.isdigit():
        raise ParseError(lineno, f"expected non-negative integer for {what}, got {tok!r}")
    return int(tok)


def _control(tok: str, lineno: int, line_count: int) -> Control:
    positive = not tok.startswith("!")
    idx = _int(tok if positive else tok[1:], lineno, "control")
    if idx >= line_count:
        raise ParseError(lineno, f"control index {idx} out of range for {line_count} lines")
    return Control(idx, positive)


def parse_text(text: str) -> Circuit:
    """Parse an RNL document; every error carries the offending line number."""
    line_count = None
    labels: dict[int, str] = {}
    registers: list[Register] = []
    gates: list[Gate] = []
    gate_linenos: list[int] = []
    reg_lineno = 0
    seen_header = False
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if not seen_header:
            if head != "rnl":
                raise ParseError(lineno, "document must start with 'rnl 1'")
            if args != ["1"]:
                raise ParseError(lineno, f"unsupported RNL version {' '.join(args)!r}")
            seen_header = True
            continue
        if line_count is None:
            if head != "lines" or len(args) != 1:
                raise ParseError(lineno, "second statement must be 'lines <count>'")
            line_count = _int(args[0], lineno, "line count")
            if line_count < 1:
                raise ParseError(lineno, "line count must be positive")
            continue

        if head == "label":
            if len(args) != 2:
                raise ParseError(lineno, "expected 'label <index> <name>'")
            idx = _int(args[0], lineno, "label index")
            if idx >= line_count:
                raise ParseError(lineno, f"label index {idx} out of range for {line_count} lines")
            if not _NAME_RE.match(args[1]):
                raise ParseError(lineno, f"bad label name {args[1]!r}")
            if idx in labels:
                raise ParseError(lineno, f"line {idx} labelled twice")
            labels[idx] = args[1]
        elif head == "reg":
            if len(args) != 3:
                raise ParseError(lineno, "expected 'reg <role> <lo> <hi>'")
            reg = Register(args[0], _int(args[1], lineno, "lo"), _int(args[2], lineno, "hi"))
            if not is_valid_role(reg.role):
                raise ParseError(lineno, f"unknown register role {reg.role!r}")
            if reg.lo > reg.hi or reg.hi >= line_count:
                raise ParseError(lineno, f"bad register geometry {reg.role} {reg.lo} {reg.hi}")
            for other in registers:
                if other.role == reg.role:
                    raise ParseError(lineno, f"register role {reg.role} declared twice")
                if reg.lo <= other.hi and other.lo <= reg.hi:
                    raise ParseError(lineno, f"register {reg.role} overlaps {other.role}")
            if reg.is_control and reg.width != 1:
                raise ParseError(lineno, f"control register {reg.role} must be one line wide")
            registers.append(reg)
            reg_lineno = lineno
        elif head in _GATE_ARITY or head == "mcx":
            if not args:
                raise ParseError(lineno, f"'{head}' needs a target")
            arity = _GATE_ARITY.get(head)
            if arity is not None and len(args) != arity + 1:
                raise ParseError(lineno, f"'{head}' takes {arity} control(s) and a target")
            if head == "mcx" and len(args) < 2:
                raise ParseError(lineno, "'mcx' needs at least one control and a target")
            target = _int(args[-1], lineno, "target")
            if target >= line_count:
                raise ParseError(lineno, f"target index {target} out of range for {line_count} lines")
            controls = [_control(t, lineno, line_count) for t in args[:-1]]
            lines = [c.line for c in controls]
            if len(set(lines)) != len(lines):
                raise ParseError(lineno, "duplicate control line")
            if target in lines:
                raise ParseError(lineno, f"target {target} also appears as a control")
            gates.append(Gate(target, tuple(controls)))
            gate_linenos.append(lineno)
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")

    if not seen_header:
        raise ParseError(max(last, 1), "empty document, expected 'rnl 1'")
    if line_count is None:
        raise ParseError(max(last, 1), "missing 'lines <count>'")
    try:
        check_registers(registers, line_count)
    except StructuralError as e:
        raise ParseError(reg_lineno, f"bad register geometry: {e}") from None
    control_lines = {r.lo for r in registers if r.is_control}
    for g, lineno in zip(gates, gate_linenos):
        if g.target in control_lines:
            raise ParseError(lineno, f"gate targets control line {g.target}")
    try:
        return Circuit(line_count, tuple(gates), tuple(registers), labels)
    except StructuralError as e:
        raise ParseError(max(last, 1), str(e)) from None
