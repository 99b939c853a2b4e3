"""Ripple-carry adder and control-gated subtractor builders, plus oracles.

Per bit slice the adder computes, with all carries entering at 0::

    c_i = a_i b_i XOR (a_i XOR b_i) c_{i-1}
    s_i = a_i XOR b_i XOR c_{i-1}

and writes ``s_i`` over ``b_i``. Subtraction reuses the same network on the
complemented minuend and complements the result, because

    borrow_i = b_i NOT(a_i) XOR (b_i XOR NOT(a_i)) borrow_{i-1}
    d_i      = NOT(NOT(a_i) XOR b_i XOR borrow_{i-1})

so the carry chain of ``NOT(A) + B`` is exactly the borrow chain of ``A - B``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .gates import Gate, LineId, ccx, cx
import numpy as np

from .netlist import Circuit, Register, ctrl
from .simulator import Verdict, input_states, run_batch


@dataclass(frozen=True)
class AdderLayout:
    """Line assignment: controls, then A(n), B(n), carries c_0..c_n, then scratch.

    Register bit 1 is the least significant bit and sits on the lowest line.
    """

    n: int
    controls: tuple[str, ...] = ()
    scratch: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"register width must be at least 1, got {self.n}")

    @property
    def line_count(self) -> int:
        return len(self.controls) + 3 * self.n + 1 + int(self.scratch)

    def control(self, name: str) -> LineId:
        return self.controls.index(name)

    def a(self, i: int) -> LineId:
        return len(self.controls) + i - 1

    def b(self, i: int) -> LineId:
        return len(self.controls) + self.n + i - 1

    def c(self, i: int) -> LineId:
        """Carry line c_i for i in 0..n."""
        return len(self.controls) + 2 * self.n + i

    @property
    def g(self) -> LineId:
        if not self.scratch:
            raise AttributeError("layout has no scratch line")
        return self.line_count - 1

    def registers(self) -> tuple[Register, ...]:
        regs = [Register(ctrl(name), k, k) for k, name in enumerate(self.controls)]
        regs += [
            Register("A", self.a(1), self.a(self.n)),
            Register("B", self.b(1), self.b(self.n)),
            Register("CARRY", self.c(0), self.c(self.n)),
        ]
        if self.scratch:
            regs.append(Register("ANC0", self.g, self.g))
        return tuple(regs)

    def labels(self) -> dict[int, str]:
        names = {k: name for k, name in enumerate(self.controls)}
        for i in range(1, self.n + 1):
            names[self.a(i)] = f"a{i}"
            names[self.b(i)] = f"b{i}"
        for i in range(self.n + 1):
            names[self.c(i)] = f"c{i}"
        if self.scratch:
            names[self.g] = "g"
        return names

    def circuit(self, gates) -> Circuit:
        return Circuit(self.line_count, tuple(gates), self.registers(), self.labels())


def adder_gates(lay: AdderLayout) -> list[Gate]:
    gates = []
    for i in range(1, lay.n + 1):
        gates += [
            ccx(lay.a(i), lay.b(i), lay.c(i)),      # a.b into the carry
            cx(lay.a(i), lay.b(i)),                 # b <- a xor b
            ccx(lay.b(i), lay.c(i - 1), lay.c(i)),  # (a xor b).c_{i-1}
            cx(lay.c(i - 1), lay.b(i)),             # b <- sum bit
        ]
    return gates


def build_adder(n: int) -> Circuit:
    """n-bit ripple-carry adder over 3n+1 lines; B becomes (A + B + c_0) mod 2^n."""
    lay = AdderLayout(n)
    return lay.circuit(adder_gates(lay))


def build_subtractor(n: int) -> Circuit:
    """Adder wrapped in two CNOT arrays driven by C_SUB.

    With C_SUB = 1 the B register emerges as (A - B) mod 2^n, the carry lines
    hold the borrow chain and A is left complemented. With C_SUB = 0 it adds.
    """
    lay = AdderLayout(n, controls=("C_SUB",))
    k = lay.control("C_SUB")
    gates = [cx(k, lay.a(i)) for i in range(1, n + 1)]
    gates += adder_gates(lay)
    gates += [cx(k, lay.b(i)) for i in range(1, n + 1)]
    return lay.circuit(gates)


def _check_operands(n: int, *values: int) -> None:
    if n < 1:
        raise ValueError(f"width must be at least 1, got {n}")
    for v in values:
        if not 0 <= v < 2 ** n:
            raise ValueError(f"operand {v} out of range for {n} bits")


def oracle_add(n: int, A: int, B: int, carry_in: int = 0) -> tuple[int, tuple[int, ...]]:
    """Sum and carry bits (c_1..c_n) by direct evaluation of the carry recurrence."""
    _check_operands(n, A, B)
    if carry_in not in (0, 1):
        raise ValueError(f"carry_in must be 0 or 1, got {carry_in}")
    s, carries, c = 0, [], carry_in
    for i in range(n):
        ai, bi = (A >> i) & 1, (B >> i) & 1
        s |= (ai ^ bi ^ c) << i
        c = (ai & bi) ^ ((ai ^ bi) & c)
        carries.append(c)
    return s, tuple(carries)


def oracle_sub(n: int, A: int, B: int) -> tuple[int, tuple[int, ...]]:
    """Difference A - B and borrow bits (B_1..B_n) from the borrow recurrence."""
    _check_operands(n, A, B)
    d, borrows, br = 0, [], 0
    for i in range(n):
        ai, bi = (A >> i) & 1, (B >> i) & 1
        d |= (ai ^ bi ^ br) << i
        br = (bi & br) ^ ((1 - ai) & (bi ^ br))
        borrows.append(br)
    return d, tuple(borrows)


def pack_bits(bits) -> int:
    """Little-endian pack of a bit sequence (first element is bit 0)."""
    return sum(b << i for i, b in enumerate(bits))


def _differential(c: Circuit, fixed: dict, expect) -> Verdict:
    states = input_states(c.line_count, fixed)
    out = run_batch(c, states)
    regs = [c.register(r) for r in ("A", "B", "CARRY")]
    n = regs[0].width
    ins = zip(*(r.read(states) for r in regs))
    outs = zip(c.register("B").read(out), c.register("CARRY").read(out))
    for (a, b, cin), (s, carry) in zip(ins, outs):
        want_s, want_c = expect(n, int(a), int(b), int(cin) & 1)
        got_c = tuple((int(carry) >> i) & 1 for i in range(1, n + 1))
        if (int(s), got_c) != (want_s, want_c):
            return Verdict(False, "exhaustive", len(states),
                           f"A={int(a)} B={int(b)} c0={int(cin) & 1}: got S={int(s)} "
                           f"carries={got_c}, expected S={want_s} carries={want_c}")
    return Verdict(True, "exhaustive", len(states))


def verify_adder(c: Circuit) -> Verdict:
    """Exhaustive differential test of an adder-shaped circuit against oracle_add.

    Covers every (A, B, c_0) with c_1..c_n entering at 0.
    """
    carry = c.register("CARRY")
    fixed = {line: 0 for line in carry.lines[1:]}
    for r in c.control_registers:
        fixed[r.lo] = 0
    return _differential(c, fixed, oracle_add)


def verify_subtractor(c: Circuit) -> Verdict:
    """C_SUB = 1 against oracle_sub (c_0 = 0), then C_SUB = 0 against oracle_add."""
    carry = c.register("CARRY")
    k = c.register(ctrl("C_SUB")).lo
    fixed = {line: 0 for line in carry.lines}
    fixed[k] = 1
    sub = _differential(c, fixed, lambda n, a, b, _: oracle_sub(n, a, b))
    if not sub:
        return sub
    add = verify_adder(c)
    if not add:
        return add
    return Verdict(True, "exhaustive", sub.checked + add.checked)
