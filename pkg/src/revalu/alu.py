"""Five-control-line reversible ALU: builder, reference model and decode table.

Control bits, in decode-table column order, are ``k1 = C_carryxor``,
``k2 = C_snot``, ``k3 = C_aANDb``, ``k4 = C_bnot`` and ``k5 = C_SUB``. The
reference model evaluated by :func:`semantics` is, per bit i with c_0 = 0::

    x_i = a_i ^ k5                 y_i = b_i ^ k4
    g   = not (k3 and not k4 and not k5)
    c_i = g.x_i.y_i ^ k1.(x_i ^ y_i).c_{i-1}
    s_i = x_i ^ y_i ^ k1.c_{i-1} ^ k2

The A register leaves as X, the B register as S and the carry lines as c_i.
"""
from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .arith import AdderLayout, oracle_add, oracle_sub, pack_bits
from .errors import BudgetExceeded
from .gates import ccx, cx, mcx, neg, x
from .netlist import CONTROL_NAMES, Circuit, ctrl, empty_like
from .simulator import Verdict as CheckVerdict, input_states, run_batch

MAX_REPORT_WIDTH = 4


class ControlVector(NamedTuple):
    carryxor: int
    snot: int
    aANDb: int
    bnot: int
    sub: int

    @classmethod
    def parse(cls, bits: str) -> ControlVector:
        if len(bits) != 5 or set(bits) - {"0", "1"}:
            raise ValueError(f"control vector must be five 0/1 characters, got {bits!r}")
        return cls(*(int(b) for b in bits))

    def __str__(self) -> str:
        return "".join(map(str, self))


def all_vectors() -> list[ControlVector]:
    return [ControlVector(*bits) for bits in itertools.product((0, 1), repeat=5)]


class AluOp(enum.Enum):
    ADD = "ADD"
    SUB = "SUB"
    RSUB = "RSUB"
    XOR = "XOR"
    XNOR = "XNOR"
    NOT_A = "NOT_A"
    AND_CARRY = "AND_CARRY"
    NOR_CARRY = "NOR_CARRY"
    NOP = "NOP"


_ENCODING = {
    AluOp.ADD: ControlVector(1, 0, 0, 0, 0),  # no decode-table row; found by discover_map
    AluOp.SUB: ControlVector(1, 1, 1, 0, 1),
    AluOp.RSUB: ControlVector(1, 1, 1, 1, 0),
    AluOp.XOR: ControlVector(0, 0, 0, 0, 0),
    AluOp.XNOR: ControlVector(0, 1, 0, 0, 0),
    AluOp.NOT_A: ControlVector(0, 0, 0, 0, 1),
    AluOp.AND_CARRY: ControlVector(0, 0, 0, 0, 0),
    AluOp.NOR_CARRY: ControlVector(0, 0, 0, 1, 1),
}

# operand slices outside of which the canonical vector does not compute the op
VALID_ONLY_WHEN = {AluOp.NOT_A: "B=0"}
# register holding the result: "S" is the B register, "carry" the lines c_1..c_n
RESULT_REGISTER = {op: "S" for op in AluOp}
RESULT_REGISTER.update({AluOp.AND_CARRY: "carry", AluOp.NOR_CARRY: "carry"})


def encode_op(op: AluOp) -> ControlVector | None:
    """Canonical control vector of ``op``; None for NOP, which is the empty circuit."""
    return _ENCODING.get(op)


def decode(k: ControlVector) -> tuple[AluOp, ...]:
    """Operations whose canonical vector is ``k`` (XOR and AND_CARRY share one)."""
    return tuple(op for op, v in _ENCODING.items() if v == tuple(k))


def alu_layout(n: int) -> AdderLayout:
    return AdderLayout(n, controls=CONTROL_NAMES, scratch=True)


def build_alu(n: int) -> Circuit:
    """ALU over 3n + 7 lines with 7n + 4 gates.

    The scratch line g is computed from the controls, used to enable the a.b
    Toffoli of every slice, and uncomputed at the end.
    """
    lay = alu_layout(n)
    k1, k2, k3, k4, k5 = (lay.control(name) for name in CONTROL_NAMES)
    g = lay.g
    bits = range(1, n + 1)
    gates = [cx(k5, lay.a(i)) for i in bits]
    gates += [cx(k4, lay.b(i)) for i in bits]
    compute_g = [x(g), mcx((k3, neg(k4), neg(k5)), g)]
    gates += compute_g
    for i in bits:
        a, b, c, c_prev = lay.a(i), lay.b(i), lay.c(i), lay.c(i - 1)
        gates += [
            mcx((g, a, b), c),
            cx(a, b),
            mcx((k1, b, c_prev), c),
            ccx(k1, c_prev, b),
            cx(k2, b),
        ]
    gates += compute_g[::-1]
    return lay.circuit(gates)


def build_nop(n: int) -> Circuit:
    """The no-operation: an empty circuit in the ALU's line geometry."""
    return empty_like(build_alu(n))


def semantics(k: ControlVector, n: int, A: int, B: int) -> tuple[int, int, tuple[int, ...]]:
    """Reference model: (X, S, carry bits c_1..c_n) evaluated bit by bit."""
    if n < 1:
        raise ValueError(f"width must be at least 1, got {n}")
    for v in (A, B):
        if not 0 <= v < 2 ** n:
            raise ValueError(f"operand {v} out of range for {n} bits")
    k1, k2, k3, k4, k5 = k
    g = 1 - (k3 & (1 - k4) & (1 - k5))
    X = S = 0
    carries = []
    c = 0
    for i in range(n):
        xi = ((A >> i) & 1) ^ k5
        yi = ((B >> i) & 1) ^ k4
        X |= xi << i
        S |= (xi ^ yi ^ (k1 & c) ^ k2) << i
        c = (g & xi & yi) ^ (k1 & (xi ^ yi) & c)
        carries.append(c)
    return X, S, tuple(carries)


# --- simulation sweeps -------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _alu(n: int) -> Circuit:
    return build_alu(n)


@dataclass(frozen=True)
class Sweep:
    """Circuit outputs for every (A, B) at one control vector, carries and g at 0."""

    n: int
    A: np.ndarray
    B: np.ndarray
    X: np.ndarray
    S: np.ndarray
    carry: np.ndarray  # c_1..c_n packed, c_1 in bit 0
    c0: np.ndarray
    g: np.ndarray


def sweep(k: ControlVector, n: int, circuit: Circuit | None = None) -> Sweep:
    c = circuit if circuit is not None else _alu(n)
    lay = alu_layout(n)
    side = np.arange(1 << n, dtype=np.uint64)
    A, B = (a.ravel() for a in np.meshgrid(side, side, indexing="ij"))
    base = sum(bit << lay.control(name) for bit, name in zip(k, CONTROL_NAMES))
    states = np.uint64(base) | (A << np.uint64(lay.a(1))) | (B << np.uint64(lay.b(1)))
    out = run_batch(c, states)
    carry_all = c.register("CARRY").read(out)
    one = np.uint64(1)
    return Sweep(n, A, B, c.register("A").read(out), c.register("B").read(out),
                 carry_all >> one, carry_all & one, c.register("ANC0").read(out))


def simulate_alu(k: ControlVector, n: int, A: int, B: int) -> tuple[int, int, tuple[int, ...]]:
    """Run the built circuit once; same return shape as :func:`semantics`."""
    lay = alu_layout(n)
    state = sum(bit << lay.control(name) for bit, name in zip(k, CONTROL_NAMES))
    state |= (A << lay.a(1)) | (B << lay.b(1))
    out = int(run_batch(_alu(n), np.array([state], dtype=np.uint64))[0])
    c = _alu(n)
    carry = c.register("CARRY").read(out) >> 1
    return (c.register("A").read(out), c.register("B").read(out),
            tuple((carry >> i) & 1 for i in range(n)))


# --- classification ----------------------------------------------------------

def _mask(n):
    return np.uint64((1 << n) - 1)


def _chain(fn, n, A, B):
    return np.array([pack_bits(fn(n, int(a), int(b))[1]) for a, b in zip(A, B)], dtype=np.uint64)


S_FAMILY: dict[str, Callable] = {
    "ADD": lambda n, A, B: (A + B) & _mask(n),
    "SUB": lambda n, A, B: (A - B) & _mask(n),
    "RSUB": lambda n, A, B: (B - A) & _mask(n),
    "XOR": lambda n, A, B: A ^ B,
    "XNOR": lambda n, A, B: ~(A ^ B) & _mask(n),
    "IDENTITY": lambda n, A, B: B,
}

CARRY_FAMILY: dict[str, Callable] = {
    "ZERO": lambda n, A, B: np.zeros_like(A),
    "ONES": lambda n, A, B: np.full_like(A, _mask(n)),
    "AND": lambda n, A, B: A & B,
    "NAND": lambda n, A, B: ~(A & B) & _mask(n),
    "OR": lambda n, A, B: A | B,
    "NOR": lambda n, A, B: ~(A | B) & _mask(n),
    "ADD_CARRIES": lambda n, A, B: _chain(oracle_add, n, A, B),
    "SUB_BORROWS": lambda n, A, B: _chain(oracle_sub, n, A, B),
}

# labels that depend on carry propagation and so cannot be told apart at n = 1
ARITHMETIC = {"ADD", "SUB", "RSUB", "ADD_CARRIES", "SUB_BORROWS"}


def _s_candidates(sw: Sweep, values: np.ndarray) -> list[str]:
    found = [name for name, f in S_FAMILY.items()
             if np.array_equal(values, f(sw.n, sw.A, sw.B))]
    b0 = sw.B == 0
    if np.array_equal(values[b0], ~sw.A[b0] & _mask(sw.n)):
        found.append("NOT_A_B0")
    return found


def _carry_candidates(sw: Sweep, values: np.ndarray) -> list[str]:
    return [name for name, f in CARRY_FAMILY.items()
            if np.array_equal(values, f(sw.n, sw.A, sw.B))]


def _truth_table(values: np.ndarray) -> str:
    return "".join(str(int(v) & 1) for v in values)


def _label(k, n, which: str) -> str:
    cands = _s_candidates if which == "S" else _carry_candidates

    def pick(sw: Sweep) -> tuple[list[str], np.ndarray]:
        if which == "S":
            vals = sw.S
        elif which == "carry":
            vals = sw.carry
        else:
            vals = ~sw.carry & _mask(sw.n)
        return cands(sw, vals), vals

    found, _ = pick(sweep(k, n))
    if n == 1:
        wide, _ = pick(sweep(k, 2))
        both = [name for name in found if name in wide]
        found = both or [name for name in found if name not in ARITHMETIC]
    if found:
        return found[0]
    _, tt = pick(sweep(k, 1))
    return f"other:{_truth_table(tt)}"


@dataclass(frozen=True)
class Behavior:
    """Observed action of one control vector.

    Unmatched registers are labelled ``other:<tt>`` where ``tt`` is the 1-bit
    truth table over (a, b) = 00, 01, 10, 11.
    """

    a_out: str
    s: str
    carry: str
    carry_complement: str

    def line(self, k: ControlVector) -> str:
        return (f'vec {k} A_out "{self.a_out}" S "{self.s}" carry "{self.carry}" '
                f'carry_complement "{self.carry_complement}"')


def _check_width(n: int) -> None:
    if n < 1:
        raise ValueError(f"width must be at least 1, got {n}")
    if n > MAX_REPORT_WIDTH:
        raise BudgetExceeded(f"width {n} exceeds the sweep limit of {MAX_REPORT_WIDTH}")


def discover_map(n: int) -> dict[ControlVector, Behavior]:
    """Classify what every one of the 32 control vectors computes at width n."""
    _check_width(n)
    result = {}
    for k in all_vectors():
        sw = sweep(k, n)
        a_out = "A" if np.array_equal(sw.X, sw.A) else (
            "NOT_A" if np.array_equal(sw.X, ~sw.A & _mask(n)) else "other")
        result[k] = Behavior(a_out, _label(k, n, "S"), _label(k, n, "carry"),
                             _label(k, n, "carry_complement"))
    return result


# --- decode table conformance ------------------------------------------------

class Verdict(str, enum.Enum):
    PASS = "PASS"
    PARTIAL = "PARTIAL"
    MISMATCH = "MISMATCH"
    UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class TableRow:
    id: int
    vector: ControlVector | None
    claimed: str
    claims: tuple[tuple[str, str], ...]  # (register, family label)
    partial_slice: bool = False  # the B = 0 slice earns PARTIAL


TABLE1 = (
    TableRow(1, ControlVector(1, 0, 1, 0, 0), "A xor B", (("S", "XOR"),)),
    TableRow(2, ControlVector(1, 1, 1, 0, 0), "not (A xor B)", (("S", "XNOR"),)),
    TableRow(3, ControlVector(0, 0, 0, 0, 0), "A xor B and A.B",
             (("S", "XOR"), ("carry", "AND"))),
    TableRow(4, ControlVector(0, 1, 0, 0, 0), "not (A xor B)", (("S", "XNOR"),)),
    TableRow(5, ControlVector(0, 0, 0, 0, 1), "not A", (("S", "NOT_A"),), partial_slice=True),
    TableRow(6, ControlVector(1, 1, 1, 0, 1), "A minus B (A plus not B plus 1)", (("S", "SUB"),)),
    TableRow(7, ControlVector(1, 1, 1, 1, 0), "B minus A (not B plus A)",
             (("S", "RSUB"),)),
    TableRow(8, None, "NOP", ()),
    TableRow(9, ControlVector(0, 1, 0, 1, 1), "not (A.B) (not A + not B)",
             (("carry", "NAND"),)),
)

EXPECTED_VERDICTS = {
    1: Verdict.PASS, 2: Verdict.PASS, 3: Verdict.PASS, 4: Verdict.PASS,
    5: Verdict.PARTIAL, 6: Verdict.PASS, 7: Verdict.PASS,
    8: Verdict.UNDETERMINED, 9: Verdict.MISMATCH,
}


def _claim_values(label: str, n: int, A, B):
    if label == "NOT_A":
        return ~A & _mask(n)
    family = S_FAMILY if label in S_FAMILY else CARRY_FAMILY
    return family[label](n, A, B)


@dataclass(frozen=True)
class ReportRow:
    id: int
    vector: ControlVector | None
    claimed: str
    observed: str
    verdict: Verdict

    def line(self) -> str:
        vec = "XXXXX" if self.vector is None else str(self.vector)
        return (f'row {self.id} vec {vec} claimed "{self.claimed}" '
                f'observed "{self.observed}" verdict {self.verdict.value}')


@dataclass(frozen=True)
class ConformanceReport:
    n: int
    rows: tuple[ReportRow, ...]
    map: dict[ControlVector, Behavior] = field(repr=False)

    def verdicts(self) -> dict[int, Verdict]:
        return {r.id: r.verdict for r in self.rows}

    def matches_expected(self) -> bool:
        return self.verdicts() == EXPECTED_VERDICTS

    def to_text(self) -> str:
        out = [f"report n {self.n}"]
        out += [r.line() for r in self.rows]
        out.append("map")
        out += [self.map[k].line(k) for k in all_vectors()]
        return "\n".join(out) + "\n"


def _evaluate_row(row: TableRow, n: int, behavior: dict[ControlVector, Behavior]) -> ReportRow:
    if row.vector is None:
        nop = build_nop(n)
        ident = len(nop.gates) == 0
        observed = "empty circuit, identity" if ident else "non-empty NOP circuit"
        return ReportRow(row.id, None, row.claimed, observed, Verdict.UNDETERMINED)

    sw = sweep(row.vector, n)
    b = behavior[row.vector]
    observed = f"S={b.s} carry={b.carry}"
    full_ok = slice_ok = True
    witness = ""
    b0 = sw.B == 0
    for reg, label in row.claims:
        got = sw.S if reg == "S" else sw.carry
        want = _claim_values(label, n, sw.A, sw.B)
        bad = np.flatnonzero(got != want)
        if len(bad):
            full_ok = False
            j = bad[0]
            witness = witness or (f"A={int(sw.A[j])} B={int(sw.B[j])}: "
                                  f"{reg}={int(got[j])} claimed {int(want[j])}")
        if not np.array_equal(got[b0], want[b0]):
            slice_ok = False
    if full_ok:
        verdict = Verdict.PASS
    elif row.partial_slice and slice_ok:
        verdict = Verdict.PARTIAL
        observed += "; matches claim on B=0 only"
    else:
        verdict = Verdict.MISMATCH
    if witness:
        observed += f"; {witness}"
    return ReportRow(row.id, row.vector, row.claimed, observed, verdict)


def conformance_report(n: int) -> ConformanceReport:
    """Check every decode-table row against the built circuit at width n."""
    _check_width(n)
    behavior = discover_map(n)
    rows = tuple(_evaluate_row(row, n, behavior) for row in TABLE1)
    return ConformanceReport(n, rows, behavior)


def verify_alu(c: Circuit) -> CheckVerdict:
    """Exhaustive agreement of an ALU-shaped circuit with :func:`semantics`.

    Every control vector and every (A, B) is run with carries and g at 0;
    A-out, S and c_1..c_n must all match the model.
    """
    n = c.register("A").width
    carry, anc = c.register("CARRY"), c.register("ANC0")
    fixed = {line: 0 for line in [*carry.lines, *anc.lines]}
    states = input_states(c.line_count, fixed)
    out = run_batch(c, states)
    A, B = c.register("A").read(states), c.register("B").read(states)
    ks = zip(*(c.register(ctrl(name)).read(states) for name in CONTROL_NAMES))
    got = zip(c.register("A").read(out), c.register("B").read(out),
              carry.read(out) >> np.uint64(1), anc.read(out))
    for k, a, b, (x_, s_, cr, g) in zip(ks, A, B, got):
        vec = ControlVector(*(int(bit) for bit in k))
        X, S, carries = semantics(vec, n, int(a), int(b))
        if (int(x_), int(s_), int(cr), int(g)) != (X, S, pack_bits(carries), 0):
            return CheckVerdict(False, "exhaustive", len(states),
                                f"model disagreement at vec {vec} A={int(a)} B={int(b)}")
    return CheckVerdict(True, "exhaustive", len(states))
