import pytest
from hypothesis import given, strategies as st

from revalu.errors import StructuralError
from revalu.gates import BitState, Control, Gate, apply_gate, ccx, cx, gate_inverse, mcx, neg, x

WIDTH = 6


def test_not():
    assert apply_gate(x(0), BitState.from_bits([0])).bits() == (1,)


def test_cnot():
    assert apply_gate(cx(0, 1), BitState.from_bits([1, 0])).bits() == (1, 1)


def test_toffoli_unsatisfied():
    assert apply_gate(ccx(0, 1, 2), BitState.from_bits([1, 0, 0])).bits() == (1, 0, 0)


def test_negative_control_fires_on_zero():
    g = mcx([neg(0), 1], 2)
    assert apply_gate(g, BitState.from_bits([0, 1, 0])).bits() == (0, 1, 1)
    assert apply_gate(g, BitState.from_bits([1, 1, 0])).bits() == (1, 1, 0)


@pytest.mark.parametrize("g", [x(0), cx(0, 1), ccx(0, 1, 2), mcx([neg(3), 0, 1], 2)])
def test_gate_inverse_is_identity(g):
    assert gate_inverse(g) == g


def test_arity_names():
    assert [str(g) for g in (x(3), cx(neg(1), 0), ccx(0, 1, 2), mcx([0, neg(1), 2], 4))] == [
        "x 3", "cx !1 0", "ccx 0 1 2", "mcx 0 !1 2 4"]


def test_rejects_target_in_controls():
    with pytest.raises(StructuralError):
        cx(1, 1)


def test_rejects_duplicate_control():
    with pytest.raises(StructuralError):
        Gate(2, (Control(0), Control(0, False)))


def test_out_of_range_line():
    with pytest.raises(StructuralError):
        apply_gate(cx(0, 5), BitState.zeros(2))


def test_bitstate_roundtrip():
    s = BitState.from_bits([1, 0, 1, 1])
    assert int(s) == 0b1101
    assert s[2] == 1 and s[1] == 0
    assert s.set(1, 1).value == 0b1111
    with pytest.raises(StructuralError):
        BitState(16, 4)


@st.composite
def gates(draw, width=WIDTH):
    lines = draw(st.permutations(range(width)))
    k = draw(st.integers(0, width - 1))
    pol = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    return Gate(lines[k], tuple(Control(l, p) for l, p in zip(lines[:k], pol)))


states = st.integers(0, 2 ** WIDTH - 1).map(lambda v: BitState(v, WIDTH))


@given(gates(), states)
def test_involution(g, s):
    assert apply_gate(g, apply_gate(g, s)) == s


@given(gates(), states)
def test_locality(g, s):
    diff = apply_gate(g, s).value ^ s.value
    assert diff in (0, 1 << g.target)


@given(gates(), states, states)
def test_control_monotonicity(g, s, t):
    ctl = sum(1 << c.line for c in g.controls)
    t = BitState((t.value & ~ctl) | (s.value & ctl), WIDTH)
    flipped_s = apply_gate(g, s).value != s.value
    flipped_t = apply_gate(g, t).value != t.value
    assert flipped_s == flipped_t


def test_involution_exhaustive_12_lines():
    import numpy as np
    from revalu.netlist import Circuit
    from revalu.simulator import run_batch
    g = mcx([0, neg(3), 7, neg(11)], 5)
    c = Circuit(12, (g,))
    s = np.arange(1 << 12, dtype=np.uint64)
    assert np.array_equal(run_batch(c, run_batch(c, s)), s)
