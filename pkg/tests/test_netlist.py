import pytest
from hypothesis import given, strategies as st

from revalu.alu import build_alu
from revalu.arith import build_adder, build_subtractor
from revalu.errors import ParseError, StructuralError
from revalu.gates import Control, Gate, cx, x
from revalu.netlist import (Circuit, Register, compose, cost_report, emit_text, empty_like,
                            gate_cost, inverse, parse_text)
from revalu.simulator import check_equivalent


def test_compose_identity_element():
    c = build_adder(2)
    assert compose(c, empty_like(c)).gates == c.gates


def test_compose_not_not_is_identity():
    n = Circuit(1, (x(0),))
    assert check_equivalent(compose(n, n), Circuit(1))


def test_compose_adder_with_inverse():
    c = build_adder(2)
    v = check_equivalent(compose(c, inverse(c)), empty_like(c))
    assert v and v.checked == 2 ** 7


def test_compose_rejects_mismatch():
    with pytest.raises(StructuralError):
        compose(build_adder(2), build_adder(3))
    with pytest.raises(StructuralError):
        compose(Circuit(7), build_adder(2))


def test_inverse_reverses():
    gs = (x(0), cx(0, 1), x(1))
    assert inverse(Circuit(2, gs)).gates == gs[::-1]
    assert inverse(Circuit(1)) == Circuit(1)


@pytest.mark.parametrize("c", [build_adder(3), build_subtractor(2), build_alu(2)])
def test_inverse_involution(c):
    assert inverse(inverse(c)) == c


def test_compose_associative():
    a, b, c = (Circuit(3, gs) for gs in [(x(0),), (cx(0, 1),), (x(2), cx(2, 0))])
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_cost_table():
    assert [gate_cost(k) for k in range(6)] == [1, 1, 5, 13, 29, 61]


def test_cost_empty():
    r = cost_report(Circuit(1))
    assert (r.gate_count_total, r.quantum_cost) == (0, 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_adder_gate_count(n):
    r = cost_report(build_adder(n))
    assert r.gate_count_total == 4 * n
    assert dict(r.counts_by_arity) == {1: 2 * n, 2: 2 * n}
    assert r.quantum_cost == 2 * n * 1 + 2 * n * 5


@pytest.mark.parametrize("n", range(1, 7))
def test_alu_gate_count(n):
    r = cost_report(build_alu(n))
    # arrays 2n, g compute/uncompute 2 + 2, five gates per slice
    assert r.gate_count_total == 7 * n + 4
    assert dict(r.counts_by_arity) == {0: 2, 1: 4 * n, 2: n, 3: 2 * n + 2}


def test_emit_empty():
    assert emit_text(Circuit(1)) == "rnl 1\nlines 1\n"
    assert parse_text(emit_text(Circuit(1))) == Circuit(1)


def test_emit_canonical_order():
    c = Circuit(3, (Gate(2, (Control(0, False), Control(1))),),
                (Register("A", 0, 1), Register("ANC0", 2, 2)), {2: "g", 0: "a1"})
    assert emit_text(c) == (
        "rnl 1\nlines 3\nlabel 0 a1\nlabel 2 g\nreg A 0 1\nreg ANC0 2 2\nccx !0 1 2\n")


@pytest.mark.parametrize("c", [build_adder(4), build_subtractor(3), build_alu(3)])
def test_roundtrip_builders(c):
    assert parse_text(emit_text(c)) == c


def test_parse_comments_and_blanks():
    c = parse_text("# header\nrnl 1\n\nlines 2  # two\ncx !0 1\n")
    assert c.gates == (Gate(1, (Control(0, False),)),)


@pytest.mark.parametrize("text,lineno,fragment", [
    ("rnl 1\nlines 2\nx 9\n", 3, "9"),
    ("rnl 1\nlines 2\nfoo 1\n", 3, "unknown directive"),
    ("rnl 2\nlines 2\n", 1, "version"),
    ("lines 2\n", 1, "rnl 1"),
    ("rnl 1\nx 0\n", 2, "lines"),
    ("rnl 1\nlines 3\nccx 0 0 2\n", 3, "duplicate"),
    ("rnl 1\nlines 3\ncx 1 1\n", 3, "target"),
    ("rnl 1\nlines 3\ncx !7 1\n", 3, "7"),
    ("rnl 1\nlines 3\nreg A 0 1\nreg B 1 2\n", 4, "overlaps"),
    ("rnl 1\nlines 3\nreg A 2 1\n", 3, "geometry"),
    ("rnl 1\nlines 3\nreg Z 0 2\n", 3, "role"),
    ("rnl 1\nlines 3\nreg A 0 1\n", 3, "no register"),
    ("rnl 1\nlines 2\nreg CTRL:C_SUB 0 0\nreg A 1 1\nx 0\n", 5, "control line"),
    ("rnl 1\nlines 2\nccx 0 1\n", 3, "control"),
    ("rnl 1\nlines 2\nlabel 0 9bad\n", 3, "label"),
])
def test_parse_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(ParseError) as exc:
        parse_text(text)
    assert exc.value.lineno == lineno
    assert fragment in str(exc.value)


def test_control_purity_enforced():
    with pytest.raises(StructuralError):
        Circuit(2, (x(0),), (Register("CTRL:C_SUB", 0, 0), Register("A", 1, 1)))


@pytest.mark.parametrize("c", [build_adder(3), build_subtractor(3), build_alu(3)])
def test_built_circuits_never_target_controls(c):
    ctl = {r.lo for r in c.control_registers}
    assert all(g.target not in ctl for g in c.gates)


@st.composite
def circuits(draw):
    width = draw(st.integers(1, 8))
    gates = []
    for _ in range(draw(st.integers(0, 12))):
        lines = draw(st.permutations(range(width)))
        k = draw(st.integers(0, width - 1))
        pol = draw(st.lists(st.booleans(), min_size=k, max_size=k))
        gates.append(Gate(lines[k], tuple(Control(l, p) for l, p in zip(lines[:k], pol))))
    labels = draw(st.dictionaries(st.integers(0, width - 1),
                                  st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,6}", fullmatch=True),
                                  max_size=width))
    return Circuit(width, tuple(gates), labels=labels)


@given(circuits())
def test_roundtrip_property(c):
    text = emit_text(c)
    assert parse_text(text) == c
    assert emit_text(parse_text(text)) == text
    assert not any(line != line.rstrip() for line in text.splitlines())


@given(circuits())
def test_inverse_involution_property(c):
    assert inverse(inverse(c)) == c
